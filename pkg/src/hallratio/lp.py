"""Exact linear programs of the form ``min c.a  s.t.  R a >= 1, a >= 0``.

Every row and the objective are non-negative rationals.  The solver runs a
revised simplex on the dual ``max 1.y  s.t.  R^T y <= c, y >= 0``, whose
slack basis is feasible from the start because ``c >= 0``.  With at most a
handful of variables the dual basis is tiny (``len(c)`` columns) however
many rows the primal has.  Pricing compares integers only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .constraints import Constraint
from .rational import format_rational, parse_rational

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class LinearProgram:
    objective: Vector
    rows: tuple[Vector, ...]

    def __post_init__(self):
        k = len(self.objective)
        if any(x < 0 for x in self.objective):
            raise ValueError("objective entries must be non-negative")
        for i, row in enumerate(self.rows):
            if len(row) != k:
                raise ValueError(f"row {i} has length {len(row)}, objective has {k}")

    @classmethod
    def of(cls, objective: Sequence, rows: Sequence[Sequence]) -> LinearProgram:
        return cls(tuple(Fraction(x) for x in objective), tuple(tuple(Fraction(x) for x in r) for r in rows))

    @property
    def dimension(self) -> int:
        return len(self.objective)

    def to_json(self) -> dict:
        return {
            "objective": [format_rational(x) for x in self.objective],
            "rows": [[format_rational(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> LinearProgram:
        return cls(
            tuple(parse_rational(x) for x in data["objective"]),
            tuple(tuple(parse_rational(x) for x in r) for r in data["rows"]),
        )

    def to_cplex(self) -> str:
        """CPLEX-LP text with each row scaled to integer coefficients."""
        k = self.dimension
        names = [f"a{i}" for i in range(k)]

        def expr(coefs: Sequence[Fraction]) -> str:
            terms = [f"{format_rational(c)} {v}" for c, v in zip(coefs, names) if c]
            return " + ".join(terms) if terms else f"0 {names[0]}"

        lines = ["Minimize", f" obj: {expr(self.objective)}", "Subject To"]
        for j, row in enumerate(self.rows):
            scale = lcm(*(x.denominator for x in row)) if row else 1
            lines.append(f" r{j}: {expr([x * scale for x in row])} >= {scale}")
        lines.append("Bounds")
        lines.extend(f" {v} >= 0" for v in names)
        lines.append("End")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LPSolution:
    status: str
    value: Fraction | None
    alpha: Vector = ()
    tight_rows: tuple[int, ...] = ()
    dual: tuple[tuple[int, Fraction], ...] = field(default=(), repr=False)
    pivots: int = 0

    @property
    def non_increasing(self) -> bool:
        return all(a >= b for a, b in zip(self.alpha, self.alpha[1:]))

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "value": None if self.value is None else format_rational(self.value),
            "alpha": [format_rational(x) for x in self.alpha],
            "tight_rows": list(self.tight_rows),
            "dual": [[j, format_rational(y)] for j, y in self.dual],
        }


def build_lp_vertex(cs: Sequence[Constraint], d: int, r: int) -> LinearProgram:
    """Objective counts vertices at distance i from a vertex in a d-regular tree."""
    objective = [Fraction(1)] + [Fraction(d * (d - 1) ** (i - 1)) for i in range(1, r + 1)]
    return _from_constraints(cs, objective)


def build_lp_edge(cs: Sequence[Constraint], d: int, r: int) -> LinearProgram:
    """Objective counts (twice) vertices at distance i from an edge."""
    objective = [Fraction(2 * (d - 1) ** i) for i in range(r + 1)]
    return _from_constraints(cs, objective)


def _from_constraints(cs: Sequence[Constraint], objective: list[Fraction]) -> LinearProgram:
    for c in cs:
        if len(c.e) != len(objective):
            raise ValueError(f"constraint of length {len(c.e)} in an LP of dimension {len(objective)}")
    return LinearProgram(tuple(objective), tuple(c.e for c in cs))


def normalized_rows(lp: LinearProgram) -> tuple[list[Vector], list[int]]:
    """Distinct rows in lexicographic order, with the first input index of each."""
    first: dict[Vector, int] = {}
    for j, row in enumerate(lp.rows):
        first.setdefault(row, j)
    order = sorted(first)
    return order, [first[row] for row in order]


def _integer_row(row: Vector) -> tuple[tuple[int, ...], int]:
    scale = lcm(*(x.denominator for x in row))
    return tuple(int(x * scale) for x in row), scale


def solve_min(lp: LinearProgram, max_pivots: int = 1_000_000) -> LPSolution:
    rows, origin = normalized_rows(lp)
    k = lp.dimension
    ints = [_integer_row(r) for r in rows]
    for j, (s, _) in enumerate(ints):
        if not any(s):
            return LPSolution("infeasible", None, tight_rows=(origin[j],))
    c = lp.objective
    m = len(rows)

    # basis[i] is a column index: 0..m-1 dual variables, m..m+k-1 slacks
    basis = [m + i for i in range(k)]
    binv = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    xb = list(c)
    pivots = 0

    def column(q: int) -> Vector:
        if q >= m:
            return tuple(Fraction(int(i == q - m)) for i in range(k))
        return rows[q]

    while True:
        # simplex multipliers pi = c_B^T B^-1 (cost 1 on dual variables, 0 on slacks)
        pi = [sum((binv[i][t] for i in range(k) if basis[i] < m), Fraction(0)) for t in range(k)]
        den = lcm(*(p.denominator for p in pi))
        pnum = [int(p * den) for p in pi]
        entering = -1
        in_basis = set(basis)
        for j in range(m):
            if j in in_basis:
                continue
            s, scale = ints[j]
            # reduced profit 1 - pi.row > 0  <=>  pnum.s < den * scale
            if sum(a * b for a, b in zip(pnum, s)) < den * scale:
                entering = j
                break
        if entering < 0:
            for t in range(k):
                if m + t not in in_basis and pi[t] < 0:
                    entering = m + t
                    break
        if entering < 0:
            break
        if pivots >= max_pivots:
            raise RuntimeError(f"simplex exceeded {max_pivots} pivots")
        a = column(entering)
        direction = [sum((binv[i][t] * a[t] for t in range(k) if a[t]), Fraction(0)) for i in range(k)]
        leave, best = -1, None
        for i in range(k):
            if direction[i] > 0:
                ratio = xb[i] / direction[i]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave < 0:
            # the dual is unbounded only if some row is identically zero
            return LPSolution("infeasible", None)
        piv = direction[leave]
        binv[leave] = [x / piv for x in binv[leave]]
        xb[leave] = xb[leave] / piv
        for i in range(k):
            if i != leave and direction[i]:
                f = direction[i]
                binv[i] = [x - f * y for x, y in zip(binv[i], binv[leave])]
                xb[i] -= f * xb[leave]
        basis[leave] = entering
        pivots += 1

    alpha = tuple(pi)
    value = sum((x * y for x, y in zip(c, alpha)), Fraction(0))
    tight = tuple(sorted({origin[j] for j in range(m) if sum((x * y for x, y in zip(rows[j], alpha)), Fraction(0)) == 1}))
    dual = tuple(sorted((origin[basis[i]], xb[i]) for i in range(k) if basis[i] < m and xb[i] != 0))
    return LPSolution("optimal", value, alpha, tight, dual, pivots)


def check_certificate(lp: LinearProgram, sol: LPSolution) -> list[str]:
    """Exact optimality check; returns a list of problems (empty when certified)."""
    problems: list[str] = []
    if sol.status != "optimal":
        return [f"status is {sol.status}"]
    k = lp.dimension
    alpha = sol.alpha
    if len(alpha) != k:
        return ["alpha has the wrong length"]
    if any(x < 0 for x in alpha):
        problems.append("alpha has a negative entry")
    for j, row in enumerate(lp.rows):
        if sum((x * y for x, y in zip(row, alpha)), Fraction(0)) < 1:
            problems.append(f"row {j} violated")
            break
    value = sum((x * y for x, y in zip(lp.objective, alpha)), Fraction(0))
    if value != sol.value:
        problems.append("value differs from objective at alpha")
    load = [Fraction(0)] * k
    total = Fraction(0)
    for j, y in sol.dual:
        if y < 0:
            problems.append(f"negative dual weight on row {j}")
        total += y
        for t in range(k):
            load[t] += y * lp.rows[j][t]
    if any(load[t] > lp.objective[t] for t in range(k)):
        problems.append("dual weights exceed the objective")
    if total != value:
        problems.append(f"dual value {total} differs from primal value {value}")
    return problems


def dumps_solution(lp: LinearProgram, sol: LPSolution) -> str:
    return json.dumps({"lp": lp.to_json(), "solution": sol.to_json()}, sort_keys=True)
