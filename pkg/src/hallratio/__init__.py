"""Exact LP bounds on the Hall ratio of bounded-degree graphs with girth constraints."""

__version__ = "0.1.0"
