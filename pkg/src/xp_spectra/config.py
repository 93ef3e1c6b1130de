"""Centralized numerical tolerances.

All absolute/relative tolerances used by the kernel live in one record so
that the accuracy contract of the package can be tightened or relaxed in a
single place.  The defaults are chosen for IEEE double precision.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared across the package."""

    #: absolute tolerance for special-function evaluations
    special_abs: float = 1e-10
    #: absolute tolerance target for quadratures
    quad_abs: float = 1e-8
    #: relative tolerance for adaptive quadratures
    quad_rel: float = 1e-9
    #: |F| below this counts as a bound state (a zero of the Jost function)
    root_abs: float = 1e-8
    #: series term-ratio stopping threshold for hypergeometric sums
    series_ratio: float = 1e-16
    #: hard cap on hypergeometric series terms
    series_max_terms: int = 500
    #: default half-width of principal-value quadrature windows (energy units)
    pv_window: float = 40.0
    #: |f(t)| below this makes the fluctuation phase ill defined
    f_zero_abs: float = 1e-12


DEFAULT_TOL = Tolerances()
