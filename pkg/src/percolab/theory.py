"""Survival probabilities of Galton-Watson trees and the component-size series.

Every solver returns a :class:`Solution` ``(value, residual, iterations)``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import NonPositiveEpsilonError, SubcriticalMeanError

MAX_BISECTIONS = 200


class Solution(NamedTuple):
    value: float
    residual: float
    iterations: int


def _bisect(f, lo, hi, tol, max_iter=MAX_BISECTIONS):
    """Root of f on [lo, hi] with f(lo) < 0 <= f(hi); stops once hi - lo <= tol."""
    it = 0
    while hi - lo > tol and it < max_iter:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        it += 1
    return 0.5 * (lo + hi), it


def poisson_survival(epsilon: float, tol: float = 1e-12) -> Solution:
    """Survival probability y of a Poisson(1+epsilon) Galton-Watson tree.

    y is the root in (0, 1) of ``y = 1 - exp(-(1+epsilon) y)``, located by
    bisection of ``g(y) = y - 1 + exp(-(1+epsilon) y)`` on ``[tol, 1]``.
    ``expm1`` keeps g accurate for tiny y (epsilon near 0).
    """
    if not epsilon > 0:
        raise NonPositiveEpsilonError(f"epsilon must be positive, got {epsilon}")
    c = 1.0 + epsilon

    def g(y):
        return y + math.expm1(-c * y)

    if g(tol) >= 0:
        # root lies in (0, tol]
        return Solution(tol, abs(g(tol)), 0)
    y, it = _bisect(g, tol, 1.0, tol)
    return Solution(y, abs(g(y)), it)


def series_F(c: float, term_tol: float = 1e-15, max_terms: int = 10**6) -> Solution:
    """``F(c) = sum_k k^(k-1)/k! c^(k-1) e^(-ck)`` for c > 1.

    Terms are formed in log space. The term ratio increases towards
    ``r = c e^(1-c) < 1``, so the terms decrease from k = 1 and the tail after
    term K is at most ``a_K r / (1 - r)``; that bound is the returned residual.
    """
    if not c > 1:
        raise SubcriticalMeanError(f"series identity only used for c > 1, got c={c}")
    logc = math.log(c)
    r = c * math.exp(1.0 - c)
    terms = []
    k = 0
    term = 1.0
    while k < max_terms:
        k += 1
        lt = (k - 1) * math.log(k) - math.lgamma(k + 1) + (k - 1) * logc - c * k
        term = math.exp(lt)
        terms.append(term)
        if term < term_tol:
            break
    tail = term * r / (1.0 - r)
    return Solution(math.fsum(terms), tail, k)


def binomial_gw_survival(d: int, p: float, tol: float = 1e-12) -> Solution:
    """Survival probability of a Galton-Watson tree with Bin(d, p) offspring.

    Extinction probability rho is the smallest fixed point of
    ``rho = (1 - p + p rho)^d``; found by bisection on
    ``h(rho) = (1 - p + p rho)^d - rho``, which is convex with h(0) > 0 and
    negative at its minimiser when d p > 1.
    """
    d = int(d)
    if d < 1:
        raise ValueError(f"d must be a positive integer, got {d}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if d * p <= 1.0:
        return Solution(0.0, 0.0, 0)

    def h(rho):
        return math.exp(d * math.log1p(-p * (1.0 - rho))) - rho if p < 1 else rho**d - rho

    if h(0.0) <= 0.0:
        return Solution(1.0, 0.0, 0)
    # minimiser of h: d p (1 - p + p rho)^(d-1) = 1
    rho_min = ((1.0 / (d * p)) ** (1.0 / (d - 1)) - (1.0 - p)) / p
    rho_min = min(max(rho_min, 0.0), 1.0)

    def neg(rho):
        return -h(rho)

    rho, it = _bisect(neg, 0.0, rho_min, tol)
    return Solution(1.0 - rho, abs(h(rho)), it)
