"""Finite q-Bernstein basis p_{nk}(q;x) and its limit basis p_{inf,k}(q;x).

The limit basis is evaluated in log space: for q close to 1 both the Euler
products prod(1 - q^i) and the basis values themselves underflow long before
their ratios do.
"""

import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    DEFAULT_POLICY,
    SeriesLimitError,
    as_q,
    log_q_pochhammer_inf,
    q_binomial_row,
)

# Marker for the n -> infinity basis/operator degree.
INFINITE = None


@dataclass(frozen=True)
class BasisPoint:
    """An (n, k, q, x) evaluation point; n = INFINITE selects the limit basis."""

    n: object
    k: int
    q: float
    x: float

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if not (0.0 <= self.x <= 1.0):
            raise ValueError("x must lie in [0, 1]")
        qv = as_q(self.q)
        if self.n is INFINITE:
            if qv == 1.0:
                raise ValueError("the limit basis requires q < 1")
        elif self.n < 0:
            raise ValueError("n must be nonnegative")


_euler_cache = {}


def _euler_table(q):
    """Prefix log-products logc[k] = log prod_{i=1}^{k} (1 - q^i).

    The sequence converges; entries past the convergence index reuse the
    limiting value.  Returns (logc array, log of the infinite product).
    """
    qv = as_q(q)
    cached = _euler_cache.get(qv)
    if cached is not None:
        return cached
    if qv >= 1.0:
        raise ValueError("Euler product requires q < 1")
    i_max = max(4, int(math.ceil(math.log(1e-18) / math.log(qv))) + 2)
    logs = np.log1p(-(qv ** np.arange(1, i_max + 1)))
    logc = np.concatenate(([0.0], np.cumsum(logs)))
    table = (logc, float(logc[-1]))
    _euler_cache[qv] = table
    return table


def _log_c(q, k):
    logc, logc_inf = _euler_table(q)
    if k < len(logc):
        return float(logc[k])
    return logc_inf


def bernstein_basis(n, k, q, x):
    """p_{nk}(q;x) = C(n,k)_q x^k (1-x)_q^{n-k}; zero for k outside 0..n."""
    if k < 0 or k > n:
        return 0.0
    return float(basis_row(n, q, x)[k])


def basis_row(n, q, x):
    """All p_{nk}(q;x), k = 0..n, sharing one cumulative q-Pochhammer pass."""
    qv = as_q(q)
    if not (0.0 <= x <= 1.0):
        raise ValueError("x must lie in [0, 1]")
    binom = q_binomial_row(n, qv)
    powers = np.concatenate(([1.0], np.cumprod(np.full(n, x)))) if n else np.array([1.0])
    # poch[m] = (1-x)_q^m
    if n:
        factors = 1.0 - (qv ** np.arange(n)) * x
        poch = np.concatenate(([1.0], np.cumprod(factors)))
    else:
        poch = np.array([1.0])
    return binom * powers * poch[::-1]


def log_limit_basis(k, q, x, policy=DEFAULT_POLICY):
    """log p_{inf,k}(q;x) for x in (0,1); -inf where the basis vanishes."""
    qv = as_q(q)
    if qv == 1.0:
        raise ValueError("the limit basis requires q < 1")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if x == 0.0:
        return 0.0 if k == 0 else -math.inf
    if x == 1.0:
        # the s=0 factor of the infinite product is exactly zero
        return -math.inf
    log_pi = log_q_pochhammer_inf(x, qv, policy)
    return k * math.log(x) + log_pi - _log_c(qv, k)


def limit_basis(k, q, x, policy=DEFAULT_POLICY):
    """p_{inf,k}(q;x) = x^k / ((1-q)^k [k]_q!) * prod_{s>=0}(1 - q^s x)."""
    return math.exp(log_limit_basis(k, q, x, policy))


def limit_basis_identity_sums(q, x, policy=DEFAULT_POLICY):
    """Sums s_m = sum_k (1-q^k)^m p_{inf,k}(q;x) for m = 0, 1, 2.

    Contract: s0 = 1, s1 = x, s2 = x^2 + (1-q)x(1-x) on [0, 1).
    """
    qv = as_q(q)
    if not (0.0 <= x < 1.0):
        raise ValueError("identity sums require x in [0, 1)")
    if x == 0.0:
        return 1.0, 0.0, 0.0
    log_pi = log_q_pochhammer_inf(x, qv, policy)
    log_x = math.log(x)
    s0 = s1 = s2 = 0.0
    prev = math.inf
    streak = 0
    for k in range(policy.max_terms):
        p = math.exp(k * log_x + log_pi - _log_c(qv, k))
        w = 1.0 - qv**k
        s0 += p
        s1 += w * p
        s2 += w * w * p
        if p <= policy.rel_eps and p <= prev:
            streak += 1
            if streak >= 3:
                return s0, s1, s2
        else:
            streak = 0
        prev = p
    raise SeriesLimitError("limit-basis sum exceeded max_terms")
