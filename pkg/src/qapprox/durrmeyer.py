"""The finite q-Durrmeyer-Stancu operator and its corrected limit operator.

Finite operator (degree n, 0 < q <= 1):

    D_n(f; x) = sum_{k=0}^{n} A_{nk}(f) p_{nk}(q; x)
    A_{nk}(f) = [n+1]_q q^{-k} int_0^1 f(([n]_q t + varpi)/([n]_q + vartheta))
                p_{nk}(q; qt) d_q t

Limit operator (q < 1 fixed, the n -> infinity limit of the finite form,
[n]_q -> 1/(1-q)):

    D_inf(f; x) = sum_{k>=0} A_k(f) p_{inf,k}(q; x)
    A_k(f) = q^{-k}/(1-q) int_0^1 f((t + (1-q) varpi)/(1 + (1-q) vartheta))
             p_{inf,k}(q; qt) d_q t

The shift convention is fixed throughout: varpi enters numerators and
vartheta denominators, so the limit operator really is the large-n limit of
the finite one (an acceptance test at n = 60 arbitrates this).

Limit-side quantities are computed in log space.  Writing
c_k = prod_{i=1}^k (1 - q^i) (so c_k = (1-q)^k [k]_q!), the Jackson sum of
the coefficient integral collapses to

    A_k(f) = sum_{j>=0} q^{j(k+1)} f(inner(q^j)) c_inf / (c_j c_k),

whose terms all lie in [0, 1]; c_k itself underflows for q close to 1.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import basis
from .qcore import (
    DEFAULT_POLICY,
    SeriesLimitError,
    TruncationPolicy,
    as_q,
    jackson_integral,
    q_binomial_row,
    q_integer,
)


@dataclass(frozen=True)
class StancuParams:
    """Shift pair (varpi, vartheta) of the operator's inner argument."""

    varpi: float = 0.0
    vartheta: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.varpi <= self.vartheta):
            raise ValueError(
                f"Stancu shifts require 0 <= varpi <= vartheta, got "
                f"({self.varpi}, {self.vartheta})"
            )


@dataclass(frozen=True)
class OperatorSpec:
    """Degree (n = basis.INFINITE for the limit operator), q and shifts."""

    n: object
    q: float
    stancu: StancuParams = StancuParams()
    policy: TruncationPolicy = DEFAULT_POLICY

    def __post_init__(self):
        qv = as_q(self.q)
        if self.n is basis.INFINITE:
            if qv == 1.0:
                raise ValueError("the limit operator requires q < 1")
        elif self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def is_limit(self):
        return self.n is basis.INFINITE


def _clamp01(u):
    return 0.0 if u < 0.0 else (1.0 if u > 1.0 else u)


def finite_inner(spec, t):
    """([n]_q t + varpi)/([n]_q + vartheta), clamped to [0,1]."""
    nq = q_integer(spec.n, spec.q)
    return _clamp01((nq * t + spec.stancu.varpi) / (nq + spec.stancu.vartheta))


def limit_inner(q, stancu, t):
    """(t + (1-q) varpi)/(1 + (1-q) vartheta), clamped to [0,1]."""
    qv = as_q(q)
    num = t + (1.0 - qv) * stancu.varpi
    den = 1.0 + (1.0 - qv) * stancu.vartheta
    return _clamp01(num / den)


# ---------------------------------------------------------------------------
# finite operator
# ---------------------------------------------------------------------------


def coefficient_finite(spec, k, f):
    """A_{nk}(f) via the Jackson integral (scalar reference path)."""
    n = spec.n
    if spec.is_limit:
        raise ValueError("coefficient_finite requires a finite degree")
    if not (0 <= k <= n):
        raise ValueError(f"k must lie in 0..{n}")
    qv = as_q(spec.q)

    def integrand(t):
        return f(finite_inner(spec, t)) * basis.bernstein_basis(n, k, qv, qv * t)

    val = jackson_integral(integrand, qv, spec.policy)
    return q_integer(n + 1, qv) * qv ** (-k) * val


@lru_cache(maxsize=512)
def finite_coefficients(spec, f):
    """All A_{nk}(f), k = 0..n, as a read-only array (cached per (spec, f))."""
    n = spec.n
    qv = as_q(spec.q)
    if qv == 1.0:
        out = np.array([coefficient_finite(spec, k, f) for k in range(n + 1)])
        out.flags.writeable = False
        return out
    policy = spec.policy
    J = int(math.ceil(math.log(policy.rel_eps) / math.log(qv))) + 3
    if J > policy.max_terms:
        raise SeriesLimitError("finite coefficient node count exceeds max_terms")
    t_nodes = qv ** np.arange(J)
    weights = (1.0 - qv) * t_nodes
    y = qv * t_nodes
    f_vals = np.array([f(finite_inner(spec, t)) for t in t_nodes])
    if not np.all(np.isfinite(f_vals)):
        raise SeriesLimitError("integrand non-finite at a Jackson node")
    # p_{nk}(q; y_j) for all k, j: shared power/Pochhammer cumulants
    powers = np.ones((n + 1, J))
    for k in range(1, n + 1):
        powers[k] = powers[k - 1] * y
    poch = np.ones((n + 1, J))
    for m in range(1, n + 1):
        poch[m] = poch[m - 1] * (1.0 - qv ** (m - 1) * y)
    binom = q_binomial_row(n, qv)
    P = binom[:, None] * powers * poch[::-1]
    scale = q_integer(n + 1, qv) * qv ** (-np.arange(n + 1, dtype=float))
    out = scale * (P @ (weights * f_vals))
    out.flags.writeable = False
    return out


def apply_finite(spec, f, x):
    """D_n(f; x) = sum_k A_{nk}(f) p_{nk}(q; x)."""
    if spec.is_limit:
        raise ValueError("apply_finite requires a finite degree")
    if not (0.0 <= x <= 1.0):
        raise ValueError("x must lie in [0, 1]")
    coeffs = finite_coefficients(spec, f)
    return float(coeffs @ basis.basis_row(spec.n, spec.q, x))


def apply_finite_grid(spec, f, xs):
    coeffs = finite_coefficients(spec, f)
    return np.array([float(coeffs @ basis.basis_row(spec.n, spec.q, x)) for x in xs])


# ---------------------------------------------------------------------------
# limit operator
# ---------------------------------------------------------------------------

_limit_coeff_cache = {}


def _limit_node_data(q, stancu, f, policy):
    """Jackson-node data shared by every limit coefficient of one (q, f)."""
    qv = as_q(q)
    lnq = math.log(qv)
    # node count large enough that every A_k tail is below rel_eps
    J = int(math.ceil((-math.log(policy.rel_eps) + 6.0) / (-lnq))) + 3
    if J > policy.max_terms:
        raise SeriesLimitError("limit coefficient node count exceeds max_terms")
    logc, logc_inf = basis._euler_table(qv)
    g = np.full(J, logc_inf)
    m = min(J, len(logc))
    g[:m] = logc_inf - logc[:m]  # log of prod_{i>j}(1-q^i)
    t_nodes = qv ** np.arange(J)
    f_vals = np.array([f(limit_inner(qv, stancu, t)) for t in t_nodes])
    if not np.all(np.isfinite(f_vals)):
        raise SeriesLimitError("integrand non-finite at a Jackson node")
    return lnq, J, g, f_vals, logc_inf


def limit_coefficients(spec, f, k_max):
    """A_k(f) for k = 0..k_max (cached and grown incrementally per (spec, f))."""
    if not spec.is_limit:
        raise ValueError("limit_coefficients requires the limit operator")
    key = (spec, f)
    entry = _limit_coeff_cache.get(key)
    if entry is None:
        nodes = _limit_node_data(spec.q, spec.stancu, f, spec.policy)
        entry = [nodes, np.empty(0)]
        _limit_coeff_cache[key] = entry
    nodes, coeffs = entry
    if len(coeffs) > k_max:
        return coeffs[: k_max + 1]
    qv = as_q(spec.q)
    lnq, J, g, f_vals, logc_inf = nodes
    js = np.arange(J, dtype=float)
    log_eps = math.log(spec.policy.rel_eps) - 5.0
    grown = np.empty(k_max + 1)
    grown[: len(coeffs)] = coeffs
    for k in range(len(coeffs), k_max + 1):
        lck = basis._log_c(qv, k)
        rate = (k + 1) * lnq
        # j beyond this bound contributes exp(e_j) < rel_eps (g <= 0)
        m = min(J, int(math.ceil((log_eps + lck) / rate)) + 1)
        e = js[:m] * rate + g[:m] - lck
        grown[k] = float(np.exp(e) @ f_vals[:m])
    grown.flags.writeable = False
    entry[1] = grown
    return grown


def coefficient_limit(spec, k, f):
    """A_k(f) of the limit operator."""
    return float(limit_coefficients(spec, f, k)[k])


def _limit_k_max(spec, x):
    """Smallest K past which every limit-basis value at x is below rel_eps."""
    qv = as_q(spec.q)
    policy = spec.policy
    log_pi = basis.log_q_pochhammer_inf(x, qv, policy)
    _, logc_inf = basis._euler_table(qv)
    k = (math.log(policy.rel_eps) - 2.0 - log_pi + logc_inf) / math.log(x)
    k_max = max(8, int(math.ceil(k)))
    if k_max > policy.max_terms:
        raise SeriesLimitError("limit operator k-series exceeds max_terms")
    return k_max, log_pi


def apply_limit(spec, f, x):
    """D_inf(f; x); at x = 1 the continuous extension f(inner(1)) is exact."""
    if not spec.is_limit:
        raise ValueError("apply_limit requires the limit operator")
    if not (0.0 <= x <= 1.0):
        raise ValueError("x must lie in [0, 1]")
    qv = as_q(spec.q)
    if x == 1.0:
        # mass escapes to k = inf and A_k(f) -> f(inner(1))
        return float(f(limit_inner(qv, spec.stancu, 1.0)))
    if x == 0.0:
        return coefficient_limit(spec, 0, f)
    k_max, log_pi = _limit_k_max(spec, x)
    coeffs = limit_coefficients(spec, f, k_max)
    ks = np.arange(k_max + 1, dtype=float)
    logc, logc_inf = basis._euler_table(qv)
    lc = np.full(k_max + 1, logc_inf)
    m = min(k_max + 1, len(logc))
    lc[:m] = logc[:m]
    log_p = ks * math.log(x) + log_pi - lc
    return float(np.exp(log_p) @ coeffs)


def apply_limit_grid(spec, f, xs):
    return np.array([apply_limit(spec, f, x) for x in xs])


def apply(spec, f, x):
    """Dispatch to the finite or limit operator according to the spec."""
    if spec.is_limit:
        return apply_limit(spec, f, x)
    return apply_finite(spec, f, x)
