"""Scalar q-series special functions with controlled truncation error.

Conventions (all with |q| < 1):

    (z; q)_n           = prod_{i<n} (1 - z q^i)
    (z; q)_inf         = prod_{i>=0} (1 - z q^i)
    (z; q1, q2)_inf    = prod_{i,k>=0} (1 - z q1^i q2^k)
    theta(z; q)        = (z; q)_inf (q/z; q)_inf
    theta1(z; q)       = (q; q)_inf theta(z; q)
    theta_partial(u;q) = sum_{n>=0} (-1)^n q^{n(n-1)/2} u^n
    qbessel_j(k,u,z)   = sum_{n>=0} q^{k n(n-1)/2} u^{kn/2} z^n / ((u;q)_n (q;q)_n)
    elliptic_gamma     = Gamma(z; p, q) = (pq/z; p, q)_inf / (z; p, q)_inf
    elliptic_dilog     = gamma(z; q) = sum_{n>=1} ((q/z)^n - z^n) / (n^2 (1-q^n))

The last two are normalised so that

    Gamma(p z; p, q) = theta(z; q) Gamma(z; p, q),
    z d/dz gamma(z; q) = log theta(z; q),
    Gamma(q z; q, q) = exp(-q d/dq gamma(z; q)),

which is the unique self-consistent choice; the product formulas for
connection constants below rely on it.

All fractional powers use the principal branch.  Double precision complex
arithmetic throughout; tolerances are sized for |q| in roughly [0.2, 0.7].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, NonconvergenceError, PoleError, ResonanceError

__all__ = [
    "QBase",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "qpoch_finite",
    "qpoch_inf",
    "qpoch2_inf",
    "theta",
    "theta1",
    "theta_partial",
    "qbessel_j",
    "elliptic_gamma",
    "elliptic_dilog",
    "log_theta_dlog",
]


@dataclass(frozen=True)
class QBase:
    """The deformation base q, restricted to 0 < |q| < 1.

    ``resonance_tol`` guards every denominator of the form 1 - q**e: if
    |1 - q**e| falls below it, the computation aborts with ResonanceError
    instead of silently producing a huge kernel entry.
    """

    q: complex
    resonance_tol: float = 1e-10

    def __post_init__(self):
        absq = abs(self.q)
        if not 0.0 < absq < 1.0:
            raise DomainError(f"need 0 < |q| < 1, got |q| = {absq}")

    def guarded_one_minus_qpow(self, exponent: complex) -> complex:
        """Return 1 - q**exponent, raising ResonanceError if it is too small."""
        value = 1.0 - cpow(self.q, exponent)
        if abs(value) <= self.resonance_tol:
            raise ResonanceError(exponent, abs(value), self.resonance_tol)
        return value


@dataclass(frozen=True)
class TruncationPolicy:
    """Stop rule for all series: two consecutive terms below abs_tol, or fail."""

    abs_tol: float = 1e-14
    max_terms: int = 10_000


DEFAULT_POLICY = TruncationPolicy()


def as_qbase(q) -> QBase:
    return q if isinstance(q, QBase) else QBase(complex(q))


def cpow(base: complex, exponent: complex) -> complex:
    """Principal-branch power that is exact for integer exponents."""
    if isinstance(exponent, (int, float)) and float(exponent).is_integer():
        return complex(base) ** int(exponent)
    if base == 0:
        return complex(0.0)
    return cmath.exp(complex(exponent) * cmath.log(complex(base)))


def _sum_series(term_iter, policy: TruncationPolicy, what: str) -> complex:
    """Sum a series until two consecutive terms fall below abs_tol."""
    total = 0.0 + 0.0j
    small = 0
    for i, term in enumerate(term_iter):
        total += term
        if abs(term) < policy.abs_tol:
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
        if i + 1 >= policy.max_terms:
            raise NonconvergenceError(
                f"{what}: no convergence within {policy.max_terms} terms"
            )
    return total


def qpoch_finite(z: complex, q, n: int) -> complex:
    """Finite q-Pochhammer (z; q)_n = prod_{i<n} (1 - z q^i).  n >= 0."""
    if n < 0:
        raise DomainError(f"qpoch_finite needs n >= 0, got {n}")
    qv = as_qbase(q).q
    out = 1.0 + 0.0j
    zq = complex(z)
    for _ in range(n):
        out *= 1.0 - zq
        zq *= qv
    return out


def qpoch_inf(z: complex, q, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Infinite q-Pochhammer (z; q)_inf.

    Accepts |q| > 1 through the inversion (z; 1/q)_inf = 1 / (qz; q)_inf.
    Leading factors are multiplied out until |z q^K| < 1/2, then the tail is
    evaluated through exp(-sum_n (z q^K)^n / (n (1 - q^n))).
    """
    if not isinstance(q, QBase) and abs(complex(q)) > 1.0:
        qinv = 1.0 / complex(q)
        return 1.0 / qpoch_inf(qinv * z, qinv, policy)
    qb = as_qbase(q)
    qv = qb.q
    z = complex(z)
    out = 1.0 + 0.0j
    k = 0
    while abs(z) >= 0.5:
        out *= 1.0 - z
        z *= qv
        k += 1
        if k >= policy.max_terms:
            raise NonconvergenceError("qpoch_inf: argument reduction stalled")

    def tail_terms():
        zn = z
        qn = qv
        n = 1
        while True:
            yield zn / (n * (1.0 - qn))
            zn *= z
            qn *= qv
            n += 1

    if z == 0:
        return out
    return out * cmath.exp(-_sum_series(tail_terms(), policy, "qpoch_inf"))


def qpoch2_inf(z: complex, q1, q2, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Double q-Pochhammer (z; q1, q2)_inf = prod_{i,k>=0} (1 - z q1^i q2^k).

    For |z| >= 1 the argument is reduced through
    (z; q1, q2)_inf = (z; q2)_inf (z q1; q1, q2)_inf until the exponential-sum
    representation applies.
    """
    q1v = as_qbase(q1).q
    q2v = as_qbase(q2).q
    z = complex(z)
    out = 1.0 + 0.0j
    k = 0
    while abs(z) >= 0.5:
        out *= qpoch_inf(z, q2v, policy)
        z *= q1v
        k += 1
        if k >= policy.max_terms:
            raise NonconvergenceError("qpoch2_inf: argument reduction stalled")
    if z == 0:
        return out

    def terms():
        zn = z
        q1n = q1v
        q2n = q2v
        n = 1
        while True:
            d1 = 1.0 - q1n
            d2 = 1.0 - q2n
            if abs(d1) < 1e-300 or abs(d2) < 1e-300:
                raise ResonanceError(n, min(abs(d1), abs(d2)), 1e-300)
            yield zn / (n * d1 * d2)
            zn *= z
            q1n *= q1v
            q2n *= q2v
            n += 1

    return out * cmath.exp(-_sum_series(terms(), policy, "qpoch2_inf"))


def theta(z: complex, q, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """theta(z; q) = (z; q)_inf (q/z; q)_inf, satisfying theta(qz) = -theta(z)/z."""
    if z == 0:
        raise DomainError("theta needs z != 0")
    qv = as_qbase(q).q
    return qpoch_inf(z, qv, policy) * qpoch_inf(qv / z, qv, policy)


def theta1(z: complex, q, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """theta1(z; q) = (q; q)_inf theta(z; q) = sum_{n in Z} (-1)^n q^{n(n-1)/2} z^n."""
    qv = as_qbase(q).q
    return qpoch_inf(qv, qv, policy) * theta(z, qv, policy)


def theta_partial(u: complex, q, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Partial theta sum_{n>=0} (-1)^n q^{n(n-1)/2} u^n.

    Solves u*theta_partial(qu) + theta_partial(u) = 1.
    """
    qv = as_qbase(q).q
    u = complex(u)

    def terms():
        term = 1.0 + 0.0j
        n = 0
        while True:
            yield term
            # ratio of consecutive terms: -u q^n
            term *= -u * qv**n
            n += 1

    return _sum_series(terms(), policy, "theta_partial")


def qbessel_j(k: int, u: complex, z: complex, q,
              policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """q-Bessel sum j_k(u, z) = sum_n q^{k n(n-1)/2} u^{kn/2} z^n / ((u;q)_n (q;q)_n).

    k = 0 requires |z| < 1 (the series is then geometric); k = 1, 2 are entire
    in z.  Satisfies j_2(u, z) = (z; q)_inf j_0(u, z).
    """
    if k not in (0, 1, 2):
        raise DomainError(f"qbessel_j: k must be 0, 1 or 2, got {k}")
    qb = as_qbase(q)
    qv = qb.q
    z = complex(z)
    u = complex(u)
    if k == 0 and abs(z) >= 1.0:
        raise DomainError(f"qbessel_j(k=0) needs |z| < 1, got |z| = {abs(z)}")
    uk2 = 1.0 if k == 0 else cpow(u, k / 2.0)

    def terms():
        term = 1.0 + 0.0j
        n = 0
        while True:
            yield term
            # t_{n+1}/t_n = q^{kn} u^{k/2} z / ((1 - u q^n)(1 - q^{n+1}))
            den_u = 1.0 - u * qv**n
            if abs(den_u) <= qb.resonance_tol:
                raise ResonanceError(f"u*q^{n}", abs(den_u), qb.resonance_tol)
            term *= (qv ** (k * n)) * uk2 * z / (den_u * (1.0 - qv ** (n + 1)))
            n += 1

    return _sum_series(terms(), policy, "qbessel_j")


def elliptic_gamma(z: complex, p: complex, q: complex,
                   policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Elliptic gamma Gamma(z; p, q) = (pq/z; p, q)_inf / (z; p, q)_inf.

    Satisfies Gamma(pz; p, q) = theta(z; q) Gamma(z; p, q) and the reflection
    Gamma(z; p, q) = 1 / Gamma(z/q; p, 1/q), which extends the definition to
    |q| > 1 (and by p <-> q symmetry to |p| > 1).
    """
    p = complex(p)
    q = complex(q)
    z = complex(z)
    if z == 0:
        raise DomainError("elliptic_gamma needs z != 0")
    if abs(q) > 1.0:
        return 1.0 / elliptic_gamma(z / q, p, 1.0 / q, policy)
    if abs(p) > 1.0:
        return 1.0 / elliptic_gamma(z / p, q, 1.0 / p, policy)
    den = qpoch2_inf(z, p, q, policy)
    if abs(den) < 1e-130:
        raise PoleError(f"elliptic_gamma: pole at z = {z}")
    return qpoch2_inf(p * q / z, p, q, policy) / den


# ---------------------------------------------------------------------------
# Elliptic dilogarithm
# ---------------------------------------------------------------------------


def _li2_unit(x: complex) -> complex:
    """Dilogarithm for |x| <= 1 (principal branch on the closed unit disk)."""
    if x == 1:
        return math.pi**2 / 6.0
    if abs(x) > 0.8:
        # Landen reflection keeps the series ratio small near the unit circle.
        return (
            math.pi**2 / 6.0
            - cmath.log(x) * cmath.log(1.0 - x)
            - _li2_unit(1.0 - x)
        )
    total = 0.0 + 0.0j
    xn = x
    n = 1
    while abs(xn) > 1e-17 * n * n and n < 2000:
        total += xn / (n * n)
        xn *= x
        n += 1
    return total


def _li2_lower(x: float) -> complex:
    """Li2(x - i0) for real x > 1: the branch with Im Li2 = -pi log x."""
    lx = math.log(x)
    return (
        math.pi**2 / 3.0
        - 0.5 * lx * lx
        - _li2_unit(1.0 / x)
        - 1j * math.pi * lx
    )


def elliptic_dilog(z: complex, q, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """gamma(z; q) = sum_{n>=1} ((q/z)^n - z^n) / (n^2 (1 - q^n)).

    The series converges on the annulus |q| < |z| < 1.  One extra band on
    each side is reached through

        gamma(q w; q) = gamma(w; q) + Li2(w) + Li2(1/w),
        gamma(z; q)   = -gamma(q/z; q),

    with the Li2 branch fixed so that z d/dz gamma = log theta(z; q) holds
    with the principal logarithm; for real arguments below |q| this makes
    gamma complex, matching the sign of theta there.  Outside |q|^2 < |z| < 1/|q|
    a DomainError is raised.
    """
    qb = as_qbase(q)
    qv = qb.q
    z = complex(z)
    absq = abs(qv)
    if z == 0:
        raise DomainError("elliptic_dilog needs z != 0")
    if abs(z) >= 1.0:
        if abs(z) >= 1.0 / absq:
            raise DomainError(
                f"elliptic_dilog: |z| = {abs(z)} outside ({absq**2}, {1/absq})"
            )
        return -elliptic_dilog(qv / z, qb, policy)
    if abs(z) <= absq:
        if abs(z) <= absq**2:
            raise DomainError(
                f"elliptic_dilog: |z| = {abs(z)} outside ({absq**2}, {1/absq})"
            )
        w = z / qv
        if w.imag == 0 and w.real > 0 and (qv / z).imag == 0 and (qv / z).real > 1:
            corr = _li2_unit(complex(w)) + _li2_lower((qv / z).real)
        else:
            corr = _li2_unit(w) if abs(w) <= 1 else _li2_lower(abs(w))  # pragma: no cover
            corr += _li2_unit(qv / z) if abs(qv / z) <= 1 else _li2_lower(abs(qv / z))
        return elliptic_dilog(w, qb, policy) + corr

    def terms():
        a = qv / z
        b = z
        an = a
        bn = b
        qn = qv
        n = 1
        while True:
            yield (an - bn) / (n * n * (1.0 - qn))
            an *= a
            bn *= b
            qn *= qv
            n += 1

    return _sum_series(terms(), policy, "elliptic_dilog")


def log_theta_dlog(z: complex, q, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """z d/dz log theta(z; q) = sum_{n>=1} ((q/z)^n - z^n) / (1 - q^n).

    Lambert-type series on |q| < |z| < 1, extended one band down through
    L(z) = L(z/q) - 1 and one band up through L(z) = -L(q/z) + ...; only the
    bands needed by the Newton solver for the dual exponent are supported.
    """
    qb = as_qbase(q)
    qv = qb.q
    z = complex(z)
    absq = abs(qv)
    if abs(z) >= 1.0:
        if abs(z) >= 1.0 / absq:
            raise DomainError("log_theta_dlog: argument too large")
        # theta(q/z) = theta(z) exactly, and d/dlog z flips sign through q/z.
        return -log_theta_dlog(qv / z, qb, policy)
    if abs(z) <= absq:
        if abs(z) <= absq**2:
            raise DomainError("log_theta_dlog: argument too small")
        return log_theta_dlog(z / qv, qb, policy) - 1.0

    def terms():
        a = qv / z
        an = a
        zn = z
        qn = qv
        n = 1
        while True:
            yield (an - zn) / (1.0 - qn)
            an *= a
            zn *= z
            qn *= qv
            n += 1

    return _sum_series(terms(), policy, "log_theta_dlog")
