"""2x2 Lax machinery: L and B matrices, auxiliary systems, q-Bessel
parametrices, the algebraic solution, and the Riemann-Hilbert jump J.

Matrices are plain 2x2 complex numpy arrays (helpers mat2/inv2/det2/norm_max).
Multivalued factors are never evaluated numerically: parametrices are exposed
in single-valued form, and the z^{sigma*sigma3} monodromy factor is cancelled
analytically inside jump_J, so everything here can be sampled on circles
without branch-cut accidents.

Normalisations r, r0, rinf are all set to 1; they cancel in every
determinant ratio computed downstream.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qspecial import QBase, as_qbase, cpow, qbessel_j, qpoch_inf

__all__ = [
    "MonodromyInput",
    "TranscendentWindow",
    "mat2",
    "inv2",
    "det2",
    "norm_max",
    "lax_L",
    "lax_B",
    "backlund_B",
    "painleve_step",
    "aux_L",
    "aux_L0_k",
    "parametrix",
    "algebraic_Y",
    "jump_J",
]


def mat2(a, b, c, d) -> np.ndarray:
    return np.array([[a, b], [c, d]], dtype=complex)


def det2(M: np.ndarray) -> complex:
    return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]


def inv2(M: np.ndarray) -> np.ndarray:
    d = det2(M)
    if abs(d) < 1e-300:
        raise DomainError("singular 2x2 matrix")
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=complex) / d


def norm_max(M: np.ndarray) -> float:
    return float(np.max(np.abs(M)))


@dataclass(frozen=True)
class MonodromyInput:
    """Monodromy data (sigma, s0, sinf) over a base q.

    u = q^sigma and the Fourier variable S are derived:

        S = i (sinf/s0) q^{sigma - 1/4} (q^{1-2 sigma}; q)_inf / (q^{2 sigma}; q)_inf.

    Non-resonance |1 - q^{2 sigma + n}| > guard is enforced for |n| up to
    2*mode_cutoff, covering every Pochhammer denominator the kernels build.
    """

    q: QBase
    sigma: complex
    s0: complex = 1.0
    sinf: complex = 1.0
    mode_cutoff: int = 64

    def __post_init__(self):
        if self.s0 == 0 or self.sinf == 0:
            raise DomainError("s0 and sinf must be nonzero")
        for n in range(-2 * self.mode_cutoff, 2 * self.mode_cutoff + 1):
            self.q.guarded_one_minus_qpow(2 * self.sigma + n)

    @staticmethod
    def make(q, sigma, s0=1.0, sinf=1.0, mode_cutoff=64) -> "MonodromyInput":
        return MonodromyInput(as_qbase(q), complex(sigma), complex(s0),
                              complex(sinf), mode_cutoff)

    @property
    def u(self) -> complex:
        return cpow(self.q.q, self.sigma)

    @property
    def S(self) -> complex:
        qv = self.q.q
        return (
            1j
            * (self.sinf / self.s0)
            * cpow(qv, self.sigma - 0.25)
            * qpoch_inf(cpow(qv, 1 - 2 * self.sigma), qv)
            / qpoch_inf(cpow(qv, 2 * self.sigma), qv)
        )

    @property
    def S2(self) -> complex:
        return self.S**2

    def backlund(self) -> "MonodromyInput":
        """sigma -> 1/2 - sigma, s -> 1/s; under this S -> -1/S."""
        return MonodromyInput(self.q, 0.5 - self.sigma, 1.0 / self.s0,
                              1.0 / self.sinf, self.mode_cutoff)


def painleve_step(g_prev: complex, g_cur: complex, t: complex) -> complex:
    """One step of g(qt) g(t/q) = (g(t)^2 + t) / (g(t)^2 + 1).

    Arguments are g(t/q), g(t) and the current time t; returns g(qt).
    Raises on the movable singularity g(t)^2 = -1 and on the degenerate
    fixed time t = 0.
    """
    if t == 0:
        raise DomainError("painleve_step: t = 0 is a degenerate fixed point")
    if g_prev == 0:
        raise DomainError("painleve_step: g(t/q) = 0")
    den = g_cur * g_cur + 1.0
    if abs(den) < 1e-12:
        raise DomainError("painleve_step: movable singularity, g(t)^2 + 1 ~ 0")
    return (g_cur * g_cur + t) / (den * g_prev)


@dataclass(frozen=True)
class TranscendentWindow:
    """Transcendent values g(t/q), g(t), g(qt) at time t over base q."""

    q: complex
    t: complex
    g_prev: complex
    g_cur: complex
    g_next: complex

    def step_residual(self) -> float:
        """|g_next g_prev (g_cur^2 + 1) - (g_cur^2 + t)|."""
        return abs(self.g_next * self.g_prev * (self.g_cur**2 + 1) - (self.g_cur**2 + self.t))

    def shift_up(self) -> "TranscendentWindow":
        """Window centred at qt, extended by one Painleve step."""
        qt = self.q * self.t
        return TranscendentWindow(
            self.q, qt, self.g_cur, self.g_next,
            painleve_step(self.g_cur, self.g_next, qt),
        )

    @staticmethod
    def from_seed(q: complex, t: complex, g_prev: complex, g_cur: complex) -> "TranscendentWindow":
        return TranscendentWindow(q, t, g_prev, g_cur, painleve_step(g_prev, g_cur, t))

    @staticmethod
    def algebraic(q: complex, t: complex) -> "TranscendentWindow":
        """The algebraic family g(t) = t^{1/4} (principal branch)."""
        return TranscendentWindow(
            q, t, cpow(t / q, 0.25), cpow(t, 0.25), cpow(q * t, 0.25)
        )


def lax_L(w: TranscendentWindow, z: complex) -> np.ndarray:
    """The Lax matrix at (t, z); det L = (1 - z)(1 - t/z)."""
    if z == 0:
        raise DomainError("lax_L needs z != 0")
    g, gn, t = w.g_cur, w.g_next, w.t
    if g == 0 or gn == 0:
        raise DomainError("lax_L needs nonzero transcendent values")
    return mat2(
        gn / g + gn * g,
        1.0 + t / (z * g * g),
        z + g * g,
        t / (gn * g) + g / gn,
    )


def lax_B(w: TranscendentWindow, z: complex) -> np.ndarray:
    """Time-shift matrix B(t,z), with B^{-1} = [[1, qt/(z G)], [G, 1]], G = g(t) g(qt)."""
    if z == 0:
        raise DomainError("lax_B needs z != 0")
    g, gn = w.g_cur, w.g_next
    if g == 0 or gn == 0:
        raise DomainError("lax_B needs nonzero transcendent values")
    G = g * gn
    qt = w.q * w.t
    return inv2(mat2(1.0, qt / (z * G), G, 1.0))


def backlund_B(z: complex, q) -> np.ndarray:
    """Off-diagonal involution factor B^b(z) = [[0, q^{1/4} z^{-1/2}], [q^{-1/4} z^{1/2}, 0]].

    Conjugation L -> B^b(z) L B^b(qz) replaces g by sqrt(t)/g.  Principal
    square roots; use on the positive real axis or track sheets manually.
    """
    qv = as_qbase(q).q
    if z == 0:
        raise DomainError("backlund_B needs z != 0")
    sz = cmath.sqrt(z)
    q4 = cpow(qv, 0.25)
    return mat2(0.0, q4 / sz, sz / q4, 0.0)


def aux_L(which: str, sigma: complex, t: complex, z: complex, q) -> np.ndarray:
    """Auxiliary Lax matrices:

    L0(t,z)  = [[q^s, sqrt(t)/z], [sqrt(t), q^-s]]      (which='zero'),
    Linf(z)  = [[q^s, 1], [z, q^-s]]                    (which='inf').
    """
    qv = as_qbase(q).q
    if z == 0:
        raise DomainError("aux_L needs z != 0")
    us = cpow(qv, sigma)
    if which == "zero":
        st = cmath.sqrt(t)
        return mat2(us, st / z, st, 1.0 / us)
    if which == "inf":
        return mat2(us, 1.0, z, 1.0 / us)
    raise DomainError(f"aux_L: which must be 'zero' or 'inf', got {which!r}")


def aux_L0_k(k: int, sigma: complex, t: complex, z: complex, q) -> np.ndarray:
    """k-variant matrices near zero: k=2 is aux_L('zero'),
    k=0 is (1-t/z)^{-1} times it, k=1 is [[0, -q^s], [q^-s, q^-s + q^s + t/z]]."""
    qv = as_qbase(q).q
    if z == 0:
        raise DomainError("aux_L0_k needs z != 0")
    us = cpow(qv, sigma)
    if k == 2:
        return aux_L("zero", sigma, t, z, qv)
    if k == 0:
        if abs(1.0 - t / z) < 1e-14:
            raise DomainError("aux_L0_k(k=0): pole at z = t")
        return aux_L("zero", sigma, t, z, qv) / (1.0 - t / z)
    if k == 1:
        return mat2(0.0, -us, 1.0 / us, 1.0 / us + us + t / z)
    raise DomainError(f"aux_L0_k: k must be 0, 1 or 2, got {k}")


def _bessel_block_zero(m: MonodromyInput, w: complex) -> np.ndarray:
    """The j_2 matrix of the zero parametrix at argument w = qt/z."""
    qv = m.q.q
    s = m.sigma
    u2 = cpow(qv, 2 * s)
    return mat2(
        qbessel_j(2, cpow(qv, 1 - 2 * s), w, qv),
        w / (cpow(qv, s) - cpow(qv, 1 - s)) * qbessel_j(2, cpow(qv, 2 - 2 * s), w, qv),
        -1.0 / (cpow(qv, s) - cpow(qv, -s)) * qbessel_j(2, cpow(qv, 1 + 2 * s), w, qv),
        qbessel_j(2, u2, w, qv),
    )


def _bessel_block_zero_inv(m: MonodromyInput, w: complex) -> np.ndarray:
    """Inverse of the j_2 matrix, in closed j_0 form (adjugate / determinant)."""
    qv = m.q.q
    s = m.sigma
    return mat2(
        qbessel_j(0, cpow(qv, 2 * s), w, qv),
        -w / (cpow(qv, s) - cpow(qv, 1 - s)) * qbessel_j(0, cpow(qv, 2 - 2 * s), w, qv),
        1.0 / (cpow(qv, s) - cpow(qv, -s)) * qbessel_j(0, cpow(qv, 1 + 2 * s), w, qv),
        qbessel_j(0, cpow(qv, 1 - 2 * s), w, qv),
    )


def _bessel_block_inf(m: MonodromyInput, z: complex) -> np.ndarray:
    """The j_0 matrix of the infinity parametrix at argument z (|z| < 1).

    Sign of the (1,2) entry is fixed by the difference equation
    Psi+(qz) = q^{-sigma sigma3} Psi+(z) Linf(z) together with
    det = 1/(z; q)_inf; both force the + sign.
    """
    qv = m.q.q
    s = m.sigma
    return mat2(
        qbessel_j(0, cpow(qv, 2 * s), z, qv),
        1.0 / (cpow(qv, s) - cpow(qv, -s)) * qbessel_j(0, cpow(qv, 1 + 2 * s), z, qv),
        -z / (cpow(qv, s) - cpow(qv, 1 - s)) * qbessel_j(0, cpow(qv, 2 - 2 * s), z, qv),
        qbessel_j(0, cpow(qv, 1 - 2 * s), z, qv),
    )


def parametrix(which: str, m: MonodromyInput, t: complex, z: complex) -> np.ndarray:
    """Single-valued part Psi of the parametrices Y = z^{sigma sigma3} Psi.

    which='zero':  Psi- = (qt)^{-sigma sigma3} s0^{sigma3} J2(qt/z) t^{sigma3/4},
    which='inf' :  Psi+ = sinf^{sigma3} J0(z) q^{-sigma3/4}  (needs |z| < 1).

    Determinants: det Psi- = (qt/z; q)_inf, det Psi+ = 1/(z; q)_inf.
    """
    qv = m.q.q
    if z == 0:
        raise DomainError("parametrix needs z != 0")
    if which == "zero":
        w = qv * t / z
        qt_s = cpow(qv * t, m.sigma)
        left = np.diag([m.s0 / qt_s, qt_s / m.s0])
        right = np.diag([cpow(t, 0.25), cpow(t, -0.25)])
        return left @ _bessel_block_zero(m, w) @ right
    if which == "inf":
        left = np.diag([m.sinf, 1.0 / m.sinf])
        right = np.diag([cpow(qv, -0.25), cpow(qv, 0.25)])
        return left @ _bessel_block_inf(m, z) @ right
    raise DomainError(f"parametrix: which must be 'zero' or 'inf', got {which!r}")


def algebraic_Y(which: str, t: complex, z: complex, q, sheet: int = 0) -> np.ndarray:
    """Closed-form solutions at the algebraic point sigma = 1/4, s0 = sinf = 1.

    which in {'full', 'zero', 'inf'}.  The result is

        T M(z) (z/sqrt(q))^{sigma3/4},
        T = (1/2) q^{-sigma3/8} [[1, -1], [1, 1]],

    with M built from (+-sqrt(qt/z); sqrt(q))_inf and (+-sqrt(z); sqrt(q))_inf.
    ``sheet=1`` evaluates the continuation across z -> e^{2 pi i} z (all square
    and fourth roots continued), so monodromy factors can be tested.
    """
    qv = as_qbase(q).q
    if z == 0:
        raise DomainError("algebraic_Y needs z != 0")
    sq = cmath.sqrt(qv)
    sz = cmath.sqrt(z)
    w = cmath.sqrt(qv * t / z)
    z4 = cpow(z / sq, 0.25)
    if sheet % 2:
        sz, w = -sz, -w
    if sheet % 4:
        z4 = z4 * 1j ** (sheet % 4)
    A = qpoch_inf(-w, sq)
    C = qpoch_inf(w, sq)
    Bp = qpoch_inf(-sz, sq)
    Dp = qpoch_inf(sz, sq)
    if which == "full":
        M = mat2(A / Bp, A / Bp, -C / Dp, C / Dp)
    elif which == "zero":
        M = mat2(A, A, -C, C)
    elif which == "inf":
        M = mat2(1.0 / Bp, 1.0 / Bp, -1.0 / Dp, 1.0 / Dp)
    else:
        raise DomainError(f"algebraic_Y: bad which {which!r}")
    T = 0.5 * np.diag([cpow(qv, -0.125), cpow(qv, 0.125)]) @ mat2(1.0, -1.0, 1.0, 1.0)
    return T @ M @ np.diag([z4, 1.0 / z4])


def jump_J(m: MonodromyInput, t: complex, z: complex) -> np.ndarray:
    """Riemann-Hilbert jump J = Psi-^{-1} Psi+ on the annulus |qt| < |z| < 1.

    The z^{sigma sigma3} factors of the two parametrices cancel identically;
    what remains is

        J(z) = t^{-sigma3/4} J2(qt/z)^{-1}
               diag((sinf/s0)(qt)^sigma, (s0/sinf)(qt)^{-sigma})
               J0(z) q^{-sigma3/4},

    single-valued and analytic on the annulus.
    det J = 1 / ((qt/z; q)_inf (z; q)_inf).
    """
    qv = m.q.q
    az, aqt = abs(z), abs(qv * t)
    if not aqt < az < 1.0:
        raise DomainError(f"jump_J: need |qt| < |z| < 1, got |z| = {az}, |qt| = {aqt}")
    w = qv * t / z
    qt_s = cpow(qv * t, m.sigma)
    mid = np.diag([m.sinf / m.s0 * qt_s, m.s0 / (m.sinf * qt_s)])
    left = np.diag([cpow(t, -0.25), cpow(t, 0.25)])
    right = np.diag([cpow(qv, -0.25), cpow(qv, 0.25)])
    return left @ _bessel_block_zero_inv(m, w) @ mid @ _bessel_block_inf(m, z) @ right
