"""Exact combinatorics: partitions, charged Maya diagrams, characters, weights.

Half-integers are stored as odd ints (twice the value) wherever they are used
as dictionary keys or set elements; conversion happens at the numeric
boundary only.

Color convention: +1 and -1.  A two-color Maya diagram is a pair of sets

    I  subset of  {positive half-integers} x {+1, -1}
    J  subset of  {negative half-integers} x {+1, -1}

with |I| = |J| (zero total charge).  Per color, the positive occupied
positions are the charged Frobenius coordinates m_i, the negated unoccupied
negative positions are the n_i, and Q_color = #m - #n; the two colors carry
opposite charge Q_+ = -Q_- = Q.

The fermionic correspondence used throughout: for a partition Y with parts
lambda_1 >= lambda_2 >= ... and charge Q, the occupied set of the one-color
Maya diagram is { Q + lambda_i - i + 1/2 : i >= 1 }.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, ResonanceError
from .qspecial import QBase, as_qbase, cpow

__all__ = [
    "Partition",
    "ChargedPair",
    "MayaDiagram2",
    "FormalCharacter",
    "arm",
    "leg",
    "size_N",
    "content_T",
    "partitions_of",
    "partition_pairs_upto",
    "maya_to_young",
    "young_to_maya",
    "frobenius_coordinates",
    "char_nek",
    "char_ny",
    "char_V_frobenius",
    "z_vec",
    "z_zero",
    "z1_bar_inv",
]


class Partition(tuple):
    """A partition as a weakly decreasing tuple of positive ints."""

    def __new__(cls, rows=()):
        rows = tuple(int(r) for r in rows if r != 0)
        if any(r < 0 for r in rows):
            raise DomainError(f"negative part in {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise DomainError(f"parts not weakly decreasing: {rows}")
        return super().__new__(cls, rows)

    @property
    def size(self) -> int:
        return sum(self)

    def transpose(self) -> "Partition":
        if not self:
            return Partition()
        cols = [0] * self[0]
        for row in self:
            for j in range(row):
                cols[j] += 1
        return Partition(cols)

    def row(self, y: int) -> int:
        """Length of row y (1-based); 0 outside the diagram."""
        return self[y - 1] if 1 <= y <= len(self) else 0

    def boxes(self):
        """Iterate box coordinates (x, y), 1-based, x along the row."""
        for y, row in enumerate(self, start=1):
            for x in range(1, row + 1):
                yield (x, y)


def arm(Y: Partition, s) -> int:
    """Arm length of box s = (x, y) relative to Y; negative outside Y."""
    x, y = s
    return Y.row(y) - x


def leg(Y: Partition, s) -> int:
    """Leg length of box s = (x, y) relative to Y (arm of the transpose)."""
    x, y = s
    t = Y.transpose()
    return t.row(x) - y


def size_N(Y: Partition) -> int:
    return Y.size


def content_T(Y: Partition) -> int:
    """T(Y) = sum over boxes of (x - y); changes sign under transpose."""
    return sum(x - y for (x, y) in Y.boxes())


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n, lexicographically by rows (deterministic order)."""
    if n == 0:
        return (Partition(),)
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, prefix + (p,))

    rec(n, n, ())
    return tuple(out)


def partition_pairs_upto(max_boxes: int):
    """All ordered pairs (Y+, Y-) with |Y+| + |Y-| <= max_boxes, by total size."""
    for total in range(max_boxes + 1):
        for a in range(total + 1):
            for yp in partitions_of(a):
                for ym in partitions_of(total - a):
                    yield yp, ym


@dataclass(frozen=True)
class ChargedPair:
    """A pair of partitions with charge Q (integer or half-integer)."""

    y_plus: Partition
    y_minus: Partition
    charge: float


@dataclass(frozen=True)
class MayaDiagram2:
    """Two-color Maya diagram with zero total charge.

    ``particles`` and ``holes`` are frozensets of (twice_k, color) with
    twice_k an odd positive / negative integer respectively.
    """

    particles: frozenset
    holes: frozenset

    def __post_init__(self):
        for (tk, c) in self.particles:
            if tk <= 0 or tk % 2 == 0 or c not in (1, -1):
                raise DomainError(f"bad particle {(tk, c)}")
        for (tk, c) in self.holes:
            if tk >= 0 or tk % 2 == 0 or c not in (1, -1):
                raise DomainError(f"bad hole {(tk, c)}")
        if len(self.particles) != len(self.holes):
            raise DomainError("total charge nonzero: |I| != |J|")

    @staticmethod
    def from_halves(particles, holes) -> "MayaDiagram2":
        conv = lambda kc: (int(round(2 * kc[0])), kc[1])
        return MayaDiagram2(frozenset(map(conv, particles)), frozenset(map(conv, holes)))

    def elements(self):
        """All (twice_k, color), particles then holes, sorted for determinism."""
        return sorted(self.particles) + sorted(self.holes)

    def color_data(self, color: int):
        """(m-list, n-list) of positive half-integer coordinates, as odd ints*2."""
        ms = sorted(tk for (tk, c) in self.particles if c == color)
        ns = sorted(-tk for (tk, c) in self.holes if c == color)
        return ms, ns


def frobenius_coordinates(Y: Partition, Q) -> tuple:
    """Charged Frobenius coordinates (m-list, n-list) of (Y, Q), doubled to odd ints.

    Occupied set { Q + lambda_i - i + 1/2 : i >= 1 }: the positive members are
    the m's, the negated unoccupied negative positions are the n's.  Q must be
    an integer here; half-integer sectors never reach the Maya layer.
    """
    twice_q = int(round(2 * Q))
    if twice_q % 2 != 0:
        raise DomainError("frobenius_coordinates needs integer charge")
    L = len(Y)
    finite = [twice_q + 2 * Y[i - 1] - 2 * i + 1 for i in range(1, L + 1)]
    # every odd position <= tail_top is occupied by the vacuum tail
    tail_top = twice_q - 2 * (L + 1) + 1
    ms = set(p for p in finite if p > 0)
    if tail_top > 0:
        ms |= set(range(1, tail_top + 1, 2))
    finite_set = set(finite)
    ns = [-p for p in range(tail_top + 2, 0, 2) if p not in finite_set]
    return sorted(ms), sorted(ns)


def _young_from_frobenius(ms, ns) -> tuple:
    """Rebuild (partition rows, charge doubled) from doubled Frobenius coordinates."""
    twice_q = 2 * (len(ms) - len(ns))
    deepest_hole = max(ns) if ns else 0
    depth = len(ms) + len(ns) + abs(twice_q) + deepest_hole // 2 + 4
    hole_set = {-n for n in ns}
    occupied = sorted(
        set(ms) | {p for p in range(-1, -2 * depth, -2) if p not in hole_set},
        reverse=True,
    )
    rows = []
    for i, pos in enumerate(occupied, start=1):
        lam, rem = divmod(pos - twice_q + 2 * i - 1, 2)
        if rem:
            raise DomainError("coordinate parity mismatch")
        rows.append(lam)
    while rows and rows[-1] == 0:
        rows.pop()
    if any(r < 0 for r in rows):
        raise DomainError(f"coordinates {ms}, {ns} do not define a partition")
    return rows, twice_q


def maya_to_young(M: MayaDiagram2) -> ChargedPair:
    """Bijection to (Y+, Y-, Q); per color the fermionic correspondence."""
    out = {}
    charges = {}
    for color in (1, -1):
        ms, ns = M.color_data(color)
        rows, twice_q = _young_from_frobenius(ms, ns)
        out[color] = Partition(rows)
        charges[color] = twice_q / 2.0
    if charges[1] + charges[-1] != 0:
        raise DomainError("per-color charges do not cancel")
    return ChargedPair(out[1], out[-1], charges[1])


def young_to_maya(p: ChargedPair) -> MayaDiagram2:
    """Inverse bijection: charged Frobenius coordinates per color."""
    parts = []
    holes = []
    for color, Y, Q in ((1, p.y_plus, p.charge), (-1, p.y_minus, -p.charge)):
        ms, ns = frobenius_coordinates(Y, Q)
        parts.extend((m, color) for m in ms)
        holes.extend((-n, color) for n in ns)
    return MayaDiagram2(frozenset(parts), frozenset(holes))


# ---------------------------------------------------------------------------
# Formal equivariant characters
# ---------------------------------------------------------------------------


class FormalCharacter:
    """Exact Laurent polynomial over the exponent lattice Z^4.

    A key (c1, c2, cp, cm) stands for exp(tau * (c1 e1 + c2 e2 + cp a+ + cm a-)).
    Zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if v != 0:
                    self.terms[k] = v

    @staticmethod
    def monomial(c1=0, c2=0, cp=0, cm=0, coeff=1) -> "FormalCharacter":
        return FormalCharacter({(c1, c2, cp, cm): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return FormalCharacter(out)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return FormalCharacter({k: v * other for k, v in self.terms.items()})
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])
                w = out.get(k, 0) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return FormalCharacter(out)

    __rmul__ = __mul__

    def conjugate(self) -> "FormalCharacter":
        """tau -> -tau: negate every exponent vector."""
        return FormalCharacter({(-a, -b, -c, -d): v for (a, b, c, d), v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FormalCharacter) and self.terms == other.terms

    def __hash__(self):  # pragma: no cover
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, tau, e1, e2, ap, am) -> complex:
        """Numeric evaluation at given weights."""
        import cmath

        return sum(
            v * cmath.exp(tau * (k[0] * e1 + k[1] * e2 + k[2] * ap + k[3] * am))
            for k, v in self.terms.items()
        )

    def __repr__(self):  # pragma: no cover
        return f"FormalCharacter({self.terms!r})"


def _char_V(pair) -> FormalCharacter:
    """V = sum_alpha e^{-tau a_alpha} sum_{s in Y_alpha} e^{tau e1 (1-y)} e^{tau e2 (1-x)}.

    Box coordinates enter transposed relative to the arm/leg convention of
    ``arm``/``leg``; this orientation is the one under which the two character
    formulas agree identically (the two-box diagrams already distinguish it).
    """
    out = FormalCharacter()
    for Y, slot in ((pair[0], 2), (pair[1], 3)):
        for (x, y) in Y.boxes():
            key = [1 - y, 1 - x, 0, 0]
            key[slot] = -1
            out = out + FormalCharacter.monomial(*key)
    return out


def char_nek(pair) -> FormalCharacter:
    """Tangent-space character in the box-sum form,

        -(1 - e^{tau e1})(1 - e^{tau e2}) V V* + V W* + e^{tau(e1+e2)} W V*,

    the normalisation fixed by exact agreement with char_ny (already the
    single-box case forces the e^{tau(e1+e2)} factor on the W V* term).
    """
    V = _char_V(pair)
    W = FormalCharacter.monomial(cp=-1) + FormalCharacter.monomial(cm=-1)
    one = FormalCharacter.monomial()
    factor = (one - FormalCharacter.monomial(c1=1)) * (one - FormalCharacter.monomial(c2=1))
    shift = FormalCharacter.monomial(c1=1, c2=1)
    return (factor * V * V.conjugate() * -1) + V * W.conjugate() + shift * W * V.conjugate()


def char_ny(pair) -> FormalCharacter:
    """Arm/leg form: sum_{ab} e^{tau(a_a - a_b)} N_ab with

    N_ab = sum_{s in Y_a} e^{-tau e1 l_{Y_b}(s)} e^{tau e2 (a_{Y_a}(s)+1)}
         + sum_{s in Y_b} e^{tau e1 (l_{Y_a}(s)+1)} e^{-tau e2 a_{Y_b}(s)}.
    """
    out = FormalCharacter()
    diagrams = {1: pair[0], -1: pair[1]}
    slot = {1: 2, -1: 3}
    for ca in (1, -1):
        for cb in (1, -1):
            Ya, Yb = diagrams[ca], diagrams[cb]
            base = [0, 0, 0, 0]
            base[slot[ca]] += 1
            base[slot[cb]] -= 1
            for s in Ya.boxes():
                key = list(base)
                key[0] += -leg(Yb, s)
                key[1] += arm(Ya, s) + 1
                out = out + FormalCharacter.monomial(*key)
            for s in Yb.boxes():
                key = list(base)
                key[0] += leg(Ya, s) + 1
                key[1] += -arm(Yb, s)
                out = out + FormalCharacter.monomial(*key)
    return out


def char_V_frobenius(Y: Partition, Q: int) -> bool:
    """Exact check of the box-sum vs Frobenius-coordinate form of V_alpha.

    Both sides of

        e^{-tau Q} sum_{s in Y} e^{tau (y-x)}
          = (sum_i e^{tau n_i} - sum_i e^{-tau m_i}) / (e^{tau/2} - e^{-tau/2})
            + (1 - e^{-tau Q}) / (e^{tau/2} - e^{-tau/2})^2

    are multiplied by (e^{tau/2} - e^{-tau/2})^2 and compared as Laurent
    polynomials in e^{tau/2} (exponents doubled to integers).
    """

    def add(poly, expo, coeff):
        w = poly.get(expo, 0) + coeff
        if w:
            poly[expo] = w
        else:
            poly.pop(expo, None)

    def mul(p1, p2):
        out = {}
        for k1, v1 in p1.items():
            for k2, v2 in p2.items():
                add(out, k1 + k2, v1 * v2)
        return out

    bracket = {1: 1, -1: -1}  # e^{tau/2} - e^{-tau/2}
    bracket2 = mul(bracket, bracket)
    lhs = {}
    for (x, y) in Y.boxes():
        add(lhs, 2 * (y - x) - 2 * Q, 1)
    lhs = mul(lhs, bracket2)
    ms, ns = frobenius_coordinates(Y, Q)
    mid = {}
    for n in ns:
        add(mid, n, 1)  # n already doubled
    for m in ms:
        add(mid, -m, -1)
    rhs = mul(mid, bracket)
    add(rhs, 0, 1)
    add(rhs, -2 * Q, -1)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Nekrasov weights
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _hook_offsets(A: Partition, B: Partition) -> tuple:
    """Integer offsets e with factors (1 - q^{delta + e}) for the (A, B) slot:

    { arm_A(s) + leg_B(s) + 1 : s in A }  and  { -arm_B(s) - leg_A(s) - 1 : s in B }.
    """
    At = A.transpose()
    Bt = B.transpose()
    out = []
    for (x, y) in A.boxes():
        out.append((A.row(y) - x) + (Bt.row(x) - y) + 1)
    for (x, y) in B.boxes():
        out.append(-((B.row(y) - x) + (At.row(x) - y) + 1))
    return tuple(out)


def z_vec(nu_plus: complex, nu_minus: complex, pair, q) -> complex:
    """Nekrasov vector-multiplet weight for a pair of diagrams.

    The four color slots (a, b) contribute prod (1 - q^{nu_b - nu_a + e})^-1
    over the hook offsets of (Y_a, Y_b).
    """
    qb = as_qbase(q)
    yp, ym = pair
    out = 1.0 + 0.0j
    for (nu_a, nu_b, A, B) in (
        (nu_plus, nu_plus, yp, yp),
        (nu_minus, nu_minus, ym, ym),
        (nu_plus, nu_minus, yp, ym),
        (nu_minus, nu_plus, ym, yp),
    ):
        delta = nu_b - nu_a
        if delta == 0:
            for e in _hook_offsets(A, B):
                out /= qb.guarded_one_minus_qpow(e)
        else:
            qd = cpow(qb.q, delta)
            for e in _hook_offsets(A, B):
                den = 1.0 - qd * qb.q ** e if e >= 0 else 1.0 - qd / qb.q ** (-e)
                if abs(den) <= qb.resonance_tol:
                    raise ResonanceError(f"{delta}+{e}", abs(den), qb.resonance_tol)
                out /= den
    return out


def z_zero(sigma: complex, Q, q, policy=None) -> complex:
    """Charge-sector normalisation prod_e (q^{1+2e(sigma+Q)};q,q)inf / (q^{1+2e sigma};q,q)inf."""
    from .qspecial import DEFAULT_POLICY, qpoch2_inf

    pol = policy or DEFAULT_POLICY
    qv = as_qbase(q).q
    nu = sigma + Q
    out = 1.0 + 0.0j
    for eps in (1, -1):
        out *= qpoch2_inf(cpow(qv, 1 + 2 * eps * nu), qv, qv, pol)
        out /= qpoch2_inf(cpow(qv, 1 + 2 * eps * sigma), qv, qv, pol)
    return out


def z1_bar_inv(S: complex, sigma: complex, Q, n_plus: int, n_minus: int,
               t_plus: int, t_minus: int, t: complex, q) -> complex:
    """Closed form of the diagonal-weight product over a charged diagram:

    S^{2Q} t^{N+ + N- + (Q+sigma)^2 - sigma^2} q^{2(Q+sigma)(N- - N+) - 2T- - 2T+}.
    """
    qv = as_qbase(q).q
    return (
        cpow(S * S, Q)
        * cpow(t, n_plus + n_minus + (Q + sigma) ** 2 - sigma**2)
        * cpow(qv, 2 * (Q + sigma) * (n_minus - n_plus) - 2 * t_minus - 2 * t_plus)
    )


def all_maya_diagrams(max_twice_index: int):
    """All two-color Maya diagrams with |k| <= max_twice_index/2 (both colors).

    The count grows as C(2s, s)^2 summed over sizes; keep max_twice_index
    small (the per-diagram tests use 7/2, i.e. max_twice_index = 7).
    """
    slots_pos = [(tk, c) for tk in range(1, max_twice_index + 1, 2) for c in (1, -1)]
    slots_neg = [(-tk, c) for tk in range(1, max_twice_index + 1, 2) for c in (1, -1)]
    for r in range(len(slots_pos) + 1):
        for I in itertools.combinations(slots_pos, r):
            for J in itertools.combinations(slots_neg, r):
                yield MayaDiagram2(frozenset(I), frozenset(J))
