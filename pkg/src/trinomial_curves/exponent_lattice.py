"""Exponent data for a trinomial curve and the cokernel of its B matrix.

The difference matrix B has entries b_rc = a_rc - a_3c. The error-term
table of a family is constant on cosets of the image of v -> Bv inside
Z_{q-1}^2, i.e. the subgroup generated by the COLUMNS (b11, b21) and
(b12, b22) together with (q-1)Z^2. (The translation identities shift the
index pair (i, j) by those column vectors; see the bijection
(x, y) -> (rho*x, y), which multiplies monomial r by rho^{b_r1}.)

All gcds are taken positive, with gcd(0, 0, m) = m.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .errors import RankDeficient, SingularB


def _gcd(*xs: int) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


@dataclass(frozen=True)
class ExponentMatrix:
    """The 3x2 exponent array of alpha x^a11 y^a12 + beta x^a21 y^a22 = x^a31 y^a32."""

    rows: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        if self.det_b == 0:
            raise SingularB(f"exponent rows are collinear: {self.rows}")

    @classmethod
    def from_flat(cls, flat: Sequence[int]) -> "ExponentMatrix":
        a = [int(x) for x in flat]
        if len(a) != 6:
            raise ValueError("expected six exponents a11,a12,a21,a22,a31,a32")
        return cls(((a[0], a[1]), (a[2], a[3]), (a[4], a[5])))

    @property
    def b(self) -> tuple[tuple[int, int], tuple[int, int]]:
        (a11, a12), (a21, a22), (a31, a32) = self.rows
        return ((a11 - a31, a12 - a32), (a21 - a31, a22 - a32))

    @property
    def det_b(self) -> int:
        ((b11, b12), (b21, b22)) = self.b
        return b11 * b22 - b12 * b21

    def flat(self) -> list[int]:
        return [x for row in self.rows for x in row]


@dataclass(frozen=True)
class CurveConstants:
    """The invariants d, e, f, k, w and 2*g_tilde of a (B, q) pair.

    twice_g_tilde = k - d - e - f + 2 is stored instead of g_tilde itself:
    integrality of g_tilde is never assumed, only reported.
    """

    d: int
    e: int
    f: int
    k: int
    w: int
    twice_g_tilde: int

    @property
    def g_tilde_integral(self) -> bool:
        return self.twice_g_tilde % 2 == 0

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "e": self.e,
            "f": self.f,
            "k": self.k,
            "w": self.w,
            "twice_g_tilde": self.twice_g_tilde,
            "g_tilde_integral": self.g_tilde_integral,
        }


def constants(B: Sequence[Sequence[int]], q: int) -> CurveConstants:
    """Compute d, e, f, k, w, 2*g_tilde for the pair (B, q)."""
    ((b11, b12), (b21, b22)) = ((int(B[0][0]), int(B[0][1])), (int(B[1][0]), int(B[1][1])))
    det = b11 * b22 - b12 * b21
    if det == 0:
        raise SingularB("det(B) = 0")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    m = q - 1
    d = _gcd(b11, b12, m)
    e = _gcd(b21, b22, m)
    f = _gcd(b11 - b21, b12 - b22, m)
    k = gcd(m * _gcd(d, e, f), abs(det))
    w = 0 if q % 2 == 0 else m // 2
    return CurveConstants(d, e, f, k, w, k - d - e - f + 2)


def smith_invariant_factors(L: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Invariant factors (s1, s2) of a rank-2 integer 2x4 matrix.

    s1 is the gcd of all entries and s1*s2 the gcd of all 2x2 minor
    determinants; the cokernel of L has order s1*s2.
    """
    r0 = [int(x) for x in L[0]]
    r1 = [int(x) for x in L[1]]
    if len(r0) != 4 or len(r1) != 4 or len(L) != 2:
        raise ValueError("expected a 2x4 matrix")
    minors = [r0[i] * r1[j] - r0[j] * r1[i] for i in range(4) for j in range(i + 1, 4)]
    m2 = _gcd(*minors)
    if m2 == 0:
        raise RankDeficient("matrix has rank < 2 over the rationals")
    s1 = _gcd(*r0, *r1)
    s2, rem = divmod(m2, s1)
    assert rem == 0 and s2 % s1 == 0, "invariant factor divisibility failed"
    return s1, s2


def _extgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class CokerGroup:
    """Z_{q-1}^2 modulo the image of B, with canonical coset representatives.

    The canonical representative of a coset is its lexicographically least
    member (i, j) with 0 <= i, j < q-1. Internally cosets are keyed through
    a Hermite basis (A, 0), (Bc, C) of the full translation lattice, so
    rep lookups are O(1) after an O(k * (q-1)) scan.
    """

    def __init__(self, B: Sequence[Sequence[int]], q: int):
        ((b11, b12), (b21, b22)) = ((int(B[0][0]), int(B[0][1])), (int(B[1][0]), int(B[1][1])))
        det = b11 * b22 - b12 * b21
        if det == 0:
            raise SingularB("det(B) = 0")
        m = q - 1
        self.q_minus_1 = m
        self.gens = ((b11, b21), (b12, b22))  # columns of B
        consts = constants(B, q)
        self.k = consts.k
        L = [[b11, b12, m, 0], [b21, b22, 0, m]]
        self.invariant_factors = smith_invariant_factors(L)
        assert self.invariant_factors[0] * self.invariant_factors[1] == self.k

        lattice = [(b11, b21), (b12, b22), (m, 0), (0, m)]
        # Hermite basis: (A, 0) and (Bc, C) with C = gcd of second coords.
        wx, wy = 0, 0
        for gx, gy in lattice:
            g, s, t = _extgcd(wy, gy)
            wx, wy = s * wx + t * gx, g
        C = wy
        xs = [gx - (gy // C) * wx for gx, gy in lattice]
        A = _gcd(*xs)
        assert A > 0 and A * C == self.k
        self._A, self._C, self._Bc = A, C, wx % A

        # lex-least representative per coset; scan rows i < A, full j range
        rep_map: dict[tuple[int, int], tuple[int, int]] = {}
        reps: list[tuple[int, int]] = []
        for i in range(A):
            for j in range(m):
                key = self.key(i, j)
                if key not in rep_map:
                    rep_map[key] = (i, j)
                    reps.append((i, j))
            if len(reps) == self.k:
                break
        assert len(reps) == self.k
        self._rep_map = rep_map
        self.coset_reps = reps
        self._rep_index = {rep: idx for idx, rep in enumerate(reps)}

    def key(self, i: int, j: int) -> tuple[int, int]:
        """Coset identifier, constant exactly on translation-lattice cosets."""
        i %= self.q_minus_1
        j %= self.q_minus_1
        y0 = j % self._C
        x0 = (i - ((j - y0) // self._C) * self._Bc) % self._A
        return (x0, y0)

    def rep_of(self, i: int, j: int) -> tuple[int, int]:
        return self._rep_map[self.key(i, j)]

    def index_of(self, i: int, j: int) -> int:
        return self._rep_index[self._rep_map[self.key(i, j)]]

    def index_grid(self, I: np.ndarray, J: np.ndarray) -> np.ndarray:
        """Vectorized coset index of (I, J) grids (values already in [0, q-1))."""
        y0 = J % self._C
        x0 = (I - ((J - y0) // self._C) * self._Bc) % self._A
        flat_key = x0 * self._C + y0
        lut = np.empty(self._A * self._C, dtype=np.int64)
        for key, rep in self._rep_map.items():
            lut[key[0] * self._C + key[1]] = self._rep_index[rep]
        return lut[flat_key]

    def to_dict(self) -> dict:
        return {
            "q_minus_1": self.q_minus_1,
            "generators": [list(g) for g in self.gens],
            "invariant_factors": list(self.invariant_factors),
            "k": self.k,
            "reps_count": len(self.coset_reps),
        }


def coker(B: Sequence[Sequence[int]], q: int) -> CokerGroup:
    """The finite abelian group Z_{q-1}^2 / im(B) with canonical reps."""
    return CokerGroup(B, q)


def element_order(v: tuple[int, int], G: CokerGroup) -> int:
    """Least r >= 1 with r*v in the translation lattice."""
    zero = G.key(0, 0)
    for r in range(1, G.k + 1):
        if G.key(r * v[0], r * v[1]) == zero:
            return r
    raise AssertionError("element order exceeds the group order")  # impossible
