"""End-to-end certification of the cubic point-count theorem of Gauss.

For an odd prime p, the projective curve x^3 + y^3 + z^3 = 0 has
M_p = p + 1 points when p != 1 (mod 3); otherwise M_p = p + 1 + u where
(u, v_bar) is the unique solution of u^2 + 27*v_bar^2 = 4p with
u = 1 (mod 3). Both routes are computed here: the error-term machinery of
the trinomial family rho^i x^3 + rho^j y^3 = 1, and a raw projective
enumeration that serves as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, Optional

import numpy as np

from .errors import LawViolation, NoSolution, NotOddPrime
from .finite_field import build_field, is_prime, iter_primes
from .point_counter import CurveFamily, make_family, n_table

GAUSS_EXPONENTS = (3, 0, 0, 3, 0, 0)  # rho^i x^3 + rho^j y^3 = 1


@dataclass(frozen=True)
class GaussWitness:
    """Certified point count of the cubic Fermat curve over F_p."""

    p: int
    m_p: int
    branch: str  # "inert" (p != 1 mod 3) or "split"
    u: Optional[int] = None
    v: Optional[int] = None
    v_bar: Optional[int] = None  # reported nonnegative

    def to_dict(self) -> dict:
        return {"p": self.p, "branch": self.branch, "M_p": self.m_p,
                "u": self.u, "v_bar": self.v_bar}


def _gauss_family(p: int) -> CurveFamily:
    return make_family(GAUSS_EXPONENTS, build_field(p, 1))


def gauss_witness(p: int) -> GaussWitness:
    """Compute M_p and, on the split branch, the quadratic certificate."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")
    fam = _gauss_family(p)
    tbl = n_table(fam, "folded")
    star00 = tbl.folded_star[(0, 0)]
    m_p = star00 + 3 * gcd(3, p - 1)
    if p % 3 != 1:
        if m_p != p + 1:
            raise LawViolation(f"inert branch violated at p = {p}: M_p = {m_p}")
        return GaussWitness(p, m_p, "inert")
    u = tbl.folded_n[(0, 0)]
    v = tbl.folded_n[(0, 1)]
    if m_p != p + 1 + u:
        raise LawViolation(f"M_p = p + 1 + N_00 violated at p = {p}")
    two_v_plus_u = 2 * v + u
    if two_v_plus_u % 9 != 0:
        raise LawViolation(f"9 does not divide 2v + u at p = {p}")
    v_bar = abs(two_v_plus_u // 9)
    if u * u + 27 * v_bar * v_bar != 4 * p:
        raise LawViolation(f"u^2 + 27*v_bar^2 != 4p at p = {p}")
    if u % 3 != 1:
        raise LawViolation(f"u = {u} is not 1 mod 3 at p = {p}")
    return GaussWitness(p, m_p, "split", u=u, v=v, v_bar=v_bar)


def project_count(p: int) -> int:
    """Independent oracle: points of x^3 + y^3 + z^3 = 0 in P^2(F_p).

    Enumerates all p^2 + p + 1 projective points directly with raw modular
    arithmetic; shares nothing with the table-driven counting machinery.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")
    cube = np.arange(p, dtype=np.int64) ** 3 % p
    # chart z = 1: points [x : y : 1]
    count = int(np.count_nonzero((cube[:, None] + cube[None, :] + 1) % p == 0))
    # chart z = 0, y = 1: points [x : 1 : 0]
    count += int(np.count_nonzero((cube + 1) % p == 0))
    # remaining point [1 : 0 : 0]: 1 + 0 + 0 != 0
    return count


def cornacchia_enumerate(p: int) -> list[tuple[int, int]]:
    """All (u, v_bar) with u^2 + 27*v_bar^2 = 4p, by exhaustive scan.

    Exactly one solution exists up to the four sign choices for
    p = 1 (mod 3); a miss would falsify the theorem, hence NoSolution.
    """
    if p % 3 != 1 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not a prime with p = 1 mod 3")
    sols = []
    for u in range(-isqrt(4 * p), isqrt(4 * p) + 1):
        rest = 4 * p - u * u
        if rest % 27 == 0:
            vb = isqrt(rest // 27)
            if 27 * vb * vb == rest:
                sols.append((u, vb))
                if vb:
                    sols.append((u, -vb))
    if not sols:
        raise NoSolution(f"u^2 + 27*v^2 = 4p has no solution for p = {p}")
    orbits = {(abs(u), abs(vb)) for u, vb in sols}
    if len(orbits) != 1:
        raise LawViolation(f"multiple orbits {orbits} at p = {p}")
    cong = {u % 3 for u, _ in sols}
    if len(sols) != 4 or cong != {1, 2}:
        raise LawViolation(f"sign structure unexpected at p = {p}: {sols}")
    return sorted(sols)


def check_3x3_structure(p: int) -> dict:
    """The folded 3x3 table of the split branch and its exact constraints."""
    if p % 3 != 1 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not a prime with p = 1 mod 3")
    fam = _gauss_family(p)
    tbl = n_table(fam, "folded")
    reps = [(i, j) for i in range(3) for j in range(3)]
    if fam.coker.coset_reps != reps:
        raise LawViolation(f"coker reps are not the 3x3 block at p = {p}")
    u = tbl.folded_n[(0, 0)]
    v = tbl.folded_n[(0, 1)]
    pattern = {
        (0, 0): u, (0, 1): v, (0, 2): -u - v,
        (1, 0): v, (1, 1): -u - v, (1, 2): u,
        (2, 0): -u - v, (2, 1): u, (2, 2): v,
    }
    pattern_ok = all(tbl.folded_n[r] == pattern[r] for r in reps)
    sq = 3 * (u * u + v * v + (u + v) ** 2)
    star_div9 = all(tbl.folded_star[r] % 9 == 0 for r in reps)
    return {
        "p": p,
        "u": u,
        "v": v,
        "pattern_ok": pattern_ok,
        "square_sum": sq,
        "square_sum_is_18p": sq == 18 * p,
        "star_counts_divisible_by_9": star_div9,
    }


def gauss_sweep(p_max: int, *, p_min: int = 3, check_projective: bool = False) -> Iterator[GaussWitness]:
    """Witnesses for every odd prime in [p_min, p_max), ascending."""
    for p in iter_primes(max(p_min, 3), p_max):
        w = gauss_witness(p)
        if check_projective and project_count(p) != w.m_p:
            raise LawViolation(f"projective oracle disagrees at p = {p}")
        yield w
