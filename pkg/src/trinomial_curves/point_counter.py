"""Exact point counts for trinomial curve families and their N_ij tables.

The affine counts |C*_ij| over (F_q*)^2 are obtained by exhaustive
enumeration in exponent coordinates: writing x = rho^s, y = rho^t, each
monomial becomes an exp-table lookup of a linear form in (s, t) mod q-1,
so no generic powering happens in the inner loop. The error term is

    N_ij = |C*_ij| - (q+1) + D_d(i) + D_e(j) + D_f(i-j+w),

and the full (q-1)x(q-1) table is constant on cosets of the translation
lattice im(B), which allows the folded form with one value per coset.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NegativeExponent, TableTooLarge
from .exponent_lattice import CokerGroup, CurveConstants, ExponentMatrix, coker, constants
from .finite_field import FieldCtx

DEFAULT_TABLE_BUDGET = 1 << 12  # largest q for which a full (q-1)^2 table is built
_CHUNK = 1 << 22  # max grid cells processed at once


def D(ell: int, i: int) -> int:
    """ell if ell divides i (sign-blind, D(ell, 0) = ell), else 0."""
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    return ell if i % ell == 0 else 0


@dataclass(frozen=True, eq=False)
class CurveFamily:
    """A trinomial family over a fixed field, with derived invariants."""

    exponents: ExponentMatrix
    field: FieldCtx
    constants: CurveConstants
    coker: CokerGroup

    @classmethod
    def build(cls, exponents: ExponentMatrix, field: FieldCtx) -> "CurveFamily":
        B = exponents.b
        return cls(exponents, field, constants(B, field.q), coker(B, field.q))

    def d_sum(self, i: int, j: int) -> int:
        c = self.constants
        return D(c.d, i) + D(c.e, j) + D(c.f, i - j + c.w)


def make_family(flat_exponents: Sequence[int], field: FieldCtx) -> CurveFamily:
    return CurveFamily.build(ExponentMatrix.from_flat(flat_exponents), field)


class _StarCounter:
    """Shared exponent grids for all counts of one family (chunked over s)."""

    def __init__(self, fam: CurveFamily):
        ctx = fam.field
        m = ctx.q - 1
        self.ctx = ctx
        self.m = m
        (a11, a12), (a21, a22), (a31, a32) = fam.exponents.rows
        self.red = [(a11 % m, a12 % m), (a21 % m, a22 % m), (a31 % m, a32 % m)]
        # exp table doubled so (index + shift) < 2m needs no reduction
        self.exp2 = np.concatenate([ctx.exp_table, ctx.exp_table])
        rows_per_chunk = max(1, _CHUNK // m)
        self._blocks = []
        t = np.arange(m, dtype=np.int64)[None, :]
        for s0 in range(0, m, rows_per_chunk):
            s = np.arange(s0, min(s0 + rows_per_chunk, m), dtype=np.int64)[:, None]
            (r1, r2, r3) = self.red
            U = (r1[0] * s + r1[1] * t) % m
            V = (r2[0] * s + r2[1] * t) % m
            W = (r3[0] * s + r3[1] * t) % m
            self._blocks.append((U, V, W, self.exp2[W]))

    def count(self, i: int, j: int) -> int:
        m = self.m
        i %= m
        j %= m
        total = 0
        for U, V, _, EW in self._blocks:
            lhs = self.ctx.add_elems(self.exp2[U + i], self.exp2[V + j])
            total += int(np.count_nonzero(lhs == EW))
        return total

    def star_row(self, i: int) -> np.ndarray:
        """Row i of the full star table: counts for all j at once."""
        m = self.m
        i %= m
        dlog = self.ctx.dlog_table
        row = np.zeros(m, dtype=np.int64)
        for U, V, _, EW in self._blocks:
            Z = self.ctx.sub_elems(EW, self.exp2[U + i])
            nz = Z != 0
            jv = (dlog[Z[nz]] - V[nz]) % m
            row += np.bincount(jv, minlength=m)
        return row


def count_star(i: int, j: int, fam: CurveFamily) -> int:
    """|C*_ij| by exhaustive enumeration over (F_q*)^2; i, j taken mod q-1."""
    return _StarCounter(fam).count(i, j)


def n_value(i: int, j: int, fam: CurveFamily) -> int:
    """The error term N_ij of the count formula."""
    q = fam.field.q
    m = q - 1
    return count_star(i, j, fam) - (q + 1) + fam.d_sum(i % m, j % m)


def _axis_count(fam: CurveFamily, coeff_logs: tuple[int, int, int], axis: int) -> int:
    """Points with the axis-th variable zero and the other nonzero, O(q) scan."""
    ctx = fam.field
    m = ctx.q - 1
    rows = fam.exponents.rows
    terms = []  # (coeff element or None, exponent of the free variable)
    for r in range(3):
        zero_exp = rows[r][axis]
        if zero_exp > 0:
            continue  # monomial vanishes on the axis (0^positive = 0)
        terms.append((coeff_logs[r], r, rows[r][1 - axis]))
    count = 0
    for t in range(m):
        acc = 0
        for clog, r, a_free in terms:
            val = int(ctx.exp_table[(clog + a_free * t) % m])
            if r == 2:
                val = ctx.neg(val)
            acc = ctx.add(acc, val)
        if acc == 0:
            count += 1
    return count


def count_full(i: int, j: int, fam: CurveFamily) -> int:
    """|C_ij| over F_q^2 with the 0^0 = 1 convention at the origin."""
    rows = fam.exponents.rows
    if any(a < 0 for row in rows for a in row):
        raise NegativeExponent("full counts require nonnegative exponents")
    ctx = fam.field
    m = ctx.q - 1
    i %= m
    j %= m
    coeff_logs = (i, j, 0)
    total = count_star(i, j, fam)
    total += _axis_count(fam, coeff_logs, axis=0)  # x = 0, y != 0
    total += _axis_count(fam, coeff_logs, axis=1)  # y = 0, x != 0
    # origin: each monomial evaluates to its coefficient iff both exponents are 0
    at_origin = [int(ctx.exp_table[coeff_logs[r]]) if rows[r] == (0, 0) else 0 for r in range(3)]
    if ctx.add(at_origin[0], at_origin[1]) == at_origin[2]:
        total += 1
    return total


@dataclass(eq=False)
class NTable:
    """Star counts and error terms, folded over coker(B) and optionally full."""

    family: CurveFamily
    reps: list[tuple[int, int]]
    folded_star: dict[tuple[int, int], int]
    folded_n: dict[tuple[int, int], int]
    full_star: Optional[np.ndarray] = None
    full_n: Optional[np.ndarray] = None
    method: str = "folded"

    @property
    def q(self) -> int:
        return self.family.field.q

    def folded_multiset(self) -> list[int]:
        return sorted(self.folded_n.values())

    def folded_rows(self) -> list[tuple[int, int, int, int]]:
        return [(i, j, self.folded_star[(i, j)], self.folded_n[(i, j)]) for i, j in self.reps]

    def iter_full_rows(self):
        """Stream (i, j, star, N) rows of the full table."""
        if self.full_n is None:
            raise ValueError("full table not built")
        m = self.q - 1
        for i in range(m):
            srow = self.full_star[i]
            nrow = self.full_n[i]
            for j in range(m):
                yield i, j, int(srow[j]), int(nrow[j])


def _d_vectors(fam: CurveFamily):
    c = fam.constants
    m = fam.field.q - 1
    idx = np.arange(m, dtype=np.int64)
    dd = np.where(idx % c.d == 0, c.d, 0)
    de = np.where(idx % c.e == 0, c.e, 0)
    return idx, dd, de


def _full_from_star(fam: CurveFamily, star: np.ndarray) -> np.ndarray:
    c = fam.constants
    q = fam.field.q
    idx, dd, de = _d_vectors(fam)
    df = np.where((idx[:, None] - idx[None, :] + c.w) % c.f == 0, c.f, 0)
    return star - (q + 1) + dd[:, None] + de[None, :] + df


def n_table(
    fam: CurveFamily,
    mode: str = "folded",
    *,
    method: str = "direct",
    threads: int = 1,
    budget: int = DEFAULT_TABLE_BUDGET,
) -> NTable:
    """Build the folded table, or the full (q-1)^2 table.

    Full mode either counts every row directly or broadcasts the folded
    values through the coset map (`method="broadcast"`); verification runs
    do both and compare (see law_verifier).
    """
    if mode not in ("folded", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    q = fam.field.q
    m = q - 1
    if mode == "full" and q > budget:
        raise TableTooLarge(f"full table for q = {q} exceeds budget {budget}")

    counter = _StarCounter(fam)

    def star_at(rep):
        return counter.count(rep[0], rep[1])

    reps = fam.coker.coset_reps
    if threads > 1 and len(reps) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            star_vals = list(pool.map(star_at, reps))
    else:
        star_vals = [star_at(rep) for rep in reps]
    folded_star = dict(zip(reps, star_vals))
    folded_n = {rep: s - (q + 1) + fam.d_sum(*rep) for rep, s in folded_star.items()}
    tbl = NTable(fam, list(reps), folded_star, folded_n)
    if mode == "folded":
        return tbl

    if method == "direct":
        if threads > 1 and m > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(counter.star_row, range(m)))
            star = np.stack(rows)
        else:
            star = np.stack([counter.star_row(i) for i in range(m)])
    elif method == "broadcast":
        idx = np.arange(m, dtype=np.int64)
        grid = fam.coker.index_grid(idx[:, None], idx[None, :])
        star = np.array([folded_star[r] for r in reps], dtype=np.int64)[grid]
    else:
        raise ValueError(f"unknown method {method!r}")
    tbl.full_star = star
    tbl.full_n = _full_from_star(fam, star)
    tbl.method = method
    return tbl
