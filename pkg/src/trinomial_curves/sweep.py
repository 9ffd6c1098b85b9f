"""Batch verification over exponent ranges and prime-power lists.

Distinct exponent matrices sharing one difference matrix B define the
same star counts (divide the defining equation by the third monomial), so
batteries deduplicate by B before counting. Workers split by field; the
merged stream is emitted in a fixed order and is byte-stable across
thread counts.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exponent_lattice import ExponentMatrix
from .finite_field import build_field, parse_prime_power
from .law_verifier import verify_family
from .point_counter import CurveFamily, n_table

SMALL_PRIME_POWERS = [3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27]


def enumerate_b_matrices(lo: int, hi: int) -> dict[tuple[int, int, int, int], list[int]]:
    """Map each nonsingular B to one representative exponent matrix.

    Scans all 3x2 exponent arrays with entries in [lo, hi]; the
    representative is the first array (row-major lex order) realizing B.
    """
    out: dict[tuple[int, int, int, int], list[int]] = {}
    rng = range(lo, hi + 1)
    for a in itertools.product(rng, repeat=6):
        b = (a[0] - a[4], a[1] - a[5], a[2] - a[4], a[3] - a[5])
        if b[0] * b[3] - b[1] * b[2] == 0:
            continue
        out.setdefault(b, list(a))
    return out


@dataclass
class FamilyVerdict:
    exponents: list[int]
    q: int
    all_pass: bool
    failed_laws: list[str]
    max_abs_n: int
    folded: list[tuple[int, int, int, int]]

    def to_dict(self) -> dict:
        return {
            "exponents": self.exponents,
            "q": self.q,
            "all_pass": self.all_pass,
            "failed_laws": self.failed_laws,
            "max_abs_n": self.max_abs_n,
        }


def _verify_one(fam: CurveFamily, depth: str) -> FamilyVerdict:
    report = verify_family(fam, depth)
    folded = n_table(fam, "folded").folded_rows()
    return FamilyVerdict(
        exponents=fam.exponents.flat(),
        q=fam.field.q,
        all_pass=report.all_pass,
        failed_laws=[c.law for c in report.checks if not c.passed],
        max_abs_n=max((abs(r[3]) for r in folded), default=0),
        folded=folded,
    )


def verify_q_batch(q: int, exponent_lists: Sequence[Sequence[int]], depth: str) -> list[FamilyVerdict]:
    """Verify many exponent matrices over one field (one worker task)."""
    p, n = parse_prime_power(q)
    field = build_field(p, n)
    out = []
    for flat in exponent_lists:
        fam = CurveFamily.build(ExponentMatrix.from_flat(flat), field)
        out.append(_verify_one(fam, depth))
    return out


def run_battery(
    qs: Iterable[int],
    lo: int = 0,
    hi: int = 4,
    *,
    depth: str = "full",
    threads: int = 1,
    dedupe: bool = True,
) -> list[FamilyVerdict]:
    """Verify every (B, q) pair in the range; results ordered by (q, exponents)."""
    if dedupe:
        reps = sorted(enumerate_b_matrices(lo, hi).values())
    else:
        reps = [
            list(a)
            for a in itertools.product(range(lo, hi + 1), repeat=6)
            if (a[0] - a[4]) * (a[3] - a[5]) - (a[1] - a[5]) * (a[2] - a[4]) != 0
        ]
    qs = sorted(set(qs))
    if threads > 1 and len(qs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(verify_q_batch, qs, itertools.repeat(reps), itertools.repeat(depth)))
    else:
        batches = [verify_q_batch(q, reps, depth) for q in qs]
    return [v for batch in batches for v in batch]
