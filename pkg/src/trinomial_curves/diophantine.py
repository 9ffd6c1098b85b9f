"""Integer certificates for the worked families: the x + y + z = 0 sphere
program and the structural multiset patterns of the diagonal and
x^3 + y^2 = x families.

All example checks rebuild their counts from scratch rather than reusing
cached tables, so they double as independent oracles for the counting
code. Scans use exact integer square roots; no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional

from .errors import TrinomialCurveError
from .finite_field import FieldCtx, build_field, parse_prime_power
from .point_counter import CurveFamily, make_family, n_value


@dataclass(frozen=True)
class OptiResult:
    """Maximal x with x + y + z = 0 and x^2 + y^2 + z^2 = 6q over Z."""

    q: int
    max_x: Optional[int]
    witnesses: tuple[tuple[int, int, int], ...]

    def to_dict(self) -> dict:
        return {"q": self.q, "max_x": self.max_x,
                "witnesses": [list(w) for w in self.witnesses]}


def opti_max(q: int) -> OptiResult:
    """Solve the integer program by exhaustive scan over x, largest first.

    Fixing x turns the constraints into a quadratic in y with discriminant
    12q - 3x^2, so feasibility is an exact perfect-square test. Every
    feasible x satisfies x^2 <= 4q.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    for x in range(isqrt(4 * q), -1, -1):
        disc = 12 * q - 3 * x * x
        t = isqrt(disc)
        if t * t != disc or (t - x) % 2:
            continue
        y = (-x + t) // 2
        z = -x - y
        witnesses = {(x, y, z), (x, z, y)}
        return OptiResult(q, x, tuple(sorted(witnesses)))
    return OptiResult(q, None, ())


def _require(cond: bool, msg: str):
    if not cond:
        raise TrinomialCurveError(msg)


def _fresh_alphas(fam: CurveFamily, count: int, j: int = 0) -> list[int]:
    return [n_value(i, j, fam) for i in range(count)]


def example2_conic_check(fam: CurveFamily) -> dict:
    """Diagonal family with odd a11, a22 = 2, odd q: sphere-and-plane identities.

    alpha_i = N_{i0} for 0 <= i < d must sum to zero with square sum
    d(d-1)q, and the j = 1 column is the negative of the j = 0 column.
    """
    (a11, a12), (a21, a22), (a31, a32) = fam.exponents.rows
    q = fam.field.q
    _require(a12 == 0 and a21 == 0 and a31 == 0 and a32 == 0, "not a diagonal family")
    _require(a11 % 2 == 1 and a22 == 2 and q % 2 == 1, "shape requires odd a11, a22 = 2, odd q")
    d = fam.constants.d
    alphas = _fresh_alphas(fam, d)
    negs = _fresh_alphas(fam, d, j=1)
    sum_res = sum(alphas)
    sq_res = sum(a * a for a in alphas) - d * (d - 1) * q
    pairing_ok = all(negs[i] == -alphas[i] for i in range(d))
    return {
        "q": q,
        "d": d,
        "alphas": alphas,
        "sum_residual": sum_res,
        "square_sum_residual": sq_res,
        "column_pairing_ok": pairing_ok,
        "ok": sum_res == 0 and sq_res == 0 and pairing_ok,
    }


def example4_check(fam: CurveFamily) -> dict:
    """Diagonal family with even a11, a22 = 2, odd q: split alternating sums."""
    (a11, a12), (a21, a22), (a31, a32) = fam.exponents.rows
    q = fam.field.q
    _require(a12 == 0 and a21 == 0 and a31 == 0 and a32 == 0, "not a diagonal family")
    _require(a11 % 2 == 0 and a22 == 2 and q % 2 == 1, "shape requires even a11, a22 = 2, odd q")
    d = fam.constants.d
    alphas = _fresh_alphas(fam, d)
    even_res = sum(alphas[0::2])
    odd_res = sum(alphas[1::2])
    sq_res = sum(a * a for a in alphas) - d * (d - 2) * q
    return {
        "q": q,
        "d": d,
        "alphas": alphas,
        "even_sum_residual": even_res,
        "odd_sum_residual": odd_res,
        "square_sum_residual": sq_res,
        "ok": even_res == 0 and odd_res == 0 and sq_res == 0,
    }


EXAMPLE5_EXPONENTS = (3, 0, 0, 2, 1, 0)  # rho^i x^3 + rho^j y^2 = x


def example5_check(q: int, field: Optional[FieldCtx] = None) -> dict:
    """The x^3 + y^2 = x family over odd q.

    For q = 3 (mod 4) every error term vanishes. For q = 1 (mod 4) the
    folded values are {alpha, -alpha, beta, -beta} with alpha = N_00,
    beta = N_10 and alpha^2 + beta^2 = 4q; when additionally p = 3 (mod 4)
    the multiset degenerates to {2p^n, -2p^n, 0, 0}.
    """
    _require(q % 2 == 1, "shape requires odd q")
    if field is None:
        p, n = parse_prime_power(q)
        field = build_field(p, n)
    fam = make_family(EXAMPLE5_EXPONENTS, field)
    reps = fam.coker.coset_reps
    values = {rep: n_value(rep[0], rep[1], fam) for rep in reps}
    out: dict = {"q": q, "k": fam.constants.k, "values": {str(r): v for r, v in values.items()}}
    if q % 4 == 3:
        out["expected"] = "all zero"
        out["ok"] = all(v == 0 for v in values.values())
        return out
    alpha = values[(0, 0)]
    beta = values[(1, 0)]
    multiset = sorted(values.values())
    expected = sorted([alpha, -alpha, beta, -beta])
    circle_res = alpha * alpha + beta * beta - 4 * q
    out.update(
        alpha=alpha,
        beta=beta,
        circle_residual=circle_res,
        multiset_ok=multiset == expected,
    )
    p, n = parse_prime_power(q)
    if p % 4 == 3:
        _require(n % 2 == 0, "p = 3 mod 4 with q = 1 mod 4 forces an even power")
        half = p ** (n // 2)
        out["expected_multiset"] = sorted([2 * half, -2 * half, 0, 0])
        out["degenerate_ok"] = multiset == out["expected_multiset"]
        out["ok"] = out["degenerate_ok"] and circle_res == 0 and out["multiset_ok"]
    else:
        out["ok"] = circle_res == 0 and out["multiset_ok"]
    return out
