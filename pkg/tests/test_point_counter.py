import random
from math import gcd

import numpy as np
import pytest

from trinomial_curves.errors import NegativeExponent, TableTooLarge
from trinomial_curves.finite_field import build_field, parse_prime_power
from trinomial_curves.point_counter import (
    D,
    CurveFamily,
    count_full,
    count_star,
    make_family,
    n_table,
    n_value,
)

GAUSS = (3, 0, 0, 3, 0, 0)


def brute_count_star(i, j, fam):
    """Independent oracle: evaluate the defining equation pointwise."""
    ctx = fam.field
    q = ctx.q
    (a11, a12), (a21, a22), (a31, a32) = fam.exponents.rows
    rho_i, rho_j = ctx.pow(ctx.generator, i), ctx.pow(ctx.generator, j)
    total = 0
    for x in range(1, q):
        for y in range(1, q):
            lhs = ctx.add(
                ctx.mul(rho_i, ctx.mul(ctx.pow(x, a11), ctx.pow(y, a12))),
                ctx.mul(rho_j, ctx.mul(ctx.pow(x, a21), ctx.pow(y, a22))),
            )
            if lhs == ctx.mul(ctx.pow(x, a31), ctx.pow(y, a32)):
                total += 1
    return total


def test_d_examples():
    assert D(3, 0) == 3
    assert D(3, 4) == 0
    assert D(3, -6) == 3
    with pytest.raises(ValueError):
        D(0, 1)


def test_count_star_cubes_f7(f7):
    fam = make_family(GAUSS, f7)
    assert count_star(0, 0, fam) == 0  # cubes of F_7* are {1, 6}; no pair sums to 1


def test_count_star_f4():
    f4 = build_field(2, 2)
    fam = make_family(GAUSS, f4)
    # every x in F_4* has x^3 = 1, and 1 + 1 = 0 != 1 in characteristic 2
    assert count_star(0, 0, fam) == 0


def test_count_star_zero_g_tilde_family_exact_formula(f7):
    # x^3 + y^2 = x over F_7 (q = 3 mod 4): N_ij = 0 everywhere
    fam = make_family((3, 0, 0, 2, 1, 0), f7)
    q = f7.q
    for i in range(q - 1):
        for j in range(q - 1):
            assert count_star(i, j, fam) == q + 1 - fam.d_sum(i, j)


def test_count_star_matches_bruteforce(f7, f25):
    random.seed(3)
    for ctx in (f7, f25):
        for _ in range(6):
            flat = [random.randint(0, 4) for _ in range(6)]
            try:
                fam = make_family(flat, ctx)
            except Exception:
                continue
            i = random.randrange(ctx.q - 1)
            j = random.randrange(ctx.q - 1)
            assert count_star(i, j, fam) == brute_count_star(i, j, fam)


def test_count_star_negative_exponents_reduce_mod_group_order(f7):
    fam_neg = make_family((3, 0, -1, 2, 0, 0), f7)
    fam_pos = make_family((3, 0, 5, 2, 0, 0), f7)  # -1 = 5 mod 6
    for i in range(6):
        for j in range(6):
            assert count_star(i, j, fam_neg) == count_star(i, j, fam_pos)


def test_count_full_cubes_f7(f7):
    fam = make_family(GAUSS, f7)
    # 3 cube roots of 1 on each axis, origin fails 0 + 0 = 1
    assert count_full(0, 0, fam) == 6


def test_count_full_origin_on_curve(f7):
    fam = make_family((3, 0, 0, 2, 1, 0), f7)  # x^3 + y^2 = x passes through (0, 0)
    brute = 0
    for x in range(7):
        for y in range(7):
            if (pow(x, 3, 7) + pow(y, 2, 7)) % 7 == x % 7:
                brute += 1
    assert count_full(0, 0, fam) == brute


def test_count_full_brute_force_battery(f7):
    random.seed(12)
    for _ in range(10):
        flat = [random.randint(0, 3) for _ in range(6)]
        try:
            fam = make_family(flat, f7)
        except Exception:
            continue
        i, j = random.randrange(6), random.randrange(6)
        (a11, a12), (a21, a22), (a31, a32) = fam.exponents.rows
        ctx = fam.field

        def term(c_log, ax, ay, x, y):
            # 0^0 = 1 convention
            vx = 1 if x == 0 and ax == 0 else (0 if x == 0 else ctx.pow(x, ax))
            vy = 1 if y == 0 and ay == 0 else (0 if y == 0 else ctx.pow(y, ay))
            return ctx.mul(ctx.pow(ctx.generator, c_log), ctx.mul(vx, vy))

        brute = 0
        for x in range(7):
            for y in range(7):
                lhs = ctx.add(term(i, a11, a12, x, y), term(j, a21, a22, x, y))
                if lhs == term(0, a31, a32, x, y):
                    brute += 1
        assert count_full(i, j, fam) == brute


def test_count_full_rejects_negative_exponents(f7):
    fam = make_family((3, 0, -1, 2, 0, 0), f7)
    with pytest.raises(NegativeExponent):
        count_full(0, 0, fam)


def test_n_value_gauss_f7(f7):
    fam = make_family(GAUSS, f7)
    assert n_value(0, 0, fam) == 1  # 0 - 8 + 3 + 3 + 3


def test_n_value_gauss_f13(f13):
    fam = make_family(GAUSS, f13)
    assert n_value(0, 0, fam) == -5  # u = -5: 25 + 27 = 4*13, -5 = 1 mod 3


def test_n_value_zero_g_tilde(f7):
    fam = make_family((3, 0, 0, 2, 1, 0), f7)
    assert fam.constants.twice_g_tilde == 0
    assert all(n_value(i, j, fam) == 0 for i in range(6) for j in range(6))


def test_n_table_gauss_f7_folded(f7):
    fam = make_family(GAUSS, f7)
    tbl = n_table(fam, "folded")
    assert len(tbl.folded_n) == 9
    u, v = tbl.folded_n[(0, 0)], tbl.folded_n[(0, 1)]
    pattern = {
        (0, 0): u, (0, 1): v, (0, 2): -u - v,
        (1, 0): v, (1, 1): -u - v, (1, 2): u,
        (2, 0): -u - v, (2, 1): u, (2, 2): v,
    }
    assert tbl.folded_n == pattern


def test_n_table_full_direct_equals_broadcast(f7, f13):
    for ctx, flat in ((f7, GAUSS), (f13, (3, 0, 0, 2, 1, 0)), (f13, (2, 1, 1, 3, 0, 0))):
        fam = make_family(flat, ctx)
        direct = n_table(fam, "full", method="direct")
        bcast = n_table(fam, "full", method="broadcast")
        assert np.array_equal(direct.full_n, bcast.full_n)
        assert np.array_equal(direct.full_star, bcast.full_star)


def test_n_table_randomized_fold_direct_agreement():
    random.seed(99)
    qs = [3, 4, 5, 8, 9, 11, 16, 17]
    fields = {q: build_field(*parse_prime_power(q)) for q in qs}
    done = 0
    while done < 40:
        q = random.choice(qs)
        flat = [random.randint(0, 4) for _ in range(6)]
        try:
            fam = make_family(flat, fields[q])
        except Exception:
            continue
        done += 1
        direct = n_table(fam, "full", method="direct")
        bcast = n_table(fam, "full", method="broadcast")
        assert np.array_equal(direct.full_n, bcast.full_n)


def test_n_table_threads_bit_identical(f25):
    fam = make_family((3, 0, 0, 2, 0, 0), f25)
    one = n_table(fam, "full", method="direct", threads=1)
    four = n_table(fam, "full", method="direct", threads=4)
    assert one.folded_n == four.folded_n
    assert np.array_equal(one.full_n, four.full_n)


def test_n_table_budget(f25):
    fam = make_family((3, 0, 0, 2, 0, 0), f25)
    with pytest.raises(TableTooLarge):
        n_table(fam, "full", budget=16)


def test_generator_independence(f13):
    fam = make_family((3, 0, 0, 2, 1, 0), f13)
    tbl = n_table(fam, "full", method="direct")
    # 6 also generates F_13*; tables permute but folded multiset is preserved
    alt_ctx = build_field(13, 1, generator=6)
    alt = make_family((3, 0, 0, 2, 1, 0), alt_ctx)
    alt_tbl = n_table(alt, "full", method="direct")
    assert sorted(tbl.folded_n.values()) == sorted(alt_tbl.folded_n.values())
    assert sorted(tbl.full_n.ravel().tolist()) == sorted(alt_tbl.full_n.ravel().tolist())
    assert int((tbl.full_n.astype(object) ** 2).sum()) == int(
        (alt_tbl.full_n.astype(object) ** 2).sum()
    )


def test_lemma_monomial_count_oracle():
    """|{(x,y): rho^i x^a1 y^a2 = 1}| = (q-1) * D_ell(i), ell = gcd(a1, a2, q-1)."""
    random.seed(5)
    for q in (7, 9, 13, 16):
        ctx = build_field(*parse_prime_power(q))
        m = q - 1
        nonzero = [int(v) for v in ctx.exp_table]
        for _ in range(25):
            a1, a2, i = random.randint(-6, 6), random.randint(-6, 6), random.randrange(m)
            rho_i = ctx.pow(ctx.generator, i)
            direct = sum(
                1
                for x in nonzero
                for y in nonzero
                if ctx.mul(rho_i, ctx.mul(ctx.pow(x, a1), ctx.pow(y, a2))) == 1
            )
            ell = gcd(gcd(a1, a2), m)
            assert direct == m * D(ell, i)


def test_lemma_d_power_sums():
    """Sum of D_ell(i)^r over one period is ell^(r-1) * (q-1)."""
    for q in (4, 7, 13, 25, 27):
        m = q - 1
        for ell in [x for x in range(1, m + 1) if m % x == 0]:
            for r in (1, 2):
                assert sum(D(ell, i) ** r for i in range(m)) == ell ** (r - 1) * m


def test_q2_edge_case():
    f2 = build_field(2, 1)
    fam = make_family((1, 0, 0, 1, 0, 0), f2)
    assert count_star(0, 0, fam) == 0  # 1 + 1 = 0 != 1
    tbl = n_table(fam, "full", method="direct")
    assert tbl.full_n.shape == (1, 1)
    assert int(tbl.full_n[0, 0]) == 0 - 3 + 3  # star - (q+1) + 1+1+1
