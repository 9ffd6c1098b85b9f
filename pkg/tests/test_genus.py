import itertools

import pytest

from trinomial_curves.errors import (
    GenusMismatch,
    InvalidCase,
    NonIntegralGenus,
    SingularB,
    UnnormalizedExponents,
)
from trinomial_curves.exponent_lattice import ExponentMatrix
from trinomial_curves.genus import (
    DeltaCase,
    classify_case,
    compare_genera,
    delta,
    genus_closed_form,
    genus_via_deltas,
    normalize_exponents,
)


def test_delta_cusp():
    # A2 cusp x^2 = y^3: delta = 1
    assert delta(classify_case(2, 3)) == 1


def test_delta_node_below_case():
    case = classify_case(3, 3, 1, 1, gamma_present=True)
    assert case.position == "below"
    assert delta(case) == 1


def test_delta_degenerate_r_zero():
    assert delta(classify_case(0, 4)) == 0
    assert delta(classify_case(4, 0)) == 0


def test_delta_below_degenerate_clauses():
    # r = u = 0 and s = v = 0 classify as first-formula cases and give 0
    # (the point misses the curve: a constant term is present)
    for r, s, u, v in ((0, 3, 0, 1), (3, 0, 1, 0)):
        case = classify_case(r, s, u, v, gamma_present=True)
        assert case.position == "above_or_absent"
        assert delta(case) == 0


def test_delta_invalid_cases():
    with pytest.raises(InvalidCase):
        DeltaCase(3, 3, 1, 1, False, "below")  # below without gamma
    with pytest.raises(InvalidCase):
        DeltaCase(2, 2, 3, 3, True, "below")  # (u, v) not below the segment
    with pytest.raises(InvalidCase):
        DeltaCase(0, 3, 1, 0, True, "below")  # mixed degenerate, never strictly below
    with pytest.raises(InvalidCase):
        DeltaCase(-1, 3, 0, 0, False, "above_or_absent")


def test_delta_smooth_point():
    assert delta(classify_case(1, 1)) == 0
    assert delta(classify_case(1, 5)) == 0


def test_closed_form_examples():
    assert genus_closed_form(((3, 0), (0, 3))) == 1
    assert genus_closed_form(((2, 0), (-1, 2))) == 1
    for m in range(1, 9):  # smooth Fermat: degree-genus formula as oracle
        assert genus_closed_form(((m, 0), (0, m))) == (m - 1) * (m - 2) // 2
    with pytest.raises(SingularB):
        genus_closed_form(((2, 4), (1, 2)))


def test_closed_form_always_integral_in_range():
    # integrality of the closed form is a theorem; the NonIntegralGenus and
    # NegativeGenus guards are defensive and must never fire on real B
    from trinomial_curves.errors import NegativeGenus

    for b in itertools.product(range(-4, 5), repeat=4):
        det = b[0] * b[3] - b[1] * b[2]
        if det == 0:
            continue
        try:
            g = genus_closed_form(((b[0], b[1]), (b[2], b[3])))
        except (NonIntegralGenus, NegativeGenus) as exc:  # pragma: no cover
            pytest.fail(f"closed form rejected B = {b}: {exc}")
        assert g >= 0


def test_via_deltas_fermat_cubic():
    r = genus_via_deltas(ExponentMatrix.from_flat([3, 0, 0, 3, 0, 0]))
    assert r.genus == 1
    assert r.degree == 3
    assert [d for _, d in r.deltas] == [0, 0, 0]  # smooth curve


def test_via_deltas_elliptic_from_weierstrass_shape():
    em = normalize_exponents(ExponentMatrix.from_flat([3, 0, 0, 0, 0, 2]))  # x^3 + 1 = y^2
    assert genus_via_deltas(em).genus == 1


def test_via_deltas_hyperelliptic():
    r = genus_via_deltas(ExponentMatrix.from_flat([5, 0, 0, 2, 0, 0]))
    assert r.genus == 2
    assert genus_closed_form(((5, 0), (0, 2))) == 2


def test_via_deltas_rejects_unnormalized():
    with pytest.raises(UnnormalizedExponents):
        genus_via_deltas(ExponentMatrix.from_flat([2, 1, 1, 3, 0, 0]))
    with pytest.raises(UnnormalizedExponents):
        genus_via_deltas(ExponentMatrix.from_flat([2, 0, 0, 3, 0, 0]))  # a11 < a22
    with pytest.raises(UnnormalizedExponents):
        genus_via_deltas(ExponentMatrix.from_flat([3, 0, 0, -2, 0, 0]))


def test_agreement_battery_entries_up_to_8():
    """Closed form equals the delta route on every accepted normalized matrix."""
    accepted = 0
    for a11, a22, a31, a32 in itertools.product(range(9), repeat=4):
        if a11 < a22:
            continue
        try:
            em = ExponentMatrix.from_flat([a11, 0, 0, a22, a31, a32])
        except SingularB:
            continue
        try:
            r = genus_via_deltas(em)  # raises GenusMismatch on disagreement
        except UnnormalizedExponents:
            em2 = normalize_exponents(em)  # orientation flip must always recover
            r = genus_via_deltas(em2)
            assert r.genus == genus_closed_form(em.b)
            continue
        accepted += 1
        assert r.genus >= 0
    assert accepted > 2500


def test_compare_genera_gauss():
    em = ExponentMatrix.from_flat([3, 0, 0, 3, 0, 0])
    split = compare_genera(em, 7)
    assert split["g"] == 1 and split["twice_g_tilde"] == 2
    inert = compare_genera(em, 5)
    assert inert["g"] == 1 and inert["twice_g_tilde"] == 0


def test_compare_genera_example5_zero():
    em = ExponentMatrix.from_flat([3, 0, 0, 2, 1, 0])
    rec = compare_genera(em, 7)  # q = 3 mod 4
    assert rec["g"] == 1 and rec["twice_g_tilde"] == 0


def test_g_tilde_never_exceeds_g():
    import random

    from trinomial_curves.errors import NegativeGenus
    from trinomial_curves.exponent_lattice import constants

    random.seed(23)
    qs = [3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27]
    done = 0
    while done < 400:
        q = random.choice(qs)
        b = [random.randint(-6, 6) for _ in range(4)]
        det = b[0] * b[3] - b[1] * b[2]
        if det == 0:
            continue
        try:
            g = genus_closed_form(((b[0], b[1]), (b[2], b[3])))
        except (NonIntegralGenus, NegativeGenus):
            continue
        done += 1
        c = constants(((b[0], b[1]), (b[2], b[3])), q)
        assert c.twice_g_tilde <= 2 * g, (b, q)


def test_char_p_notice():
    # x^5 + y^2 = 1 has singular corners with local exponent 5; over F_25
    # the characteristic divides it and the formal-application notice fires
    em = ExponentMatrix.from_flat([5, 0, 0, 2, 0, 0])
    rec = compare_genera(em, 25)
    assert any("applied formally" in note for note in rec["notes"])
    smooth = compare_genera(ExponentMatrix.from_flat([3, 0, 0, 3, 0, 0]), 7)
    assert smooth["notes"] == []
