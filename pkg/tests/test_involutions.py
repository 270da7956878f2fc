import pytest

from golden_data import figure_marker_set
from hklat.fqf import THREE_HALF, delta_invariant, gauss_signature
from hklat.involutions import (
    CASE_I,
    CASE_II,
    TwoElemInvariants,
    classify_involution_embeddings,
    figure_points,
    figure_points_text,
    form_of,
    has_value_three_halves,
    k3_triple_exists,
    natural_involution_shift,
    two_elementary_exists,
)
from hklat.lattices import discriminant_form, realize


def test_existence_examples():
    assert two_elementary_exists(TwoElemInvariants(1, 0, 1, 1))  # <2>
    assert two_elementary_exists(TwoElemInvariants(1, 1, 2, 1))  # <2> + <-2>
    assert not two_elementary_exists(TwoElemInvariants(1, 0, 1, 0))


def test_existence_against_rank_one_enumeration():
    # the only even rank-one lattices are <2k>; 2-elementary means <2> or <-2>,
    # both with form value +-1/2, so delta = 1 is forced
    for delta in (0, 1):
        assert two_elementary_exists(TwoElemInvariants(1, 0, 1, delta)) == (delta == 1)
        assert two_elementary_exists(TwoElemInvariants(0, 1, 1, delta)) == (delta == 1)


def test_existence_against_catalog_witnesses():
    witnesses = [
        ("U", 0, 0),
        ("U(2)", 2, 0),
        ("<2> + <-2>", 2, 1),
        ("D4", 2, 0),
        ("E8", 0, 0),
        ("E8(2)", 8, 0),
        ("E7", 1, 1),
        ("<2>", 1, 1),
        ("U + D4 + <2>", 3, 1),
    ]
    for name, a, delta in witnesses:
        lat = realize(name)
        form = discriminant_form(lat)
        assert form.length() == a, name
        assert delta_invariant(form) == delta, name
        s_plus, s_minus = lat.signature()
        assert two_elementary_exists(TwoElemInvariants(s_plus, s_minus, a, delta)), name


def test_form_of_matches_invariants():
    for r in range(1, 12):
        for a in range(0, r + 1):
            for delta in (0, 1):
                inv = TwoElemInvariants(1, r - 1, a, delta)
                if not two_elementary_exists(inv):
                    continue
                form = form_of(inv)
                assert form.length() == a
                if a:
                    assert delta_invariant(form) == delta
                    assert gauss_signature(form) == (2 - r) % 8


def test_three_halves_scan_agrees_with_criterion():
    # dual route: direct value scan vs the invariant criterion
    for r in range(1, 22):
        for a in range(1, min(r, 11) + 1):
            inv = TwoElemInvariants(1, r - 1, a, 1)
            if not two_elementary_exists(inv):
                continue
            scan = THREE_HALF in form_of(inv).value_counts()
            sigma = (2 - r) % 8
            if a == 1:
                criterion = sigma == 7
            elif a == 2:
                criterion = sigma in (0, 6)
            else:
                criterion = True
            assert scan == criterion, (r, a)
            assert has_value_three_halves(inv) == scan


def test_classify_example_rank_one():
    classes = classify_involution_embeddings(TwoElemInvariants(1, 0, 1, 1))
    assert len(classes) == 1
    cls = classes[0]
    assert cls.case == CASE_I
    s = cls.s_invariants
    assert (s.s_plus + s.s_minus, s.a, s.delta) == (22, 2, 1)


def test_classify_example_rank_two():
    classes = classify_involution_embeddings(TwoElemInvariants(1, 1, 2, 1))
    assert [c.case for c in classes] == [CASE_I, CASE_II]
    case1, case2 = classes
    assert (case1.s_invariants.a, case1.s_invariants.delta) == (3, 1)
    assert (case2.s_invariants.a, case2.s_invariants.delta) == (1, 1)
    assert case1.s_invariants.signature == (2, 19)
    # the two orthogonal classes match the known rank-21 lattices
    for name, a in (("U^2 + E8 + E7 + <-2>^2", 3), ("U^2 + E8^2 + <-2>", 1)):
        lat = realize(name)
        form = discriminant_form(lat)
        assert lat.signature() == (2, 19)
        assert form.length() == a
        assert delta_invariant(form) == 1


def test_classify_delta_zero_gives_case_one_only():
    for r in (2, 6, 10, 14, 18):
        for a in range(2, r, 2):
            t = TwoElemInvariants(1, r - 1, a, 0)
            if not two_elementary_exists(t):
                continue
            classes = classify_involution_embeddings(t)
            assert all(c.case == CASE_I for c in classes)


def test_classify_at_most_three_classes():
    for r in range(1, 22):
        for a in range(0, r + 1):
            for delta in (0, 1):
                t = TwoElemInvariants(1, r - 1, a, delta)
                if not two_elementary_exists(t):
                    continue
                classes = classify_involution_embeddings(t)
                assert len(classes) <= 3
                for c in classes:
                    if c.case == CASE_I:
                        assert c.s_invariants.a == a + 1
                        assert c.s_invariants.delta == 1
                    else:
                        assert c.s_invariants.a == a - 1


def test_natural_involution_shift():
    assert natural_involution_shift(TwoElemInvariants(1, 19, 2, 1)) == TwoElemInvariants(1, 20, 3, 1)
    assert natural_involution_shift(TwoElemInvariants(1, 0, 1, 1)) == TwoElemInvariants(1, 1, 2, 1)
    shifted = natural_involution_shift(TwoElemInvariants(1, 9, 10, 0))
    assert (shifted.r, shifted.a, shifted.delta) == (11, 11, 1)
    assert (11, 11, 0) in figure_points(2)
    with pytest.raises(ValueError):
        natural_involution_shift(TwoElemInvariants(1, 20, 3, 1))


def test_figures_match_published_charts():
    assert figure_points(1) == figure_marker_set(1)
    assert figure_points(2) == figure_marker_set(2)


def test_figure_anchor_points():
    f1 = figure_points(1)
    assert (1, 1, 1) in f1
    assert (2, 0, 0) in f1
    assert (20, 2, 1) in f1
    f2 = figure_points(2)
    assert (2, 2, 1) in f2
    assert (3, 1, 0) in f2
    assert (21, 3, 1) in f2


def test_figure2_has_no_points_with_a_zero():
    assert all(a != 0 for _, a, _ in figure_points(2))


def test_figure1_stars_have_r_2_mod_4():
    assert all(r % 4 == 2 for r, _, d in figure_points(1) if d == 0)


def test_figure2_realized_by_natural_involutions():
    # every chart-2 marker is the shift of a realizable K3 triple, except
    # (7,7,delta_S=0): its preimage (6,6,0) fails the full-length delta=0
    # signature condition (sigma = -4 mod 8), so that embedding class exists
    # but is not induced from a K3 involution
    for r, a, delta_s in figure_points(2):
        expected = (r, a, delta_s) != (7, 7, 0)
        assert k3_triple_exists(r - 1, a - 1, delta_s) == expected, (r, a, delta_s)


def test_k3_triples():
    assert k3_triple_exists(1, 1, 1)
    assert k3_triple_exists(20, 2, 1)
    assert k3_triple_exists(10, 10, 0)
    assert not k3_triple_exists(21, 3, 1)
    assert not k3_triple_exists(1, 1, 0)


def test_figure_text_render():
    text = figure_points_text(1)
    assert text.splitlines()[-1].strip().startswith("1")
    assert "•" in text


def test_figure_points_rejects_bad_index():
    with pytest.raises(ValueError):
        figure_points(3)
