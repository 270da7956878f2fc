import pytest

from golden_data import (
    EXCEPTION_TRIPLES,
    NO_REALIZATION_TRIPLES,
    ROW_COUNTS,
    TABLE_ROWS,
)
from hklat.classify import embed_in_L, invariants_of
from hklat.fqf import forms_isomorphic
from hklat.lattices import (
    discriminant_data,
    discriminant_form,
    is_p_elementary,
    realize,
)
from hklat.tables import (
    NonIntegerResult,
    UnsupportedPrime,
    enumerate_triples,
    h4_trace,
    h_star,
    lefschetz_chi,
    moduli_dimension,
    table_csv,
    table_markdown,
)


def test_h_star_examples():
    assert h_star(3, 11, 1) == 67
    assert h_star(7, 2, 0) == 117
    assert h_star(5, 5, 1) == 31


def test_lefschetz_chi_examples():
    assert lefschetz_chi(3, 11) == 27
    assert lefschetz_chi(11, 1) == 104
    assert lefschetz_chi(3, 1) == 252


def test_closed_forms_always_integral_on_integer_input():
    # the half-integer terms cancel for every integer (p, m, a); the
    # NonIntegerResult guard stays purely defensive
    for p in range(2, 23):
        for m in range(1, 12):
            lefschetz_chi(p, m)
            for a in range(0, m + 1):
                h_star(p, m, a)


def test_h4_trace_examples():
    assert h4_trace(11, 1) == 45
    assert 2 + 2 * (1 - 11) + h4_trace(11, 1) == lefschetz_chi(3, 11)
    assert h4_trace(5, 5) == 0
    assert h4_trace(1, 13) == 78
    assert 2 + 2 * (13 - 1) + h4_trace(1, 13) == lefschetz_chi(11, 1)


def test_lefschetz_assembly_identity():
    for p, m, a, chi, hs, _, _ in TABLE_ROWS:
        r = 23 - (p - 1) * m
        assert 2 + 2 * (r - m) + h4_trace(m, r) == chi


def test_moduli_dimension():
    assert moduli_dimension(3, 11) == 10
    assert moduli_dimension(3, 5) == 4
    assert moduli_dimension(2, 2) == 0


def test_unsupported_prime():
    with pytest.raises(UnsupportedPrime):
        enumerate_triples(2)
    with pytest.raises(UnsupportedPrime):
        enumerate_triples(23)


def test_row_sets_match_tables():
    expected = {}
    for p, m, a, chi, hs, s, t in TABLE_ROWS:
        expected.setdefault(p, []).append((m, a, chi, hs, s, t))
    for p, rows in expected.items():
        got = [(r.m, r.a, r.chi, r.h_star, r.s_expr, r.t_expr) for r in enumerate_triples(p)]
        assert got == rows, f"p={p}"
        assert len(got) == ROW_COUNTS[p]


def test_excluded_triple_absent():
    assert (9, 5) not in {(r.m, r.a) for r in enumerate_triples(3)}


def test_flags():
    for p in (3, 11, 13):
        for r in enumerate_triples(p):
            assert r.embedding_exception == (r.key in EXCEPTION_TRIPLES)
            assert r.s_unique_embedding == (r.key not in EXCEPTION_TRIPLES)
            assert r.no_known_realization == (r.key in NO_REALIZATION_TRIPLES)
            assert r.t_unique_embedding


def test_p5_rows_natural_only():
    rows = enumerate_triples(5)
    assert all(r.natural_only for r in rows)
    assert all("natural" in r.realizations for r in rows)
    assert not any(r.natural_only for r in enumerate_triples(7))


def test_h_star_chi_gap_identity():
    # h* - chi = 2(a - m)(a - 25 + mp - m) >= 0 on every emitted row
    for p in (3, 5, 7, 11, 13, 17, 19):
        for r in enumerate_triples(p):
            gap = r.h_star - r.chi
            assert gap == 2 * (r.a - r.m) * (r.a - 25 + r.m * p - r.m)
            assert gap >= 0


def test_rank_and_signature_of_names():
    for p, m, a, _, _, s_name, t_name in TABLE_ROWS:
        s = realize(s_name)
        t = realize(t_name)
        assert s.rank == (p - 1) * m
        assert t.rank == 23 - (p - 1) * m
        assert s.signature() == (2, (p - 1) * m - 2)
        assert t.signature() == (1, 22 - (p - 1) * m)


def test_s_names_are_p_elementary_with_length_a():
    for p, m, a, _, _, s_name, _ in TABLE_ROWS:
        ok, length = is_p_elementary(realize(s_name), p)
        assert ok and length == a, s_name


def test_t_names_have_expected_group():
    for p, m, a, _, _, _, t_name in TABLE_ROWS:
        factors = discriminant_data(realize(t_name)).invariant_factors
        flat = []
        for f in factors:
            if f == 2 * p:
                flat.extend([2, p])
            else:
                flat.append(f)
        assert sorted(flat) == sorted([2] + [p] * a), t_name


def test_table_names_match_computed_invariants():
    # stored S names realize the pipeline's S invariants; stored T names
    # realize the embedding's orthogonal invariants
    for p, m, a, _, _, s_name, t_name in TABLE_ROWS:
        s_inv = invariants_of(realize(s_name))
        assert s_inv.p == (p if a else 0) and s_inv.a == a
        report = embed_in_L(s_inv)
        assert report.embeds
        assert forms_isomorphic(
            discriminant_form(realize(t_name)), report.orthogonal_invariants.form
        )


def test_moduli_dim_matches_fano_examples():
    rows = {(r.m, r.a): r for r in enumerate_triples(3)}
    # the four order-3 families on Fano varieties of lines have dimensions
    # 10, 4, 7, 6 = rank(S)/2 - 1
    for (m, a), dim in (((11, 1), 10), ((5, 5), 4), ((8, 6), 7), ((7, 7), 6)):
        row = rows[(m, a)]
        assert row.moduli_dim == dim
        assert dim == row.s_rank // 2 - 1


def test_markdown_and_csv_shapes():
    md = table_markdown(19)
    assert "| 19 | 1 | 1 | 20 | 20 | K19(-1) + E8^2 | U + K19 + <-2> |" in md
    csv_text = table_csv(19)
    lines = csv_text.strip().split("\n")
    assert len(lines) == 2
    assert ",20,20," in lines[1]
    assert table_markdown(5).count("Natural automorphisms only") == 1
