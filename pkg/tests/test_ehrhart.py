from __future__ import annotations

from fractions import Fraction as F

import pytest

import qbary as qb

from conftest import brute_count


def test_count_points_paper_examples(fixtures):
    assert qb.count_points(fixtures["p2"], 1) == 10
    assert qb.count_points(fixtures["cube3"], 2) == 125
    assert qb.count_points(fixtures["f1"], 1) == 9
    assert qb.count_points(fixtures["f1"], 0) == 1


def test_count_points_matches_brute_force(fixtures, corpus):
    sample = list(fixtures.values()) + corpus[:8]
    for p in sample:
        for k in range(4):
            assert qb.count_points(p, k) == brute_count(p, k), (p.vertices, k)


def test_interior_count_examples_and_oracle(fixtures):
    assert qb.interior_count(fixtures["f1"], 1) == 1
    assert qb.interior_count(fixtures["cube2"], 1) == 1
    p2 = fixtures["p2"]
    assert qb.interior_count(p2, 2) == 10
    # cross-check through the counting polynomial at a negative argument
    ehr = qb.ehrhart_polynomial(p2).poly
    assert (-1) ** p2.dim * ehr(-2) == qb.interior_count(p2, 2)
    for p in fixtures.values():
        for k in (1, 2):
            assert qb.interior_count(p, k) == brute_count(p, k, strict=True)


def test_count_errors():
    p = qb.load_fixture("f1")
    with pytest.raises(qb.InvalidInput):
        qb.count_points(p, -1)
    with pytest.raises(qb.InvalidInput):
        qb.interior_count(p, 0)


def test_ehrhart_polynomials_known(fixtures):
    assert qb.ehrhart_polynomial(fixtures["p2"]).poly.coefficients == (
        F(1),
        F(9, 2),
        F(9, 2),
    )
    segment = qb.hull_from_vertices([(0,), (1,)])
    assert qb.ehrhart_polynomial(segment).poly.coefficients == (F(1), F(1))
    blowup = fixtures["blowup-p1xp1"]
    assert [qb.count_points(blowup, k) for k in (0, 1, 2)] == [1, 8, 22]
    assert qb.ehrhart_polynomial(blowup).poly.coefficients == (F(1), F(7, 2), F(7, 2))


def test_ehrhart_evaluates_to_counts_everywhere(fixtures, corpus):
    for p in list(fixtures.values()) + corpus[:10]:
        ehr = qb.ehrhart_polynomial(p).poly
        for k in range(2 * p.dim + 2):
            assert ehr(k) == qb.count_points(p, k)


def test_dilation_identity(fixtures):
    for p in (fixtures["f1"], fixtures["cube3"]):
        for a in (1, 2):
            for b in (1, 2, 3):
                assert qb.count_points(p, a * b) == qb.count_points(qb.dilate(p, a), b)


def test_reciprocity_fixture_suite(fixtures):
    for name, p in fixtures.items():
        report = qb.reciprocity_check(p, 4)
        assert report.all_passed, name
        reflexive = qb.classify(p).reflexive
        for entry in report.entries:
            assert entry.general_ok
            assert (entry.reflexive_ok is not None) == reflexive


def test_reciprocity_non_reflexive_skips_shifted_variant(fixtures):
    report = qb.reciprocity_check(fixtures["square-delzant-nonreflexive"], 3)
    assert report.all_passed
    assert all(e.reflexive_ok is None for e in report.entries)


def test_reflexive_closed_forms(fixtures):
    f1 = qb.reflexive_closed_form(fixtures["f1"])
    assert f1.poly.coefficients == (F(1), F(4), F(4))
    assert f1.source == "reflexive_closed_form"
    cube3 = qb.reflexive_closed_form(fixtures["cube3"])
    assert cube3.poly.coefficients == (F(1), F(6), F(12), F(8))
    fano = qb.reflexive_closed_form(fixtures["fano-3-29"])
    vol = qb.measure(fixtures["fano-3-29"]).volume
    assert fano.poly.coefficient(1) == vol / 2 + 2
    assert fano.poly == qb.ehrhart_polynomial(fixtures["fano-3-29"]).poly


def test_reflexive_closed_form_rejects_out_of_scope(fixtures):
    with pytest.raises(qb.Unsupported):
        qb.reflexive_closed_form(fixtures["square-delzant-nonreflexive"])
    segment = qb.hull_from_vertices([(-1,), (1,)])
    with pytest.raises(qb.Unsupported):
        qb.reflexive_closed_form(segment)
