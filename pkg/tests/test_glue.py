import pytest

from conftest import random_complex, seeded_rng
from siltglue.fields import QQ
from siltglue.complexes import ProjComplex, direct_sum_many, minimize, shift
from siltglue.decompose import is_isomorphic
from siltglue.fixtures import (
    canonical_quotient_silting,
    glue_fixtures,
    ka3_algebra,
)
from siltglue.gluing import (
    GlueError,
    canonical_corner_silting,
    check_co_aisle_agreement,
    check_star_condition,
    glue,
    glue_shortcut,
)
from siltglue.recollement import idempotent_recollement


@pytest.fixture(scope="module")
def worked_glue():
    name, rec, T_B = glue_fixtures()[0]
    T_C = [canonical_corner_silting(rec)]
    return rec, glue(rec, T_C, T_B)


def test_glue_anchor_decomposition(worked_glue):
    rec, cert = worked_glue
    assert cert.passed
    got = {frozenset(x.graded_multiset().items()) for x, _, _ in cert.decomposition}
    P = {v: ProjComplex.stalk(rec.A, v) for v in rec.A.quiver.vertices}
    want = {
        frozenset(shift(P["1"], 1).graded_multiset().items()),
        frozenset(P["2"].graded_multiset().items()),
        frozenset(P["3"].graded_multiset().items()),
    }
    assert got == want
    assert all(m == 1 for _, m, _ in cert.decomposition)


def test_glue_anchor_triangle(worked_glue):
    rec, cert = worked_glue
    (tri,) = cert.triangles
    assert tri["s"] == 1
    assert tri["M"].graded_multiset() == {-2: ("3",), -1: ("1", "3"), 0: ("2",)}
    assert tri["V"].graded_multiset() == {-1: ("1",), 0: ("2",)}
    assert tri["U"].graded_multiset() == {-2: ("3",), -1: ("3",)}


def test_glue_anchor_reports(worked_glue):
    rec, cert = worked_glue
    assert cert.reports["star_condition"]["ok"]
    assert cert.reports["presilting"]["ok"]
    assert cert.reports["generation"]["status"] == "generated"
    assert cert.reports["k0"]["unimodular"]
    assert abs(cert.reports["k0"]["det"]) == 1


def test_glue_rejects_positive_input():
    rec = idempotent_recollement(ka3_algebra(), ["3"])
    bad_B = [canonical_quotient_silting(rec, shifted=("2",))]  # P1 -> P2[1] map
    with pytest.raises(GlueError, match="not non-positive"):
        glue(rec, [canonical_corner_silting(rec)], bad_B)
    bad_C = [shift(canonical_corner_silting(rec), 1), canonical_corner_silting(rec)]
    with pytest.raises(GlueError, match="T_C"):
        glue(rec, bad_C, [canonical_quotient_silting(rec)])


def test_glue_empty_quotient_part():
    rec = idempotent_recollement(ka3_algebra(), ["3"])
    cert = glue(rec, [canonical_corner_silting(rec)], [])
    assert cert.tildes == []
    # only j_! of the corner silting survives; it is presilting but cannot
    # generate the whole category
    assert cert.reports["presilting"]["ok"]
    assert cert.reports["generation"]["status"] == "inconclusive"
    assert not cert.passed


@pytest.mark.parametrize("name,rec,T_B", glue_fixtures(), ids=[f[0] for f in glue_fixtures()])
def test_glue_fixture_matrix(name, rec, T_B):
    T_C = [canonical_corner_silting(rec)]
    probes = [ProjComplex.stalk(rec.A, v) for v in rec.A.quiver.vertices]
    cert = glue(rec, T_C, T_B, probes=probes)
    assert cert.passed, cert.reports
    assert cert.reports["co_aisle_agreement"]["ok"]
    # the glued set has exactly one K_0 class per vertex
    assert cert.reports["k0"]["square"]


@pytest.mark.parametrize("name,rec,T_B", glue_fixtures(), ids=[f[0] for f in glue_fixtures()])
def test_shortcut_agrees_with_glue(name, rec, T_B):
    cert = glue(rec, [canonical_corner_silting(rec)], T_B)
    short = glue_shortcut(rec, T_B)
    assert short.passed, short.reports
    # additive equivalence: identical indecomposable summand classes
    full = {frozenset(x.graded_multiset().items()) for x, _, _ in cert.decomposition}
    quick = {frozenset(x.graded_multiset().items()) for x, _, _ in short.decomposition}
    assert full == quick
    for x, _, _ in cert.decomposition:
        assert any(is_isomorphic(x, y).isomorphic for y, _, _ in short.decomposition)


def test_shortcut_rejects_positive_degrees():
    rec = idempotent_recollement(ka3_algebra(), ["3"])
    with pytest.raises(GlueError, match="degrees <= 0"):
        glue_shortcut(rec, [shift(canonical_quotient_silting(rec), -1)])


def test_corrupted_certificate_fails_star():
    # skip the envelope correction: T~ := i_* T_B directly leaves a positive
    # Hom against j_! T_C[1] and the star report must catch it
    name, rec, T_B = glue_fixtures()[0]
    T_C = [canonical_corner_silting(rec)]
    cert = glue(rec, T_C, T_B)
    tampered = glue(rec, T_C, T_B)
    tampered.tildes = list(tampered.iT)
    tampered.triangles = [
        dict(tri, V=m, U=ProjComplex.zero(rec.A), trace=[])
        for tri, m in zip(tampered.triangles, tampered.iT)
    ]
    rep = check_star_condition(tampered)
    assert not rep["ok"]
    assert rep["failures"]
    assert cert.reports["star_condition"]["ok"]


def test_co_aisle_agreement_random_probes():
    name, rec, T_B = glue_fixtures()[1]
    cert = glue(rec, [canonical_corner_silting(rec)], T_B)
    rng = seeded_rng(55)
    probes = [random_complex(rec.A, rng, steps=2, max_width=4) for _ in range(4)]
    rep = check_co_aisle_agreement(cert, probes)
    assert rep["ok"]
    assert len(rep["probes"]) == 4
