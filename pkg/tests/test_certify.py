import pytest

from agroups import certify, corpus, decide
from agroups.certify import (
    Certificate,
    CoordsIs,
    DistinctPositiveWords,
    Equal,
    Trivial,
    UnknownGroup,
    ball_sizes,
    free_semigroup_check,
    run_suite,
)
from agroups.core import BoundExceeded
from agroups.subgroups import GenSet

from oracles import pairwise_ball_sizes


def test_bundled_suites_pass(grig, bas):
    for name, group in [("grigorchuk_nea", grig), ("basilica_nea", bas)]:
        report = run_suite(corpus.load_certificate(name), group)
        failed = [r for r in report.results if not r.passed]
        assert not failed, [r.assertion.describe() for r in failed]


def test_empty_certificate_passes(grig):
    report = run_suite(Certificate("empty", None, ()), grig)
    assert report.passed and report.results == []


def test_member_by_expression_example(grig):
    cert = Certificate(
        "m",
        None,
        (certify.MemberByExpression("(a b a d)^2", "(a b)^2 d^-1 (a b)^-2 d"),),
    )
    assert run_suite(cert, grig).passed


def test_failing_assertions_report_details(grig):
    cert = Certificate(
        "bad",
        None,
        (
            Trivial("a b"),
            Equal("a", "b"),
            CoordsIs("c a", ("a", "d"), None),  # perm is actually the swap
        ),
    )
    report = run_suite(cert, grig)
    assert not report.passed
    assert all(not r.passed and r.detail for r in report.results)
    assert any("computed" in r.detail for r in report.results)


def test_group_name_mismatch(grig):
    cert = Certificate("x", "basilica", ())
    with pytest.raises(UnknownGroup):
        run_suite(cert, grig)


def test_distinct_positive_words_failure_reports_pair(grig):
    cert = Certificate(
        "collide", None, (DistinctPositiveWords(("a", "b"), 4, 30),)
    )
    report = run_suite(cert, grig)
    assert not report.passed
    assert "a a" in report.results[0].detail and "b b" in report.results[0].detail


def test_free_semigroup_basilica(bas):
    gens = GenSet.from_group(bas)
    res = free_semigroup_check(gens, 1)
    assert res.distinct == 2 and res.collision is None
    # oracle on a subsample: all positive words of length <= 4 pairwise distinct
    words = []
    frontier = [bas.identity()]
    for _ in range(4):
        frontier = [w * g for w in frontier for g in gens.elements]
        words.extend(frontier)
    for i, w1 in enumerate(words):
        for w2 in words[i + 1 :]:
            assert not decide.equals(w1, w2)
    res = free_semigroup_check(gens, 4)
    assert res.distinct == len(words) == 2 ** 5 - 2


def test_free_semigroup_grigorchuk_collides(grig):
    gens = GenSet.from_elements([grig.generator("a"), grig.generator("b")])
    res = free_semigroup_check(gens, 4)
    assert res.collision is not None
    first, second = res.collision
    assert str(first) == "a a" and str(second) == "b b"
    assert res.distinct < res.total_words


def test_ball_sizes_grigorchuk(grig):
    sizes = ball_sizes(GenSet.from_group(grig), 3)
    assert sizes[0] == 1 and sizes[1] == 5
    # |B(1)| oracle: dedupe generators and inverses pairwise
    candidates = [grig.identity()]
    for g in GenSet.from_group(grig).elements:
        candidates += [g, g.inverse()]
    distinct = []
    for c in candidates:
        if not any(decide.equals(c, r) for r in distinct):
            distinct.append(c)
    assert len(distinct) == 5


def test_ball_monotone_and_dedup_agreement(grig, bas):
    for group in (grig, bas):
        gens = GenSet.from_group(group)
        sizes = ball_sizes(gens, 4)
        assert all(a < b for a, b in zip(sizes, sizes[1:]))
        assert sizes == pairwise_ball_sizes(gens, 4)


def test_ball_cap(grig):
    with pytest.raises(BoundExceeded):
        ball_sizes(GenSet.from_group(grig), 4, max_elements=10)


def test_report_payload_shape(grig):
    report = run_suite(corpus.load_certificate("grigorchuk_nea"), grig)
    payload = report.to_payload()
    assert payload["passed"] is True
    assert payload["suite"] == "grigorchuk_nea"
    assert len(payload["assertions"]) == len(report.results)
    kinds = {a["kind"] for a in payload["assertions"]}
    assert {
        "trivial",
        "equal",
        "coords",
        "in_level_stab",
        "transitive",
        "supported_only_at",
        "member_by_expression",
        "projection_witness",
    } <= kinds
