from random import Random

import pytest

from agroups import decide
from agroups.words import parse_word

from oracles import activity_oracle, fixes_all_vertices


def test_is_trivial(grig):
    assert decide.is_trivial(parse_word("a a", grig))
    assert decide.is_trivial(parse_word("b c d", grig))
    assert not decide.is_trivial(parse_word("(a b)^2", grig))
    assert decide.is_trivial(grig.identity())
    # cross-check the derived case against the level-action oracle
    assert fixes_all_vertices(parse_word("b c d", grig), 12)


def test_equals(grig, bas):
    assert decide.equals(parse_word("b", grig), parse_word("c d", grig))
    g = parse_word("a b a d", grig)
    assert decide.equals(g, g)
    ab, ba = parse_word("a b", bas), parse_word("b a", bas)
    assert not decide.equals(ab, ba)
    # witness vertex where the two differ, via the level action
    assert ab.act("1.1") == (2, 2) and ba.act("1.1") == (2, 1)


def test_canonical_key_examples(grig):
    key = decide.canonical_key
    assert key(parse_word("b c d", grig)) == key(grig.identity())
    g = parse_word("a d a b", grig)
    assert key(g) == key(g)
    words = ["a", "b", "c", "d", "1"]
    keys = {w: key(parse_word(w, grig)) for w in words}
    assert len(set(keys.values())) == 5
    # oracle: the five are pairwise non-equal
    for i, w1 in enumerate(words):
        for w2 in words[i + 1 :]:
            assert not decide.equals(parse_word(w1, grig), parse_word(w2, grig))


def test_canonical_key_orders_and_dedups(grig):
    key_a = decide.canonical_key(grig.generator("a"))
    key_b = decide.canonical_key(grig.generator("b"))
    assert (key_a < key_b) != (key_b < key_a)  # totally ordered
    assert len({key_a, key_b}) == 2  # hashable


def test_order(grig, bas, odo):
    assert decide.order(grig.generator("a"), 10).value == 2
    ad = parse_word("a d", grig)
    assert decide.order(ad, 10).value == 4
    # brute-force cross-check to depth 12: (ad)^2 still moves, (ad)^4 does not
    assert not fixes_all_vertices(ad ** 2, 12)
    assert fixes_all_vertices(ad ** 4, 12)
    res = decide.order(bas.generator("a"), 64)
    assert res.value is None and str(res) == "exceeds bound 64"
    assert decide.order(odo.generator("a"), 32).value is None
    assert decide.order(grig.identity(), 5).value == 1
    with pytest.raises(ValueError):
        decide.order(grig.generator("a"), 0)


def test_portrait(grig, bas):
    p = decide.portrait(grig.generator("a"), 1)
    assert str(p.perm) == "(1 2)"
    assert all(decide.is_trivial(c.residual) for c in p.children)

    p = decide.portrait(grig.identity(), 3)

    def all_id(node):
        if node.residual is not None:
            return decide.is_trivial(node.residual)
        return node.perm.is_identity() and all(all_id(c) for c in node.children)

    assert all_id(p) and p.depth == 3

    p = decide.portrait(bas.generator("b"), 1)
    assert str(p.perm) == "(1 2)"
    # residuals indexed by vertex: the active slot sits at the vertex sent to 2
    assert decide.equals(p.children[0].residual, bas.generator("a"))
    assert decide.is_trivial(p.children[1].residual)


def test_portrait_consistency(grig, bas):
    rng = Random(3)
    for group in (grig, bas):
        for _ in range(15):
            letters = [
                (rng.choice(group.state_names), rng.choice((1, -1)))
                for _ in range(rng.randint(0, 8))
            ]
            g = group.element(letters)
            p = decide.portrait(g, 3)
            for v in [(), (1,), (2,), (1, 2), (2, 2), (1, 1)]:
                node = p
                for i in v:
                    node = node.children[i - 1]
                assert node.perm == g.section(v).coords().perm


def test_activity(grig, odo):
    a = grig.generator("a")
    assert decide.activity_sequence(a, 6) == (1, 0, 0, 0, 0, 0, 0)
    assert decide.activity_sequence(grig.identity(), 4) == (0, 0, 0, 0, 0)
    b = grig.generator("b")
    got = decide.activity_sequence(b, 8)
    assert got == (1, 2, 2, 1, 2, 2, 1, 2, 2)
    # derived independently by expansion over the level-action oracle
    assert got == activity_oracle(b, 8)
    # the adding machine touches exactly one vertex per level
    assert decide.activity_sequence(odo.generator("a"), 10) == (1,) * 11


def test_activity_recursion_invariant(grig, bas):
    rng = Random(11)
    for group in (grig, bas):
        d = group.degree
        for _ in range(10):
            letters = [
                (rng.choice(group.state_names), rng.choice((1, -1)))
                for _ in range(rng.randint(1, 8))
            ]
            g = group.element(letters)
            alpha = decide.activity_sequence(g, 6)
            for n in range(1, 7):
                assert alpha[n] <= d * alpha[n - 1]
            sections = [
                s for s in g.coords().slots if not decide.is_trivial(s)
            ]
            for n in range(1, 7):
                total = sum(
                    decide.activity_sequence(s, n - 1)[n - 1] for s in sections
                )
                assert alpha[n] == total


def test_section_closure(grig, bas):
    sc = decide.section_closure(grig.generator("b"))
    assert sc.size == 5
    expected = [parse_word(w, grig) for w in ["b", "a", "c", "d", "1"]]
    for want in expected:
        assert any(decide.equals(e, want) for e in sc.elements)
    assert sc.elements[0] == grig.generator("b")

    sc = decide.section_closure(grig.identity())
    assert sc.size == 1 and sc.edges == ((0, 0),)

    sc = decide.section_closure(bas.generator("a"))
    assert sc.size == 3
    for w in ["a", "b", "1"]:
        assert any(decide.equals(e, parse_word(w, bas)) for e in sc.elements)


def test_section_closure_edges_are_sections(grig):
    g = parse_word("a b a d", grig)
    sc = decide.section_closure(g)
    # pairwise distinct and closed under taking sections
    for i, e in enumerate(sc.elements):
        for j, f in enumerate(sc.elements):
            if i != j:
                assert not decide.equals(e, f)
        for letter in range(1, 3):
            child = sc.elements[sc.edges[i][letter - 1]]
            assert decide.equals(child, e.section((letter,)))
