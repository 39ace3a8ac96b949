import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homorder import (
    Digraph,
    NotATreeError,
    OracleCapExceeded,
    OrderRelation,
    brute_force_hom,
    classify,
    compare,
    core,
    directed_path,
    disjoint_union,
    find_hom,
    hom_exists,
    is_core,
    is_proper_tree,
    is_rigid,
    iter_homs,
    oriented_path,
    parse_digraph,
    path_word,
    retract,
)
from homorder.embedding import enumerate_path_cores
from homorder.hom import parse_hom_text

from conftest import random_tree

CYCLE3 = parse_digraph("a b\nb c\nc a")
SMALLEST_INCOMPARABLE_PATH_CORES = ("FFFBFF", "FFBFFF")


def count_homs_by_definition(g, h):
    n = 0
    for images in itertools.product(h.vertices, repeat=len(g)):
        f = dict(zip(g.vertices, images))
        n += all(h.has_arc(f[u], f[v]) for u, v in g.arcs)
    return n


def random_digraph(rng, n, p):
    vs = [str(i) for i in range(n)]
    return Digraph(vs, [(u, v) for u in vs for v in vs if u != v and rng.random() < p])


def test_hom_examples(arc):
    assert hom_exists(arc, CYCLE3)
    assert not hom_exists(directed_path(2), arc)
    t = parse_digraph("a b\nc b\nc d\nd e\nf d")
    assert hom_exists(t, directed_path(3))


def test_brute_force_examples(arc):
    assert brute_force_hom(Digraph(["v"]), arc)
    assert not brute_force_hom(CYCLE3, arc)
    assert brute_force_hom(Digraph(), Digraph())
    assert not brute_force_hom(Digraph(["v"]), Digraph())


def test_brute_force_refuses_above_cap():
    with pytest.raises(OracleCapExceeded):
        brute_force_hom(directed_path(9), directed_path(9), cap=1000)


def test_witness_roundtrip(star):
    f = find_hom(star, directed_path(2))
    assert f.is_valid()
    assert parse_hom_text(f.to_text(), star, directed_path(2)) == f


def test_compare_examples(arc, zigzag3):
    assert compare(arc, directed_path(2)) is OrderRelation.STRICTLY_BELOW
    assert compare(directed_path(2), arc) is OrderRelation.STRICTLY_ABOVE
    # oracle: brute force both directions
    assert brute_force_hom(zigzag3, arc) and brute_force_hom(arc, zigzag3)
    assert compare(zigzag3, arc) is OrderRelation.EQUIVALENT


def test_smallest_incomparable_path_cores():
    p, q = (oriented_path(w) for w in SMALLEST_INCOMPARABLE_PATH_CORES)
    assert not brute_force_hom(p, q) and not brute_force_hom(q, p)
    assert compare(p, q) is OrderRelation.INCOMPARABLE
    cores = enumerate_path_cores(6)
    first = None
    for j, b in enumerate(cores):
        for a in cores[:j]:
            if compare(a, b) is OrderRelation.INCOMPARABLE:
                first = (path_word(a), path_word(b))
                break
        if first:
            break
    assert first == SMALLEST_INCOMPARABLE_PATH_CORES


def _oracle_core_size(g):
    """Smallest induced subgraph receiving g, by brute force over vertex subsets."""
    for k in range(len(g) + 1):
        for keep in itertools.combinations(g.vertices, k):
            if brute_force_hom(g, g.induced(keep)):
                return k


def test_core_examples(zigzag3, star):
    assert _oracle_core_size(zigzag3) == 2
    c = core(zigzag3)
    assert len(c) == 2 and len(c.arcs) == 1
    assert _oracle_core_size(star) == 3
    assert core(star) == parse_digraph("u x\nx v")
    for k in range(6):
        assert core(directed_path(k)) == directed_path(k)


def test_core_prefers_earlier_vertices():
    # w and u are interchangeable; the earlier declared one survives
    g = parse_digraph("w x\nu x\nx v")
    assert core(g).vertices == ("w", "x", "v")


def _oracle_least_core_set(g):
    k = _oracle_core_size(g)
    for keep in itertools.combinations(g.vertices, k):
        if brute_force_hom(g, g.induced(keep)):
            return keep


def test_core_is_least_minimal_retract():
    rng = random.Random(17)
    trees = [random_tree(rng, rng.randint(3, 7)) for _ in range(120)]
    # found by the oracle: greedy deletion from the back would keep 2, 3, 4
    trees.append(parse_digraph("1 0\n2 0\n2 3\n3 4\n0 5"))
    for t in trees:
        assert core(t).vertices == _oracle_least_core_set(t)
    assert core(trees[-1]).vertices == ("1", "0", "5")


def test_core_of_non_tree():
    g = disjoint_union(CYCLE3, parse_digraph("p q\nq r\nr s\ns t\nt u\nu p"))
    c = core(g)
    assert c == CYCLE3


def test_retract_is_identity_on_core():
    rng = random.Random(3)
    for _ in range(40):
        t = random_tree(rng, rng.randint(1, 10))
        c, r = retract(t)
        assert r.is_valid()
        assert all(r[v] == v for v in c.vertices)


def test_rigid_examples(arc):
    assert all(is_rigid(directed_path(k)) for k in range(5))
    assert is_rigid(Digraph(["v"]))
    assert not is_rigid(disjoint_union(arc, arc))
    assert not is_rigid(CYCLE3)  # a core, but rotations are automorphisms
    assert is_core(CYCLE3)


def test_proper_examples(star, smallest_proper):
    assert not any(is_proper_tree(directed_path(k)) for k in range(6))
    assert not is_proper_tree(star)
    assert is_proper_tree(smallest_proper)
    with pytest.raises(NotATreeError):
        is_proper_tree(CYCLE3)


def test_iter_homs_count_matches_definition(arc, star, zigzag3):
    rng = random.Random(11)
    cases = [(star, directed_path(3)), (zigzag3, star), (arc, CYCLE3), (CYCLE3, CYCLE3)]
    cases += [(random_tree(rng, 5), random_tree(rng, 5)) for _ in range(20)]
    cases += [(random_digraph(rng, 4, 0.3), random_digraph(rng, 4, 0.4)) for _ in range(20)]
    for g, h in cases:
        homs = list(iter_homs(g, h))
        assert len(homs) == count_homs_by_definition(g, h)
        assert all(f.is_valid() for f in homs)
        assert len({tuple(f.map.items()) for f in homs}) == len(homs)


def test_domains_restrict_images(star):
    target = directed_path(3)
    f = find_hom(star, target, {"x": ["p2"]})
    assert f.map["x"] == "p2"
    assert find_hom(star, target, {"v": ["p0"]}) is None


@given(st.integers(0, 10**6), st.integers(1, 7), st.integers(1, 7))
@settings(max_examples=150)
def test_tree_and_backtracking_agree(seed, n, m):
    rng = random.Random(seed)
    g, h = random_tree(rng, n), random_tree(rng, m, "h")
    a = hom_exists(g, h, method="tree")
    b = hom_exists(g, h, method="backtrack")
    assert a == b
    f = find_hom(g, h)
    assert (f is not None) == a
    if f is not None:
        assert f.is_valid()


@given(st.integers(0, 10**6), st.integers(0, 5), st.integers(0, 5), st.floats(0.1, 0.6))
@settings(max_examples=150)
def test_general_digraphs_agree_with_oracle(seed, n, m, p):
    rng = random.Random(seed)
    g, h = random_digraph(rng, n, p), random_digraph(rng, m, p)
    f = find_hom(g, h)
    assert (f is not None) == brute_force_hom(g, h)
    if f is not None:
        assert f.is_valid()


def test_tree_method_rejects_cycles():
    with pytest.raises(NotATreeError):
        hom_exists(CYCLE3, CYCLE3, method="tree")


def test_compare_transitivity_sampled():
    rng = random.Random(5)
    pool = [random_tree(rng, rng.randint(1, 7), f"s{i}_") for i in range(30)]
    rel = {(i, j): compare(a, b) for i, a in enumerate(pool) for j, b in enumerate(pool)}
    below = OrderRelation.STRICTLY_BELOW
    for i, j, k in itertools.product(range(len(pool)), repeat=3):
        if rel[i, j] is below and rel[j, k] is below:
            assert rel[i, k] is below


@given(st.integers(0, 10**6), st.integers(1, 11))
@settings(max_examples=60, deadline=None)
def test_core_laws_random_trees(seed, n):
    t = random_tree(random.Random(seed), n)
    c = core(t)
    assert core(c) == c
    assert compare(t, c) is OrderRelation.EQUIVALENT
    assert all(not hom_exists(c, c.without(v)) for v in c.vertices)
    assert classify(c).is_tree
    assert is_rigid(c)
