import itertools

import pytest

from homorder import Digraph, classify, oriented_path, path_word
from homorder.enumerate import (
    canonical_path_word,
    count_trees,
    enumerate_digraphs,
    enumerate_paths,
    enumerate_trees,
    path_words,
    tree_code,
    tree_from_code,
)

# oriented trees by vertex count, a standard counting sequence
ORIENTED_TREES = [1, 1, 3, 8, 27, 91, 350, 1376, 5743]
# digraphs on 0, 1, 2, 3 vertices up to isomorphism
DIGRAPHS = [1, 1, 3, 16]


def _prufer_trees(n):
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for v in seq:
            degree[v] += 1
        edges = []
        for v in seq:
            leaf = min(i for i in range(n) if degree[i] == 1)
            edges.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = [i for i in range(n) if degree[i] == 1]
        edges.append((u, w))
        yield edges


def _perm_key(n, arcs):
    return min(tuple(sorted((p[u], p[v]) for u, v in arcs)) for p in itertools.permutations(range(n)))


def _oracle_tree_count(n):
    """Labelled trees in every orientation, deduplicated by permutation search."""
    keys = set()
    for edges in _prufer_trees(n):
        for flips in itertools.product((False, True), repeat=len(edges)):
            arcs = [(v, u) if f else (u, v) for (u, v), f in zip(edges, flips)]
            keys.add(_perm_key(n, arcs))
    return len(keys)


@pytest.mark.parametrize("n", range(1, 6))
def test_tree_count_matches_permutation_oracle(n):
    assert count_trees(n) == _oracle_tree_count(n)


def test_tree_counts():
    assert [count_trees(n) for n in range(1, 10)] == ORIENTED_TREES


def test_enumerated_trees_are_distinct_trees():
    trees = list(enumerate_trees(7))
    assert len(trees) == sum(ORIENTED_TREES[:7])
    assert all(classify(t).is_tree for t in trees)
    assert len({tree_code(t) for t in trees}) == len(trees)
    assert [len(t) for t in trees] == sorted(len(t) for t in trees)


def test_tree_code_is_invariant_under_relabelling():
    for t in enumerate_trees(6):
        names = {v: f"q{len(t) - int(v)}" for v in t.vertices}
        s = Digraph(reversed([names[v] for v in t.vertices]), [(names[a], names[b]) for a, b in t.arcs])
        assert tree_code(s) == tree_code(t)
        assert tree_code(tree_from_code(tree_code(t))) == tree_code(t)


def test_digraph_counts():
    gs = list(enumerate_digraphs(3))
    assert len(gs) == sum(DIGRAPHS) == 21
    for n, c in enumerate(DIGRAPHS):
        assert sum(len(g) == n for g in gs) == c


def test_canonical_path_word():
    assert canonical_path_word("B") == "F"
    assert canonical_path_word("BBF") == "BFF"
    assert canonical_path_word("FFB") == "FFB"
    assert canonical_path_word("") == ""


@pytest.mark.parametrize("k", range(0, 9))
def test_path_word_counts(k):
    # words up to reading direction; self-symmetric words exist only for even k
    sym = 2 ** (k // 2) if k % 2 == 0 else 0
    assert len(path_words(k)) == (2**k + sym) // 2


def test_enumerate_paths_roundtrip():
    ps = list(enumerate_paths(4))
    assert [path_word(p) for p in ps[:4]] == ["", "F", "FF", "FB"]
    assert all(classify(p).is_oriented_path for p in ps)
    assert all(oriented_path(path_word(p)) == p for p in ps)
