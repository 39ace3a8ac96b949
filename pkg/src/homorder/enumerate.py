"""Exhaustive generation of small digraphs, oriented trees and oriented paths,
one representative per isomorphism class, in a fixed canonical order."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .digraph import Digraph, oriented_path


def tree_code(t: Digraph, root=None) -> str:
    """Canonical string of an oriented tree (rooted at ``root`` if given).

    Each child subtree is written as ``>(...)`` for an arc away from the
    parent or ``<(...)`` for an arc into it; children are sorted.
    """
    def enc(v, parent) -> str:
        parts = []
        for w in t.neighbors[v]:
            if w == parent:
                continue
            parts.append((">" if t.has_arc(v, w) else "<") + enc(w, v))
        return "(" + "".join(sorted(parts)) + ")"

    if root is not None:
        return enc(root, None)
    return min(enc(r, None) for r in t.vertices)


def tree_from_code(code: str) -> Digraph:
    """Rebuild the representative tree of a code; vertices are '0', '1', ..."""
    vertices: list[str] = []
    arcs: list[tuple[str, str]] = []
    stack: list[str] = []
    pending = None
    for ch in code:
        if ch in "<>":
            pending = ch
        elif ch == "(":
            v = str(len(vertices))
            vertices.append(v)
            if stack:
                p = stack[-1]
                arcs.append((p, v) if pending == ">" else (v, p))
            stack.append(v)
        elif ch == ")":
            stack.pop()
    return Digraph(vertices, arcs)


@lru_cache(maxsize=None)
def _tree_codes(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("()",)
    codes = set()
    for code in _tree_codes(n - 1):
        t = tree_from_code(code)
        new = str(n - 1)
        for v in t.vertices:
            for arc in ((v, new), (new, v)):
                codes.add(tree_code(Digraph(t.vertices + (new,), t.arcs + (arc,))))
    return tuple(sorted(codes))


def enumerate_trees(max_vertices: int, min_vertices: int = 1):
    """All oriented trees up to isomorphism, by size then canonical code."""
    for n in range(min_vertices, max_vertices + 1):
        for code in _tree_codes(n):
            yield tree_from_code(code)


def count_trees(n: int) -> int:
    return len(_tree_codes(n))


def _digraph_key(n: int, arcs) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[u], perm[v]) for u, v in arcs))
        if best is None or key < best:
            best = key
    return best


def enumerate_digraphs(max_vertices: int):
    """All irreflexive digraphs on 0..max_vertices vertices up to isomorphism."""
    for n in range(max_vertices + 1):
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        keys = set()
        for r in range(len(pairs) + 1):
            for arcs in itertools.combinations(pairs, r):
                keys.add(_digraph_key(n, arcs))
        for key in sorted(keys, key=lambda k: (len(k), k)):
            names = [str(i) for i in range(n)]
            yield Digraph(names, [(names[u], names[v]) for u, v in key])


def canonical_path_word(word: str) -> str:
    """Least spelling (forward arcs first) of an oriented path, read from either end."""
    flipped = "".join("B" if c == "F" else "F" for c in reversed(word))
    return min(word, flipped, key=_word_key)


def _word_key(word: str) -> str:
    return word.replace("F", "0").replace("B", "1")


def path_words(length: int) -> list[str]:
    words = {canonical_path_word("".join(w)) for w in itertools.product("FB", repeat=length)}
    return sorted(words, key=_word_key)


def enumerate_paths(max_arcs: int):
    for k in range(max_arcs + 1):
        for w in path_words(k):
            yield oriented_path(w)
