"""Homomorphism search between finite digraphs.

Two exact solvers sit behind :func:`find_hom`:

* forest sources use bottom-up candidate propagation over a rooted spanning
  tree of each component; on a tree-shaped constraint network this arc
  consistency pass is already a decision procedure, so the cost is
  polynomial in ``|V(g)| * |A(h)|``;
* everything else goes through backtracking that maintains arc consistency.

:func:`brute_force_hom` is deliberately dumb: it tries every vertex map and
shares no code with the solvers, so it can serve as their oracle.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

import numpy as np
from scipy import sparse

from .digraph import Digraph, NotATreeError, Vertex, classify

DEFAULT_ORACLE_CAP = 5_000_000


class OracleCapExceeded(RuntimeError):
    """The brute-force oracle refuses instances above its cap."""


class EnumerationCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Hom:
    source: Digraph
    target: Digraph
    map: dict

    def __getitem__(self, v: Vertex) -> Vertex:
        return self.map[v]

    def is_valid(self) -> bool:
        if set(self.map) != set(self.source.vertices):
            return False
        if any(t not in self.target for t in self.map.values()):
            return False
        return all(self.target.has_arc(self.map[u], self.map[v]) for u, v in self.source.arcs)

    def is_injective_on(self, vertices) -> bool:
        images = [self.map[v] for v in vertices]
        return len(set(images)) == len(images)

    def to_text(self) -> str:
        return "".join(f"{v}↦{self.map[v]}\n" for v in self.source.vertices)


def parse_hom_text(text: str, source: Digraph, target: Digraph) -> Hom:
    """Read back the ``u↦v`` line list written by :meth:`Hom.to_text`."""
    by_name_s = {str(v): v for v in source.vertices}
    by_name_t = {str(v): v for v in target.vertices}
    mapping = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        a, sep, b = line.partition("↦")
        if not sep:
            raise ValueError(f"bad witness line {line!r}")
        mapping[by_name_s[a.strip()]] = by_name_t[b.strip()]
    return Hom(source, target, mapping)


class OrderRelation(str, enum.Enum):
    EQUIVALENT = "equivalent"
    STRICTLY_BELOW = "strictly_below"
    STRICTLY_ABOVE = "strictly_above"
    INCOMPARABLE = "incomparable"

    def __str__(self) -> str:
        return self.value


class _Target:
    """Index structures for a digraph used as a homomorphism target."""

    def __init__(self, h: Digraph):
        self.n = len(h)
        idx = h.index
        self._rows = [idx[u] for u, _ in h.arcs]
        self._cols = [idx[v] for _, v in h.arcs]
        self.out_masks = [0] * self.n
        self.in_masks = [0] * self.n
        for r, c in zip(self._rows, self._cols):
            self.out_masks[r] |= 1 << c
            self.in_masks[c] |= 1 << r

    @cached_property
    def A(self) -> sparse.csr_matrix:
        """``A[t, s] = 1`` iff ``t -> s``."""
        ones = np.ones(len(self._rows), dtype=np.int32)
        A = sparse.csr_matrix((ones, (self._rows, self._cols)), shape=(self.n, self.n))
        A.sort_indices()
        return A

    @cached_property
    def AT(self) -> sparse.csr_matrix:
        AT = self.A.T.tocsr()
        AT.sort_indices()
        return AT

    def out_of(self, t: int) -> np.ndarray:
        return self.A.indices[self.A.indptr[t]:self.A.indptr[t + 1]]

    def in_of(self, t: int) -> np.ndarray:
        return self.AT.indices[self.AT.indptr[t]:self.AT.indptr[t + 1]]


def _target(h: Digraph) -> _Target:
    cached = h.__dict__.get("_hom_target")
    if cached is None:
        cached = h.__dict__["_hom_target"] = _Target(h)
    return cached


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _domain_masks(g: Digraph, h: Digraph, domains: Mapping | None) -> list[int]:
    full = (1 << len(h)) - 1
    masks = [full] * len(g)
    if domains:
        hidx = h.index
        for v, allowed in domains.items():
            m = 0
            for t in allowed:
                m |= 1 << hidx[t]
            masks[g.index[v]] &= m
    return masks


# --- forest sources -------------------------------------------------------

def _spanning_order(g: Digraph):
    """BFS order over every component with (parent, parent->child?) links."""
    idx = g.index
    parent = [-1] * len(g)
    forward = [False] * len(g)
    seen = [False] * len(g)
    order = []
    for s in g.vertices:
        si = idx[s]
        if seen[si]:
            continue
        seen[si] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            vi = idx[v]
            order.append(vi)
            for w in g.out_neighbors[v]:
                wi = idx[w]
                if not seen[wi]:
                    seen[wi] = True
                    parent[wi], forward[wi] = vi, True
                    queue.append(w)
            for w in g.in_neighbors[v]:
                wi = idx[w]
                if not seen[wi]:
                    seen[wi] = True
                    parent[wi], forward[wi] = vi, False
                    queue.append(w)
    return order, parent, forward


def _tree_candidates(g: Digraph, h: Digraph, domains: Mapping | None):
    T = _target(h)
    order, parent, forward = _spanning_order(g)
    cand = [np.ones(T.n, dtype=bool) for _ in range(len(g))]
    if domains:
        hidx = h.index
        for v, allowed in domains.items():
            keep = np.zeros(T.n, dtype=bool)
            keep[[hidx[t] for t in allowed]] = True
            cand[g.index[v]] &= keep
    for vi in reversed(order):
        c = cand[vi]
        if not c.any():
            return None
        p = parent[vi]
        if p < 0:
            continue
        # parent image needs an arc towards (or from) some candidate of vi
        support = (T.A @ c) if forward[vi] else (T.AT @ c)
        cand[p] &= support > 0
    return order, parent, forward, cand


_SMALL_TARGET = 64


def _tree_candidates_small(g: Digraph, h: Digraph, domains: Mapping | None):
    """Bitmask variant of :func:`_tree_candidates`; cheaper for small targets."""
    T = _target(h)
    order, parent, forward = _spanning_order(g)
    cand = _domain_masks(g, h, domains)
    for vi in reversed(order):
        c = cand[vi]
        if not c:
            return None
        p = parent[vi]
        if p < 0:
            continue
        masks = T.in_masks if forward[vi] else T.out_masks
        support = 0
        for t in _bits(c):
            support |= masks[t]
        cand[p] &= support
    return order, parent, forward, cand


def _tree_solve(g: Digraph, h: Digraph, domains: Mapping | None, witness: bool):
    if len(g) == 0:
        return {}
    if len(h) == 0:
        return None
    if len(h) <= _SMALL_TARGET:
        res = _tree_candidates_small(g, h, domains)
        if res is None or not witness:
            return res if res is None else True
        order, parent, forward, cand = res
        T = _target(h)
        image = [-1] * len(g)
        for vi in order:
            p = parent[vi]
            if p < 0:
                allowed = cand[vi]
            else:
                allowed = cand[vi] & (T.out_masks if forward[vi] else T.in_masks)[image[p]]
            image[vi] = (allowed & -allowed).bit_length() - 1
        hv = h.vertices
        return {v: hv[image[i]] for i, v in enumerate(g.vertices)}
    res = _tree_candidates(g, h, domains)
    if res is None:
        return None
    if not witness:
        return True
    order, parent, forward, cand = res
    T = _target(h)
    image = [-1] * len(g)
    for vi in order:
        p = parent[vi]
        if p < 0:
            image[vi] = int(np.flatnonzero(cand[vi])[0])
            continue
        nbrs = T.out_of(image[p]) if forward[vi] else T.in_of(image[p])
        ok = nbrs[cand[vi][nbrs]]
        image[vi] = int(ok[0])
    hv = h.vertices
    return {v: hv[image[i]] for i, v in enumerate(g.vertices)}


# --- general sources --------------------------------------------------------

class _Network:
    def __init__(self, g: Digraph, h: Digraph):
        self.T = _target(h)
        idx = g.index
        # constraints[y] = list of (x, y_is_tail) over arcs between x and y
        self.constraints: list[list[tuple[int, bool]]] = [[] for _ in range(len(g))]
        for u, v in g.arcs:
            ui, vi = idx[u], idx[v]
            self.constraints[ui].append((vi, True))
            self.constraints[vi].append((ui, False))
        deg = [len(g.neighbors[v]) for v in g.vertices]
        self.var_order = sorted(range(len(g)), key=lambda i: (-deg[i], i))

    def _support(self, dom: int, y_is_tail: bool) -> int:
        # values with an arc from (y tail) / to (y head) some value in dom
        masks = self.T.out_masks if y_is_tail else self.T.in_masks
        s = 0
        for t in _bits(dom):
            s |= masks[t]
        return s

    def propagate(self, D: list[int], start=None) -> bool:
        n = len(D)
        queue = deque(range(n) if start is None else start)
        queued = [False] * n
        for x in queue:
            queued[x] = True
        while queue:
            y = queue.popleft()
            queued[y] = False
            for x, y_is_tail in self.constraints[y]:
                new = D[x] & self._support(D[y], y_is_tail)
                if new != D[x]:
                    if not new:
                        return False
                    D[x] = new
                    if not queued[x]:
                        queued[x] = True
                        queue.append(x)
        return all(D)

    def solutions(self, D: list[int], start=None) -> Iterator[list[int]]:
        if not self.propagate(D, start):
            return
        for x in self.var_order:
            if D[x] & (D[x] - 1):
                break
        else:
            yield [d.bit_length() - 1 for d in D]
            return
        for t in _bits(D[x]):
            D2 = list(D)
            D2[x] = 1 << t
            yield from self.solutions(D2, [x])


def _backtrack_solve(g: Digraph, h: Digraph, domains: Mapping | None, witness: bool):
    if len(g) == 0:
        return {}
    if len(h) == 0:
        return None
    net = _Network(g, h)
    D = _domain_masks(g, h, domains)
    if not all(D):
        return None
    sol = next(net.solutions(D), None)
    if sol is None:
        return None
    if not witness:
        return True
    hv = h.vertices
    return {v: hv[sol[i]] for i, v in enumerate(g.vertices)}


# --- public API -------------------------------------------------------------

def find_hom(g: Digraph, h: Digraph, domains: Mapping | None = None, *, method: str = "auto") -> Hom | None:
    """Return a homomorphism ``g -> h`` or ``None``.

    ``domains`` optionally restricts the images of some vertices of ``g``.
    ``method`` is ``"auto"``, ``"tree"`` (forest sources only) or
    ``"backtrack"``.
    """
    if method == "auto":
        method = "tree" if not classify(g).has_cycle else "backtrack"
    if method == "tree":
        if classify(g).has_cycle:
            raise NotATreeError("tree method needs a forest source")
        m = _tree_solve(g, h, domains, witness=True)
    elif method == "backtrack":
        m = _backtrack_solve(g, h, domains, witness=True)
    else:
        raise ValueError(f"unknown method {method!r}")
    return None if m is None else Hom(g, h, m)


def hom_exists(g: Digraph, h: Digraph, domains: Mapping | None = None, *, method: str = "auto") -> bool:
    if method == "auto":
        method = "tree" if not classify(g).has_cycle else "backtrack"
    if method == "tree":
        if classify(g).has_cycle:
            raise NotATreeError("tree method needs a forest source")
        return _tree_solve(g, h, domains, witness=False) is not None
    if method == "backtrack":
        return _backtrack_solve(g, h, domains, witness=False) is not None
    raise ValueError(f"unknown method {method!r}")


def iter_homs(g: Digraph, h: Digraph, domains: Mapping | None = None) -> Iterator[Hom]:
    """Every homomorphism ``g -> h``, in a fixed deterministic order."""
    if len(g) == 0:
        yield Hom(g, h, {})
        return
    if len(h) == 0:
        return
    net = _Network(g, h)
    D = _domain_masks(g, h, domains)
    if not all(D):
        return
    hv = h.vertices
    for sol in net.solutions(D):
        yield Hom(g, h, {v: hv[sol[i]] for i, v in enumerate(g.vertices)})


def all_homs(g: Digraph, h: Digraph, cap: int = 100_000) -> list[Hom]:
    out = []
    for f in iter_homs(g, h):
        if len(out) >= cap:
            raise EnumerationCapExceeded(f"more than {cap} homomorphisms {len(g)}->{len(h)} vertices")
        out.append(f)
    return out


def brute_force_hom(g: Digraph, h: Digraph, cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Decide ``g -> h`` by testing every one of the ``|V(h)|**|V(g)|`` maps."""
    k, m = len(g), len(h)
    total = m ** k
    if total > cap:
        raise OracleCapExceeded(f"{m}^{k} = {total} vertex maps exceeds cap {cap}")
    if k == 0:
        return True
    if m == 0:
        return False
    adj = np.zeros((m, m), dtype=bool)
    for u, v in h.arcs:
        adj[h.index[u], h.index[v]] = True
    tails = np.array([g.index[u] for u, _ in g.arcs], dtype=np.int64)
    heads = np.array([g.index[v] for _, v in g.arcs], dtype=np.int64)
    powers = m ** np.arange(k, dtype=np.int64)
    chunk = 1 << 16
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        maps = (codes[:, None] // powers[None, :]) % m
        ok = np.ones(len(codes), dtype=bool)
        for a, b in zip(tails, heads):
            ok &= adj[maps[:, a], maps[:, b]]
        if ok.any():
            return True
    return False


def compare(g: Digraph, h: Digraph) -> OrderRelation:
    le = hom_exists(g, h)
    ge = hom_exists(h, g)
    if le and ge:
        return OrderRelation.EQUIVALENT
    if le:
        return OrderRelation.STRICTLY_BELOW
    if ge:
        return OrderRelation.STRICTLY_ABOVE
    return OrderRelation.INCOMPARABLE


def _shrink(g: Digraph, pinned=()) -> tuple[Digraph, dict]:
    """One deletion pass from the last declared vertex to the first, keeping
    ``pinned`` fixed. A vertex that cannot be deleted at some point never
    becomes deletable later, hence one pass suffices."""
    pinned = set(pinned)
    domains = {v: [v] for v in pinned}
    cur = g
    image = {v: v for v in g.vertices}
    for v in reversed(g.vertices):
        if v in pinned:
            continue
        smaller = cur.without(v)
        f = find_hom(cur, smaller, domains)
        if f is not None:
            image = {u: f.map[image[u]] for u in g.vertices}
            cur = smaller
    return cur, image


def retract(g: Digraph) -> tuple[Digraph, Hom]:
    """Core of ``g`` together with a retraction ``g -> core``.

    Among all vertex sets of minimal retracts the least one is returned,
    comparing sets as sorted tuples of declared positions. It is built greedily:
    a vertex is kept if some minimal retract contains it together with every
    vertex kept so far, which is the case exactly when the deletion pass with
    those vertices pinned still reaches core size.
    """
    cur, image = _shrink(g)
    k = len(cur)
    kept: list = []
    for v in g.vertices:
        if len(kept) == k:
            break
        if v not in cur.index:
            trial, trial_image = _shrink(g, kept + [v])
            if len(trial) != k:
                continue
            cur, image = trial, trial_image
        kept.append(v)
    # image restricted to the core is an automorphism; undo it
    auto = {c: image[c] for c in cur.vertices}
    if any(c != t for c, t in auto.items()):
        inv = {t: c for c, t in auto.items()}
        image = {u: inv[image[u]] for u in g.vertices}
    return cur, Hom(g, cur, image)


def core(g: Digraph) -> Digraph:
    return retract(g)[0]


def is_core(g: Digraph) -> bool:
    return all(not hom_exists(g, g.without(v)) for v in g.vertices)


def is_rigid(g: Digraph) -> bool:
    """A core whose only automorphism is the identity."""
    if not is_core(g):
        return False
    count = 0
    for _ in iter_homs(g, g):
        count += 1
        if count > 1:
            return False
    return True


def is_proper_tree(t: Digraph) -> bool:
    if not classify(t).is_tree:
        raise NotATreeError("is_proper_tree needs an oriented tree")
    return not classify(core(t)).is_oriented_path
