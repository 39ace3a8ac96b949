"""Tree gadgets for density in the homomorphism order of oriented trees.

Given a core tree ``T2`` that is not a path, pick a vertex ``x`` with at
least three neighbours, two of which (``u`` and ``w``) send arcs into ``x``.
``T2`` splits into the branch ``U`` behind ``u``, the branch ``W`` behind
``w`` and the rest ``X`` (which contains ``x``).

One block ``D1`` strings six labelled vertices along an alternating path::

    w -> a <- u -> x <- b -> x' <- w'

with a copy of ``W`` hanging at ``w``, ``U`` at ``u``, ``X`` rooted at ``x``,
another copy of ``X`` rooted at ``x'`` and a copy ``W'`` of ``W`` at ``w'``.
``a`` and ``b`` are bare. Every top vertex (``a``, ``x``, ``x'``) sees only two
of the three parts ``U``, ``W``, ``X``, so ``T2`` does not map into the
chain, while identifying any two labelled vertices at distance two
reassembles all three parts around one vertex. ``Dn`` chains ``n`` blocks,
the ``W'`` of block ``i`` being the ``W`` of block ``i + 1``.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .digraph import Digraph, NotATreeError, Vertex, classify, disjoint_union, parse_digraph, reverse, serialize
from .hom import (
    DEFAULT_ORACLE_CAP,
    EnumerationCapExceeded,
    Hom,
    OracleCapExceeded,
    OrderRelation,
    brute_force_hom,
    compare,
    core,
    find_hom,
    hom_exists,
    is_proper_tree,
    iter_homs,
    parse_hom_text,
)

LABEL_NAMES = ("w", "a", "u", "x", "b", "x'")


class PreconditionError(ValueError):
    """Inputs violate a hypothesis of the construction."""


class SearchExhausted(RuntimeError):
    def __init__(self, message: str, diagnostics: dict | None = None, certificate=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
        self.certificate = certificate


def plank(t: Digraph, u: Vertex, s: Iterable[Vertex]) -> Digraph:
    """Subtree of vertices whose path from ``u`` runs through ``s``.

    ``u`` itself always belongs; ``u`` does not count as a member of ``s``
    (so the plank of a vertex towards itself is just that vertex).
    """
    if not classify(t).is_tree:
        raise NotATreeError("plank needs an oriented tree")
    s = set(s)
    if u not in t or not s <= set(t.vertices):
        raise ValueError("plank: vertex not in tree")
    through = {u: False}
    queue = deque([u])
    while queue:
        v = queue.popleft()
        for z in t.neighbors[v]:
            if z not in through:
                through[z] = through[v] or z in s
                queue.append(z)
    return t.induced([u] + [z for z, flag in through.items() if flag])


@dataclass(frozen=True)
class Decomposition:
    base: Digraph
    flipped: bool
    x: Vertex
    u: Vertex
    w: Vertex
    X_prime: tuple
    U: Digraph
    X: Digraph
    W: Digraph

    @property
    def normalized(self) -> Digraph:
        """``base`` oriented so that ``u -> x`` and ``w -> x`` are arcs."""
        return reverse(self.base) if self.flipped else self.base

    def reassemble(self) -> Digraph:
        arcs = self.U.arcs + self.X.arcs + self.W.arcs + ((self.u, self.x), (self.w, self.x))
        vertices = self.U.vertices + self.X.vertices + self.W.vertices
        order = self.normalized.index
        return Digraph(sorted(vertices, key=order.__getitem__), arcs)


def decompose(t2: Digraph) -> Decomposition:
    """Split ``core(t2)`` at its first branching vertex.

    If that vertex has fewer than two in-neighbours it has at least two
    out-neighbours, and the whole tree is reversed (``flipped``).
    """
    if not classify(t2).is_tree:
        raise NotATreeError("decompose needs an oriented tree")
    base = core(t2)
    if classify(base).is_oriented_path:
        raise PreconditionError("tree is not proper: its core is an oriented path")
    x = next(v for v in base.vertices if base.degree(v) >= 3)
    flipped = len(base.in_neighbors[x]) < 2
    t = reverse(base) if flipped else base
    ins = [v for v in t.neighbors[x] if t.has_arc(v, x)]
    if len(ins) < 2:  # cannot happen: three neighbours, two share a direction
        raise SearchExhausted(f"no pair of in-neighbours at {x!r} in either orientation")
    u, w = ins[0], ins[1]
    x_prime = tuple(v for v in t.neighbors[x] if v not in (u, w))
    U = plank(t, x, [u]).without(x)
    W = plank(t, x, [w]).without(x)
    X = plank(t, x, x_prime)
    return Decomposition(base, flipped, x, u, w, x_prime, U, X, W)


@dataclass(frozen=True)
class LabelledGadget:
    tree: Digraph
    n: int
    labels: tuple
    base: Digraph
    blocks: tuple = field(repr=False, default=())

    def label_names(self) -> dict:
        return {v: f"{LABEL_NAMES[k % 6]}{k // 6 + 1}" for k, v in enumerate(self.labels)}


def build_dn(dec: Decomposition, n: int) -> LabelledGadget:
    """Chain ``n`` copies of the one-block gadget, sharing ``W`` planks."""
    if n < 1:
        raise ValueError("n must be positive")
    vertices: list[str] = []
    arcs: list[tuple[str, str]] = []

    def put(piece: Digraph, tag: str) -> dict:
        names = {v: f"{tag}:{v}" for v in piece.vertices}
        vertices.extend(names.values())
        arcs.extend((names[p], names[q]) for p, q in piece.arcs)
        return names

    labels: list[str] = []
    blocks = []
    w_names = put(dec.W, "blk1.W")
    for i in range(1, n + 1):
        start = len(vertices)
        a, b = f"blk{i}.a", f"blk{i}.b"
        vertices.append(a)
        u_names = put(dec.U, f"blk{i}.U")
        x_names = put(dec.X, f"blk{i}.X")
        vertices.append(b)
        xp_names = put(dec.X, f"blk{i}.X'")
        wp_names = put(dec.W, f"blk{i}.W'")
        w, u, x, xp, wp = w_names[dec.w], u_names[dec.u], x_names[dec.x], xp_names[dec.x], wp_names[dec.w]
        arcs.extend([(w, a), (u, a), (u, x), (b, x), (b, xp), (wp, xp)])
        labels.extend([w, a, u, x, b, xp])
        blocks.append(frozenset(w_names.values()) | frozenset(vertices[start:]))
        w_names = wp_names
    tree = Digraph(vertices, arcs)
    if dec.flipped:
        tree = reverse(tree)
    return LabelledGadget(tree, n, tuple(labels), dec.base, tuple(blocks))


def build_d1(dec: Decomposition) -> LabelledGadget:
    return build_dn(dec, 1)


@dataclass(frozen=True)
class LemmaReport:
    hypothesis_ok: bool
    hom_count: int
    all_injective: bool
    violations: tuple
    counting_applies: bool

    @property
    def holds(self) -> bool:
        """The injectivity claim, and no homomorphism when labels outnumber vertices."""
        if not self.hypothesis_ok:
            return True
        if self.counting_applies and self.hom_count:
            return False
        return self.all_injective


def check_labelled_lemma(g: LabelledGadget, t1: Digraph, cap: int = 100_000) -> LemmaReport:
    """Enumerate every homomorphism ``g.tree -> t1`` and test label injectivity."""
    if not classify(t1).is_tree:
        raise NotATreeError("t1 must be an oriented tree")
    hypothesis_ok = not hom_exists(g.base, t1)
    if not hypothesis_ok:
        warnings.warn("the base tree maps to t1; injectivity is not expected", stacklevel=2)
    count = 0
    violations = []
    for f in iter_homs(g.tree, t1):
        count += 1
        if count > cap:
            raise EnumerationCapExceeded(f"more than {cap} homomorphisms to enumerate")
        if not f.is_injective_on(g.labels):
            violations.append(f)
    return LemmaReport(hypothesis_ok, count, not violations, tuple(violations), len(g.labels) > len(t1))


def build_zigzag(k: int, start_forward: bool = True, prefix: str = "z") -> Digraph:
    """Alternating path ``z0 ... zk``."""
    if k < 1:
        raise ValueError("zig-zag needs at least one arc")
    vs = [f"{prefix}{i}" for i in range(k + 1)]
    arcs = []
    for i in range(k):
        fwd = (i % 2 == 0) == start_forward
        arcs.append((vs[i], vs[i + 1]) if fwd else (vs[i + 1], vs[i]))
    return Digraph(vs, arcs)


@dataclass(frozen=True)
class Join:
    tree: Digraph
    length: int
    start_forward: bool
    va: Vertex
    vb: Vertex
    to_target: Hom


def _zigzag_arcs(va, vb, length, start_forward, tag):
    chain = [va] + [f"{tag}{i}" for i in range(1, length)] + [vb]
    arcs = []
    for i in range(length):
        fwd = (i % 2 == 0) == start_forward
        arcs.append((chain[i], chain[i + 1]) if fwd else (chain[i + 1], chain[i]))
    return chain[1:-1], arcs


def join_by_zigzag(
    a: Digraph,
    va: Vertex | None,
    b: Digraph,
    vb: Vertex | None,
    must_map_to: Digraph,
    must_not_map_to: Digraph,
    max_len: int,
    *,
    must_not_receive: Digraph | None = None,
    avoid: Sequence[Vertex] = (),
    extra_check: Callable[[Digraph], bool] | None = None,
    tag: str = "zz.",
) -> Join:
    """Least (length, orientation, attachment) zig-zag join passing every check.

    ``a`` and ``b`` must have disjoint vertex sets. ``va``/``vb`` set to
    ``None`` searches over attachment points in declared order, skipping
    ``avoid``.
    """
    if set(a.vertices) & set(b.vertices):
        raise ValueError("join_by_zigzag: vertex sets overlap")
    if not (classify(a).is_tree and classify(b).is_tree):
        raise NotATreeError("join_by_zigzag joins two trees")
    avoid = set(avoid)
    vas = [va] if va is not None else [v for v in a.vertices if v not in avoid]
    vbs = [vb] if vb is not None else [v for v in b.vertices if v not in avoid]
    stats = {"candidates": 0, "no_map": 0, "maps_below": 0, "receives": 0, "extra": 0}
    for length in range(1, max_len + 1):
        for start_forward in (True, False):
            for pa in vas:
                for pb in vbs:
                    stats["candidates"] += 1
                    inner, arcs = _zigzag_arcs(pa, pb, length, start_forward, tag)
                    j = Digraph(a.vertices + b.vertices + tuple(inner), a.arcs + b.arcs + tuple(arcs))
                    f = find_hom(j, must_map_to)
                    if f is None:
                        stats["no_map"] += 1
                        continue
                    if hom_exists(j, must_not_map_to):
                        stats["maps_below"] += 1
                        continue
                    if must_not_receive is not None and hom_exists(must_not_receive, j):
                        stats["receives"] += 1
                        continue
                    if extra_check is not None and not extra_check(j):
                        stats["extra"] += 1
                        continue
                    return Join(j, length, start_forward, pa, pb, f)
    raise SearchExhausted(f"no zig-zag join of length <= {max_len} passes the checks", stats)


# --- density certificates ----------------------------------------------------

@dataclass(frozen=True)
class Fact:
    source: str
    target: str
    holds: bool
    witness: Hom | None = None


@dataclass(frozen=True)
class DensityCertificate:
    """Evidence for ``t1 < witness < t2``."""

    t1: Digraph
    t2: Digraph
    witness: Digraph
    facts: tuple
    params: dict

    def graphs(self) -> dict:
        return {"t1": self.t1, "t2": self.t2, "witness": self.witness}

    def verify(self, oracle_cap: int = DEFAULT_ORACLE_CAP) -> dict:
        """Re-derive every fact; returns ``{fact: (solver_ok, oracle_ok or None)}``."""
        gs = self.graphs()
        out = {}
        for fact in self.facts:
            s, t = gs[fact.source], gs[fact.target]
            solver_ok = hom_exists(s, t) == fact.holds
            if fact.holds:
                solver_ok = solver_ok and fact.witness is not None and fact.witness.is_valid()
            try:
                oracle_ok = brute_force_hom(s, t, cap=oracle_cap) == fact.holds
            except OracleCapExceeded:
                oracle_ok = None
            out[f"{fact.source} -> {fact.target}"] = (solver_ok, oracle_ok)
        return out

    def is_valid(self, oracle_cap: int = DEFAULT_ORACLE_CAP) -> bool:
        expected = {("t1", "witness", True), ("witness", "t1", False), ("witness", "t2", True), ("t2", "witness", False)}
        if {(f.source, f.target, f.holds) for f in self.facts} != expected:
            return False
        return all(s and o is not False for s, o in self.verify(oracle_cap).values())

    def to_text(self) -> str:
        lines = ["# density certificate: t1 < witness < t2"]
        lines.append("[params]")
        lines.extend(f"{k} = {v}" for k, v in self.params.items())
        for name, g in self.graphs().items():
            lines.append(f"[graph {name}]")
            lines.append(serialize(g).rstrip("\n"))
        lines.append("[facts]")
        for f in self.facts:
            lines.append(f"{f.source} -> {f.target} : {'yes' if f.holds else 'no'}")
        for f in self.facts:
            if f.witness is not None:
                lines.append(f"[hom {f.source} -> {f.target}]")
                lines.append(f.witness.to_text().rstrip("\n"))
        return "\n".join(line for line in lines if line != "") + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DensityCertificate":
        sections: dict[str, list[str]] = {}
        current = None
        for line in text.splitlines():
            if line.startswith("[") and line.endswith("]"):
                current = line[1:-1]
                sections[current] = []
            elif current is not None:
                sections[current].append(line)
        params = {}
        for line in sections.get("params", []):
            k, _, v = line.partition(" = ")
            params[k] = v
        gs = {name: parse_digraph("\n".join(sections[f"graph {name}"])) for name in ("t1", "t2", "witness")}
        facts = []
        for line in sections["facts"]:
            edge, _, verdict = line.partition(" : ")
            s, _, t = edge.partition(" -> ")
            witness = None
            key = f"hom {s} -> {t}"
            if key in sections:
                witness = parse_hom_text("\n".join(sections[key]), gs[s], gs[t])
            facts.append(Fact(s, t, verdict.strip() == "yes", witness))
        return cls(gs["t1"], gs["t2"], gs["witness"], tuple(facts), params)


def _facts(t1: Digraph, t2: Digraph, witness: Digraph) -> tuple:
    return (
        Fact("t1", "witness", True, find_hom(t1, witness)),
        Fact("witness", "t1", hom_exists(witness, t1)),
        Fact("witness", "t2", True, find_hom(witness, t2)),
        Fact("t2", "witness", hom_exists(t2, witness)),
    )


def density_witness(t1: Digraph, t2: Digraph, max_len: int | None = None) -> DensityCertificate:
    """A tree strictly between ``t1`` and a proper tree ``t2``, with evidence."""
    if not (classify(t1).is_tree and classify(t2).is_tree):
        raise PreconditionError("t1 and t2 must be oriented trees")
    rel = compare(t1, t2)
    if rel is not OrderRelation.STRICTLY_BELOW:
        raise PreconditionError(f"t1 must be strictly below t2, got {rel}")
    if not is_proper_tree(t2):
        raise PreconditionError("t2 is not a proper tree (its core is a path)")
    dec = decompose(t2)
    n = len(t1) + 1
    gadget = build_dn(dec, n)
    a = t1.relabel(prefix="T1.")
    forest = disjoint_union(a, gadget.tree, prefix="")
    params = {
        "n": n,
        "x": dec.x,
        "u": dec.u,
        "w": dec.w,
        "flipped": dec.flipped,
        "gadget_vertices": len(gadget.tree),
    }
    forest_facts = _facts(t1, t2, forest)
    if [f.holds for f in forest_facts] != [True, False, True, False]:
        raise SearchExhausted("t1 + Dn is not strictly between t1 and t2", {"facts": forest_facts})
    if max_len is None:
        max_len = 4 * (len(a) + len(gadget.tree))
    try:
        join = join_by_zigzag(a, None, gadget.tree, None, t2, t1, max_len, must_not_receive=t2)
    except SearchExhausted as exc:
        partial = DensityCertificate(t1, t2, forest, forest_facts, {**params, "joined": False})
        raise SearchExhausted(str(exc), exc.diagnostics, partial) from None
    params.update(
        joined=True,
        zigzag_length=join.length,
        zigzag_start_forward=join.start_forward,
        attach_t1=join.va,
        attach_gadget=join.vb,
    )
    witness = join.tree
    return DensityCertificate(t1, t2, witness, _facts(t1, t2, witness), params)
