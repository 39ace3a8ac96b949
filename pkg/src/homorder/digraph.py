"""Finite digraphs: the immutable carrier type, structural classification,
levels, and the edge-list / DOT text formats.

Edge-list format, one item per line::

    # comment
    a b        arc a -> b
    c          isolated (or merely declared) vertex c

Vertex order is first-appearance order.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping

Vertex = Hashable


class DigraphError(ValueError):
    """Malformed digraph data (loops, duplicate arcs, bad lines)."""


class NotATreeError(ValueError):
    """Raised by operations that need an oriented tree."""


class Digraph:
    """Finite digraph with an irreflexive arc relation.

    Vertices keep their declaration order; arcs keep insertion order but
    compare as a set.
    """

    def __init__(self, vertices: Iterable[Vertex] = (), arcs: Iterable[tuple[Vertex, Vertex]] = ()):
        vs: list[Vertex] = []
        seen: set[Vertex] = set()
        for v in vertices:
            if v in seen:
                raise DigraphError(f"duplicate vertex {v!r}")
            seen.add(v)
            vs.append(v)
        arc_list: list[tuple[Vertex, Vertex]] = []
        arcset: set[tuple[Vertex, Vertex]] = set()
        for u, v in arcs:
            if u not in seen or v not in seen:
                raise DigraphError(f"arc ({u!r}, {v!r}) uses an undeclared vertex")
            if u == v:
                raise DigraphError(f"loop at {u!r}: arc relation must be irreflexive")
            if (u, v) in arcset:
                raise DigraphError(f"duplicate arc ({u!r}, {v!r})")
            arcset.add((u, v))
            arc_list.append((u, v))
        self._vertices = tuple(vs)
        self._arcs = tuple(arc_list)
        self._arcset = frozenset(arcset)

    @classmethod
    def from_arcs(cls, arcs: Iterable[tuple[Vertex, Vertex]], vertices: Iterable[Vertex] = ()) -> "Digraph":
        """Build a digraph declaring vertices in first-appearance order."""
        arcs = list(arcs)
        order: dict[Vertex, None] = dict.fromkeys(vertices)
        for u, v in arcs:
            order.setdefault(u)
            order.setdefault(v)
        return cls(order, arcs)

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def arcs(self) -> tuple[tuple[Vertex, Vertex], ...]:
        return self._arcs

    @property
    def arcset(self) -> frozenset[tuple[Vertex, Vertex]]:
        return self._arcset

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.index

    def has_arc(self, u: Vertex, v: Vertex) -> bool:
        return (u, v) in self._arcset

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._arcset == other._arcset

    def __hash__(self) -> int:
        return hash((self._vertices, self._arcset))

    def __repr__(self) -> str:
        return f"Digraph(|V|={len(self._vertices)}, |A|={len(self._arcs)})"

    @cached_property
    def index(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self._vertices)}

    @cached_property
    def out_neighbors(self) -> dict[Vertex, tuple[Vertex, ...]]:
        out: dict[Vertex, list[Vertex]] = {v: [] for v in self._vertices}
        for u, v in self._arcs:
            out[u].append(v)
        return {v: tuple(ns) for v, ns in out.items()}

    @cached_property
    def in_neighbors(self) -> dict[Vertex, tuple[Vertex, ...]]:
        inn: dict[Vertex, list[Vertex]] = {v: [] for v in self._vertices}
        for u, v in self._arcs:
            inn[v].append(u)
        return {v: tuple(ns) for v, ns in inn.items()}

    @cached_property
    def neighbors(self) -> dict[Vertex, tuple[Vertex, ...]]:
        """Underlying (orientation-forgetting) neighbours, in declared order."""
        idx = self.index
        return {
            v: tuple(sorted(set(self.out_neighbors[v]) | set(self.in_neighbors[v]), key=idx.__getitem__))
            for v in self._vertices
        }

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors[v])

    def induced(self, keep: Iterable[Vertex]) -> "Digraph":
        """Induced subgraph; declared order is inherited from self."""
        keep = set(keep)
        return Digraph(
            [v for v in self._vertices if v in keep],
            [(u, v) for u, v in self._arcs if u in keep and v in keep],
        )

    def without(self, v: Vertex) -> "Digraph":
        return self.induced(u for u in self._vertices if u != v)

    def relabel(self, mapping: Mapping[Vertex, Vertex] | None = None, *, prefix: str | None = None) -> "Digraph":
        """Rename vertices injectively, either by a mapping or by a string prefix."""
        if prefix is not None:
            mapping = {v: f"{prefix}{v}" for v in self._vertices}
        assert mapping is not None
        if len(set(mapping[v] for v in self._vertices)) != len(self._vertices):
            raise DigraphError("relabelling is not injective")
        return Digraph(
            [mapping[v] for v in self._vertices],
            [(mapping[u], mapping[v]) for u, v in self._arcs],
        )

    def to_edgelist(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class StructureClass:
    connected: bool
    is_tree: bool
    is_oriented_path: bool
    has_cycle: bool


@dataclass(frozen=True)
class LevelMap:
    level: dict
    height: int


def parse_digraph(text: str) -> Digraph:
    """Parse an edge-list document into a :class:`Digraph`."""
    order: dict[str, None] = {}
    arcs: list[tuple[str, str]] = []
    seen_arcs: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            order.setdefault(parts[0])
        elif len(parts) == 2:
            u, v = parts
            if u == v:
                raise DigraphError(f"line {lineno}: loop '{u} {u}' violates irreflexivity")
            if (u, v) in seen_arcs:
                raise DigraphError(f"line {lineno}: duplicate arc '{u} {v}'")
            seen_arcs.add((u, v))
            order.setdefault(u)
            order.setdefault(v)
            arcs.append((u, v))
        else:
            raise DigraphError(f"line {lineno}: expected 'u v' or 'u', got {raw!r}")
    return Digraph(order, arcs)


def read_digraph(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_digraph(fh.read())


def serialize(d: Digraph) -> str:
    """Edge-list text that :func:`parse_digraph` maps back to ``d`` exactly.

    Vertex declaration lines are only emitted up front when the arcs alone
    would not reproduce the declared order.
    """
    for v in d.vertices:
        s = str(v)
        if not s or any(c.isspace() for c in s) or s.startswith("#"):
            raise DigraphError(f"vertex {v!r} cannot be written in edge-list format")
    implied: dict = {}
    for u, v in d.arcs:
        implied.setdefault(u)
        implied.setdefault(v)
    isolated = [v for v in d.vertices if v not in implied]
    lines: list[str] = []
    if list(implied) + isolated != list(d.vertices):
        lines.extend(str(v) for v in d.vertices)
        isolated = []
    lines.extend(f"{u} {v}" for u, v in d.arcs)
    lines.extend(str(v) for v in isolated)
    return "".join(line + "\n" for line in lines)


def _components(d: Digraph) -> list[list[Vertex]]:
    seen: set[Vertex] = set()
    comps = []
    for s in d.vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in d.neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def classify(d: Digraph) -> StructureClass:
    comps = _components(d)
    connected = len(comps) == 1
    # Underlying multigraph: a digon u->v, v->u counts as a 2-cycle.
    has_cycle = len(d.arcs) > len(d.vertices) - len(comps)
    is_tree = connected and not has_cycle
    is_path = is_tree and all(len(ns) <= 2 for ns in d.neighbors.values())
    return StructureClass(connected, is_tree, is_path, has_cycle)


def is_forest(d: Digraph) -> bool:
    return not classify(d).has_cycle


def level_map(t: Digraph) -> LevelMap:
    """Levels of an oriented tree, normalised to a minimum of 0."""
    if not classify(t).is_tree:
        raise NotATreeError("level_map needs an oriented tree")
    root = t.vertices[0]
    level = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in t.out_neighbors[v]:
            if w not in level:
                level[w] = level[v] + 1
                queue.append(w)
        for w in t.in_neighbors[v]:
            if w not in level:
                level[w] = level[v] - 1
                queue.append(w)
    low = min(level.values())
    level = {v: level[v] - low for v in t.vertices}
    return LevelMap(level, max(level.values()))


def height(t: Digraph) -> int:
    return level_map(t).height


def reverse(d: Digraph) -> Digraph:
    return Digraph(d.vertices, [(v, u) for u, v in d.arcs])


def disjoint_union(d1: Digraph, d2: Digraph, prefix: str = "+") -> Digraph:
    """``d1 + d2`` with every vertex of ``d2`` renamed ``prefix + name``."""
    d2r = d2.relabel(prefix=prefix)
    clash = set(d1.vertices) & set(d2r.vertices)
    if clash:
        raise DigraphError(f"prefix {prefix!r} collides with vertices {sorted(map(str, clash))}")
    return Digraph(d1.vertices + d2r.vertices, d1.arcs + d2r.arcs)


def directed_path(k: int, prefix: str = "p") -> Digraph:
    """The directed path with ``k`` arcs."""
    vs = [f"{prefix}{i}" for i in range(k + 1)]
    return Digraph(vs, list(zip(vs, vs[1:])))


def oriented_path(word: str, prefix: str = "p") -> Digraph:
    """Oriented path from a word over ``F`` (forward arc) and ``B`` (backward arc)."""
    vs = [f"{prefix}{i}" for i in range(len(word) + 1)]
    arcs = []
    for i, c in enumerate(word):
        if c == "F":
            arcs.append((vs[i], vs[i + 1]))
        elif c == "B":
            arcs.append((vs[i + 1], vs[i]))
        else:
            raise ValueError(f"bad path letter {c!r}")
    return Digraph(vs, arcs)


def path_word(p: Digraph) -> str:
    """Inverse of :func:`oriented_path`, read from the first declared endpoint."""
    if not classify(p).is_oriented_path:
        raise ValueError("not an oriented path")
    if len(p) == 1:
        return ""
    start = next(v for v in p.vertices if p.degree(v) == 1)
    word, prev, cur = [], None, start
    while True:
        nxt = [w for w in p.neighbors[cur] if w != prev]
        if not nxt:
            return "".join(word)
        w = nxt[0]
        word.append("F" if p.has_arc(cur, w) else "B")
        prev, cur = cur, w


_PLAIN_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|-?[0-9]+")


def _dot_id(v: Vertex) -> str:
    if _PLAIN_ID.fullmatch(str(v)):
        return str(v)
    s = str(v).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def to_dot(d: Digraph, labels: Mapping[Vertex, str] | None = None, name: str = "G") -> str:
    labels = labels or {}
    lines = [f"digraph {name} {{"]
    for v in d.vertices:
        if v in labels:
            lines.append(f'  {_dot_id(v)} [label="{labels[v]}", style=filled, fillcolor=lightgrey];')
        else:
            lines.append(f"  {_dot_id(v)};")
    for u, v in d.arcs:
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
