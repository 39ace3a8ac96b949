"""Embedding the homomorphism order of oriented paths into an interval
``[T1, T2]`` of trees.

``T`` is the core of a long chained gadget ``Dn(T2)``. Two short zig-zags
tie fresh anchors ``y'`` and ``z'`` (at equal level) to the first and last
labelled vertex of ``T``; ``T1`` is then hung on by a further zig-zag. The
resulting anchored tree replaces every arc ``v1 -> v2`` of a path, glued at
``y' = v1`` and ``z' = v2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .digraph import Digraph, NotATreeError, classify, level_map, oriented_path, path_word
from .enumerate import canonical_path_word, enumerate_paths
from .gadgets import PreconditionError, build_dn, decompose, join_by_zigzag
from .hom import OrderRelation, compare, core, hom_exists, is_core, is_proper_tree, retract

ANCHOR_LENGTHS = ((5, 5), (5, 6), (6, 5), (6, 6))


@dataclass(frozen=True)
class AnchoredTree:
    tree: Digraph
    y_prime: str
    z_prime: str
    base: Digraph
    provenance: dict = field(default_factory=dict)


class LabelTransportError(RuntimeError):
    pass


def _attach(arcs: list, vertices: list, start, length: int, forward: bool, tag: str, end_name: str):
    chain = [start] + [f"{tag}{i}" for i in range(1, length)] + [end_name]
    vertices.extend(chain[1:])
    for i in range(length):
        fwd = (i % 2 == 0) == forward
        arcs.append((chain[i], chain[i + 1]) if fwd else (chain[i + 1], chain[i]))


def build_t_prime(t2: Digraph, t1_size: int) -> AnchoredTree:
    """Core of ``Dn(core(t2))`` with ``n > t1_size + 2|V(core(t2))|``, plus anchors."""
    base = core(t2)
    dec = decompose(base)
    n = t1_size + 2 * len(base) + 1
    gadget = build_dn(dec, n)
    t, r = retract(gadget.tree)
    images = [r[v] for v in gadget.labels]
    if len(set(images)) != len(images):
        raise LabelTransportError(
            f"labelled vertices collide under the core retraction: "
            f"{len(set(images))} distinct images of {len(images)}"
        )
    y, z = images[0], images[-1]
    lv = level_map(t).level
    # stay inside the two-level band the labelled vertices live in
    y_forward = lv[y] < lv[images[1]]
    z_forward = lv[z] < lv[images[-2]]

    def end_level(start, forward, length):
        step = 1 if forward else -1
        return lv[start] + (step if length % 2 else 0)

    len_y, len_z = next(
        (ly, lz) for ly, lz in ANCHOR_LENGTHS
        if end_level(y, y_forward, ly) == end_level(z, z_forward, lz)
    )
    vertices, arcs = list(t.vertices), list(t.arcs)
    _attach(arcs, vertices, y, len_y, y_forward, "ay.", "y'")
    _attach(arcs, vertices, z, len_z, z_forward, "az.", "z'")
    tree = Digraph(vertices, arcs)
    provenance = {
        "n": n,
        "gadget_vertices": len(gadget.tree),
        "core_vertices": len(t),
        "y": y,
        "z": z,
        "anchor_y_length": len_y,
        "anchor_z_length": len_z,
    }
    return AnchoredTree(tree, "y'", "z'", base, provenance)


def _anchors_share_image(tree: Digraph, y, z, target: Digraph) -> bool:
    return any(hom_exists(tree, target, {y: [t], z: [t]}) for t in target.vertices)


def build_t_double_prime(t1: Digraph, anchored: AnchoredTree, max_len: int | None = None) -> AnchoredTree:
    """Hang ``t1`` on ``anchored`` by a certified zig-zag away from the anchors."""
    if not classify(t1).is_tree:
        raise NotATreeError("t1 must be an oriented tree")
    if compare(t1, anchored.base) is not OrderRelation.STRICTLY_BELOW:
        raise PreconditionError("t1 must be strictly below t2")
    a = t1.relabel(prefix="T1.")
    b = anchored.tree
    base = anchored.base
    if max_len is None:
        max_len = 4 * (len(a) + len(b))
    join = join_by_zigzag(
        a, None, b, None, base, t1, max_len,
        must_not_receive=base,
        avoid=(anchored.y_prime, anchored.z_prime),
        extra_check=lambda j: _anchors_share_image(j, anchored.y_prime, anchored.z_prime, base),
        tag="jt.",
    )
    provenance = {
        **anchored.provenance,
        "t1_zigzag_length": join.length,
        "t1_zigzag_start_forward": join.start_forward,
        "attach_t1": join.va,
        "attach_gadget": join.vb,
    }
    return AnchoredTree(join.tree, anchored.y_prime, anchored.z_prime, base, provenance)


def build_gadget(t1: Digraph, t2: Digraph) -> AnchoredTree:
    """``T''`` for the interval ``[t1, t2]``."""
    if not is_proper_tree(t2):
        raise PreconditionError("t2 is not a proper tree")
    return build_t_double_prime(t1, build_t_prime(t2, len(t1)))


def phi(p: Digraph, gadget: AnchoredTree) -> Digraph:
    """Replace every arc ``v1 -> v2`` of the path ``p`` by a copy of the gadget."""
    if not classify(p).is_oriented_path or not p.arcs:
        raise ValueError("phi needs an oriented path with at least one arc")
    g = gadget.tree
    vertices = [str(v) for v in p.vertices]
    arcs = []
    for k, (v1, v2) in enumerate(p.arcs):
        names = {v: f"e{k}.{v}" for v in g.vertices}
        names[gadget.y_prime] = str(v1)
        names[gadget.z_prime] = str(v2)
        vertices.extend(names[v] for v in g.vertices if v not in (gadget.y_prime, gadget.z_prime))
        arcs.extend((names[u], names[v]) for u, v in g.arcs)
    return Digraph(vertices, arcs)


@dataclass(frozen=True)
class EmbeddingReport:
    words: tuple
    pairs: tuple  # (i, j, relation of paths, relation of images)
    interval: tuple  # per path: (t1 -> phi, phi -/-> t1, phi -> t2, t2 -/-> phi)

    @property
    def all_match(self) -> bool:
        return all(rp == rf for _, _, rp, rf in self.pairs)

    @property
    def interval_ok(self) -> bool:
        return all(all(row) for row in self.interval)

    def to_text(self) -> str:
        lines = ["# path order vs image order", "i\tj\tP_i\tP_j\tpaths\timages\tmatch"]
        for i, j, rp, rf in self.pairs:
            lines.append(f"{i}\t{j}\t{self.words[i] or '.'}\t{self.words[j] or '.'}\t{rp}\t{rf}\t{'ok' if rp == rf else 'MISMATCH'}")
        lines.append("# interval membership t1 < phi(P) < t2")
        lines.append("i\tP_i\tt1->phi\tphi-/->t1\tphi->t2\tt2-/->phi")
        for i, row in enumerate(self.interval):
            lines.append(f"{i}\t{self.words[i]}\t" + "\t".join("yes" if ok else "NO" for ok in row))
        lines.append(f"all_match = {self.all_match}")
        lines.append(f"interval_ok = {self.interval_ok}")
        return "\n".join(lines) + "\n"


def _relation(le: bool, ge: bool) -> OrderRelation:
    if le and ge:
        return OrderRelation.EQUIVALENT
    if le:
        return OrderRelation.STRICTLY_BELOW
    if ge:
        return OrderRelation.STRICTLY_ABOVE
    return OrderRelation.INCOMPARABLE


def verify_interval_embedding(paths, t1: Digraph, t2: Digraph, gadget: AnchoredTree) -> EmbeddingReport:
    """Compare every ordered pair of paths against their images under ``phi``."""
    paths = list(paths)
    for p in paths:
        if not classify(p).is_oriented_path:
            raise ValueError("verify_interval_embedding takes oriented paths")
    images = [phi(p, gadget) for p in paths]
    m = len(paths)
    p_le = [[hom_exists(paths[i], paths[j]) for j in range(m)] for i in range(m)]
    f_le = [[i == j or hom_exists(images[i], images[j]) for j in range(m)] for i in range(m)]
    pairs = tuple(
        (i, j, _relation(p_le[i][j], p_le[j][i]), _relation(f_le[i][j], f_le[j][i]))
        for i in range(m) for j in range(m)
    )
    interval = tuple(
        (hom_exists(t1, im), not hom_exists(im, t1), hom_exists(im, t2), not hom_exists(t2, im))
        for im in images
    )
    return EmbeddingReport(tuple(path_word(p) for p in paths), pairs, interval)


def enumerate_path_cores(max_arcs: int) -> list[Digraph]:
    """Oriented paths with at most ``max_arcs`` arcs that are cores, one per
    isomorphism class, ordered by length then spelling."""
    return [p for p in enumerate_paths(max_arcs) if is_core(p)]


def random_paths(count: int, max_len: int, seed: int) -> list[Digraph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, max_len)
        word = "".join(rng.choice("FB") for _ in range(k))
        out.append(oriented_path(canonical_path_word(word)))
    return out


def gen_paths(strategy: str, **kw) -> list[Digraph]:
    if strategy == "enumerate_cores":
        return enumerate_path_cores(kw["max_arcs"])
    if strategy == "random":
        return random_paths(kw["count"], kw["max_len"], kw["seed"])
    raise ValueError(f"unknown strategy {strategy!r}")
