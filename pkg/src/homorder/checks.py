"""Desk-scale verification runs: the proper-tree threshold, the labelled
vertex lemma, density certificates and the path-order embedding.

Each ``run_*`` function is deterministic and returns plain data plus a text
rendering; ``python -m homorder.checks`` prints all renderings, which makes
byte-level reproducibility easy to test from a fresh interpreter.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .digraph import Digraph, directed_path, oriented_path, path_word, serialize
from .embedding import EmbeddingReport, build_gadget, enumerate_path_cores, random_paths, verify_interval_embedding
from .enumerate import enumerate_trees, tree_code
from .gadgets import DensityCertificate, LemmaReport, build_dn, check_labelled_lemma, decompose, density_witness
from .hom import OrderRelation, compare, is_proper_tree

EMBEDDING_MAX_ARCS = 7
EMBEDDING_RANDOM = dict(count=20, max_len=8, seed=7)


@dataclass
class ThresholdScan:
    max_vertices: int
    first_proper: Digraph | None
    non_proper_counts: dict  # size -> number of trees that are not proper

    @property
    def threshold(self) -> int | None:
        return None if self.first_proper is None else len(self.first_proper)

    def to_text(self) -> str:
        lines = [f"# proper-tree threshold scan up to {self.max_vertices} vertices"]
        for n, c in sorted(self.non_proper_counts.items()):
            lines.append(f"size {n}: {c} non-proper trees")
        if self.first_proper is not None:
            lines.append(f"first proper tree: {len(self.first_proper)} vertices, code {tree_code(self.first_proper)}")
            lines.append(serialize(self.first_proper).rstrip("\n"))
        return "\n".join(lines) + "\n"


def run_threshold(max_vertices: int = 8) -> ThresholdScan:
    """Scan trees by size; stop at the end of the first size containing a proper tree."""
    first = None
    counts: dict[int, int] = {}
    for n in range(1, max_vertices + 1):
        for t in enumerate_trees(n, n):
            if is_proper_tree(t):
                first = first or t
            else:
                counts[n] = counts.get(n, 0) + 1
        if first is not None:
            break
    return ThresholdScan(max_vertices, first, counts)


def proper_trees(max_vertices: int = 9) -> list[Digraph]:
    return [t for t in enumerate_trees(max_vertices, 8) if is_proper_tree(t)]


def lemma_instances(t2s: list[Digraph]) -> list[tuple[str, object, Digraph]]:
    """``(name, Dn, Dm)`` with ``n <= m``: the longer chain receives the shorter."""
    out = []
    for k, t2 in enumerate(t2s):
        dec = decompose(t2)
        for n, m in ((1, 2), (1, 3), (2, 3)):
            out.append((f"T2#{k} D{n} -> D{m}", build_dn(dec, n), build_dn(dec, m).tree))
    return out


def run_lemma(t2s: list[Digraph]) -> list[tuple[str, LemmaReport]]:
    return [(name, check_labelled_lemma(g, t1)) for name, g, t1 in lemma_instances(t2s)]


def lemma_text(results) -> str:
    lines = ["# labelled-vertex injectivity"]
    for name, r in results:
        lines.append(
            f"{name}: hypothesis={r.hypothesis_ok} homs={r.hom_count} "
            f"injective={r.all_injective} holds={r.holds}"
        )
    return "\n".join(lines) + "\n"


def density_pairs(t2s: list[Digraph]) -> list[tuple[Digraph, Digraph]]:
    """Small trees below each proper ``t2``: single vertex, arc, 2-path, zig-zags."""
    smalls = [
        Digraph(["v"], []),
        directed_path(1),
        directed_path(2),
        oriented_path("FBF"),
        oriented_path("FFB"),
    ]
    pairs = []
    for t2 in t2s:
        for t1 in smalls:
            if compare(t1, t2) is OrderRelation.STRICTLY_BELOW:
                pairs.append((t1, t2))
    return pairs


def run_density(pairs) -> list[DensityCertificate]:
    return [density_witness(t1, t2) for t1, t2 in pairs]


def embedding_paths() -> list[Digraph]:
    cores = [p for p in enumerate_path_cores(EMBEDDING_MAX_ARCS) if p.arcs]
    return cores + random_paths(**EMBEDDING_RANDOM)


def run_embedding(t1: Digraph, t2: Digraph) -> tuple[EmbeddingReport, dict]:
    gadget = build_gadget(t1, t2)
    report = verify_interval_embedding(embedding_paths(), t1, t2, gadget)
    return report, gadget.provenance


def main() -> int:
    scan = run_threshold()
    sys.stdout.write(scan.to_text())
    t2s = proper_trees(9)
    sys.stdout.write(lemma_text(run_lemma(t2s[:2])))
    for cert in run_density(density_pairs(t2s[:3])[:6]):
        sys.stdout.write(cert.to_text())
    report, prov = run_embedding(directed_path(1), t2s[0])
    sys.stdout.write("".join(f"# {k} = {v}\n" for k, v in prov.items()))
    sys.stdout.write(report.to_text())
    sys.stdout.write(" ".join(path_word(p) for p in embedding_paths()) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
