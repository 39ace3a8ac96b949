"""Homomorphism order of finite digraphs, with tree gadgets for density and
for embedding the path order into intervals of oriented trees."""

from .digraph import (
    Digraph,
    DigraphError,
    LevelMap,
    NotATreeError,
    StructureClass,
    classify,
    directed_path,
    disjoint_union,
    height,
    level_map,
    oriented_path,
    parse_digraph,
    path_word,
    read_digraph,
    reverse,
    serialize,
    to_dot,
)
from .embedding import (
    AnchoredTree,
    EmbeddingReport,
    build_gadget,
    build_t_double_prime,
    build_t_prime,
    gen_paths,
    phi,
    verify_interval_embedding,
)
from .enumerate import enumerate_digraphs, enumerate_paths, enumerate_trees
from .gadgets import (
    Decomposition,
    DensityCertificate,
    LabelledGadget,
    PreconditionError,
    SearchExhausted,
    build_d1,
    build_dn,
    build_zigzag,
    check_labelled_lemma,
    decompose,
    density_witness,
    join_by_zigzag,
    plank,
)
from .hom import (
    Hom,
    OracleCapExceeded,
    OrderRelation,
    brute_force_hom,
    compare,
    core,
    find_hom,
    hom_exists,
    is_core,
    is_proper_tree,
    is_rigid,
    iter_homs,
    retract,
)

__version__ = "0.1.0"

__all__ = [
    "AnchoredTree",
    "Decomposition",
    "DensityCertificate",
    "Digraph",
    "DigraphError",
    "EmbeddingReport",
    "Hom",
    "LabelledGadget",
    "LevelMap",
    "NotATreeError",
    "OracleCapExceeded",
    "OrderRelation",
    "PreconditionError",
    "SearchExhausted",
    "StructureClass",
    "brute_force_hom",
    "build_d1",
    "build_dn",
    "build_gadget",
    "build_t_double_prime",
    "build_t_prime",
    "build_zigzag",
    "check_labelled_lemma",
    "classify",
    "compare",
    "core",
    "decompose",
    "density_witness",
    "directed_path",
    "disjoint_union",
    "enumerate_digraphs",
    "enumerate_paths",
    "enumerate_trees",
    "find_hom",
    "gen_paths",
    "height",
    "hom_exists",
    "is_core",
    "is_proper_tree",
    "is_rigid",
    "iter_homs",
    "join_by_zigzag",
    "level_map",
    "oriented_path",
    "parse_digraph",
    "path_word",
    "phi",
    "plank",
    "read_digraph",
    "retract",
    "reverse",
    "serialize",
    "to_dot",
    "verify_interval_embedding",
]
