"""Command line front end.

Exit codes: 0 success (or the queried relation holds), 1 the queried
relation fails, 2 usage / parse / precondition error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .digraph import Digraph, DigraphError, NotATreeError, path_word, read_digraph, serialize, to_dot
from .embedding import LabelTransportError, build_gadget, gen_paths, phi, verify_interval_embedding
from .gadgets import PreconditionError, SearchExhausted, build_dn, decompose, density_witness
from .hom import (
    DEFAULT_ORACLE_CAP,
    OracleCapExceeded,
    brute_force_hom,
    compare,
    core,
    find_hom,
    is_proper_tree,
    is_rigid,
    parse_hom_text,
)

OK, FAILS, USAGE, VERIFY = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dot(args, g: Digraph, labels=None) -> None:
    if getattr(args, "dot", None):
        Path(args.dot).write_text(to_dot(g, labels), encoding="utf-8")


def cmd_hom(args) -> int:
    g, h = read_digraph(args.g), read_digraph(args.h)
    if args.verify_witness:
        f = parse_hom_text(Path(args.verify_witness).read_text(encoding="utf-8"), g, h)
        ok = f.is_valid()
        print("valid" if ok else "invalid")
        return OK if ok else VERIFY
    if args.oracle:
        try:
            ok = brute_force_hom(g, h, cap=args.cap)
        except OracleCapExceeded as exc:
            raise _Exit(USAGE, str(exc))
        print("yes" if ok else "no")
        return OK if ok else FAILS
    f = find_hom(g, h)
    if f is None:
        print("no")
        return FAILS
    print("yes")
    sys.stdout.write(f.to_text())
    return OK


def cmd_compare(args) -> int:
    print(compare(read_digraph(args.g), read_digraph(args.h)))
    return OK


def cmd_core(args) -> int:
    c = core(read_digraph(args.g))
    _emit(serialize(c), args.out)
    _dot(args, c)
    return OK


def cmd_rigid(args) -> int:
    ok = is_rigid(read_digraph(args.g))
    print("yes" if ok else "no")
    return OK if ok else FAILS


def cmd_proper(args) -> int:
    ok = is_proper_tree(read_digraph(args.t))
    print("yes" if ok else "no")
    return OK if ok else FAILS


def cmd_dn(args) -> int:
    gadget = build_dn(decompose(read_digraph(args.t2)), args.n)
    names = gadget.label_names()
    text = serialize(gadget.tree) + "".join(f"# label {names[v]} = {v}\n" for v in gadget.labels)
    _emit(text, args.out)
    _dot(args, gadget.tree, names)
    return OK


def cmd_density(args) -> int:
    t1, t2 = read_digraph(args.t1), read_digraph(args.t2)
    try:
        cert = density_witness(t1, t2, max_len=args.max_zigzag)
    except SearchExhausted as exc:
        if exc.certificate is not None:
            _emit(exc.certificate.to_text(), args.certificate)
        raise _Exit(VERIFY, f"zig-zag search failed: {exc} {exc.diagnostics}")
    _emit(serialize(cert.witness), args.out)
    if args.certificate or args.out:
        _emit(cert.to_text(), args.certificate)
    _dot(args, cert.witness)
    if not cert.is_valid(oracle_cap=args.cap):
        raise _Exit(VERIFY, "certificate failed re-verification")
    return OK


def cmd_phi(args) -> int:
    p, t1, t2 = read_digraph(args.p), read_digraph(args.t1), read_digraph(args.t2)
    gadget = build_gadget(t1, t2)
    image = phi(p, gadget)
    _emit(serialize(image), args.out)
    _dot(args, image)
    return OK


def cmd_verify_embedding(args) -> int:
    t1, t2 = read_digraph(args.t1), read_digraph(args.t2)
    files = sorted(f for f in os.listdir(args.paths) if not f.startswith("."))
    paths = [read_digraph(os.path.join(args.paths, f)) for f in files]
    paths = [p for p in paths if p.arcs]
    gadget = build_gadget(t1, t2)
    report = verify_interval_embedding(paths, t1, t2, gadget)
    _emit(report.to_text(), args.out)
    return OK if report.all_match and report.interval_ok else VERIFY


def cmd_gen(args) -> int:
    if args.random:
        paths = gen_paths("random", count=args.random, max_len=args.max_len, seed=args.seed)
    else:
        paths = gen_paths("enumerate_cores", max_arcs=args.max)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for i, p in enumerate(paths):
            Path(args.out_dir, f"path_{i:03d}.g").write_text(serialize(p), encoding="utf-8")
    else:
        for i, p in enumerate(paths):
            sys.stdout.write(f"# path {i} {path_word(p) or '(single vertex)'}\n")
            sys.stdout.write(serialize(p))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homorder", description="Homomorphism order of oriented trees.")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_out(p):
        p.add_argument("-o", "--out", help="write the edge list here instead of stdout")
        p.add_argument("--dot", help="also render the output graph as DOT")

    p = sub.add_parser("hom", help="decide G -> H and print a witness")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--verify-witness", metavar="FILE", help="check a 'u↦v' witness file instead")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("compare", help="relation of G and H in the homomorphism order")
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("core", help="core of G")
    p.add_argument("g")
    graph_out(p)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("rigid", help="is G a rigid core")
    p.add_argument("g")
    p.set_defaults(func=cmd_rigid)

    p = sub.add_parser("proper", help="is T a proper tree")
    p.add_argument("t")
    p.set_defaults(func=cmd_proper)

    p = sub.add_parser("dn", help="chained gadget Dn(T2) with its labelled vertices")
    p.add_argument("t2")
    p.add_argument("--n", type=int, default=1)
    graph_out(p)
    p.set_defaults(func=cmd_dn)

    p = sub.add_parser("density", help="tree strictly between T1 and T2, with certificate")
    p.add_argument("t1")
    p.add_argument("t2")
    p.add_argument("--certificate", help="certificate output file")
    p.add_argument("--max-zigzag", type=int, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    graph_out(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("phi", help="image of an oriented path in the interval [T1, T2]")
    p.add_argument("p")
    p.add_argument("--t1", required=True)
    p.add_argument("--t2", required=True)
    graph_out(p)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("verify-embedding", help="check order embedding on a directory of paths")
    p.add_argument("--paths", required=True, help="directory with one path per file")
    p.add_argument("--t1", required=True)
    p.add_argument("--t2", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_verify_embedding)

    p = sub.add_parser("gen", help="generate oriented paths")
    p.add_argument("kind", choices=["paths"])
    p.add_argument("--max", type=int, default=4, help="longest enumerated core, in arcs")
    p.add_argument("--random", type=int, default=0, metavar="COUNT", help="random paths instead of cores")
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except (DigraphError, NotATreeError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (SearchExhausted, LabelTransportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VERIFY


if __name__ == "__main__":
    sys.exit(main())
