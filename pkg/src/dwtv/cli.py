"""Command-line front end: ``dwtv <command> [options]``.

Exit codes: 0 success, 1 a validation or check failed (a witness is
printed), 2 usage error. All randomness comes from ``random.Random(seed)``
(Mersenne Twister), so output is a pure function of argv and seed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import cocycles, colorings, groups, statesum, tqft
from .complexes import parse_complex_spec, parse_surface_spec, validate, write_triangulation
from .complexes.moves import random_move
from .errors import DWTVError, InvalidParameter, SizeLimitError

MAX_14_MOVES = 2


class Report:
    def __init__(self, json_lines: bool, out=None):
        self.json_lines = json_lines
        self.out = out or sys.stdout

    def line(self, text: str, **record):
        if self.json_lines:
            if record:
                print(json.dumps(record, sort_keys=True), file=self.out)
        else:
            print(text, file=self.out)


def _group(args):
    return groups.parse_group_spec(args.group)


def _cocycle(args, G):
    return cocycles.parse_cocycle_spec(args.cocycle, G)


def _boundary(path: str | None) -> dict[str, list[int]]:
    if not path:
        return {}
    tau: dict[str, list[int]] = {}
    for raw in Path(path).read_text().splitlines():
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] != "component" or len(toks) < 2:
            raise InvalidParameter(f"boundary coloring lines start with 'component <label>': {raw!r}")
        values = colorings.parse_coloring(" ".join(toks[2:]))
        tau[toks[1]] = [values[e] for e in sorted(values)]
    return tau


def cmd_build(args, rep: Report) -> int:
    T = parse_complex_spec(args.complex)
    text = write_triangulation(T)
    if args.output:
        Path(args.output).write_text(text)
        rep.line(f"wrote {args.output}", path=args.output, tets=T.tet_count)
    else:
        rep.out.write(text)
    return 0


def cmd_validate(args, rep: Report) -> int:
    T = parse_complex_spec(args.complex)
    report = validate(T)
    rep.line(str(report), ok=report.ok, violations=report.violations, tets=report.tets,
             n0=report.n0, edges=report.edges, faces=report.faces, closed=report.closed)
    return 0 if report.ok else 1


def cmd_colorings(args, rep: Report) -> int:
    G = _group(args)
    if args.surface:
        X, pins = parse_surface_spec(args.surface), {}
    else:
        X = parse_complex_spec(args.complex)
        pins = statesum.boundary_pins(X, _boundary(args.boundary))
    rows = colorings.enumerate_array(X, G, pins)
    if not args.count_only:
        for row in rows:
            rep.line(colorings.format_coloring(row), coloring=[int(v) for v in row])
    rep.line(f"count = {len(rows)}", count=len(rows))
    return 0


def _print_value(rep: Report, key: str, value) -> None:
    rep.line(f"{key} = {value.render()}", key=key, value=value.render(), approx=value.approx())
    rep.line(f"approx = {value.approx()}")


def cmd_invariant(args, rep: Report) -> int:
    T = parse_complex_spec(args.complex)
    G = _group(args)
    alpha = _cocycle(args, G)
    if args.trace:
        for col, e in statesum.trace(T, G, alpha, args.g20_convention):
            rep.line(f"{colorings.format_coloring(col)} -> {e}", coloring=list(col), exponent=e)
    if T.closed and not args.boundary:
        value = statesum.dw_invariant(T, G, alpha, g20_convention=args.g20_convention)
    else:
        value = statesum.dw_relative(T, G, alpha, _boundary(args.boundary),
                                     g20_convention=args.g20_convention)
    _print_value(rep, "invariant", value)
    return 0


def cmd_tv(args, rep: Report) -> int:
    T = parse_complex_spec(args.complex)
    G = _group(args)
    C = statesum.GroupCategory(G, _cocycle(args, G))
    value = statesum.tv_invariant(T, C, fast=args.fast)
    _print_value(rep, "tv", value)
    return 0


def cmd_tqft_dim(args, rep: Report) -> int:
    S = parse_surface_spec(args.surface)
    G = _group(args)
    mat = tqft.cylinder_matrix(S, G, _cocycle(args, G), "i")
    dim = mat.rank()
    rep.line(f"dim V(Σ) = {dim}", dim=dim)
    if args.matrix:
        for row in mat.render():
            rep.line(row, row=row)
    return 0


def cmd_cobordism(args, rep: Report) -> int:
    M = parse_complex_spec(args.complex)
    G = _group(args)
    mat = tqft.cobordism_matrix(M, G, _cocycle(args, G), args.normalization)
    rows, cols = mat.shape
    rep.line(f"shape = {rows}x{cols}", rows=rows, cols=cols, normalization=args.normalization)
    if mat.half:
        rep.line(f"scale = |G|^({mat.half})", half_exponent=str(mat.half))
    for row in mat.render():
        rep.line(row, row=row)
    return 0


def cmd_pachner_test(args, rep: Report) -> int:
    T = parse_complex_spec(args.complex)
    G = _group(args)
    alpha = _cocycle(args, G)
    rng = random.Random(args.seed)
    base = statesum.dw_invariant(T, G, alpha)
    rep.line(f"start: invariant = {base.render()}", step=0, value=base.render())
    stars = 0
    for step in range(1, args.moves + 1):
        kinds = ("14", "23", "relabel") if stars < args.max_14 else ("23", "relabel")
        T, desc = random_move(T, rng, kinds)
        stars += desc.startswith("1-4")
        value = statesum.dw_invariant(T, G, alpha, check=False)
        rep.line(f"move {step}: {desc}: invariant = {value.render()}", step=step, move=desc,
                 value=value.render())
        if value != base:
            rep.line(f"invariant changed at move {step} ({desc}): {base.render()} -> {value.render()}",
                     ok=False, step=step)
            return 1
    rep.line(f"invariant stable across {args.moves} moves", ok=True, moves=args.moves)
    return 0


def cmd_cocycle_check(args, rep: Report) -> int:
    G = _group(args)
    report = cocycles.check_cocycle(_cocycle(args, G))
    rep.line(str(report), ok=report.ok, checked=report.checked,
             witness=list(report.witness) if report.witness else None)
    return 0 if report.ok else 1


def cmd_hom_count(args, rep: Report) -> int:
    G = _group(args)
    X = parse_surface_spec(args.surface) if args.surface else parse_complex_spec(args.complex)
    n = colorings.hom_count(X, G)
    q = colorings.hom_count_mod_conj(X, G)
    rep.line(f"hom = {n}", hom=n, hom_mod_conj=q)
    rep.line(f"hom mod conj = {q}")
    return 0


COMMANDS = {
    "build": (cmd_build, "write a builder's complex in the dwtv-tri format"),
    "validate": (cmd_validate, "check every structural invariant of a complex"),
    "colorings": (cmd_colorings, "list admissible colorings"),
    "invariant": (cmd_invariant, "Dijkgraaf-Witten invariant (relative with --boundary)"),
    "tv": (cmd_tv, "Turaev-Viro state sum through 6j symbols"),
    "tqft-dim": (cmd_tqft_dim, "rank of the cylinder projector over a surface"),
    "cobordism": (cmd_cobordism, "cobordism matrix of a complex with in/out boundary"),
    "pachner-test": (cmd_pachner_test, "random moves, checking the invariant after each"),
    "cocycle-check": (cmd_cocycle_check, "exhaustive pentagon check"),
    "hom-count": (cmd_hom_count, "homomorphisms pi_1 -> G by brute force"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dwtv", description=__doc__.splitlines()[0])
    parser.add_argument("--json-lines", action="store_true", help="one JSON record per result")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json-lines", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--seed", type=int, default=0)
        if name in ("build", "validate", "colorings", "invariant", "tv", "cobordism",
                    "pachner-test", "hom-count"):
            p.add_argument("--complex", default="sphere3" if name != "cobordism" else "cylinder:torus",
                           help="sphere3, torus3, sigma:<g>, cylinder:<surface> or a file")
        if name in ("colorings", "tqft-dim", "hom-count"):
            p.add_argument("--surface", required=name == "tqft-dim",
                           help="torus, torus:<k>, genus:<g> or sphere")
        if name != "build" and name != "validate":
            p.add_argument("--group", required=True,
                           help="cyclic:<n>, symmetric:<n>, product:<a>x<b>, table:<path>")
        if name in ("invariant", "tv", "tqft-dim", "cobordism", "pachner-test", "cocycle-check"):
            p.add_argument("--cocycle", default="trivial",
                           help="trivial, zn, sn, file:<path>, optionally *coboundary:<path>")
        if name in ("colorings", "invariant"):
            p.add_argument("--boundary", help="boundary coloring file")
        if name == "build":
            p.add_argument("--output")
        if name == "colorings":
            p.add_argument("--count-only", action="store_true")
        if name == "invariant":
            p.add_argument("--trace", action="store_true", help="per-coloring exponents")
            p.add_argument("--g20-convention", action="store_true",
                           help="evaluate alpha(g01, g12, g20) instead of alpha(g01, g12, g23)")
        if name == "tv":
            p.add_argument("--fast", action="store_true", help="sum over admissible labelings only")
        if name == "tqft-dim":
            p.add_argument("--matrix", action="store_true", help="also print the projector")
        if name == "cobordism":
            p.add_argument("--normalization", choices=tqft.NORMALIZATIONS, default="i")
        if name == "pachner-test":
            p.add_argument("--moves", type=int, default=6)
            p.add_argument("--max-14", type=int, default=MAX_14_MOVES,
                           help="cap on 1-4 moves, which multiply the coloring count by |G|")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.json_lines)
    func = COMMANDS[args.command][0]
    try:
        return func(args, rep)
    except (InvalidParameter, SizeLimitError) as exc:
        print(f"dwtv {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except DWTVError as exc:
        witness = getattr(exc, "witness", None)
        suffix = f" (witness {witness})" if witness is not None else ""
        print(f"dwtv {args.command}: {exc}{suffix}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"dwtv {args.command}: error: {exc}", file=sys.stderr)
        return 2


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
