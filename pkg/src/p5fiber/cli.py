"""Command-line driver: ``p5fiber <command> [options]``.

Exit codes: 0 success, 2 precondition failure, 3 inconclusive certificates,
4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from importlib import resources

from . import polytope as P
from .coloring import (
    ColoringError,
    is_proper,
    load_coloring,
    parse_coloring,
    search_colorings,
    search_profile_colorings,
    torsion_witness,
)
from .cubulation import Cubulation, cell_census, one_skeleton_components
from .game import (
    CoorientationSystem,
    Partition,
    PartitionError,
    bad_facet_pairs,
    base_state_string,
    evaluate_partition,
    family_check_cliques,
    find_base_states,
    nonzero_cusp_directions,
    parse_base_state,
    survey_csv,
    survey_partitions,
    survey_summary,
)
from .homology import BoundaryError
from .tessellation import Tessellation, TorusCheckError, cusp_census, cusp_orbits, cusp_section_complex, verify_torus

log = logging.getLogger("p5fiber")

EXIT_OK, EXIT_PRECONDITION, EXIT_INCONCLUSIVE, EXIT_INTERNAL = 0, 2, 3, 4
DEFAULT_PARTITION = "1,5|2,6|3,7|4,8"


class Precondition(Exception):
    pass


def data_text(name):
    return resources.files("p5fiber").joinpath("data", name).read_text()


def default_coloring():
    return parse_coloring(data_text("coloring_c8.txt"))


def parse_fraction(text):
    try:
        t = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return t


# -- configuration ------------------------------------------------------------


def resolve_coloring(args, partition=None):
    if args.coloring:
        col = load_coloring(args.coloring)
    elif args.search_coloring:
        c = args.search_coloring
        if c == 8 and partition is not None:
            def usable(col):
                row = evaluate_partition(col, partition)
                return row["family_check"] and row["cusp_condition"]

            found = search_profile_colorings(seed=args.seed, limit=1, accept=usable)
        else:
            found = search_colorings(c, seed=args.seed)
        if not found:
            raise Precondition(f"no suitable proper coloring with {c} colors")
        col = found[0]
    else:
        col = default_coloring()
    if not is_proper(col):
        raise Precondition("coloring is not proper")
    return col


def resolve_partition(args, c):
    return Partition.parse(args.partition, c)


def resolve_base_state(args, col, partition):
    if args.base_state and args.base_state != "search":
        with open(args.base_state) as fh:
            return parse_base_state(fh.read())
    if not args.coloring and not args.search_coloring and args.partition == DEFAULT_PARTITION:
        return parse_base_state(data_text("base_state_mod4.txt"))
    found = find_base_states(col, partition, seed=args.seed)
    if not found:
        raise Precondition(f"no base state extends over all squares with nonzero cusp classes for {partition}")
    return found[0]


def run_config(args, col, partition=None, base=None):
    cfg = {"coloring": list(col.colors), "palette_size": col.palette_size, "seed": args.seed}
    if partition is not None:
        cfg["partition"] = str(partition)
    if base is not None:
        cfg["base_state"] = base_state_string(base)
    return cfg


# -- output -----------------------------------------------------------------------


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def emit(args, name, text, ext="json"):
    sys.stdout.write(text)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, f"{name}.{ext}"), "w") as fh:
            fh.write(text)


def write_extra(args, name, obj):
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, name), "w") as fh:
            fh.write(dumps(obj))


# -- commands -----------------------------------------------------------------


def cmd_polytope(args):
    if args.format == "dot":
        emit(args, "polytope", P.to_dot(), "dot")
    else:
        emit(args, "polytope", P.to_json() + "\n")
    return EXIT_OK


def cmd_color(args):
    if args.action == "search":
        c = args.search_coloring or 8
        if args.profile:
            found = search_profile_colorings(seed=args.seed, limit=args.limit)
        else:
            found = search_colorings(c, seed=args.seed, limit=args.limit)
        if args.format == "json":
            emit(args, "colorings", dumps({"palette_size": c, "found": [x.to_dict() for x in found]}))
        else:
            emit(args, "colorings", "\n".join(x.to_text() for x in found), "txt")
        if not found:
            raise Precondition(f"no proper coloring with {c} colors")
        return EXIT_OK
    col = load_coloring(args.coloring) if args.coloring else default_coloring()
    witness = torsion_witness(col)
    from .tessellation import cusp_rank_profile

    out = {
        "coloring": col.to_dict(),
        "proper": is_proper(col),
        "torsion_witness": None if witness is None else [P.facet_label(f) for f in witness],
        "cusp_ranks": {str(p): r for p, r in zip(P.ideal_vertices(), cusp_rank_profile(col))},
    }
    emit(args, "verify", dumps(out))
    if not out["proper"]:
        raise Precondition("coloring is not proper")
    return EXIT_OK


def cmd_manifold(args):
    col = resolve_coloring(args)
    tess = Tessellation(col)
    census = cusp_census(tess)
    tori = []
    for cu in cusp_orbits(tess):
        b = verify_torus(cusp_section_complex(cu, verify=False), cu.tiles)
        tori.append({"base_vertex": str(cu.base_vertex), "representative": cu.representative, "betti_gf2": b})
    out = {"config": run_config(args, col), "stats": tess.stats(), "cusps": census, "cusp_tori": tori}
    emit(args, "manifold", dumps(out))
    return EXIT_OK


def cmd_cubulate(args):
    col = resolve_coloring(args)
    cub = Cubulation(col)
    cc = cub.complex.chain_complex()
    cc.check_gf2()
    out = {
        "config": run_config(args, col),
        "census": cell_census(cub),
        "expected_counts": cub.expected_counts(),
        "components": len(one_skeleton_components(cub)),
        "betti_gf2": cc.betti("GF2") if args.homology else None,
    }
    if out["census"]["counts"] != out["expected_counts"]:
        raise BoundaryError("cell counts disagree with the clique census")
    emit(args, "cubulate", dumps(out))
    return EXIT_OK


def cmd_game(args):
    col = resolve_coloring(args)
    if args.action == "survey":
        rows = survey_partitions(col, strategy=args.strategy, samples=args.samples, seed=args.seed, jobs=args.jobs)
        if args.format == "csv":
            emit(args, "survey", survey_csv(rows), "csv")
        else:
            emit(args, "survey", dumps({"config": run_config(args, col), "summary": survey_summary(rows), "rows": rows}))
        return EXIT_OK
    partition = resolve_partition(args, col.palette_size)
    try:
        base = resolve_base_state(args, col, partition)
    except Precondition:
        base = 0  # square goodness does not depend on the base state
    sys_ = CoorientationSystem(col, partition, base)
    bad = bad_facet_pairs(sys_)
    out = {
        "config": run_config(args, col, partition, base),
        "bad_facet_pairs": [[P.facet_label(a), P.facet_label(b)] for a, b in bad],
        "bad_squares": len(bad) * (1 << col.palette_size) // 4,
        "good_squares": len(P.cliques(2)) * (1 << col.palette_size) // 4 - len(bad) * (1 << col.palette_size) // 4,
        "family_check": family_check_cliques(col, bad),
        "cusp_directions": {
            str(p): [[P.facet_label(a), P.facet_label(b)] for a, b in pairs]
            for p, pairs in zip(P.ideal_vertices(), nonzero_cusp_directions(col, partition))
        },
    }
    emit(args, "classify", dumps(out))
    return EXIT_OK


def cmd_morse(args):
    from .morse.pipeline import run_morse

    partition = Partition.parse(args.partition)
    col = resolve_coloring(args, partition)
    partition = resolve_partition(args, col.palette_size)
    base = resolve_base_state(args, col, partition)
    report, certificates, timings = run_morse(
        col, partition, base, seed=args.seed, restarts=args.restarts, jobs=args.jobs,
        center=args.center, t=args.t, fiber=not args.no_fiber, log=log.info,
    )
    for k, v in timings.items():
        log.info("%s: %.2fs", k, v)
    if not args.table:
        report["links"]["table"] = [
            r for r in report["links"]["table"] if r["ascending"] != "certified" or r["descending"] != "certified"
        ]
    write_extra(args, "certificates.json", certificates)
    emit(args, "morse", dumps(report))
    if report["links"]["inconclusive"]:
        return EXIT_INCONCLUSIVE
    if not report["cusps"]["patterns_ok"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_fiber(args):
    from .morse.levelset import fiber_to_dict, level_set, primitive_lift

    if args.fixture:
        from .fixtures import FIXTURES

        f = FIXTURES[args.fixture]()
        g = primitive_lift(f)
        fib = level_set(g, args.t)
        out = {"fixture": args.fixture, "level_set": fib.summary()}
        if args.cells:
            out["cells"] = fiber_to_dict(fib, g, coordinates=True)["cells"]
        emit(args, "fiber", dumps(out))
        return EXIT_OK
    from .morse.pipeline import fiber_report
    from .morse.plmap import build_pl_map
    from .morse.subdivision import subdivide

    partition = Partition.parse(args.partition)
    col = resolve_coloring(args, partition)
    partition = resolve_partition(args, col.palette_size)
    base = resolve_base_state(args, col, partition)
    sys_ = CoorientationSystem(col, partition, base)
    mx = subdivide(Cubulation(col), sys_)
    f = build_pl_map(mx, sys_, args.center)
    out = {"config": run_config(args, col, partition, base), **fiber_report(f, args.t)}
    emit(args, "fiber", dumps(out))
    return EXIT_OK


def cmd_fixtures(args):
    from .fixtures import FIXTURES

    out = {}
    for name in sorted(FIXTURES):
        f = FIXTURES[name]()
        cc = f.complex.chain_complex()
        out[name] = {
            "counts": f.complex.counts(),
            "euler_characteristic": f.complex.euler_characteristic(),
            "betti_gf2": cc.betti("GF2"),
            "period": None if f.period is None else str(f.period),
        }
    emit(args, "fixtures", dumps(out))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--coloring", metavar="FILE", help="coloring file (text or JSON)")
    src.add_argument("--search-coloring", metavar="C", type=int, help="search a proper coloring with C colors")
    common.add_argument("--partition", default=DEFAULT_PARTITION, help="e.g. '1,5|2,6|3,7|4,8'")
    common.add_argument("--base-state", default="search", metavar="FILE|search")
    common.add_argument("--t", type=parse_fraction, default=Fraction(1, 4), metavar="P/Q")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", metavar="DIR")
    common.add_argument("--format", choices=["json", "csv", "dot", "text"], default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="p5fiber", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("polytope", parents=[common])
    sp.set_defaults(func=cmd_polytope)

    sp = sub.add_parser("color", parents=[common])
    sp.add_argument("action", choices=["search", "verify"])
    sp.add_argument("--limit", type=int, default=1)
    sp.add_argument("--profile", action="store_true", help="require 8 rainbow and 2 four-color cusp stars")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("manifold", parents=[common])
    sp.set_defaults(func=cmd_manifold)

    sp = sub.add_parser("cubulate", parents=[common])
    sp.add_argument("--homology", action="store_true")
    sp.set_defaults(func=cmd_cubulate)

    sp = sub.add_parser("game", parents=[common])
    sp.add_argument("action", choices=["classify", "survey"])
    sp.add_argument("--strategy", choices=["auto", "exhaustive", "sample"], default="auto")
    sp.add_argument("--samples", type=int, default=4096)
    sp.set_defaults(func=cmd_game)

    sp = sub.add_parser("morse", parents=[common])
    sp.add_argument("action", choices=["run"])
    sp.add_argument("--restarts", type=int, default=64)
    sp.add_argument("--center", type=parse_fraction, default=Fraction(1, 2))
    sp.add_argument("--no-fiber", action="store_true")
    sp.add_argument("--table", action="store_true", help="include every vertex in the link table")
    sp.set_defaults(func=cmd_morse)

    sp = sub.add_parser("fiber", parents=[common])
    sp.add_argument("--fixture", choices=["T2", "T4", "cube2", "cube3", "cube5"])
    sp.add_argument("--center", type=parse_fraction, default=Fraction(1, 2))
    sp.add_argument("--cells", action="store_true", help="export sliced cells with coordinates")
    sp.set_defaults(func=cmd_fiber)

    sp = sub.add_parser("fixtures", parents=[common])
    sp.set_defaults(func=cmd_fixtures)
    return ap


def error_exit(code, kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}, sort_keys=True) + "\n")
    return code


def main(argv=None):
    from .morse.cusps import CuspLoopError
    from .morse.levelset import RegularValueError
    from .morse.pipeline import InvariantError
    from .morse.plmap import MorseError
    from .morse.subdivision import FamilyViolation, SubdivisionError

    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (Precondition, ColoringError, PartitionError, FamilyViolation, MorseError,
            RegularValueError, FileNotFoundError, ValueError) as exc:
        return error_exit(EXIT_PRECONDITION, type(exc).__name__, str(exc))
    except (InvariantError, BoundaryError, TorusCheckError, CuspLoopError, SubdivisionError,
            AssertionError) as exc:
        return error_exit(EXIT_INTERNAL, type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
