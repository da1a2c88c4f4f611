import argparse
import logging

from catalog.reports import (
    automorphism_report,
    catalog_frame,
    invariants_report,
    render_json,
    render_text,
    tally_frame,
    verify_class,
    write_enumeration,
)
from catalog.table import all_entries, catalog_get, complex_of, is_catalog_id
from complexes.facet_io import read_facet_file, serialize, write_facet_file
from core.config import load_parameters
from core.errors import BoundaryError, ClassError, InputError, TightNbrError
from enumeration.encoding import string_rep
from enumeration.minimal import minimal_representative
from enumeration.relaxed import enumerate_relaxed
from enumeration.search import enumerate_all
from enumeration.templates import GRAPHS
from networks.oracle import MODES, oracle_classification
from topology.stacked import boundary
from topology.symmetry import find_isomorphism

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def load_complex(source):
    """A facet file path or a catalog id N1..N12."""
    if is_catalog_id(source):
        return complex_of(source)
    return read_facet_file(source)


def _emit(report, as_json, params):
    print(render_json(report, params) if as_json else render_text(report))


# --------------------------------------------------
# Handlers
# --------------------------------------------------
def cmd_catalog(args, params):
    if args.action == "list":
        frame = catalog_frame()
        if args.json:
            print(render_json(frame.to_dict(orient="records"), params))
        else:
            print(frame.to_string(index=False))
        return EXIT_OK

    if not args.id:
        raise InputError("catalog show needs an id")
    entry = catalog_get(args.id)
    if args.json:
        report = entry.to_dict()
        report["facets"] = [" ".join(t) for t in entry.complex.facet_tokens()]
        print(render_json(report, params))
    else:
        print(render_text(entry.to_dict()))
        print(serialize(entry.complex), end="")
    return EXIT_OK


def cmd_verify(args, params):
    complex_ = load_complex(args.file)
    checks = verify_class(complex_, args.cls)
    passed = all(checks.values())
    _emit({"class": args.cls, "checks": checks, "passed": passed}, args.json, params)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_invariants(args, params):
    complex_ = load_complex(args.file)
    _emit(invariants_report(complex_, params), args.json, params)
    return EXIT_OK


def cmd_boundary(args, params):
    complex_ = load_complex(args.file)
    try:
        bd = boundary(complex_)
    except BoundaryError as exc:
        print(f"no boundary: {exc}")
        return EXIT_FAILED
    if args.out:
        write_facet_file(args.out, bd, header=f"boundary of {args.file}")
        print(f"wrote {len(bd.facets)} facets to {args.out}")
    else:
        print(serialize(bd), end="")
    return EXIT_OK


def cmd_isomorphic(args, params):
    source, target = load_complex(args.first), load_complex(args.second)
    psi = find_isomorphism(source, target)
    if psi is None:
        print("not isomorphic")
        return EXIT_FAILED
    mapping = ", ".join(f"{source.labels[v]}->{target.labels[w]}" for v, w in enumerate(psi))
    print(f"isomorphic: {mapping}")
    return EXIT_OK


def cmd_minimal(args, params):
    complex_ = load_complex(args.file)
    try:
        relabeled, rep = minimal_representative(complex_)
    except ClassError as exc:
        print(f"not in the class: {exc}")
        return EXIT_FAILED
    print(f"# string {rep.text}")
    print(serialize(relabeled), end="")
    return EXIT_OK


def cmd_aut(args, params):
    complex_ = load_complex(args.file)
    _emit(automorphism_report(complex_, params), args.json, params)
    return EXIT_OK


def _catalog_agreement(enumeration):
    selected = set(enumeration.graphs)
    expected = sorted(
        string_rep(e.complex).text for e in all_entries() if str(e.graph) in selected
    )
    found = sorted(record.canonical for record in enumeration.classes)
    return {"catalog_classes": len(expected), "found_classes": len(found), "agrees": expected == found}


def cmd_enumerate(args, params):
    graphs = None if args.graph == "all" else [args.graph]
    if args.relaxed:
        enumeration = enumerate_relaxed(graphs, params)
    else:
        enumeration = enumerate_all(graphs, jobs=args.jobs, params=params)

    agreement = _catalog_agreement(enumeration)
    if args.out:
        write_enumeration(enumeration, args.out, params)

    if args.json:
        report = enumeration.to_dict()
        report["catalog"] = agreement
        print(render_json(report, params))
    else:
        print(tally_frame(enumeration).to_string(index=False))
        print()
        for graph, count in enumeration.class_tally().items():
            print(f"{graph}: {count} classes")
        print(f"catalog agreement: {agreement['agrees']}")
    return EXIT_OK if agreement["agrees"] else EXIT_FAILED


def cmd_graphs(args, params):
    report = oracle_classification(args.vertices, mode=args.mode, params=params)
    _emit(report.to_dict(), args.json, params)
    return EXIT_OK if report.agrees else EXIT_FAILED


# --------------------------------------------------
# Parser
# --------------------------------------------------
def build_parser():
    parser = argparse.ArgumentParser(
        prog="tightnbr",
        description="Tight neighborly 4-manifolds on 15 vertices with a Z3 action",
    )
    parser.add_argument("--config", help="Path to parameters.yaml")
    parser.add_argument("--log-level", help="Override the configured log level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="List or show the twelve catalog classes")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("id", nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("verify", help="Check class membership")
    p.add_argument("file", help="Facet file or catalog id")
    p.add_argument("--class", dest="cls", required=True, help="kbar<d>, k<d> or tight")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("invariants", help="Structural and homological invariants")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("boundary", help="Boundary complex")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_boundary)

    p = sub.add_parser("isomorphic", help="Find a vertex isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=cmd_isomorphic)

    p = sub.add_parser("minimal", help="Minimal relabeling within the class")
    p.add_argument("file")
    p.set_defaults(handler=cmd_minimal)

    p = sub.add_parser("aut", help="Automorphism group")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_aut)

    p = sub.add_parser("enumerate", help="Template (or relaxed) enumeration")
    p.add_argument("--graph", default="all", choices=[g.short_name for g in GRAPHS] + ["all"])
    p.add_argument("--relaxed", action="store_true")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("graphs", help="Dual-graph family oracle")
    p.add_argument("action", choices=["classify"])
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="exhaustive")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_graphs)

    return parser


def cli_dispatch(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    params = load_parameters(args.config)
    if args.log_level:
        level = args.log_level.upper()
        if level not in logging._nameToLevel:
            print(f"error: unknown log level {args.log_level!r}")
            return EXIT_USAGE
        logging.getLogger().setLevel(level)
    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        print("error: --jobs must be at least 1")
        return EXIT_USAGE

    try:
        return args.handler(args, params)
    except OSError as exc:
        print(f"error: {exc}")
        return EXIT_USAGE
    except TightNbrError as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error: {exc}")
        return EXIT_USAGE
