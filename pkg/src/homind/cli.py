"""Command-line interface: ``homind <group> <verb> ...``.

Graph arguments accept a graph6 string, a short name (``C5``, ``K4``, ``P3``,
``S3``, ``V8``) or ``@path`` for the first record of a graph6 file. Every
global flag can also be set through an environment variable ``HOMIND_<FLAG>``
(for example ``HOMIND_SEED=7``); an explicit flag wins.

With ``--json`` each command prints one schema-versioned report; otherwise a
short human-readable summary. Exit status is 0 on success, 1 when a suite or
check fails, and 2 on bad input or an exhausted budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from . import __version__
from .bilabelled import ContractorCombination, NoContractorFound, simulate_contraction, solve_contractor
from .cfi import build_cfi_pair
from .classes import SearchBudgetExceeded, class_member, deletion_distance, elimination_distance, predicate
from .corpus import ingest_corpus
from .families import KINDS, FamilySpec, find_distinguisher
from .graph import Graph, GraphError
from .graph6 import encode_graph6, read_graph6_file
from .homs import DEFAULT_BUDGET, BudgetExceeded, HomCountOverflow, Homomorphism, count_homs
from .oddo import search_oddomorphism, verify_oddomorphism, verify_weak_oddomorphism
from .reductions import cut_vertex_reduce, reduce_clique_sum, separator_reduce
from .suites import DEFAULT_SEED, REPORT_SCHEMA, SUITES, SuiteBounds, named_graph, run_verification_suite

ENV_PREFIX = "HOMIND_"
EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CommandFailed(Exception):
    """A check ran to completion and came out negative."""

    def __init__(self, text: str, payload: dict | None = None):
        super().__init__(text)
        self.payload = payload if payload is not None else {"message": text}


def _env(name: str, default, cast=str):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    if cast is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return cast(raw)


def parse_graph(text: str) -> Graph:
    if text.startswith("@"):
        for _, g in read_graph6_file(text[1:]):
            return g
        raise GraphError(f"{text[1:]}: no graph records")
    return named_graph(text)


def parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise GraphError(f"expected comma-separated integers, got {text!r}") from None


def _hom(args) -> Homomorphism:
    return Homomorphism(parse_graph(args.source), parse_graph(args.target), parse_ints(args.map))


def _cert_payload(cert) -> dict | None:
    if cert is None:
        return None
    data = json.loads(cert.to_json())
    data["source"] = encode_graph6(cert.phi.source)
    data["target"] = encode_graph6(cert.phi.target)
    return data


def _plain_cert(args):
    ok, cert = verify_oddomorphism(_hom(args))
    if not ok:
        raise GraphError("the given map is not an oddomorphism")
    return cert


# handlers: each returns (result payload, bounds disclosure, human-readable text) ---------


def cmd_hom_count(args):
    f, g = parse_graph(args.pattern), parse_graph(args.target)
    n = count_homs(f, g, bigint=args.bigint, method=args.method, budget=args.budget)
    return {"count": str(n) if args.bigint else n}, {}, str(n)


def cmd_hom_distinguish(args):
    g, h = parse_graph(args.first), parse_graph(args.second)
    family = FamilySpec(args.family, args.max_n, predicate=args.predicate, min_n=1)
    f = find_distinguisher(g, h, family, budget=args.patterns)
    bounds = {"family": family.describe()}
    if f is None:
        return {"distinguisher": None}, bounds, f"no pattern in the family distinguishes them (up to n = {args.max_n})"
    a, b = count_homs(f, g, bigint=True), count_homs(f, h, bigint=True)
    payload = {"distinguisher": encode_graph6(f), "counts": [str(a), str(b)]}
    return payload, bounds, f"{encode_graph6(f)}: {a} vs {b}"


def cmd_cfi_build(args):
    base = parse_graph(args.base)
    pair = build_cfi_pair(base, twist=args.twist)
    even, odd = encode_graph6(pair.even), encode_graph6(pair.odd)
    if args.out:
        with open(args.out + ".g6", "w") as fh:
            fh.write(f"{even}\n{odd}\n")
        with open(args.out + ".json", "w") as fh:
            fh.write(pair.sidecar() + "\n")
    payload = {"base": encode_graph6(base), "even": even, "odd": odd, "twist": pair.twist}
    payload["gadgets"] = json.loads(pair.sidecar())
    return payload, {}, f"{even}\n{odd}"


def cmd_oddo_verify(args):
    phi = _hom(args)
    if args.weak:
        cert = verify_weak_oddomorphism(phi)
        ok = cert is not None
    else:
        ok, cert = verify_oddomorphism(phi)
    payload = {"oddomorphism": ok, "weak": args.weak, "certificate": _cert_payload(cert)}
    if not ok:
        raise CommandFailed("not an oddomorphism", payload)
    return payload, {}, "oddomorphism" if not args.weak else "weak oddomorphism"


def cmd_oddo_search(args):
    f, g = parse_graph(args.source), parse_graph(args.target)
    cert = search_oddomorphism(f, g, weak=args.weak, budget=args.budget)
    payload = {"found": cert is not None, "weak": args.weak, "certificate": _cert_payload(cert)}
    text = "none" if cert is None else ",".join(map(str, cert.phi.map))
    return payload, {"search": "exhaustive over all homomorphisms"}, text


def cmd_reduce_cut(args):
    res = cut_vertex_reduce(_plain_cert(args), args.vertex)
    payload = {
        "component": res.index,
        "vertices": list(res.vertices),
        "partner": res.partner,
        "partner_flag": res.flag,
        "certificate": _cert_payload(res.cert),
    }
    return payload, {}, f"{encode_graph6(res.cert.phi.source)} map {','.join(map(str, res.cert.phi.map))}"


def cmd_reduce_separator(args):
    res = separator_reduce(_plain_cert(args), parse_ints(args.separator), odd_edge_rule=args.odd_edge_rule)
    payload = {
        "instance": json.loads(res.instance.to_json()),
        "labels": [list(x) if isinstance(x, tuple) else x for x in res.labels],
        "host": encode_graph6(res.host),
        "minor_checked": res.minor_checked,
        "certificate": _cert_payload(res.cert),
    }
    return payload, {}, f"{encode_graph6(res.cert.phi.source)} map {','.join(map(str, res.cert.phi.map))}"


def cmd_reduce_cliquesum(args):
    fam = predicate(args.family) if args.family else None
    res = reduce_clique_sum(_plain_cert(args), args.size, family=fam)
    payload = {
        "rounds": [[kind, list(sep), n] for kind, sep, n in res.rounds],
        "in_family": res.in_family,
        "certificate": _cert_payload(res.cert),
    }
    return payload, {}, f"{len(res.rounds)} rounds -> {encode_graph6(res.cert.phi.source)}"


def cmd_class_check(args):
    g = parse_graph(args.graph)
    member = class_member(g, args.predicate)
    if not member and args.strict:
        raise CommandFailed(f"not in {args.predicate}", {"predicate": args.predicate, "member": False})
    return {"predicate": args.predicate, "member": member}, {}, str(member).lower()


def cmd_class_distance(args):
    g = parse_graph(args.graph)
    fn = deletion_distance if args.kind == "dd" else elimination_distance
    d = fn(g, args.predicate)
    return {"predicate": args.predicate, "kind": args.kind, "distance": d}, {}, str(d)


def cmd_contractor_solve(args):
    g, h = parse_graph(args.first), parse_graph(args.second)
    alpha = solve_contractor(g, h, args.max_edges)
    payload = {"terms": json.loads(alpha.to_json())}
    return payload, {"max_edges": args.max_edges}, alpha.to_json()


def cmd_contractor_simulate(args):
    f, g = parse_graph(args.pattern), parse_graph(args.target)
    text = args.alpha
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    alpha = ContractorCombination.from_json(text)
    e = parse_ints(args.edge)
    if len(e) != 2:
        raise GraphError("--edge takes two vertices, e.g. 0,1")
    total = simulate_contraction(f, e, g, alpha)
    return {"count": str(total)}, {}, str(total)


def cmd_corpus_ingest(args):
    corpus = ingest_corpus(args.files, args.root)
    return {"root": str(corpus.root), "count": len(corpus)}, {}, f"{len(corpus)} graphs in {corpus.root}"


def _suite_bounds(args) -> SuiteBounds:
    b = SuiteBounds(seed=args.seed, budget=args.budget)
    if args.max_n is not None:
        cap = args.max_n
        b = replace(
            b,
            sweep_source_n=min(b.sweep_source_n, cap),
            cfi_pattern_n=min(b.cfi_pattern_n, cap),
            tree_n=min(b.tree_n, cap),
            excluded_n=min(b.excluded_n, cap),
            count_n=min(b.count_n, cap),
        )
    return b


def cmd_suite_run(args):
    names = list(SUITES) if args.names == ["all"] else args.names
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}, all")
    bounds = _suite_bounds(args)
    if args.threads > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(run_verification_suite, names, [bounds] * len(names)))
    else:
        reports = [run_verification_suite(name, bounds) for name in names]
    payload = {"passed": all(r.passed for r in reports), "suites": [r.to_dict() for r in reports]}
    text = "\n".join(r.line() for r in reports)
    if not payload["passed"]:
        raise CommandFailed(text, payload)
    return payload, {"suite_bounds": bounds.__dict__ | {"cfi_bases": list(bounds.cfi_bases)}}, text


# parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # Subcommands repeat the global flags with suppressed defaults, so a
        # flag given before the subcommand is not overwritten by it.
        def d(value):
            return argparse.SUPPRESS if suppress else value

        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--max-n", type=int, default=d(_env("max_n", None, int)), help="enumeration bound on pattern order")
        p.add_argument("--budget", type=int, default=d(_env("budget", DEFAULT_BUDGET, int)), help="search budget")
        p.add_argument("--seed", type=int, default=d(_env("seed", DEFAULT_SEED, int)), help=f"RNG seed (default {DEFAULT_SEED})")
        p.add_argument("--threads", type=int, default=d(_env("threads", 1, int)), help="worker processes")
        p.add_argument("--json", action="store_true", default=d(_env("json", False, bool)), help="print a JSON report")
        p.add_argument("--bigint", action="store_true", default=d(_env("bigint", False, bool)), help="unbounded counts")
        return p

    common = flags(suppress=True)
    parser = argparse.ArgumentParser(prog="homind", description=__doc__.split("\n\n")[0], parents=[flags(suppress=False)])
    parser.add_argument("--version", action="version", version=f"homind {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    def verb(group, name, handler, help_text):
        p = group.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(handler=handler)
        return p

    def with_map(p):
        p.add_argument("source")
        p.add_argument("target")
        p.add_argument("--map", required=True, help="images of source vertices, e.g. 0,0,1,2")

    hom = groups.add_parser("hom", help="homomorphism counts").add_subparsers(dest="verb", required=True)
    p = verb(hom, "count", cmd_hom_count, "count homomorphisms PATTERN -> TARGET")
    p.add_argument("pattern")
    p.add_argument("target")
    p.add_argument("--method", choices=["auto", "dp", "extend", "brute"], default="auto")
    p = verb(hom, "distinguish", cmd_hom_distinguish, "search a bounded family for a distinguishing pattern")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--family", choices=KINDS[:4] + ("predicate-filtered",), default="all-connected")
    p.add_argument("--predicate", default=None)
    p.add_argument("--patterns", type=int, default=None, help="maximum number of patterns to try")

    cfi = groups.add_parser("cfi", help="CFI graphs").add_subparsers(dest="verb", required=True)
    p = verb(cfi, "build", cmd_cfi_build, "build the untwisted/twisted CFI pair over BASE")
    p.add_argument("base")
    p.add_argument("--twist", type=int, default=None)
    p.add_argument("--out", default=None, help="write OUT.g6 (two records) and OUT.json (gadget index)")

    oddo = groups.add_parser("oddo", help="oddomorphisms").add_subparsers(dest="verb", required=True)
    p = verb(oddo, "verify", cmd_oddo_verify, "check a given map")
    with_map(p)
    p.add_argument("--weak", action="store_true")
    p = verb(oddo, "search", cmd_oddo_search, "find an oddomorphism SOURCE -> TARGET")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--weak", action="store_true")

    red = groups.add_parser("reduce", help="reductions along cut vertices and separators").add_subparsers(dest="verb", required=True)
    p = verb(red, "cut", cmd_reduce_cut, "cut-vertex reduction")
    with_map(p)
    p.add_argument("--vertex", type=int, required=True)
    p = verb(red, "separator", cmd_reduce_separator, "separator reduction")
    with_map(p)
    p.add_argument("--separator", required=True, help="separator vertices, e.g. 0,3")
    p.add_argument("--odd-edge-rule", action="store_true", help="join separator classes by edge parity alone")
    p = verb(red, "cliquesum", cmd_reduce_cliquesum, "repeat reductions along small separators")
    with_map(p)
    p.add_argument("--size", type=int, default=2, help="largest separator size")
    p.add_argument("--family", default=None, help="predicate name tested on the result")

    cls = groups.add_parser("class", help="graph classes").add_subparsers(dest="verb", required=True)
    p = verb(cls, "check", cmd_class_check, "membership test")
    p.add_argument("graph")
    p.add_argument("--predicate", required=True)
    p.add_argument("--strict", action="store_true", help="exit 1 when the graph is not a member")
    p = verb(cls, "distance", cmd_class_distance, "deletion or elimination distance")
    p.add_argument("graph")
    p.add_argument("--predicate", required=True)
    p.add_argument("--kind", choices=["dd", "ed"], default="dd")

    con = groups.add_parser("contractor", help="series-parallel contractors").add_subparsers(dest="verb", required=True)
    p = verb(con, "solve", cmd_contractor_solve, "contractor for G and H")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--max-edges", type=int, default=6)
    p = verb(con, "simulate", cmd_contractor_simulate, "hom(F/e, G) through a contractor")
    p.add_argument("pattern")
    p.add_argument("target")
    p.add_argument("--edge", required=True)
    p.add_argument("--alpha", required=True, help="contractor JSON, or @file")

    suite = groups.add_parser("suite", help="verification suites").add_subparsers(dest="verb", required=True)
    p = verb(suite, "run", cmd_suite_run, f"run suites: {', '.join(SUITES)} or all")
    p.add_argument("names", nargs="+")

    corp = groups.add_parser("corpus", help="graph corpora").add_subparsers(dest="verb", required=True)
    p = verb(corp, "ingest", cmd_corpus_ingest, "merge graph6 files into a corpus directory")
    p.add_argument("files", nargs="+")
    p.add_argument("--root", required=True)
    return parser


def _report(args, argv, start, status, result, bounds) -> dict:
    params = {k: v for k, v in vars(args).items() if k != "handler"}
    return {
        "schema_version": REPORT_SCHEMA,
        "command": f"{args.group} {args.verb}",
        "argv": argv,
        "parameters": params,
        "seed": args.seed,
        "status": status,
        "wall_time": round(time.perf_counter() - start, 3),
        "bounds": bounds,
        "result": result,
    }


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if args.group == "hom" and args.verb == "distinguish" and args.max_n is None:
        args.max_n = 6
    start = time.perf_counter()
    try:
        result, bounds, text = args.handler(args)
        code, status = EXIT_OK, "ok"
    except CommandFailed as exc:
        code, status, bounds, text, result = EXIT_FAIL, "fail", {}, str(exc), exc.payload
    except (GraphError, ValueError, NoContractorFound, HomCountOverflow, OSError) as exc:
        code, status, bounds, text = EXIT_ERROR, "error", {}, f"error: {exc}"
        result = {"error": type(exc).__name__, "message": str(exc)}
    except (BudgetExceeded, SearchBudgetExceeded) as exc:
        code, status, bounds, text = EXIT_ERROR, "budget-exceeded", {}, f"budget exceeded: {exc}"
        result = {"error": type(exc).__name__, "message": str(exc)}
    if args.json:
        print(json.dumps(_report(args, argv, start, status, result, bounds), indent=1, default=str))
    else:
        print(text, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
