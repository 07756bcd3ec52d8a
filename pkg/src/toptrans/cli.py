"""Command-line front end.

Exit status: 0 success, 1 violation or counterexample found, 2 invalid
input, 3 a search or enumeration bound was reached first.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import families, harness, symdyn
from .findyn import PROPERTIES, NoIsolatedPoints, NotHausdorff, NotTransitive, classify_isolated, properties
from .fintop import (CRITERIA, AxiomViolation, EmptyBasisRejected, NotContinuous, all_spaces,
                     is_density_basis, points_of)
from .io import InvalidDocument, basis_from_dict, load_json, space_from_dict, system_from_dict

OK, FOUND, INVALID, BOUND = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INVALID, f"{self.prog}: error: {message}\n")


def _emit(args, doc, lines) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        for line in lines:
            print(line)


def _set_str(s) -> str:
    return "{" + ", ".join(map(str, sorted(s))) + "}"


def cmd_report(args) -> int:
    sysm = system_from_dict(load_json(args.file))
    rep = properties(sysm)
    lines = [f"{p:5} {'yes' if rep[p] else 'no'}" for p in PROPERTIES]
    lines += [f"Trans {_set_str(rep.trans)}", f"Iso   {_set_str(rep.iso)}"]
    if args.witnesses:
        lines += [f"  {p}: {json.dumps(w)}" for p, w in rep.witnesses.items()]
    _emit(args, rep.to_dict(), lines)
    return OK


def cmd_classify(args) -> int:
    sysm = system_from_dict(load_json(args.file))
    try:
        c = classify_isolated(sysm)
    except (NotHausdorff, NoIsolatedPoints, NotTransitive) as e:
        _emit(args, {"refused": type(e).__name__, "reason": str(e)}, [f"refused: {e}"])
        return INVALID
    lines = [f"case  {c.tag}"] + [f"  {k} = {v}" for k, v in {**c.params, **c.facts}.items()]
    _emit(args, c.to_dict(), lines)
    return OK


def _corpus(args):
    if args.random:
        return list(harness.Corpus(args.seed, args.random, 1, args.max_points, tuple(args.filter)))
    return list(harness.exhaustive_corpus(args.max_all, args.max_discrete, tuple(args.filter)))


def _results_out(args, results) -> int:
    _emit(args, harness.report_json(results), [r.line() for r in results])
    return FOUND if any(r.violations for r in results) else OK


def cmd_lattice(args) -> int:
    return _results_out(args, harness.verify_lattice(_corpus(args)))


def cmd_theorems(args) -> int:
    systems = _corpus(args)
    results = harness.verify_theorem_suite(systems, only=args.only or None,
                                           drop_hausdorff=args.drop_hausdorff)
    if args.replay:
        results.append(harness.replay_corpus(systems))
    return _results_out(args, results)


def cmd_enumerate(args) -> int:
    try:
        systems = list(harness.enumerate_systems(args.points, discrete=args.discrete))
    except harness.BoundExceeded as e:
        _emit(args, {"error": "BoundExceeded", "reason": str(e)}, [f"bound exceeded: {e}"])
        return BOUND
    topologies = 1 if args.discrete else sum(1 for _ in all_spaces(args.points))
    doc = {"points": args.points, "discrete": args.discrete,
           "topologies": topologies, "systems": len(systems)}
    _emit(args, doc, [f"topologies {topologies}", f"systems    {len(systems)}"])
    return OK


def cmd_search(args) -> int:
    try:
        res = harness.search_counterexample(args.predicate, args.budget)
    except ValueError as e:
        _emit(args, {"error": "BadPredicate", "reason": str(e)}, [f"bad predicate: {e}"])
        return INVALID
    lines = [f"{res.status} after {res.candidates} candidates"]
    if res.system is not None:
        lines += [f"  system {json.dumps(res.to_dict()['system'])}",
                  f"  certified {res.certified}"]
    _emit(args, res.to_dict(), lines)
    return {"found": FOUND, "exhausted": OK, "budget": BOUND}[res.status]


def cmd_shift(args) -> int:
    if args.shift_cmd == "hitting":
        u, v = symdyn.Cylinder.parse(args.u), symdyn.Cylinder.parse(args.v)
        d = symdyn.cylinder_hitting(u, v)
        doc = {"u": str(u), "v": str(v), "set": d.to_dict(), "text": str(d),
               "cofinite": d.is_cofinite(), "nonnegative_part_infinite": d.plus_is_infinite()}
        _emit(args, doc, [f"N({u}, {v}) = {d}"])
        return OK
    if args.shift_cmd == "prefix":
        r = symdyn.transitive_prefix(args.maxlen)
        lines = [f"length {len(r.word)} (expected {r.expected_length})",
                 f"missing {len(r.missing)}"]
        if args.show:
            lines.append(symdyn.word_str(r.word))
        _emit(args, r.to_dict(), lines)
        return OK if r.passed else FOUND
    if args.shift_cmd == "verify-cofinite":
        r = symdyn.verify_cofinite(args.maxlen, brute_window=args.brute_window)
        lines = [f"{'pass' if r.passed else 'FAIL'}: {r.pairs} pairs, "
                 f"largest exceptional set {r.max_exceptional}"]
        lines += [f"  {f}" for f in r.failures[:10]]
        _emit(args, r.to_dict(), lines)
        return OK if r.passed else FOUND
    if args.shift_cmd == "trans0":
        _, cert = symdyn.trans0_point(args.level)
        _emit(args, cert.to_dict(), [f"{'pass' if cert.passed else 'FAIL'}: level {cert.level}, "
                                     f"missing {len(cert.missing)}"])
        return OK if cert.passed else FOUND
    # backward
    p, _ = symdyn.trans0_point(1)
    rows, ok, prev = [], True, None
    for k in range(1, args.steps + 1):
        d = symdyn.backward_distance_to_zero(p, k, args.radius)
        bound_ok = d.upper <= Fraction(1, 2 ** k)
        dec = prev is None or d.upper < prev
        ok = ok and bound_ok and dec
        prev = d.upper
        rows.append({"k": k, **d.to_dict(), "within_bound": bound_ok, "decreasing": dec})
    lines = [f"k={r['k']:3} d <= {r['upper']}" for r in rows] + [("pass" if ok else "FAIL")]
    _emit(args, {"rows": rows, "passed": ok}, lines)
    return OK if ok else FOUND


def cmd_family(args) -> int:
    spec = families.FamilySpec(args.name, args.n, args.k)
    try:
        doc = families.family_summary(spec, args.window, args.verify)
    except families.BoundTooSmall as e:
        _emit(args, {"error": "BoundTooSmall", "reason": str(e)}, [f"window too small: {e}"])
        return BOUND
    except AssertionError as e:
        _emit(args, {"error": "CounterexampleFound", "reason": str(e)}, [f"counterexample: {e}"])
        return FOUND
    lines = [f"family {doc['family']}"]
    if doc["finite"]:
        v = doc["report"]["verdicts"]
        lines += [f"  {p:5} {'yes' if v[p] else 'no'}" for p in PROPERTIES]
        lines.append(f"  Trans {_set_str(doc['report']['trans'])}")
        lines.append(f"  case {doc['classification'].get('tag', doc['classification'])}")
        bad = doc.get("case_row_mismatches", [])
        lines += [f"  mismatch: {m}" for m in bad]
        code = FOUND if bad else OK
    else:
        lines.append(f"  case {doc['classification']}")
        for vd in doc["verdicts"]:
            tail = f" (window {vd['window']})" if vd["window"] else ""
            lines.append(f"  {vd['label']:10} {'yes' if vd['outcome'] else 'no'}{tail}")
        code = OK
    _emit(args, doc, lines)
    return code


def _basis_witness(space, sets) -> list[int] | None:
    """A non-dense set meeting every member, searched over all subsets."""
    masks = [sum(1 << p for p in s) for s in sets]
    for s in range(1, space.full + 1):
        if all(s & m for m in masks) and not space.is_dense_mask(s):
            return sorted(points_of(s))
    return None


def cmd_density_basis(args) -> int:
    space = space_from_dict(load_json(args.file))
    sets = basis_from_dict(load_json(args.basis), space.n)
    try:
        ok = is_density_basis(space, sets, args.criterion, exhaustive=args.exhaustive)
    except EmptyBasisRejected as e:
        _emit(args, {"error": "EmptyBasisRejected", "reason": str(e)}, [f"rejected: {e}"])
        return INVALID
    doc = {"criterion": args.criterion, "exhaustive": args.exhaustive, "density_basis": ok}
    lines = [f"criterion {args.criterion}: {'density basis' if ok else 'not a density basis'}"]
    if not ok and space.n <= 16:
        w = _basis_witness(space, sets)
        doc["witness"] = w
        if w is not None:
            lines.append(f"  {_set_str(w)} meets every member but is not dense")
    _emit(args, doc, lines)
    return OK if ok else FOUND


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")

    p = _Parser(prog="toptrans", description="Transitivity properties of finite and symbolic systems.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("report", parents=[common], help="the seven properties of a system file")
    s.add_argument("file")
    s.add_argument("--witnesses", action="store_true", help="also print witnesses in text mode")
    s.set_defaults(run=cmd_report)

    s = sub.add_parser("classify", parents=[common], help="isolated-point case of a transitive system")
    s.add_argument("file")
    s.set_defaults(run=cmd_classify)

    corpus = argparse.ArgumentParser(add_help=False)
    corpus.add_argument("--random", type=int, default=0, metavar="N",
                        help="use N random systems instead of the exhaustive corpus")
    corpus.add_argument("--max-points", type=int, default=8)
    corpus.add_argument("--seed", type=int, default=0)
    corpus.add_argument("--max-all", type=int, default=harness.MAX_ALL_TOPOLOGIES,
                        help="exhaustive corpus: all topologies up to this size")
    corpus.add_argument("--max-discrete", type=int, default=harness.MAX_DISCRETE,
                        help="exhaustive corpus: discrete spaces up to this size")
    corpus.add_argument("--filter", action="append", default=[], choices=harness.FILTERS)

    s = sub.add_parser("lattice", parents=[common, corpus], help="implications between the properties")
    s.set_defaults(run=cmd_lattice)

    s = sub.add_parser("theorems", parents=[common, corpus], help="run the theorem suite on a corpus")
    s.add_argument("--only", action="append", choices=harness.THEOREM_IDS)
    s.add_argument("--drop-hausdorff", action="store_true",
                   help="also test Hausdorff-only statements on every space")
    s.add_argument("--replay", action="store_true", help="replay every report over all open sets")
    s.set_defaults(run=cmd_theorems)

    s = sub.add_parser("enumerate", parents=[common], help="count topologies and systems on n points")
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--discrete", action="store_true")
    s.set_defaults(run=cmd_enumerate)

    s = sub.add_parser("search", parents=[common], help="first small system satisfying a predicate")
    s.add_argument("--predicate", required=True, help='e.g. "perfect & TT & !TT+"')
    s.add_argument("--budget", type=int, default=100_000)
    s.set_defaults(run=cmd_search)

    s = sub.add_parser("shift", help="checks on the full two-symbol shift")
    ss = s.add_subparsers(dest="shift_cmd", required=True, parser_class=_Parser)
    t = ss.add_parser("hitting", parents=[common])
    t.add_argument("--u", required=True, help="cylinder WORD@OFFSET")
    t.add_argument("--v", required=True, help="cylinder WORD@OFFSET")
    t = ss.add_parser("prefix", parents=[common])
    t.add_argument("--maxlen", type=int, required=True)
    t.add_argument("--show", action="store_true", help="print the word itself")
    t = ss.add_parser("verify-cofinite", parents=[common])
    t.add_argument("--maxlen", type=int, required=True)
    t.add_argument("--brute-window", type=int, default=0)
    t = ss.add_parser("trans0", parents=[common])
    t.add_argument("--level", type=int, required=True)
    t = ss.add_parser("backward", parents=[common])
    t.add_argument("--steps", type=int, required=True)
    t.add_argument("--radius", type=int, default=None)
    s.set_defaults(run=cmd_shift)

    s = sub.add_parser("family", parents=[common], help="build or verify a named family")
    s.add_argument("name", choices=families.FAMILIES)
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--verify", action="store_true", help="cross-check verdicts")
    s.add_argument("--window", type=int, default=families.DEFAULT_WINDOW)
    s.set_defaults(run=cmd_family)

    s = sub.add_parser("density-basis", parents=[common], help="test a family of open sets")
    s.add_argument("file", help="space or system document")
    s.add_argument("--basis", required=True, help='document {"sets": [[...], ...]}')
    s.add_argument("--criterion", default="I", choices=CRITERIA)
    s.add_argument("--exhaustive", action="store_true", help="quantify over every subset literally")
    s.set_defaults(run=cmd_density_basis)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (InvalidDocument, AxiomViolation, NotContinuous, families.BadParams,
            symdyn.TailNotComputable, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return INVALID
    except ValueError as e:
        # malformed words, cylinders and similar argument values
        print(f"error: {e}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
