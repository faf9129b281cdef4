"""Command-line front end: ladder inspection, ideal arithmetic, witnesses,
Fedder checks, symbolic powers, derivations, and the acceptance runner.

Exit status: 0 on success / verified, 1 on a falsified identity or an
oversized instance, 2 on usage errors or malformed input files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import acceptance
from .fields import GF, parse_field
from .groebner import Ideal, InstanceTooLarge, Ring, time_limit
from .ideals import (
    PartialPermutation,
    f_witness,
    g_witness,
    ladder_ring,
    mixed_ladder_ideal,
    omega_delta_ideal,
    poset_ideal_brute,
    schubert_ideal,
)
from .knutson import (
    corner_derivation,
    derivation_from_json,
    derivation_to_json,
    ladder_derivation,
    verify as verify_derivation,
)
from .ladders import Ladder, LadderError, chamfer, reduce_to_unmixed, validate
from .oracle import (
    fedder_check,
    initial_symbolic_compare,
    ladder_symbolic_power,
    minor_product_symbolic_degree,
    symbolic_fsplit_certificate,
)
from .poly import Minor, parse_order, parse_polynomial, poly_to_str


class UsageError(ValueError):
    pass


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from None


def _load_ladder(path: str, t_flag=None):
    obj = _load_json(path)
    try:
        ladder = Ladder(tuple(obj["shape"]), tuple(map(tuple, obj["upper"])),
                        tuple(map(tuple, obj["lower"])))
    except (KeyError, TypeError, LadderError) as exc:
        raise UsageError(f"{path}: not a valid ladder file ({exc})") from None
    t = tuple(t_flag) if t_flag else (tuple(obj["t"]) if obj.get("t") else None)
    if t is not None and len(t) == 1:
        t = (t[0],) * len(ladder.lower)
    return ladder, t


def _load_ideal(path: str, field, t_flag=None):
    obj = _load_json(path)
    if "upper" in obj:
        ladder, t = _load_ladder(path, t_flag)
        if t is None:
            raise UsageError(f"{path}: ladder file has no minor sizes; pass --t")
        ring = ladder_ring(field, ladder)
        return mixed_ladder_ideal(ladder, t, field, ring), ring
    try:
        if "cells" in obj:
            ring = Ring.for_cells(field, [tuple(c) for c in obj["cells"]])
        else:
            k, l = obj["shape"]
            ring = Ring.for_grid(field, k, l)
        gens = [parse_polynomial(s, field) for s in obj["gens"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a valid ideal file ({exc})") from None
    return Ideal(ring, gens), ring


def _parse_minor(text: str) -> Minor:
    text = text.strip().strip("[]")
    if "|" not in text:
        raise UsageError(f"bad minor {text!r}; expected rows|cols like 12|13 or 1,2|1,3")
    rows_s, cols_s = text.split("|", 1)

    def indices(s):
        s = s.strip()
        if "," in s:
            return tuple(int(x) for x in s.split(","))
        return tuple(int(ch) for ch in s)

    try:
        return Minor(indices(rows_s), indices(cols_s))
    except ValueError as exc:
        raise UsageError(f"bad minor {text!r}: {exc}") from None


def _emit(args, payload: dict, text_lines):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# Subcommand handlers (each returns the process exit status)


def _cmd_ladder(args) -> int:
    if args.action == "validate":
        ladder, t = _load_ladder(args.file, args.t)
        if t is None:
            t = (1,) * len(ladder.lower)
        report = validate(ladder, t)
        _emit(args, {"valid": report.valid, "u": report.u, "v": report.v,
                     "checks": [{"n": c.number, "pass": c.passed, "detail": c.detail}
                                for c in report.checks]},
              [f"u={report.u} v={report.v}", report.as_text()])
        return 0 if report.valid else 1
    if args.action == "show":
        ladder, t = _load_ladder(args.file, args.t)
        _emit(args, {"shape": list(ladder.shape), "cells": len(ladder.cells),
                     "render": ladder.render()},
              [ladder.render(), f"shape={ladder.shape} cells={len(ladder.cells)} t={t}"])
        return 0
    if args.action == "chamfer":
        ladder, t = _load_ladder(args.file, args.t)
        if t is None:
            raise UsageError("chamfer needs minor sizes (file t field or --t)")
        out, out_t = chamfer(ladder, t, args.j)
        _emit(args, json.loads(out.to_json(out_t)), [out.to_json(out_t)])
        return 0
    if args.action == "reduce":
        ladder, t = _load_ladder(args.file, args.t)
        if t is None:
            raise UsageError("reduce needs minor sizes (file t field or --t)")
        red = reduce_to_unmixed(ladder, t)
        replayed, rt = red.replay()
        fidelity = replayed == ladder and rt == t
        _emit(args, {"moves": list(red.moves), "start": json.loads(red.start.to_json(red.start_t)),
                     "replay_ok": fidelity},
              [f"moves={list(red.moves)}", f"start={red.start.to_json(red.start_t)}",
               f"replay_ok={fidelity}"])
        return 0 if fidelity else 1
    raise UsageError(f"unknown ladder action {args.action!r}")


def _cmd_ideal(args) -> int:
    field = parse_field(args.field)
    order = parse_order(args.order)
    I, ring = _load_ideal(args.a, field, args.t)
    if args.action in ("eq", "sum", "intersect", "colon", "saturate"):
        if not args.b:
            raise UsageError(f"ideal {args.action} needs a second ideal file")
        J, _ = _load_ideal(args.b, field, args.t2)
        if J.ring != ring:
            J = Ideal(ring, J.gens)
    if args.action == "gens":
        _emit(args, {"gens": [poly_to_str(g, order) for g in I.gens]},
              [poly_to_str(g, order) for g in I.gens])
        return 0
    if args.action == "gb":
        basis = I.canonical_strings(order)
        _emit(args, {"basis": basis}, basis)
        return 0
    if args.action == "eq":
        equal = I.equal(J, order)
        _emit(args, {"equal": equal}, [f"equal={equal}"])
        return 0 if equal else 1
    if args.action == "sum":
        out = I + J
    elif args.action == "intersect":
        out = I.intersect(J)
    elif args.action == "colon":
        out = I.colon(J)
    elif args.action == "saturate":
        out, steps = I.saturate(J)
        basis = out.canonical_strings(order)
        _emit(args, {"basis": basis, "exponent": steps}, basis + [f"exponent={steps}"])
        return 0
    elif args.action == "member":
        f = parse_polynomial(args.poly, field)
        member = I.contains(f, order)
        _emit(args, {"member": member}, [f"member={member}"])
        return 0 if member else 1
    elif args.action == "initial":
        from .poly import mono_to_str

        init = I.initial_ideal(order)
        monos = [mono_to_str(m) for m in init.gens]
        _emit(args, {"initial": monos, "squarefree": init.is_squarefree()},
              monos + [f"squarefree={init.is_squarefree()}"])
        return 0
    else:
        raise UsageError(f"unknown ideal action {args.action!r}")
    basis = out.canonical_strings(order)
    _emit(args, {"basis": basis}, basis)
    return 0


def _cmd_witness(args) -> int:
    field = parse_field(args.field)
    ladder, t = _load_ladder(args.ladder, args.t)
    if t is None:
        raise UsageError("witness commands need minor sizes (file t field or --t)")
    if args.action == "f":
        f = f_witness(ladder, t, field)
        _emit(args, {"f": poly_to_str(f)}, [poly_to_str(f)])
        return 0
    if args.action == "g":
        g = g_witness(ladder, t, field)
        _emit(args, {"g": poly_to_str(g)}, [poly_to_str(g)])
        return 0
    if args.action == "certificate":
        cert = symbolic_fsplit_certificate(ladder, t, field if field.is_modular else None)
        payload = json.loads(cert.to_json())
        _emit(args, payload, [cert.to_json()])
        return 0
    raise UsageError(f"unknown witness action {args.action!r}")


def _cmd_fedder(args) -> int:
    field = GF(args.p)
    ladder, t = _load_ladder(args.ladder, args.t)
    if t is None:
        raise UsageError("fedder needs minor sizes (file t field or --t)")
    ring = ladder_ring(field, ladder)
    I = mixed_ladder_ideal(ladder, t, field, ring)
    if args.candidate:
        candidate = parse_polynomial(args.candidate, field)
    else:
        candidate = f_witness(ladder, t, field) ** (args.p - 1)
    result = fedder_check(I, args.p, candidate)
    _emit(args, {"f_pure": result}, [f"f_pure={result}"])
    return 0 if result else 1


def _cmd_symbolic(args) -> int:
    field = parse_field(args.field)
    if args.action == "degree":
        if not args.minors or not args.t:
            raise UsageError("symbolic degree needs --minors and --t")
        minors = [_parse_minor(s) for s in args.minors.split()]
        n = minor_product_symbolic_degree(minors, args.t[0])
        _emit(args, {"degree": n}, [f"degree={n}"])
        return 0
    ladder, t = _load_ladder(args.ladder, args.t)
    if t is None:
        raise UsageError("symbolic power/compare need minor sizes")
    if args.action == "power":
        out = ladder_symbolic_power(ladder, t, args.n, field)
        basis = out.canonical_strings()
        _emit(args, {"basis": basis}, basis)
        return 0
    if args.action == "compare":
        if len(set(t)) != 1:
            raise UsageError("symbolic compare handles unmixed sizes only")
        ring = ladder_ring(field, ladder)
        I = mixed_ladder_ideal(ladder, t, field, ring)
        tt = t[0]
        strategy = (mixed_ladder_ideal(ladder, tt - 1, field, ring)
                    if tt > 1 else ring.maximal_ideal())
        res = initial_symbolic_compare(I, args.n, strategy=strategy)
        from .poly import mono_to_str

        witness = mono_to_str(res.witness) if res.witness else None
        _emit(args, {"equal": res.equal, "witness": witness},
              [f"equal={res.equal}"] + ([f"witness={witness}"] if witness else []))
        return 0 if res.equal else 1
    raise UsageError(f"unknown symbolic action {args.action!r}")


def _cmd_knutson(args) -> int:
    field = parse_field(args.field)
    if args.action == "derive":
        if args.corner:
            parts = args.corner.split(",")
            if len(parts) not in (5, 6):
                raise UsageError("--corner wants k,l,t,r,s[,nw|se]")
            k, l, t, r, s = (int(x) for x in parts[:5])
            which = parts[5] if len(parts) == 6 else "nw"
            deriv = corner_derivation(k, l, t, r, s, field, which)
        else:
            if not args.ladder:
                raise UsageError("knutson derive needs --ladder or --corner")
            ladder, t = _load_ladder(args.ladder, args.t)
            if t is None or len(set(t)) != 1:
                raise UsageError("knutson derive needs a single unmixed minor size")
            deriv = ladder_derivation(ladder, t[0], field)
        text = derivation_to_json(deriv)
        if args.out:
            Path(args.out).write_text(text)
            print(f"wrote {args.out}")
        else:
            print(text)
        if args.verify:
            report = verify_derivation(deriv)
            print(report.as_text())
            return 0 if report.ok else 1
        return 0
    if args.action == "verify":
        deriv = derivation_from_json(_read_text(args.file))
        report = verify_derivation(deriv)
        _emit(args, {"verified": report.ok,
                     "checks": [{"node": ln.node, "check": ln.check, "ok": ln.ok}
                                for ln in report.lines]},
              [report.as_text()])
        return 0 if report.ok else 1
    raise UsageError(f"unknown knutson action {args.action!r}")


def _cmd_schubert(args) -> int:
    field = parse_field(args.field)
    obj = _load_json(args.perm)
    try:
        w = PartialPermutation(tuple(obj["shape"]), frozenset(map(tuple, obj["ones"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.perm}: not a partial permutation file ({exc})") from None
    I = schubert_ideal(w, field)
    if args.gb:
        basis = I.canonical_strings()
        extra = []
        if not I.is_zero:
            extra = [f"squarefree={I.initial_ideal().is_squarefree()}"]
        _emit(args, {"basis": basis}, basis + extra)
    else:
        _emit(args, {"gens": [poly_to_str(g) for g in I.gens]},
              [poly_to_str(g) for g in I.gens])
    return 0


def _cmd_poset(args) -> int:
    from .ideals import poset_ideal, poset_spec_from_json

    field = parse_field(args.field)
    k, l = (int(x) for x in args.shape.split(","))
    if args.spec:
        spec = poset_spec_from_json(_read_text(args.spec))
        ideal = poset_ideal(k, l, spec, field)
        basis = ideal.canonical_strings()
        _emit(args, {"basis": basis}, basis)
        return 0
    if not args.delta:
        raise UsageError("poset needs --delta or --spec")
    delta = _parse_minor(args.delta)
    formula = omega_delta_ideal(k, l, delta, field)
    if args.check:
        brute = poset_ideal_brute(k, l, delta, field)
        equal = formula.equal(brute)
        _emit(args, {"equal": equal}, [f"formula_matches_bruteforce={equal}"])
        return 0 if equal else 1
    basis = formula.canonical_strings()
    _emit(args, {"basis": basis}, basis)
    return 0


def _cmd_accept(args) -> int:
    keys = None
    if args.suite and args.suite != "all":
        keys = [args.suite]
    results = acceptance.run_suite(keys, seed=args.seed, workers=args.workers)
    if args.format == "json":
        print(json.dumps([{"key": r.key, "passed": r.passed, "seconds": round(r.seconds, 2),
                           "details": list(r.details)} for r in results]))
    else:
        for r in results:
            print(r.summary_line())
            if args.verbose:
                for d in r.details:
                    print(f"    {d}")
        total = sum(r.passed for r in results)
        print(f"{total}/{len(results)} criteria pass")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# Parser wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ladderdet",
        description="Exact computations with ladder determinantal ideals.",
    )
    parser.add_argument("--field", default="q", help="coefficient field: q or fp:<p>")
    parser.add_argument("--order", default="antidiag", help="term order: antidiag or grevlex")
    parser.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED,
                        help="seed for randomized suites")
    parser.add_argument("--timeout", type=float, default=60.0,
                        help="time budget per Groebner task in seconds")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ladder", help="validate, render, chamfer or reduce a ladder")
    p.add_argument("action", choices=("validate", "show", "chamfer", "reduce"))
    p.add_argument("file")
    p.add_argument("--t", type=int, nargs="+", help="minor sizes, one per lower corner")
    p.add_argument("--j", type=int, default=1, help="lower corner index for chamfer")
    p.set_defaults(handler=_cmd_ladder)

    p = sub.add_parser("ideal", help="ideal arithmetic on ladder or explicit ideals")
    p.add_argument("action", choices=("gens", "gb", "eq", "sum", "intersect", "colon",
                                      "saturate", "member", "initial"))
    p.add_argument("a", help="ideal file: ladder JSON or {shape|cells, gens}")
    p.add_argument("b", nargs="?", help="second ideal file for binary operations")
    p.add_argument("--t", type=int, nargs="+")
    p.add_argument("--t2", type=int, nargs="+", help="minor sizes for the second ladder file")
    p.add_argument("--poly", help="polynomial for membership tests")
    p.set_defaults(handler=_cmd_ideal)

    p = sub.add_parser("witness", help="splitting witnesses and certificates")
    p.add_argument("action", choices=("f", "g", "certificate"))
    p.add_argument("--ladder", required=True)
    p.add_argument("--t", type=int, nargs="+")
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("fedder", help="Fedder F-purity membership at a small prime")
    p.add_argument("--ladder", required=True)
    p.add_argument("--t", type=int, nargs="+")
    p.add_argument("--p", type=int, default=2, choices=(2, 3))
    p.add_argument("--candidate", help="explicit candidate polynomial (default: f^(p-1))")
    p.set_defaults(handler=_cmd_fedder)

    p = sub.add_parser("symbolic", help="symbolic degrees, powers and comparisons")
    p.add_argument("action", choices=("degree", "power", "compare"))
    p.add_argument("--ladder")
    p.add_argument("--t", type=int, nargs="+")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--minors", help="space-separated minors like '12|12 123|123'")
    p.set_defaults(handler=_cmd_symbolic)

    p = sub.add_parser("knutson", help="build or verify derivation trees")
    p.add_argument("action", choices=("derive", "verify"))
    p.add_argument("file", nargs="?", help="derivation JSON for verify")
    p.add_argument("--ladder")
    p.add_argument("--t", type=int, nargs="+")
    p.add_argument("--corner", help="k,l,t,r,s[,nw|se]")
    p.add_argument("--out", help="write the derivation JSON here")
    p.add_argument("--verify", action="store_true", help="verify after deriving")
    p.set_defaults(handler=_cmd_knutson)

    p = sub.add_parser("schubert", help="Schubert determinantal ideals")
    p.add_argument("--perm", required=True, help="JSON {shape, ones}")
    p.add_argument("--gb", action="store_true", help="print the reduced basis")
    p.set_defaults(handler=_cmd_schubert)

    p = sub.add_parser("poset", help="poset-of-minors ideals")
    p.add_argument("--shape", required=True, help="grid size k,l")
    p.add_argument("--delta", help="cogenerator minor like 12|12")
    p.add_argument("--spec", help="JSON poset spec: {explicit|cogenerators|generalized: [...]}")
    p.add_argument("--check", action="store_true",
                   help="compare the sum formula against brute force")
    p.set_defaults(handler=_cmd_poset)

    p = sub.add_parser("accept", help="run the acceptance suite")
    p.add_argument("run", choices=("run",))
    p.add_argument("suite", nargs="?", default="all",
                   help=f"criterion key or 'all'; known: {', '.join(acceptance.criterion_keys())}")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(handler=_cmd_accept)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "accept":
            return args.handler(args)
        with time_limit(args.timeout):
            return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (LadderError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
