"""pal command line: construct, verify, derive, dualize and check.

Exit codes: 0 pass, 1 fail with witness, 2 invalid input, 3 theorem
inconsistent, 4 out of hypothesis.  All outputs are pal-v1 JSON with
deterministic ordering; PAL_THREADS caps parallelism of independent
spread checks.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .fields import FieldTower, field_make
from .planearcs import conic, translation_oval, verify_karc
from .parallel import pmap
from .projective import ProjSpace
from .pseudoarcs import (PseudoArc, extend_to_hyperoval, nucleus, tangent_spaces,
                         verify_pseudo_arc)
from .reduction import reduction_map
from .sigma import (NotRegularError, plane_model, recognize_regular,
                    spread_transversals)
from .spreads import (derive_spread_from_element, derive_spread_from_nucleus,
                      dual_arc, is_regular_spread, opposite_regulus,
                      regulus_through, verify_spread)
from .theorems import (DesignSpec, TheoremParams, check_design, check_theorem,
                       regulus_blocks, spread_reguli_design)

DEFAULT_CAP = 64

PASS, FAIL, INVALID, INCONSISTENT, OUT_OF_HYP = 0, 1, 2, 3, 4


def _report(kind: str, payload: dict) -> dict:
    return {"schema": io.SCHEMA, "kind": kind, **payload}


def _emit(args, obj: dict) -> None:
    if getattr(args, "output", None):
        io.save(args.output, obj)
    else:
        sys.stdout.write(io.dumps(obj))


def _load_arc(path) -> PseudoArc:
    return io.pseudo_arc_from_json(io.load(path, "pseudo-arc"))


# -- construct ------------------------------------------------------------------


def cmd_construct(args) -> int:
    q, n = args.q, args.n
    h = q.bit_length() - 1
    if q != 1 << h or h < 1:
        print(f"error: q={q} is not a power of two", file=sys.stderr)
        return INVALID
    if q**n > args.cap and not args.force:
        print(f"error: q^n = {q ** n} exceeds the cap {args.cap} (use --force)",
              file=sys.stderr)
        return INVALID
    source = args.source
    extend = False
    if source.startswith("hyperoval-from:"):
        extend = True
        source = source[len("hyperoval-from:"):]
    try:
        if source == "conic":
            plane = conic(q**n)
        elif source.startswith("translation:"):
            plane = translation_oval(q**n, int(source.split(":", 1)[1]))
        else:
            print(f"error: unknown source {args.source!r}", file=sys.stderr)
            return INVALID
        rmap = reduction_map(q, n)
        arc = rmap.reduce_arc(plane)
        if extend:
            arc = extend_to_hyperoval(arc)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID
    io.save(args.output, io.pseudo_arc_to_json(arc))
    print(f"wrote {arc.kind} with {len(arc)} elements of PG({3 * n - 1}, {q}) "
          f"to {args.output}")
    return PASS


# -- verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    obj = io.load(args.input)
    kind = obj.get("kind")
    if kind == "plane-arc":
        fld = io.field_from_json(obj["field"])
        space = ProjSpace(2, fld)
        pts = [tuple(p) for p in obj["points"]]
        rep = verify_karc(space, pts)
        out = _report("verify-report", {
            "input_kind": kind, "ok": rep.ok, "k": rep.k, "max_k": rep.max_k,
            "witness": None if rep.collinear_witness is None
            else {"kind": "collinear-triple", "indices": list(rep.collinear_witness)},
            "reason": rep.reason})
    elif kind == "pseudo-arc":
        fld = io.field_from_json(obj["field"])
        n = obj["n"]
        space = ProjSpace(3 * n - 1, fld)
        subs = [io.subspace_from_json(e, space) for e in obj["elements"]]
        rep = verify_pseudo_arc(space, subs)
        out = _report("verify-report", {
            "input_kind": kind, "ok": rep.ok, "k": rep.k, "n": rep.n,
            "max_k": rep.max_k,
            "witness": None if rep.witness_triple is None
            else {"kind": "non-spanning-triple", "indices": list(rep.witness_triple)},
            "reason": rep.reason})
    elif kind == "spread":
        spread = io.spread_from_json(obj)
        rep = verify_spread(spread)
        out = _report("verify-report", {
            "input_kind": kind, "ok": rep.ok, "count": rep.count,
            "expected": rep.expected, "witness": rep.witness, "reason": rep.reason})
    else:
        print(f"error: cannot verify kind {kind!r}", file=sys.stderr)
        return INVALID
    _emit(args, out)
    return PASS if out["ok"] else FAIL


# -- tangents ---------------------------------------------------------------------


def cmd_tangents(args) -> int:
    arc = _load_arc(args.input)
    try:
        taus = tangent_spaces(arc)
    except ValueError as err:
        _emit(args, _report("tangents-report", {"ok": False, "reason": str(err)}))
        return FAIL
    payload = {"ok": True, "count": len(taus),
               "tangents": [io.subspace_to_json(t) for t in taus],
               "nucleus": None}
    if arc.q % 2 == 0:
        payload["nucleus"] = io.subspace_to_json(nucleus(arc))
    _emit(args, _report("tangents-report", payload))
    return PASS


# -- derive -----------------------------------------------------------------------


def cmd_derive(args) -> int:
    arc = _load_arc(args.input)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs: list[tuple[str, object]] = []
    if args.nucleus or (args.all and arc.kind == "pseudo-oval"):
        jobs.append(("nucleus", None))
    if args.index is not None:
        jobs.append((f"{args.index}", args.index))
    if args.all:
        jobs.extend((f"{i}", i) for i in range(len(arc.elements)))
    if not jobs:
        print("error: choose --index, --all or --nucleus", file=sys.stderr)
        return INVALID

    def run(job):
        name, idx = job
        if idx is None:
            spread = derive_spread_from_nucleus(arc, args.explicit_complement)
        else:
            spread = derive_spread_from_element(arc, idx, args.explicit_complement)
        sr = verify_spread(spread)
        rr = is_regular_spread(spread)
        return name, spread, sr, rr

    results = pmap(run, jobs)
    entries = []
    ok = True
    for name, spread, sr, rr in results:
        path = outdir / f"delta_{name}.json"
        io.save(path, io.spread_to_json(spread))
        entries.append({"index": name, "file": str(path), "spread_ok": sr.ok,
                        "regular": rr.regular, "vacuous": rr.vacuous,
                        "witness": rr.witness or sr.witness})
        ok = ok and sr.ok
        print(f"delta[{name}]: spread={'ok' if sr.ok else 'FAIL'} "
              f"regular={'yes' if rr.regular else 'NO'}"
              f"{' (vacuous q=2)' if rr.vacuous else ''}")
    io.save(outdir / "derive_report.json",
            _report("derive-report", {"ok": ok, "spreads": entries}))
    return PASS if ok else FAIL


# -- dualize -----------------------------------------------------------------------


def cmd_dualize(args) -> int:
    arc = _load_arc(args.input)
    try:
        da = dual_arc(arc)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID
    gammas = []
    for i, g in enumerate(da.gammas):
        rr = is_regular_spread(g)
        gammas.append({"index": i, "spread": io.spread_to_json(g),
                       "regular": rr.regular, "vacuous": rr.vacuous})
    out = _report("dual-arc", {
        "betas": [io.subspace_to_json(b) for b in da.betas],
        "gammas": gammas,
        "extended": len(da.arc.elements) != len(arc.elements)})
    _emit(args, out)
    return PASS


# -- regulus -----------------------------------------------------------------------


def cmd_regulus(args) -> int:
    spread = io.spread_from_json(io.load(args.input, "spread"))
    try:
        idx = [int(x) for x in args.elements.split(",")]
        a, b, c = (spread.elements[i] for i in idx)
    except (ValueError, IndexError):
        print(f"error: bad element indices {args.elements!r}", file=sys.stderr)
        return INVALID
    reg = regulus_through(a, b, c)
    contained = reg.element_set() <= spread.element_set()
    out = io.regulus_to_json(reg)
    out["contained_in_spread"] = contained
    if args.opposite:
        out["opposite"] = io.regulus_to_json(opposite_regulus(reg))
    _emit(args, out)
    return PASS


# -- check-regular ------------------------------------------------------------------


def cmd_check_regular(args) -> int:
    spread = io.spread_from_json(io.load(args.input, "spread"))
    sr = verify_spread(spread)
    if not sr.ok:
        _emit(args, _report("regularity-report",
                            {"ok": False, "spread_ok": False, "witness": sr.witness,
                             "reason": sr.reason}))
        return FAIL
    rr = is_regular_spread(spread, mode=args.mode)
    payload = {"ok": rr.regular, "spread_ok": True, "regular": rr.regular,
               "vacuous": rr.vacuous, "mode": rr.mode,
               "checked_triples": rr.checked_triples, "witness": rr.witness,
               "reason": rr.reason, "transversals": None}
    if args.transversals:
        n = spread.elements[0].rank
        fld = spread.space.field
        try:
            tower = FieldTower(fld, field_make(fld.m * n))
            scaffold = spread_transversals(spread, tower)
            payload["transversals"] = {
                "ok": True,
                "lines": [io.subspace_to_json(u) for u in scaffold.transversal_lines]}
        except (NotRegularError, ValueError) as err:
            payload["transversals"] = {
                "ok": False, "reason": str(err),
                "witness": getattr(err, "witness", None)}
            payload["ok"] = False
    _emit(args, _report("regularity-report", payload))
    return PASS if payload["ok"] else FAIL


# -- theorem ------------------------------------------------------------------------


def cmd_theorem(args) -> int:
    arc = _load_arc(args.input)
    given = None
    if args.given:
        given = tuple(int(x) for x in args.given.split(","))
    try:
        params = TheoremParams(args.id, rho=args.rho, delta0=args.delta0,
                               given=given)
        rep = check_theorem(arc, params)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID
    out = _report("theorem-report", {
        "theorem": rep.theorem, "hypothesis": rep.hypothesis,
        "spreads": rep.spreads, "forward": rep.forward,
        "converse": rep.converse, "recognition": rep.recognition,
        "verdict": rep.verdict, "seconds": rep.seconds})
    _emit(args, out)
    print(f"theorem {rep.theorem}: {rep.verdict} "
          f"(forward={rep.forward}, converse={rep.converse})")
    return rep.exit_code()


# -- design -------------------------------------------------------------------------


def _pg2_lines_design(q: int) -> DesignSpec:
    from .fields import gf
    from .projective import kernel
    space = ProjSpace(2, gf(q))
    pts = space.points()
    index = {p.coords: i for i, p in enumerate(pts)}
    lines = []
    for coeff in [p.coords for p in pts]:
        line = space.subspace(kernel(space.field, [coeff], 3))
        lines.append(frozenset(index[x.coords] for x in line.points()))
    return DesignSpec(tuple(range(len(pts))), tuple(sorted(set(lines), key=sorted)),
                      2, len(pts), q + 1, 1)


def cmd_design(args) -> int:
    try:
        if args.check:
            spec = io.design_from_json(io.load(args.check, "design"))
        elif args.pg2_lines:
            spec = _pg2_lines_design(args.pg2_lines)
        elif args.spread_reguli:
            spread = io.spread_from_json(io.load(args.spread_reguli, "spread"))
            exc = tuple(int(x) for x in args.exceptions.split(",")) \
                if args.exceptions else ()
            spec = spread_reguli_design(spread, exc)
        elif args.plane_model_from:
            arc = _load_arc(args.plane_model_from)
            res = recognize_regular(arc)
            if not res.regular:
                print("error: arc was not recognized as regular", file=sys.stderr)
                return FAIL
            model = plane_model(res.sigma)
            spec = DesignSpec(tuple(range(len(model.spread.elements))),
                              tuple(model.members), 2,
                              len(model.spread.elements), model.points_per_line, 1)
        elif args.dual_blocks:
            arc = _load_arc(args.dual_blocks)
            spec = regulus_blocks(dual_arc(arc))
        else:
            print("error: choose a design source", file=sys.stderr)
            return INVALID
    except (NotRegularError, io.PalFileError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID
    rep = check_design(spec)
    out = _report("design-report", {
        "ok": rep.ok, "t": spec.t, "v": spec.v, "k": spec.k, "lambda": spec.lam,
        "blocks": len(spec.blocks),
        "exceptions": sorted(spec.exceptions),
        "multiplicities": {str(m): c for m, c in sorted(rep.multiplicities.items())},
        "witness": rep.witness, "reason": rep.reason,
        "design": io.design_to_json(spec) if args.save_design else None})
    _emit(args, out)
    print(f"design {spec.t}-({spec.v},{spec.k},{spec.lam}): "
          f"{'valid' if rep.ok else 'NOT valid'}; "
          f"multiplicities {out['multiplicities']}")
    if args.tabulate:
        return PASS
    return PASS if rep.ok else FAIL


# -- report -------------------------------------------------------------------------


def cmd_report(args) -> int:
    obj = io.load(args.input)
    kind = obj.get("kind")
    lines = [f"pal-v1 file: kind={kind}"]
    if kind == "pseudo-arc":
        fld = obj["field"]
        lines.append(f"  q=2^{fld['m']}={2 ** fld['m']}, n={obj['n']}, "
                     f"{len(obj['elements'])} elements, kind={obj['arc_kind']}")
        if obj.get("witness"):
            lines.append(f"  witness: {obj['witness'].get('source_kind')} "
                         f"via {obj['witness'].get('convention')}")
    elif kind == "plane-arc":
        lines.append(f"  |points|={len(obj['points'])}, kind={obj['arc_kind']}")
    elif kind == "spread":
        lines.append(f"  {len(obj['elements'])} elements in PG({obj['ambient_dim']}, "
                     f"{2 ** obj['field']['m'] if obj['field']['p'] == 2 else obj['field']['p']})"
                     f", origin={obj.get('origin') or 'n/a'}")
    elif kind == "theorem-report":
        lines.append(f"  theorem {obj['theorem']}: {obj['verdict']} "
                     f"(forward={obj['forward']}, converse={obj['converse']})")
    elif kind == "design-report":
        lines.append(f"  {obj['t']}-({obj['v']},{obj['k']},{obj['lambda']}): "
                     f"ok={obj['ok']}, blocks={obj['blocks']}")
    elif kind == "regulus":
        lines.append(f"  {len(obj['elements'])} elements in "
                     f"PG({obj['ambient_dim']}, ...), "
                     f"contained_in_spread={obj.get('contained_in_spread')}")
    elif kind == "dual-arc":
        lines.append(f"  {len(obj['betas'])} dual elements; "
                     f"regular spreads: {sum(1 for g in obj['gammas'] if g['regular'])}"
                     f"/{len(obj['gammas'])}")
    elif kind in ("verify-report", "regularity-report", "derive-report",
                  "tangents-report", "design", "reduction-map"):
        keys = [k for k in ("ok", "reason", "count", "regular") if k in obj]
        lines.append("  " + ", ".join(f"{k}={obj[k]}" for k in keys))
    else:
        lines.append("  (no summary available)")
    print("\n".join(lines))
    return PASS


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pal",
                                 description="pseudo-arc construction and checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a pseudo-arc by field reduction")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--source", required=True,
                   help="conic | translation:K | hyperoval-from:<source>")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("verify", help="verify an arc or spread file")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("tangents", help="tangent spaces and nucleus of a pseudo-oval")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_tangents)

    p = sub.add_parser("derive", help="derived spreads of a pseudo-arc")
    p.add_argument("input")
    p.add_argument("--index", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--nucleus", action="store_true")
    p.add_argument("--explicit-complement", action="store_true")
    p.add_argument("--outdir", default=".")
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("dualize", help="dual arc with its Gamma spreads")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_dualize)

    p = sub.add_parser("regulus", help="regulus through three spread elements")
    p.add_argument("input")
    p.add_argument("--elements", required=True, help="comma-separated indices")
    p.add_argument("--opposite", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_regulus)

    p = sub.add_parser("check-regular", help="regulus-closure regularity test")
    p.add_argument("input")
    p.add_argument("--mode", choices=("auto", "full", "fixed"), default="auto")
    p.add_argument("--transversals", action="store_true",
                   help="cross-check via extension transversal lines")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_check_regular)

    p = sub.add_parser("theorem", help="run a characterization-theorem check")
    p.add_argument("--id", required=True, choices=("6.1", "6.2", "6.3", "7.1"))
    p.add_argument("--rho", type=int)
    p.add_argument("--delta0", type=int, default=0)
    p.add_argument("--given", help="comma-separated indices of given spreads")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_theorem)

    p = sub.add_parser("design", help="incidence-structure checks")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--check", help="a pal-v1 design file")
    src.add_argument("--pg2-lines", type=int, metavar="Q",
                     help="points/lines of PG(2, Q)")
    src.add_argument("--spread-reguli", metavar="SPREAD",
                     help="reguli of a regular spread as blocks")
    src.add_argument("--plane-model-from", metavar="ARC",
                     help="plane model of the spread generated from an arc")
    src.add_argument("--dual-blocks", metavar="ARC",
                     help="regulus blocks of the dual arc (tabulation)")
    p.add_argument("--exceptions", help="comma-separated exception points (Q set)")
    p.add_argument("--tabulate", action="store_true",
                   help="report multiplicities without failing")
    p.add_argument("--save-design", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_design)

    p = sub.add_parser("report", help="summarize any pal-v1 file")
    p.add_argument("input")
    p.set_defaults(fn=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except io.PalFileError as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID
    except NotRegularError as err:
        print(f"error: {err}", file=sys.stderr)
        return FAIL
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
