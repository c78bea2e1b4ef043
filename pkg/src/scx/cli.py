"""Command-line front end.

Verbs: two-bridge, lens, torus, fixture, validate, tensor, dual, h,
jideals, gamma, euler, sharp, hat-presentation, bn-presentation,
model-check, batch.  Reports are TSV tables by default and JSON with
``--json``.  Exit status 0 on success, 1 on usage or input errors, 2 on
validation failures and refused computations.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys

from . import equivariant, knots, rings, scomplex
from .equivariant import (EquivariantError, INFINITY, UnsupportedRingError,
                          UntrustedVError)
from .knots import InconsistentComplexError, KnotError
from .rings import ParseError, RingError
from .scomplex import SchemaError, SComplexError


class UsageError(Exception):
    pass


class ComputationRefused(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    top = _Parser(prog="scx", description=__doc__)
    sub = top.add_subparsers(dest="verb", metavar="VERB")

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--json", action="store_true",
                       help="emit JSON instead of a TSV table")
        return p

    p = add("two-bridge", help="generate a two-bridge knot complex")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ring", default="universal")
    p.add_argument("--out", help="write the complex JSON to this file")

    p = add("lens", help="Sasahira lens-space homology ranks")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = add("torus", help="torus knot signature, Alexander data, vanishing")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = add("fixture", help="emit a named fixture complex")
    p.add_argument("--name", required=True,
                   choices=["trivial", "trefoil", "t34", "t35"])
    p.add_argument("--out")

    p = add("validate", help="validate a complex file")
    p.add_argument("--in", dest="infile", required=True)

    p = add("tensor", help="tensor product of two complexes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out")

    p = add("dual", help="dual complex")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--grading", default="reverse",
                   choices=["reverse", "negate"])

    for name, extra in (("h", ()), ("euler", ()),
                        ("jideals", ("--min", "--max"))):
        p = add(name, help=f"compute {name} of a complex")
        p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--specialize", action="append", default=[],
                       metavar="VAR=VALUE")
        p.add_argument("--ring", help="target ring for the specialization")
        for flag in extra:
            p.add_argument(flag, type=int, dest=flag.lstrip("-"))

    p = add("gamma", help="Gamma function values")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, action="append", default=[])
    p.add_argument("--min", type=int, dest="min")
    p.add_argument("--max", type=int, dest="max")

    p = add("sharp", help="unreduced mapping-cone model ranks")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--specialize", action="append", default=[],
                   metavar="VAR=VALUE")
    p.add_argument("--ring")

    p = add("hat-presentation", help="module presentation of the hat theory")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--specialize", action="append", default=[],
                   metavar="VAR=VALUE")
    p.add_argument("--ring")

    p = add("bn-presentation", help="theta-web base-changed presentation")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--specialize", action="append", default=[],
                   metavar="VAR=VALUE")
    p.add_argument("--ring")
    p.add_argument("--target", default="bn", choices=["bn", "sharp"])

    p = add("model-check", help="verify the small/large model equivalence")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--truncation", type=int,
                   default=int(os.environ.get("SCX_TRUNCATION", "5")))

    p = add("batch", help="run commands from a file, one per line")
    p.add_argument("--file", required=True)
    return top


# ---------------------------------------------------------------------------
# helpers


def _load_complex(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not JSON: {e}")
    return scomplex.from_dict(doc)


def _write_or_print(out, text, stream):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        stream.write(text + "\n")


_SPECIALIZE_RINGS = {
    "z": rings.Z, "q": rings.Q, "f2": rings.F2, "f4": rings.F4,
    "zt": rings.ZT, "qt": rings.QT, "f2t": rings.F2T, "f4t": rings.F4T,
    "sbn": rings.S_BN,
}


def _infer_target(src, mapping):
    """Guess the specialization target from the value strings: U=1 drops
    U, T=1 drops T, T=x lands in F4."""
    u_alive = bool(src.udenom) and mapping.get("U", "U") not in ("1",)
    t_val = mapping.get("T", "T")
    if u_alive:
        raise UsageError("specializations keeping U need an explicit --ring")
    if t_val == "x":
        return rings.F4
    if t_val == "1":
        return {"Z": rings.Z, "Q": rings.Q, "F2": rings.F2,
                "F4": rings.F4}[src.base]
    return rings.laurent_T(src.base)


def _apply_specialization(C, spec_args, ring_name):
    if not spec_args and not ring_name:
        return C
    mapping = {}
    for item in spec_args:
        var, eq, val = item.partition("=")
        if not eq or not var:
            raise UsageError(f"bad --specialize argument {item!r}")
        mapping[var] = val
    if ring_name:
        try:
            target = _SPECIALIZE_RINGS[ring_name.lower()]
        except KeyError:
            raise UsageError(f"unknown ring {ring_name!r}")
    else:
        target = _infer_target(C.ring, mapping)
    assignment = scomplex.standard_assignment(C.ring, target, **mapping)
    try:
        return scomplex.base_change_complex(C, assignment, target,
                                            check=False)
    except RingError as e:
        raise UsageError(str(e))


def _emit(payload, as_json, table_lines, stream):
    if as_json:
        stream.write(json.dumps(payload, indent=2) + "\n")
    else:
        for line in table_lines:
            stream.write(line + "\n")


def _report_table(rep):
    lines = [f"knot\t{rep.knot}", f"ring\t{rep.ring}"]
    lines.append("generator\tgr_mod4\tdeg_I")
    for g in rep.generators:
        lines.append(f"{g['name']}\t{g['gr_mod4']}\t{g['deg_I']}")
    for label, summary in rep.maps.items():
        shown = "; ".join(f"[{i},{j}]={s}" for i, j, s in summary["entries"])
        lines.append(f"map\t{label}\t{summary['nonzero']}\t{shown}")
    for key, val in rep.invariants.items():
        lines.append(f"invariant\t{key}\t{val}")
    for w in rep.warnings:
        lines.append(f"warning\t{w}")
    for nte in rep.notes:
        lines.append(f"note\t{nte}")
    return lines


# ---------------------------------------------------------------------------
# verb handlers


def _cmd_two_bridge(args, out, err):
    C = knots.two_bridge_complex(args.p, args.q, args.ring)
    rep = knots.two_bridge_report(args.p, args.q, args.ring)
    doc = scomplex.to_dict(C)
    if args.out:
        _write_or_print(args.out, json.dumps(doc, indent=2), out)
    payload = {"report": rep.to_dict()}
    if not args.out:
        payload["complex"] = doc
    _emit(payload, args.json, _report_table(rep), out)
    return 0


def _cmd_lens(args, out, err):
    ranks = knots.lens_sasahira(args.p, args.q)
    payload = {"lens": f"L({args.p},{args.q})",
               "graded_ranks": {str(k): v for k, v in ranks.items()},
               "total_rank": sum(ranks.values())}
    lines = [f"lens\tL({args.p},{args.q})"]
    lines += [f"gr{g}\t{ranks[g]}" for g in range(4)]
    lines.append(f"total\t{sum(ranks.values())}")
    _emit(payload, args.json, lines, out)
    return 0


def _cmd_torus(args, out, err):
    sigma = knots.torus_signature(args.p, args.q)
    delta, total = knots.torus_alexander(args.p, args.q)
    vanish = knots.vanishing_check(args.p, args.q)
    payload = {"knot": f"T({args.p},{args.q})", "signature": sigma,
               "alexander": delta.to_str(), "alexander_norm": total,
               "vanishing": vanish}
    lines = [f"knot\tT({args.p},{args.q})", f"signature\t{sigma}",
             f"alexander\t{delta.to_str()}", f"alexander_norm\t{total}",
             f"vanishing\t{str(vanish).lower()}"]
    _emit(payload, args.json, lines, out)
    return 0


def _cmd_fixture(args, out, err):
    C = knots.fixture(args.name)
    doc = scomplex.to_dict(C)
    if args.out:
        _write_or_print(args.out, json.dumps(doc, indent=2), out)
        out.write(f"wrote {args.name} to {args.out}\n")
    else:
        _emit(doc, True, [], out)
    return 0


def _cmd_validate(args, out, err):
    C = _load_complex(args.infile)
    rep = scomplex.validate(C)
    payload = {"ok": rep.ok, "failures": rep.failures}
    lines = [f"ok\t{str(rep.ok).lower()}"]
    lines += [f"failure\t{f}" for f in rep.failures]
    _emit(payload, args.json, lines, out)
    return 0 if rep.ok else 2


def _cmd_tensor(args, out, err):
    A = _load_complex(args.a)
    B = _load_complex(args.b)
    C = scomplex.tensor(A, B)
    doc = scomplex.to_dict(C)
    text = json.dumps(doc, indent=2)
    _write_or_print(args.out, text, out)
    return 0


def _cmd_dual(args, out, err):
    C = scomplex.dual(_load_complex(args.infile), grading=args.grading)
    _write_or_print(args.out, json.dumps(scomplex.to_dict(C), indent=2), out)
    return 0


def _cmd_h(args, out, err):
    C = _apply_specialization(_load_complex(args.infile), args.specialize,
                              args.ring)
    h = equivariant.h_invariant(C)
    _emit({"h": h}, args.json, [str(h)], out)
    return 0


def _cmd_euler(args, out, err):
    C = _apply_specialization(_load_complex(args.infile), args.specialize,
                              args.ring)
    chi = scomplex.euler_characteristic(C)
    _emit({"euler_characteristic": chi}, args.json, [str(chi)], out)
    return 0


def _cmd_jideals(args, out, err):
    C = _apply_specialization(_load_complex(args.infile), args.specialize,
                              args.ring)
    ideals = equivariant.j_ideals(C, args.min, args.max)
    payload = {"J": {str(i): [g.to_str() for g in gens]
                     for i, gens in sorted(ideals.items())}}
    lines = []
    for i in sorted(ideals, reverse=True):
        gens = ideals[i]
        desc = "0" if not gens else ("ring" if gens[0].is_unit()
                                     else "; ".join(g.to_str() for g in gens))
        lines.append(f"J[{i}]\t{desc}")
    _emit(payload, args.json, lines, out)
    return 0


def _cmd_gamma(args, out, err):
    C = _load_complex(args.infile)
    ks = list(args.k)
    if args.min is not None or args.max is not None:
        lo = args.min if args.min is not None else 0
        hi = args.max if args.max is not None else lo
        ks.extend(range(lo, hi + 1))
    if not ks:
        raise UsageError("gamma needs --k or --min/--max")
    vals = {}
    for k in sorted(set(ks)):
        g = equivariant.gamma(C, k)
        vals[k] = "infinity" if g is INFINITY else str(g)
    payload = {"gamma": {str(k): v for k, v in vals.items()}}
    lines = [f"gamma({k})\t{v}" for k, v in vals.items()]
    _emit(payload, args.json, lines, out)
    return 0


def _cmd_sharp(args, out, err):
    C = _apply_specialization(_load_complex(args.infile), args.specialize,
                              args.ring)
    cone = scomplex.sharp_complex(C, twisted=args.twisted)
    payload = {"generators": len(cone.gens), "twisted": args.twisted}
    lines = [f"generators\t{len(cone.gens)}"]
    if args.twisted or not rings.is_euclidean(C.ring):
        r = cone.rank_over_fractions()
        payload["rank_over_fractions"] = r
        lines.append(f"rank_over_fractions\t{r}")
    else:
        H = cone.homology_summary()
        payload["free_rank"] = H.free_rank
        payload["torsion"] = [t.to_str() for t in H.torsion]
        lines.append(f"free_rank\t{H.free_rank}")
        lines.append("torsion\t" + (", ".join(t.to_str() for t in H.torsion)
                                    or "none"))
    _emit(payload, args.json, lines, out)
    return 0


def _cmd_hat_presentation(args, out, err):
    C = _apply_specialization(_load_complex(args.infile), args.specialize,
                              args.ring)
    pres = equivariant.hat_presentation(C)
    doc = pres.to_dict()
    lines = ["generators\t" + ", ".join(pres.generators)]
    for j in range(pres.relations.cols):
        rel = "; ".join(
            f"{pres.generators[i]}: {pres.relations[i, j].to_str()}"
            for i in range(pres.relations.rows) if pres.relations[i, j])
        lines.append(f"relation[{j}]\t{rel}")
    _emit(doc, args.json, lines, out)
    return 0


def _cmd_bn_presentation(args, out, err):
    C = _apply_specialization(_load_complex(args.infile), args.specialize,
                              args.ring)
    pres = equivariant.bn_presentation(equivariant.hat_presentation(C),
                                       target=args.target)
    doc = pres.to_dict()
    lines = ["generators\t" + ", ".join(pres.generators)]
    for j in range(pres.relations.cols):
        rel = "; ".join(
            f"{pres.generators[i]}: {pres.relations[i, j].to_str()}"
            for i in range(pres.relations.rows) if pres.relations[i, j])
        lines.append(f"relation[{j}]\t{rel}")
    _emit(doc, args.json, lines, out)
    return 0


def _cmd_model_check(args, out, err):
    C = _load_complex(args.infile)
    rep = equivariant.verify_model_equivalence(C, args.truncation)
    payload = {"ok": rep.ok, "truncation": args.truncation,
               "failures": rep.failures}
    lines = [f"ok\t{str(rep.ok).lower()}", f"truncation\t{args.truncation}"]
    lines += [f"failure\t{f}" for f in rep.failures]
    _emit(payload, args.json, lines, out)
    return 0 if rep.ok else 2


def _cmd_batch(args, out, err):
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e}")
    worst = 0
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.write(f"### {line}\n")
        code = run(shlex.split(line), out, err)
        worst = max(worst, code)
    return worst


_HANDLERS = {
    "two-bridge": _cmd_two_bridge, "lens": _cmd_lens, "torus": _cmd_torus,
    "fixture": _cmd_fixture, "validate": _cmd_validate,
    "tensor": _cmd_tensor, "dual": _cmd_dual, "h": _cmd_h,
    "euler": _cmd_euler, "jideals": _cmd_jideals, "gamma": _cmd_gamma,
    "sharp": _cmd_sharp, "hat-presentation": _cmd_hat_presentation,
    "bn-presentation": _cmd_bn_presentation, "model-check": _cmd_model_check,
    "batch": _cmd_batch,
}


def run(argv, out=None, err=None):
    """Parse argv and dispatch; returns the exit status."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.verb:
            raise UsageError("a verb is required (try --help)")
        return _HANDLERS[args.verb](args, out, err)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return 1
    except (ParseError, SchemaError) as e:
        err.write(f"input error: {e}\n")
        return 1
    except (UntrustedVError, UnsupportedRingError, InconsistentComplexError,
            EquivariantError, SComplexError, KnotError, RingError) as e:
        err.write(f"refused: {e}\n")
        return 2


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
