"""Command line front end: ``qhecke <command> STRUCTURE [SUBGROUP] [flags]``.

STRUCTURE is a ring file (qhecke-ring/1) or a recipe file (qhecke-recipe/1);
SUBGROUP is a qhecke-subgroup/1 file.  Reports go to stdout or --output.

Exit codes: 0 success, 2 validation failure, 3 horizon-inconclusive,
4 parse or io error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .. import faithful, hecke, kappa, qdouble
from ..constructors import hnn_closed_forms, ring_to_dict
from ..constructors.rep import RingFormatError, RingValidationError
from ..cosets import Pair, commensurator, coset_counts, is_hecke_pair, trivial_subgroup
from ..fusion import FusionError, HorizonExceeded, fmt, validate_ring
from .formats import (InputError, group_from_spec, load_structure, load_subgroup, read_json,
                      render_csv, render_json)

OK, INVALID, INCONCLUSIVE, BAD_INPUT = 0, 2, 3, 4


class Outcome:
    def __init__(self, results: dict, code: int = OK, complete: bool = True, table=None):
        self.results, self.code, self.complete, self.table = results, code, complete, table


# ---------------------------------------------------------------------------
# helpers


def _context(args):
    built, hashes = load_structure(args.structure, args.max_grade)
    sub = built.sub
    if getattr(args, "subgroup", None):
        sub, h = load_subgroup(args.subgroup, built, args.max_grade)
        hashes.update(h)
    if sub is None:
        sub = trivial_subgroup(built.ring)
    return built, Pair(sub, args.max_grade), hashes


def _frac_map(d):
    return {k: fmt(v) for k, v in d.items()}


def _taus(pair, spec):
    if not spec or spec == "all":
        return list(pair.double.classes)
    out = [t.strip() for t in spec.split(",") if t.strip()]
    for t in out:
        if t not in pair.double.classes:
            raise InputError(f"unknown double class {t!r}; known: {sorted(pair.double.classes)}")
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, built, pair):
    rep = validate_ring(built.ring, args.max_grade)
    return Outcome(rep.as_dict(built.ring), OK if rep.passed else INVALID)


def cmd_cosets(args, built, pair):
    ring = pair.ring
    counts = coset_counts(pair)
    res = {"subgroup": pair.sub.describe(min(args.max_grade, 4))}
    for side in ("right", "left", "double"):
        dec = pair.classes(side)
        res[side] = {c: [ring.label(a) for a in m] for c, m in dec.classes.items()}
    res["L"] = {k: v.as_json() for k, v in counts.L.items()}
    res["R"] = {k: v.as_json() for k, v in counts.R.items()}
    res["complete"] = dict(pair.double.complete)
    mem, lim = commensurator(pair)
    res["commensurator"] = {"members": [ring.label(a) for a in mem],
                            "horizon_limited": [ring.label(a) for a in lim]}
    res["hecke_pair"] = is_hecke_pair(pair)
    done = all(pair.double.complete.values())
    return Outcome(res, OK if done else INCONCLUSIVE, done)


def cmd_kappa(args, built, pair):
    ring = pair.ring
    objs = ring.objects_up_to(args.max_grade)
    res = {"kappa_self": {ring.label(a): fmt(kappa.kappa_self(pair, a)) for a in objs},
           "mass": {ring.label(a): fmt(kappa.mass(pair, a)) for a in objs}}
    code = OK
    if args.class_invariance:
        rep = kappa.check_class_invariance(pair)
        res["class_invariance"] = rep.as_dict()
        code = OK if rep.passed else INVALID
    return Outcome(res, code)


def cmd_hecke(args, built, pair):
    T = hecke.structure_table(pair, _taus(pair, args.pairs), threads=args.threads)
    res = T.as_dict()
    ok = all(c["passed"] for c in T.checks.values())
    exact = all(T.exact.values())
    rows = [[t, t2, t3, fmt(v), T.exact[(t, t2)]] for (t, t2), row in sorted(T.N.items())
            for t3, v in sorted(row.items())]
    code = INVALID if not ok else (OK if exact else INCONCLUSIVE)
    return Outcome(res, code, exact, (rows, ["left", "right", "target", "coefficient", "exact"]))


def cmd_nabla(args, built, pair):
    res = {}
    taus = _taus(pair, args.tau)
    complete = True
    for t in taus:
        if not pair.complete(t):
            complete = False
            res[t] = {"status": "horizon-limited"}
            continue
        v = hecke.nabla(pair, t)
        res[t] = {"nabla": fmt(v.value), "left_sum": fmt(v.left_sum), "right_sum": fmt(v.right_sum),
                  "L": v.L, "R": v.R, "regime": v.regime}
    out = {"nabla": res}
    if built.hnn is not None:
        cf = hnn_closed_forms(built.hnn)
        out["closed_forms"] = {k: (fmt(v) if not isinstance(v, int) else v) for k, v in cf.items()}
    return Outcome(out, OK if complete or args.tau in (None, "all") else INCONCLUSIVE, complete)


def cmd_kms(args, built, pair):
    rep = hecke.verify_kms(pair, classes=_taus(pair, args.tau) if args.tau else None)
    return Outcome(rep, OK if rep["passed"] else INVALID)


def cmd_operator(args, built, pair):
    op = hecke.hecke_operator_matrix(pair, _taus(pair, args.tau)[0])
    res = op.as_dict()
    if args.norm:
        lo, hi = hecke.operator_norm_estimate(op)
        res["norm"] = {"lower": round(lo, 9), "upper": round(hi, 9)}
    rows = [[op.index[r], op.index[c], fmt(op.M[r][c])] for r in range(len(op.index))
            for c in range(len(op.index)) if op.M[r][c]]
    return Outcome(res, OK if op.exact else INCONCLUSIVE, op.exact, (rows, ["row", "col", "entry"]))


def cmd_adjoint(args, built, pair):
    rep = hecke.verify_adjoint(pair, _taus(pair, args.tau)[0])
    return Outcome(rep, OK if rep["passed"] else INVALID, rep["exact"])


def cmd_rt_scan(args, built, pair):
    ring = pair.ring
    betas = None
    if args.beta:
        betas = [ring.by_label(b, args.max_grade) for b in args.beta]
    res = kappa.rt_scan(pair, betas)
    out = {ring.label(b): {"max_ratio": fmt(v), "witness": [ring.label(x) for x in w] if w else None}
           for b, (v, w) in res.items()}
    return Outcome({"lower_bounds": out})


def cmd_build(args, built, pair):
    ring = built.ring
    if not ring.finite:
        raise InputError(f"build writes finite rings only; {ring.name} is infinite")
    return Outcome(ring_to_dict(ring))


def cmd_faithful(args, built, pair):
    closure = bool(built.hnn is not None and built.hnn.faithful_closure)
    rep = faithful.faithful_sufficient(pair, closure=closure)
    res = {"search": rep.as_dict()}
    if built.hnn is not None and hasattr(pair.ring, "power"):
        res["hnn_witnesses"] = faithful.hnn_faithfulness_witnesses(pair.ring, pair, g=args.base_grade).as_dict()
    certified = rep.status == "certified-faithful"
    return Outcome(res, OK if certified else INCONCLUSIVE, certified)


def cmd_theta_domains(args, built, pair):
    if built.hnn is None:
        raise InputError("theta-domains needs an hnn recipe")
    return Outcome(faithful.hnn_theta_domains(built.hnn, args.k_max, args.base_grade))


def cmd_cokernel(args, built, pair):
    return Outcome(faithful.cokernel_support(pair))


def cmd_suite(args, built, pair):
    ring = pair.ring
    res, ok = {}, True
    v = validate_ring(ring, args.max_grade)
    res["validate"] = v.as_dict(ring)
    ok &= v.passed
    inv = kappa.check_class_invariance(pair)
    res["class_invariance"] = inv.as_dict()
    ok &= inv.passed
    done = [t for t in pair.double.classes if pair.complete(t)]
    T = hecke.structure_table(pair, done, threads=args.threads)
    res["structure_checks"] = T.checks
    ok &= all(c["passed"] for c in T.checks.values())
    if ring.kac:
        nab = hecke.nabla_all(pair)
        res["nabla"] = _frac_map(nab)
        for name, rep in (("kms", hecke.verify_kms(pair, nab)),
                          ("grouplike", hecke.verify_grouplike_nabla(pair, nab=nab))):
            res[name] = rep
            ok &= rep["passed"]
    adj = {}
    for t in done:
        if pair.conj_class(t) in done:
            r = hecke.verify_adjoint(pair, t)
            adj[t] = r["passed"]
            ok &= r["passed"]
    res["adjoint"] = adj
    res["passed"] = bool(ok)
    return Outcome(res, OK if ok else INVALID)


def cmd_qdouble(args):
    p = Path(args.group)
    if p.exists():
        doc, h = read_json(p)
        t = group_from_spec(doc.get("group", doc))
        hashes = {str(p): h}
    else:
        t = group_from_spec(args.group)
        hashes = {}
    D = qdouble.build_double(t)
    A = qdouble.hecke_subalgebra(D)
    res = {"group": t.name, "order": t.order(), "basis_size": len(D.basis),
           "hopf": qdouble.verify_hopf_axioms(D),
           "characters": qdouble.verify_character_identification(D, A),
           "endomorphisms": qdouble.verify_endomorphism_correspondence(D, A),
           "hecke": A.as_dict()}
    ok = all(res[k]["passed"] for k in ("hopf", "characters", "endomorphisms"))
    return Outcome(res, OK if ok else INVALID), hashes


COMMANDS = {
    "validate": (cmd_validate, False), "cosets": (cmd_cosets, True), "kappa": (cmd_kappa, True),
    "hecke": (cmd_hecke, True), "nabla": (cmd_nabla, True), "kms": (cmd_kms, True),
    "operator": (cmd_operator, True), "adjoint": (cmd_adjoint, True), "rt-scan": (cmd_rt_scan, True),
    "build": (cmd_build, False), "faithful": (cmd_faithful, True),
    "theta-domains": (cmd_theta_domains, False), "cokernel-support": (cmd_cokernel, True),
    "suite": (cmd_suite, True),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-grade", type=int, default=10, help="grade horizon (default 10)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="qhecke", description=__doc__.splitlines()[0])
    sp = p.add_subparsers(dest="command", required=True)
    for name, (_, wants_sub) in COMMANDS.items():
        c = sp.add_parser(name, parents=[common])
        c.add_argument("structure", help="ring or recipe file")
        if wants_sub:
            c.add_argument("subgroup", nargs="?", help="subgroup file (default: recipe subgroup or trivial)")
        if name == "kappa":
            c.add_argument("--class-invariance", action="store_true")
        if name in ("hecke",):
            c.add_argument("--pairs", default="all", help="'all' or comma separated class ids")
        if name in ("nabla", "kms", "operator", "adjoint"):
            c.add_argument("--tau", required=name in ("operator", "adjoint"),
                           help="double class id(s), e.g. D:w")
        if name == "operator":
            c.add_argument("--norm", action="store_true")
        if name == "rt-scan":
            c.add_argument("--beta", action="append", help="object label; repeatable")
        if name in ("theta-domains", "faithful"):
            c.add_argument("--k-max", type=int, default=5)
            c.add_argument("--base-grade", type=int, default=None)
    q = sp.add_parser("qdouble", parents=[common])
    q.add_argument("group", help="group table file or a name such as S3, Z4, D4")
    return p


def _emit(args, command, hashes, out: Outcome) -> None:
    if command == "build":
        text = render_json(out.results)
    elif args.format == "csv" and out.table is not None:
        rows, header = out.table
        text = render_csv(rows, header)
    else:
        if args.format == "csv":
            print("qhecke: csv output covers tables only; writing json", file=sys.stderr)
        report = {"command": command, "inputs": hashes, "horizon": args.max_grade,
                  "complete": out.complete, "results": out.results}
        text = render_json(report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "base_grade", 0) is None:
        args.base_grade = args.k_max if args.command == "theta-domains" else 3
    t0 = time.perf_counter()
    try:
        if args.command == "qdouble":
            out, hashes = cmd_qdouble(args)
        else:
            fn, _ = COMMANDS[args.command]
            built, pair, hashes = _context(args)
            out = fn(args, built, pair)
        _emit(args, args.command, hashes, out)
    except RingValidationError as e:
        print(f"qhecke: {e}", file=sys.stderr)
        return INVALID
    except (InputError, RingFormatError) as e:
        print(f"qhecke: {e}", file=sys.stderr)
        return BAD_INPUT
    except HorizonExceeded as e:
        print(f"qhecke: horizon: {e}", file=sys.stderr)
        return INCONCLUSIVE
    except FusionError as e:
        print(f"qhecke: {e}", file=sys.stderr)
        return BAD_INPUT
    print(f"qhecke: {args.command} finished in {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
