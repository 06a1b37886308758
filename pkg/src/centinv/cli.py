"""Command-line driver: ``centinv {basis,invariants,verify,index,envelope}``.

Reports are JSON.  Exit status: 0 when every check passes, 1 when a check
fails, 2 on usage errors.
"""

import argparse
import json
import sys
import time

from . import coadjoint, enveloping, invariants
from .centralizer import Centraliser, ZetaEtaBasis, bracket, build_gram, sigma_index, sigma_matrix
from .combinatorics import Case, NoValidInvolution, Partition, invariant_count, invariant_count_direct
from .fields import parse_field

SCHEMA = "centinv-report/1"
SUITES = ("invariance", "parity", "restriction", "jacobian", "stabiliser", "dominance",
          "oracle", "generation", "counting")


class UsageError(ValueError):
    pass


def _check(name, prop, expected, actual, passed=None):
    if passed is None:
        passed = expected == actual
    return {"name": name, "property": prop, "expected": expected, "actual": actual,
            "pass": bool(passed)}


def _report_check(rep, prop):
    return _check(rep.name, prop, "no failures", rep.to_json()["failures"] or "no failures",
                  rep.passed)


def cmd_basis(cfg):
    lam, case, F = cfg["lam"], cfg["case"], cfg["field"]
    cent = Centraliser(lam)
    data = {"dim": cent.dim, "basis": [b.to_json() for b in cent.basis]}
    if case is not Case.GL:
        zb = ZetaEtaBasis(lam, case, F)
        data["k"] = [{"label": str(lab), "vector": {str(k): str(v) for k, v in sorted(zb.k.vectors[lab].items())}}
                     for lab in zb.k.labels]
        data["p"] = [{"label": str(lab), "vector": {str(k): str(v) for k, v in sorted(zb.p.vectors[lab].items())}}
                     for lab in zb.p.labels]
        data["dim_k"], data["dim_p"] = zb.dim_k, zb.dim_p
    checks = [_check("dimension", "dim g_e = sum of min(lambda_i, lambda_j)",
                     sum(min(a, b) for a in lam.parts for b in lam.parts), cent.dim)]
    return data, checks


def cmd_invariants(cfg):
    lam, case, F = cfg["lam"], cfg["case"], cfg["field"]
    rs = [cfg["r"]] if cfg["r"] else list(range(1, lam.N + 1))
    out = []
    checks = []
    for r in rs:
        inv = invariants.elementary_invariant(lam, r, F)
        entry = {"r": r, "degree": inv.degree, "text": str(inv.poly), "json": inv.poly.to_json()}
        if case is not Case.GL:
            for target in ("k", "p"):
                res = invariants.restrict(lam, case, r, target, F)
                entry[f"restriction_{target}"] = str(res.poly)
        out.append(entry)
        checks.append(_check(f"homogeneous[{r}]", "x_r is homogeneous of degree d_r",
                             True, inv.poly.is_homogeneous(inv.degree)))
    return {"invariants": out}, checks


def _suite(name, cfg):
    lam, case, F = cfg["lam"], cfg["case"], cfg["field"]
    p = F.p
    if name == "invariance":
        return [_report_check(invariants.verify_ad_invariance(lam, p), "ad(xi) x_r = 0 and group invariance")]
    if name == "counting":
        return [_check("count", "closed-form generator count equals direct count",
                       invariant_count(lam, case), invariant_count_direct(lam, case))]
    if name == "oracle":
        return [_oracle(lam, case, F)]
    if name == "generation":
        if p is None:
            raise UsageError("the generation suite needs --field fp:<p>")
        dmax = cfg["degree_cap"] or max(6, p + 1)
        rep = invariants.graded_invariant_dims(lam, case, p, dmax)
        return [_check(f"degree[{k}]", "invariants equal the p-th power algebra with generators",
                       a, b) for k, a, b in rep.rows]
    if name == "stabiliser":
        got = coadjoint.index_closed_form(lam, case)
        alpha = coadjoint.make_special_point(lam, case, "alpha", F).point
        return [_check("stabiliser_dim", "stabiliser of alpha has the index dimension",
                       got, coadjoint.stabiliser(alpha, lam, case, F).dim)]
    if name == "dominance":
        return [_report_check(coadjoint.dominance_span_check(lam, case, F),
                              "coadjoint orbit of alpha covers off-diagonal directions")]
    if name == "jacobian":
        rep = coadjoint.jacobian_probe(lam, case, F)
        m = invariant_count(lam, case)
        checks = [_check(f"rank[{k}]", "generator differentials have full rank", m, v)
                  for k, v in sorted(rep.ranks.items())]
        if case is Case.GL:
            checks.append(_report_check(coadjoint.beta_differential_check(lam, F), "differential at beta on U"))
        return checks
    if case is Case.GL:
        raise UsageError(f"suite {name} needs --case sp or so")
    if name == "parity":
        return [_report_check(invariants.verify_sigma_parity(lam, case, p), "sigma(x_r) = (-1)^r x_r")]
    if name == "restriction":
        return [_report_check(invariants.verify_restrictions(lam, case, p),
                              "restrictions vanish exactly as predicted; survivors distinct")]
    raise UsageError(f"unknown suite {name}")


def _oracle(lam, case, F):
    cent = Centraliser(lam)
    bad = 0
    for a in cent.basis:
        for b in cent.basis:
            M = cent.matrices[a] @ cent.matrices[b] - cent.matrices[b] @ cent.matrices[a]
            if cent.from_matrix(M) != bracket(a, b, lam):
                bad += 1
            if coadjoint.coad({a: 1}, {b: 1}, lam) != coadjoint.coad_pairing({a: 1}, {b: 1}, lam):
                bad += 1
    if case is not Case.GL:
        J = build_gram(lam, case)
        for a in cent.basis:
            sg, b = sigma_index(a, lam, case)
            if not (sigma_matrix(cent.matrices[a], J, case) == sg * cent.matrices[b]).all():
                bad += 1
    return _check("oracles", "closed forms agree with matrix computations", 0, bad)


def cmd_verify(cfg):
    suites = cfg["suite"] or list(SUITES)
    checks = []
    skipped = []
    for s in suites:
        if s not in SUITES:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
        if cfg["case"] is Case.GL and s in ("parity", "restriction") and not cfg["suite"]:
            skipped.append(s)
            continue
        if cfg["field"].p is None and s in ("generation",) and not cfg["suite"]:
            skipped.append(s)
            continue
        for c in _suite(s, cfg):
            c["suite"] = s
            checks.append(c)
    return {"suites": suites, "skipped": skipped}, checks


def cmd_index(cfg):
    lam, case, F = cfg["lam"], cfg["case"], cfg["field"]
    alpha = coadjoint.make_special_point(lam, case, "alpha", F).point
    dim = coadjoint.stabiliser(alpha, lam, case, F).dim
    expected = coadjoint.index_closed_form(lam, case)
    return {"index": dim}, [_check("index", "stabiliser dimension at alpha equals the closed form",
                                   expected, dim)]


def cmd_envelope(cfg):
    lam, case, F = cfg["lam"], cfg["case"], cfg["field"]
    checks_wanted = cfg["check"] or ["milner", "pcentre", "grbeta", "bound"]
    cap = cfg["degree_cap"]
    data, checks = {}, []
    if "bound" in checks_wanted and case is Case.SO:
        if cfg["check"]:
            raise UsageError("the bound check is available for gl and sp only")
        data["skipped"] = ["bound"]
    elif "bound" in checks_wanted:
        if F.p is None:
            raise UsageError("the bound check needs --field fp:<p>")
        b = enveloping.zassenhaus_bound(lam, case, F.p)
        data["bound"] = b
        checks.append(_check("bound", "maximal simple dimension bound has an integral exponent",
                             True, isinstance(b, int)))
    alg = enveloping.make_algebra(lam, case, F)
    if "pcentre" in checks_wanted:
        if F.p is None:
            raise UsageError("the pcentre check needs --field fp:<p>")
        env = enveloping.Envelope(alg, cap or F.p + 1, case)
        for lab in alg.labels:
            rep = env.verify_central(env.p_centre_generator({lab: 1}))
            checks.append(_check(f"pcentre[{lab}]", "v^p - v^[p] is central", True, rep.passed))
    deg = cap or 3
    env = enveloping.Envelope(alg, deg + 1, case)
    if "milner" in checks_wanted:
        checks.append(_report_check(enveloping.verify_mu_leading(env, deg), "mu leading term"))
    if "grbeta" in checks_wanted:
        checks.append(_report_check(enveloping.verify_gr_beta(env, deg), "gr beta is the identity"))
        checks.append(_report_check(enveloping.verify_equivariance(env, deg), "pi and beta are equivariant"))
    return data, checks


COMMANDS = {"basis": cmd_basis, "invariants": cmd_invariants, "verify": cmd_verify,
            "index": cmd_index, "envelope": cmd_envelope}


def build_parser():
    ap = argparse.ArgumentParser(prog="centinv", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--lambda", dest="lam", required=True, help="partition, e.g. 3,2,1")
        sp.add_argument("--case", default="gl", help="gl, sp or so")
        sp.add_argument("--field", default="q", help="q or fp:<prime>")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--degree-cap", type=int, default=None)
        if name == "invariants":
            sp.add_argument("--r", type=int, default=None)
        if name == "verify":
            sp.add_argument("--suite", action="append", help=", ".join(SUITES))
        if name == "envelope":
            sp.add_argument("--check", action="append",
                            choices=["milner", "pcentre", "grbeta", "bound"])
    return ap


def _config(args):
    try:
        lam = Partition.parse(args.lam)
        case = Case.parse(args.case)
        field = parse_field(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if case is not Case.GL:
        if field.p == 2:
            raise UsageError("characteristic 2 is not allowed for sp/so")
        if case is Case.SP and lam.N % 2:
            raise UsageError("sp needs N even")
        from .combinatorics import involution
        try:
            involution(lam, case)
        except NoValidInvolution as exc:
            raise UsageError(str(exc)) from None
    r = getattr(args, "r", None)
    if r is not None and not 1 <= r <= lam.N:
        raise UsageError(f"--r must lie in 1..{lam.N}")
    return {"lam": lam, "case": case, "field": field, "r": r,
            "degree_cap": args.degree_cap, "seed": args.seed,
            "suite": getattr(args, "suite", None), "check": getattr(args, "check", None)}


def run(argv=None):
    """Parse, run and return (report dict, exit status, output path)."""
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = _config(args)
    t0 = time.perf_counter()
    data, checks = COMMANDS[args.command](cfg)
    elapsed = time.perf_counter() - t0
    report = {
        "schema": SCHEMA,
        "job": {"command": args.command, "lambda": str(cfg["lam"]), "case": cfg["case"].value,
                "field": cfg["field"].spec(), "seed": cfg["seed"], "degree_cap": cfg["degree_cap"],
                "r": cfg["r"], "suite": cfg["suite"], "check": cfg["check"]},
        "result": data,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
        "timing": {"seconds": round(elapsed, 4)},
    }
    return report, 0 if report["pass"] else 1, args.out


def main(argv=None):
    try:
        report, status, out = run(argv)
    except UsageError as exc:
        print(f"centinv: error: {exc}", file=sys.stderr)
        return 2
    except (enveloping.CapExceeded, invariants.ResourceCapExceeded, coadjoint.FieldTooSmall) as exc:
        print(f"centinv: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
