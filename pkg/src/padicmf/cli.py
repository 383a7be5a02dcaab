"""Command line front end.

Every run emits one record.  ``--format json`` gives a single JSON object
(sorted keys, config echo included); ``--format text`` is for people.
Exit codes: 0 ok, 2 usage, 3 domain error, 4 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import DomainError, PrecisionExhausted

CAP_N = 8
CAP_M = 2000
CAP_DIM = 400


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    N: int | None = None
    M: int | None = None
    MT: int | None = None
    seed: int = 0
    format: str = "text"
    unsafe_limits: bool = False
    params: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# serialization


def padic_record(x) -> dict:
    from .padic import INF

    rec = {"p": x.p, "text": str(x)}
    if x.is_zero():
        rec.update(val=None, unit=0, absprec=None if x.prec == INF else int(x.prec))
    else:
        rec.update(val=int(x.val), unit=x.unit,
                   absprec=None if x.prec == INF else int(x.absprec))
    return rec


def padic_from_record(rec: dict):
    from .padic import INF, PadicNumber

    p = rec["p"]
    if rec["val"] is None:
        return PadicNumber.zero(p, INF if rec["absprec"] is None else rec["absprec"])
    if rec["absprec"] is None:
        return PadicNumber(p, INF, rec["val"], rec["unit"])
    return PadicNumber(p, rec["absprec"] - rec["val"], rec["val"], rec["unit"])


def lambda_record(x) -> dict:
    from .padic import INF

    return {
        "coeffs": list(x.coeffs),
        "pole": x.pole,
        "t0": str(x.t0),
        "prec": None if x.prec == INF else int(x.prec),
    }


def lambda_qexp_record(F) -> dict:
    r = F.ring
    return {"p": r.p, "N": r.N, "MT": r.MT, "psi": F.nebentypus or 0,
            "coeffs": [lambda_record(c) for c in F.coeffs]}


def lambda_qexp_from_record(rec: dict):
    from .lambda_adic import LambdaElement, LambdaQExpansion, LambdaRing
    from .padic import INF

    ring = LambdaRing(rec["p"], rec["N"], rec["MT"])
    coeffs = []
    for c in rec["coeffs"]:
        coeffs.append(LambdaElement(rec["p"], rec["N"], tuple(c["coeffs"]), c["pole"],
                                    Fraction(c["t0"]), INF if c["prec"] is None else c["prec"]))
    return LambdaQExpansion(coeffs, ring, rec["psi"])


def qexp_record(f) -> dict:
    from .qseries import to_text

    return {"text": to_text(f)}


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) and x == float("inf"):
        return None
    return x


def render(record: dict, fmt: str) -> str:
    record = _jsonable(record)
    if fmt == "json":
        return json.dumps(record, sort_keys=True)
    lines = []
    for k in sorted(record["result"]):
        v = record["result"][k]
        if isinstance(v, str) and "\n" in v:
            lines.append(f"{k}:")
            lines.append(v.rstrip("\n"))
        elif isinstance(v, dict) and "text" in v:
            lines.append(f"{k}: {v['text']}")
        elif isinstance(v, (dict, list)):
            lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(sp, p=True, N=True, M=False, MT=False):
    if p:
        sp.add_argument("--p", type=int, default=5)
    if N:
        sp.add_argument("--prec-p", "--prec", dest="N", type=int, default=4)
    if M:
        sp.add_argument("--prec-q", "--order", dest="M", type=int, default=20)
    if MT:
        sp.add_argument("--prec-t", dest="MT", type=int, default=6)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--unsafe-limits", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="padicmf", description="p-adic modular forms at finite precision")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("bernoulli", help="exact Bernoulli number B_n")
    sp.add_argument("--n", type=int, required=True)
    _common(sp, p=False, N=False)

    sp = sub.add_parser("zeta-neg", help="exact zeta(1 - n)")
    sp.add_argument("--n", type=int, required=True)
    _common(sp, p=False, N=False)

    sp = sub.add_parser("zeta-p", help="Kubota-Leopoldt zeta_{p,branch}(s)")
    sp.add_argument("--branch", type=int, default=0)
    sp.add_argument("--at", required=True, help="point s, e.g. 1-4, -3, 1/2")
    sp.add_argument("--aux-shift", type=int, default=0)
    _common(sp)

    sp = sub.add_parser("eisenstein", help="classical Eisenstein series")
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--normalization", choices=["G", "E", "Gstar"], default="G")
    _common(sp, N=False, M=True)

    sp = sub.add_parser("eisenstein-p", help="p-adic Eisenstein series G_chi")
    sp.add_argument("--branch", type=int, default=0)
    sp.add_argument("--weight", required=True, help="wild exponent s (int or fraction)")
    _common(sp, M=True)

    sp = sub.add_parser("qexp", help="q-expansion of a named form, optionally acted on")
    sp.add_argument("--form", choices=["delta", "E", "G", "Gstar", "hasse"], default="delta")
    sp.add_argument("--weight", type=int, default=12)
    sp.add_argument("--input", help="read a q-expansion in text format instead")
    sp.add_argument("--op", action="append", default=[],
                    help="T:l (classical Hecke), U, V; applied in order")
    _common(sp, N=False, M=True)

    sp = sub.add_parser("ordinary", help="p-stabilization and ordinary projection")
    sp.add_argument("--weight", type=int, default=12, help="weight of the level one cusp eigenform")
    _common(sp, M=True)

    sp = sub.add_parser("lambda", help="Lambda-adic q-series")
    lsub = sp.add_subparsers(dest="action", parser_class=_Parser)
    lsub.required = True
    for name in ("eisenstein", "specialize", "hecke", "twist"):
        lp = lsub.add_parser(name)
        lp.add_argument("--branch", type=int, default=0)
        lp.add_argument("--input", help="Lambda q-series JSON (default: the Eisenstein family)")
        if name == "specialize":
            lp.add_argument("--weight", type=int, required=True)
        if name == "hecke":
            lp.add_argument("--n", type=int, required=True)
        if name == "twist":
            lp.add_argument("--m", type=int, default=1)
            lp.add_argument("--form", choices=["delta"], default="delta")
        _common(lp, M=True, MT=True)

    sp = sub.add_parser("pseudorep", help="pseudo-representations of synthetic matrix groups")
    psub = sp.add_subparsers(dest="action", parser_class=_Parser)
    psub.required = True
    for name in ("extract", "check", "glue", "reconstruct"):
        pp = psub.add_parser(name)
        pp.add_argument("--gens", type=int, default=3)
        pp.add_argument("--samples", type=int, default=40)
        pp.add_argument("--tuples", type=int, default=200)
        if name == "glue":
            pp.add_argument("--at", default="2,3", help="weights k1,k2: glue at T = u^k - 1")
        _common(pp)

    sp = sub.add_parser("slopes", help="certified U-slopes on overconvergent forms")
    sp.add_argument("--weight", type=int, default=12)
    sp.add_argument("--A", type=int, default=8)
    _common(sp, M=True)

    sp = sub.add_parser("gm-check", help="compare slope multiplicities at two weights")
    sp.add_argument("--weight", type=int, default=12)
    sp.add_argument("--weight2", type=int, default=112)
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--A", type=int, default=8)
    _common(sp, M=True)

    sp = sub.add_parser("selftest", help="run the invariant suites")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--unsafe-limits", action="store_true")
    return ap


def _check_caps(args):
    if getattr(args, "unsafe_limits", False):
        return
    N = getattr(args, "N", None)
    M = getattr(args, "M", None)
    if N is not None and not 1 <= N <= CAP_N:
        raise UsageError(f"--prec-p must be in 1..{CAP_N} (use --unsafe-limits to override)")
    if M is not None and not 1 <= M <= CAP_M:
        raise UsageError(f"--prec-q must be in 1..{CAP_M} (use --unsafe-limits to override)")
    MT = getattr(args, "MT", None)
    if MT is not None and not 1 <= MT <= 64:
        raise UsageError("--prec-t must be in 1..64 (use --unsafe-limits to override)")
    p = getattr(args, "p", None)
    if p is not None:
        if p < 5 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise UsageError("--p must be a prime >= 5")


# ---------------------------------------------------------------------------
# commands


def cmd_bernoulli(a):
    from .zeta import bernoulli

    return {"B_n": bernoulli(a.n)}


def cmd_zeta_neg(a):
    from .zeta import zeta_neg

    if a.n < 1:
        raise DomainError("n must be >= 1")
    return {"zeta(1-n)": zeta_neg(a.n)}


def cmd_zeta_p(a):
    from .zeta import kl_zeta

    v = kl_zeta(a.p, a.branch, a.at, a.N, aux_shift=a.aux_shift)
    return {"value": padic_record(v)}


def cmd_eisenstein(a):
    from .classical import eisenstein_E, eisenstein_G, eisenstein_G_star

    if a.normalization == "G":
        f = eisenstein_G(a.weight, a.M)
    elif a.normalization == "E":
        f = eisenstein_E(a.weight, a.M)
    else:
        f = eisenstein_G_star(a.weight, a.M, a.p)
    return {"qexp": qexp_record(f)["text"]}


def cmd_eisenstein_p(a):
    from .padic import WeightCharacter
    from .zeta import padic_eisenstein

    chi = WeightCharacter(a.p, a.branch % (a.p - 1), Fraction(a.weight))
    f = padic_eisenstein(chi, a.M, a.N)
    return {"qexp": qexp_record(f)["text"], "constant": padic_record(f.coeffs[0])}


def _named_form(a):
    from .classical import delta, eisenstein_E, eisenstein_G, eisenstein_G_star
    if a.form == "delta":
        return delta(a.M)
    if a.form == "E":
        return eisenstein_E(a.weight, a.M)
    if a.form == "G":
        return eisenstein_G(a.weight, a.M)
    if a.form == "Gstar":
        return eisenstein_G_star(a.weight, a.M, a.p)
    return eisenstein_E(a.p - 1, a.M)


def cmd_qexp(a):
    from .qseries import from_text, hecke_T_classical, op_U, op_V

    if a.input:
        with open(a.input) as fh:
            f = from_text(fh.read())
    else:
        f = _named_form(a)
    for op in a.op:
        if op.startswith("T:"):
            f = hecke_T_classical(f, int(op[2:]), f.weight if isinstance(f.weight, int) else None)
        elif op == "U":
            f = op_U(f, a.p)
        elif op == "V":
            f = op_V(f, a.p)
        else:
            raise UsageError(f"unknown operator {op!r}")
    return {"qexp": qexp_record(f)["text"]}


def cmd_ordinary(a):
    from .classical import delta, dim_Mk, eisenstein_E
    from .ordinary import Eigenform, ordinary_project, p_stabilize
    from .qseries import to_text

    k = a.weight
    if k % 2 or dim_Mk(k) - 1 != 1:
        raise DomainError(f"weight {k} does not carry a unique normalized level one cusp form")
    M = max(a.M, a.p)
    f = delta(M)
    if k > 12:
        f = (f * eisenstein_E(k - 12, M)).with_weight(k)
    form = Eigenform(k, f.coeffs[a.p], 1, f)
    pair = p_stabilize(form, a.p, a.N, M)
    fe = ordinary_project(form, a.p, a.N, M)
    sa, sb = pair.slopes
    return {"alpha": padic_record(pair.alpha), "beta": padic_record(pair.beta),
            "slope_alpha": sa, "slope_beta": sb, "a_p": f.coeffs[a.p],
            "f|e": to_text(fe.truncate(a.M))}


def _lambda_input(a):
    from .lambda_adic import lambda_eisenstein

    if a.input:
        with open(a.input) as fh:
            return lambda_qexp_from_record(json.load(fh))
    return lambda_eisenstein(a.branch, a.p, a.N, a.MT, a.M)


def cmd_lambda(a):
    from .lambda_adic import lambda_hecke_T, specialize, twist_product
    from .qseries import to_text

    if a.action == "eisenstein":
        return {"family": lambda_qexp_record(_lambda_input(a))}
    if a.action == "specialize":
        return {"qexp": to_text(specialize(_lambda_input(a), a.weight))}
    if a.action == "hecke":
        return {"family": lambda_qexp_record(lambda_hecke_T(_lambda_input(a), a.n))}
    from .classical import delta

    F = twist_product(delta(a.M), a.m, a.branch, a.p, a.N, a.MT, a.M)
    return {"family": lambda_qexp_record(F)}


def _word(w):
    return ".".join(str(g) for g in w) or "1"


def cmd_pseudorep(a):
    from . import pseudorep as ps

    if a.action == "glue":
        k1, k2 = (int(x) for x in a.at.split(","))
        c1, c2 = (1 + a.p) ** k1 - 1, (1 + a.p) ** k2 - 1
        gens = ps.polynomial_family(a.p, a.N, a.gens, seed=a.seed)
        words = ps.sample_words(a.gens, a.samples, seed=a.seed + 1)
        pr1 = ps.from_representation(ps.specialize_family(gens, c1, a.p, a.N))
        pr2 = ps.from_representation(ps.specialize_family(gens, c2, a.p, a.N))
        g = ps.glue(pr1, pr2, c1, c2, words)
        rep = ps.check_axioms(g.pseudorep, words, a.tuples, seed=a.seed)
        return {"loss": g.loss, "precision": g.pseudorep.precision, "c1": c1, "c2": c2,
                "axioms_ok": rep.ok,
                "traces": {_word(w): list(g.pseudorep.trace(w)) for w in words[:10]}}
    rho = ps.random_generators(a.p, a.N, a.gens, seed=a.seed)
    words = rho.sample_words(a.samples, seed=a.seed + 1)
    pr = ps.from_representation(rho)
    if a.action == "extract":
        return {"a": {_word(w): pr.a(w) for w in words}, "d": {_word(w): pr.d(w) for w in words},
                "x": {f"{_word(g)},{_word(h)}": pr.x(g, h) for g in words[:6] for h in words[:6]}}
    if a.action == "check":
        rep = ps.check_axioms(pr, words, a.tuples, seed=a.seed)
        return {"ok": rep.ok, "checked": rep.checked, "failure": rep.failure,
                "witness": None if rep.witness is None else [_word(w) for w in rep.witness]}
    rec = ps.reconstruct(pr, words, ngens=a.gens)
    R2 = rec.rep.ring
    same = all(R2.eq(ps.mat_trace(R2, rec.matrix(w)), rho.trace(w) % R2.mod) for w in words)
    return {"loss": rec.loss, "diagonal": rec.diagonal, "traces_match": same,
            "witness": None if rec.witness is None else [_word(w) for w in rec.witness],
            "generators": [[list(r) for r in rec.matrix((i,))] for i in range(a.gens)]}


def _dim_guard(a, k, A):
    from .classical import dim_Mk

    D = dim_Mk(k + A * (a.p - 1))
    if D > CAP_DIM and not a.unsafe_limits:
        raise UsageError(f"matrix dimension {D} exceeds {CAP_DIM} (use --unsafe-limits)")
    return a.M if a.M and a.M >= a.p * (D + 4) else a.p * (D + 4)


def cmd_slopes(a):
    from .overconvergent import slopes

    M = _dim_guard(a, a.weight, a.A + 4)
    return slopes(a.weight, a.p, a.A, M, a.N).as_record()


def cmd_gm_check(a):
    from .overconvergent import gouvea_mazur_report

    _dim_guard(a, max(a.weight, a.weight2), a.A)
    rep = gouvea_mazur_report(a.weight, a.weight2, Fraction(a.alpha), a.p, a.A, a.N)
    return rep


def cmd_selftest(a):
    from .selftest import run

    results = run(seed=a.seed)
    return {"checks": results, "ok": all(r["ok"] for r in results)}


COMMANDS = {
    "bernoulli": cmd_bernoulli,
    "zeta-neg": cmd_zeta_neg,
    "zeta-p": cmd_zeta_p,
    "eisenstein": cmd_eisenstein,
    "eisenstein-p": cmd_eisenstein_p,
    "qexp": cmd_qexp,
    "ordinary": cmd_ordinary,
    "lambda": cmd_lambda,
    "pseudorep": cmd_pseudorep,
    "slopes": cmd_slopes,
    "gm-check": cmd_gm_check,
    "selftest": cmd_selftest,
}


def _config(a) -> RunConfig:
    skip = {"command", "p", "N", "M", "MT", "seed", "format", "unsafe_limits"}
    params = {k: v for k, v in sorted(vars(a).items()) if k not in skip}
    return RunConfig(a.command, getattr(a, "p", None), getattr(a, "N", None), getattr(a, "M", None),
                     getattr(a, "MT", None), a.seed, a.format, a.unsafe_limits, params)


def _error(kind: str, msg: str, code: int, fmt: str, out) -> int:
    rec = {"error": {"kind": kind, "message": msg, "exit_code": code}}
    if fmt == "json":
        print(json.dumps(rec, sort_keys=True), file=out)
    print(f"error ({kind}): {msg}", file=sys.stderr)
    return code


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "json" in argv and "--format" in argv else "text"
    try:
        a = build_parser().parse_args(argv)
        _check_caps(a)
    except UsageError as e:
        return _error("usage", str(e), 2, fmt, out)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        result = COMMANDS[a.command](a)
    except UsageError as e:
        return _error("usage", str(e), 2, fmt, out)
    except PrecisionExhausted as e:
        return _error("precision", str(e), 4, fmt, out)
    except (DomainError, ValueError, ZeroDivisionError) as e:
        return _error("domain", str(e), 3, fmt, out)
    record = {"config": asdict(_config(a)), "result": result}
    if a.command == "bernoulli" and a.format == "text":
        print(str(result["B_n"]), file=out)
    elif a.command == "selftest" and a.format == "text":
        for r in result["checks"]:
            print(f"{'PASS' if r['ok'] else 'FAIL'} {r['name']}: {r['detail']}", file=out)
    else:
        print(render(record, a.format), file=out)
    if a.command == "selftest" and not result["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
