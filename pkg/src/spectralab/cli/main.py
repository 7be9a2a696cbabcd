"""spectralab command line.

Exit codes: 0 success, 1 check failed, 2 bad input, 3 numeric failure.
Every run writes a reproducibility stanza (version, seed, precision) to
stderr; results go to stdout or to --out.
"""

import argparse
import json
import os
import sys

from gmpy2 import mpq

from .. import __version__
from ..numeric import PrecisionError, context, fmt_rational, parse_rational

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
DEFAULT_PREC = 128


class CheckFailed(Exception):
    """Raised with the output already produced; maps to exit 1."""


class BadInput(ValueError):
    pass


def default_precision():
    env = os.environ.get("SPECTRALAB_PREC_BITS")
    if env is None:
        return DEFAULT_PREC, "default"
    try:
        p = int(env)
    except ValueError:
        raise BadInput("SPECTRALAB_PREC_BITS must be an integer, got %r" % env)
    if p < 32:
        raise BadInput("SPECTRALAB_PREC_BITS must be >= 32")
    return p, "SPECTRALAB_PREC_BITS"


# -- parsing helpers ---------------------------------------------------------

def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError("not a rational: %r" % text) from exc


def _params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise BadInput("--param expects name=value, got %r" % item)
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = parse_rational(v.strip())
        except (ValueError, ZeroDivisionError):
            raise BadInput("parameter %s: not a rational: %r" % (k, v))
    return out


def _rational_list(text):
    try:
        return [parse_rational(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError("not a list of rationals: %r" % text) from exc


def _symbol(args):
    from ..toeplitz import SymbolSpec
    given = [x for x in (args.gamma, args.gamma_pi, args.a) if x is not None]
    if len(given) != 1:
        raise BadInput("give exactly one of --gamma, --gamma-pi, --a")
    if args.a is not None:
        a = _rational(args.a)
        if a <= 0:
            raise BadInput("--a must be positive")
        return SymbolSpec(a=a)
    if args.gamma_pi is not None:
        r = _rational(args.gamma_pi)
        return SymbolSpec(text="pi*%s/%s" % (r.numerator, r.denominator))
    return SymbolSpec(text=args.gamma)


def _num_text(v, digits):
    if isinstance(v, type(mpq(0))):
        return fmt_rational(v)
    if v == 0:
        return "0"
    return context(max(64, int(digits * 3.33) + 8)).nstr(v, digits)


# -- output --------------------------------------------------------------------

class Output:
    def __init__(self, path):
        self.path = path
        self.chunks = []

    def write(self, text):
        if not text.endswith("\n"):
            text += "\n"
        self.chunks.append(text)

    def json(self, doc):
        self.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))

    def flush(self):
        text = "".join(self.chunks)
        if self.path:
            with open(self.path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()


def _stanza(args, prec, source):
    seed = getattr(args, "seed", None)
    lines = ["# spectralab %s" % __version__,
             "# command: %s" % " ".join(filter(None, [args.group, getattr(args, "action", None)])),
             "# precision: %d bits (%s)" % (prec, source),
             "# SPECTRALAB_PREC_BITS: %s" % os.environ.get("SPECTRALAB_PREC_BITS", "unset"),
             "# seed: %s" % ("none" if seed is None else seed)]
    return "\n".join(lines) + "\n"


# -- curve ---------------------------------------------------------------------

def cmd_curve(args, out, p):
    from ..curves import CATALOG, catalog, dumps, loads, validate
    if args.action == "list":
        for name in CATALOG:
            out.write(name)
        return
    if args.action == "show":
        out.write(dumps(catalog(args.curve, _params(args.param))).rstrip("\n"))
        return
    # validate: a file, or a catalog curve
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            curve = loads(fh.read(), check=False)
    elif args.curve:
        curve = catalog(args.curve, _params(args.param))
    else:
        raise BadInput("curve validate needs FILE or --curve")
    rep = validate(curve)
    doc = rep.as_dict()
    doc["curve"] = curve.label()
    out.json(doc)
    if not rep.ok:
        raise CheckFailed("curve failed validation: %s" % rep.failures[0][0])


# -- tr ------------------------------------------------------------------------

def _correlator_doc(w):
    doc = {"n": w.n, "g": w.g, "kind": w.kind}
    if w.kind == "tensor":
        doc["ram"] = [fmt_rational(a) for a in w.curve.ram]
        doc["coeffs"] = [{"poles": [[i, k] for i, k in key], "value": fmt_rational(c)}
                         for key, c in sorted(w.coeffs.items())]
    return doc


def cmd_tr(args, out, p):
    from ..curves import catalog
    from ..tr import check_properties, engine_for
    curve = catalog(args.curve, _params(args.param))
    eng = engine_for(curve)
    if args.action == "fg":
        if args.g < 2:
            raise BadInput("tr fg computes g >= 2 (use oracle fg for g = 0, 1)")
        out.write(fmt_rational(eng.free_energy(args.g)))
        return
    if args.action == "omega":
        if 2 * args.g - 2 + args.n <= 0 and (args.n, args.g) != (2, 0):
            raise BadInput("need 2g - 2 + n > 0 or (n, g) = (2, 0)")
        w = eng.omega(args.n, args.g)
        doc = _correlator_doc(w)
        if args.at:
            zs = args.at
            if len(zs) != args.n:
                raise BadInput("--at needs %d points" % args.n)
            doc["at"] = [fmt_rational(z) for z in zs]
            doc["value"] = fmt_rational(w.evaluate(zs))
        out.json(doc)
        return
    rows = check_properties(curve, args.n_max, args.g_max, eng, budget=args.budget)
    out.json({"curve": curve.label(), "rows": rows})
    bad = [r for r in rows if not r["pass"] and r["check"] != "dilaton"]
    if bad:
        raise CheckFailed("%d property rows failed (first: %s n=%s g=%s)" % (
            len(bad), bad[0]["check"], bad[0].get("n"), bad[0].get("g")))


# -- toeplitz ------------------------------------------------------------------

def cmd_toeplitz(args, out, p):
    from ..toeplitz import fourier_coeffs, format_table, lndet, quadrature_oracle, residual_table
    spec = _symbol(args)
    if args.action == "coeffs":
        for k, t in enumerate(fourier_coeffs(spec, args.k_max, p)):
            out.write("%d,%s" % (k, _num_text(t, args.digits)))
        return
    if args.action == "lndet":
        res = lndet(spec, args.n, args.prec if args.prec else "auto")
        out.write(_num_text(res.lndet, args.digits))
        return
    if args.action == "oracle":
        q = quadrature_oracle(spec, args.n, p)
        res = lndet(spec, args.n, max(p, 256))
        ctx = context(p)
        det = ctx.exp(res.lndet)
        diff = abs(det - q)
        ok = diff <= ctx.ldexp(abs(q), -(p // 2) + 8)
        out.json({"N": args.n, "gamma": spec.label(), "det_quadrature": ctx.nstr(q, args.digits),
                  "det_cholesky": ctx.nstr(det, args.digits), "difference": ctx.nstr(diff, 5),
                  "verdict": "pass" if ok else "fail"})
        if not ok:
            raise CheckFailed("quadrature and Cholesky determinants disagree")
        return
    rows = residual_table(spec, args.n_max, args.orders, args.n_min,
                          args.prec if args.prec else "auto")
    out.write(format_table(rows, args.digits).rstrip("\n"))


# -- mc ------------------------------------------------------------------------

def cmd_mc(args, out, p):
    from ..mc import ChainConfig, ModelSpec, compare_density, histogram_csv, positive_fraction
    from ..mc import sample, summary_json
    seed = 0 if args.seed is None else args.seed
    if args.action == "positive":
        cfg = ChainConfig(args.N, args.sweeps, args.burn_in, args.thin, None, seed, args.chains)
        res = positive_fraction(args.N, cfg, float(args.T), args.workers)
        out.json(res)
        return
    model = ModelSpec(args.model, float(args.T), args.gamma)
    cfg = ChainConfig(args.N, args.sweeps, args.burn_in, args.thin, None, seed, args.chains)
    s = sample(model, cfg, args.workers)
    res = compare_density(s, bins=args.bins)
    out.write(summary_json(s, res).rstrip("\n"))
    if args.hist_out:
        with open(args.hist_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(histogram_csv(res))


# -- painleve ------------------------------------------------------------------

def cmd_painleve(args, out, p):
    from .. import integrable as I
    act = args.action
    if act == "lax":
        pair = I.lax_catalog(args.name, _params(args.param))
        ids = {k: repr(v) for k, v in pair.structural_identities().items()}
        out.json({"name": pair.name, "params": {k: fmt_rational(v) for k, v in pair.params.items()},
                  "D": [[repr(e) for e in row] for row in pair.D],
                  "R": [[repr(e) for e in row] for row in pair.R],
                  "H": repr(pair.H), "structural_identities": ids})
        return
    if act == "compat":
        pair = I.lax_catalog(args.name, _params(args.param))
        worst, pts = I.sample_compatibility(pair, args.points, args.seed or 0, args.perturb)
        ham = I.hamilton_painleve_residual(pair, pts)
        ok = worst == 0 and ham == 0
        out.write(I.dumps(I.report("compatibility_check",
                                   {"name": pair.name, "params": pair.params, "points": args.points,
                                    "seed": args.seed or 0, "pdot_shift": args.perturb},
                                   {"zero_curvature_max": worst, "hamilton_painleve_max": ham},
                                   ok)).rstrip("\n"))
        if not ok:
            raise CheckFailed("non-zero compatibility residual %s" % fmt_rational(worst))
        return
    if act == "curve":
        if args.name == "P2":
            if args.theta is None:
                raise BadInput("P2 needs --theta")
            curve, lead = I.lax_spectral_curve("P2", args.q0, args.theta)
            target = I.p2_curve_target(args.q0, args.theta)
        elif args.name == "P1":
            curve, lead = I.lax_spectral_curve("P1", args.q0)
            target = I.p1_curve_target(args.q0, lead["p"], lead["t"])
        else:
            raise BadInput("leading-order curves are wired for P1 and P2")
        ok = curve.minus_det() == target
        out.write(I.dumps(I.report("lax_spectral_curve", {"name": args.name, "lead": lead},
                                   {"minus_det": repr(curve.minus_det()), "target": repr(target)},
                                   ok)).rstrip("\n"))
        if not ok:
            raise CheckFailed("spectral curve differs from the target")
        return
    if act == "wkb":
        if args.theta is None:
            raise BadInput("wkb needs --theta")
        ser = I.p2_wkb(args.theta, args.k_max)
        val = ser.residual_valuation()
        ok = val > ser.k_max
        out.write(I.dumps(I.report("p2_wkb", {"theta": args.theta, "k_max": args.k_max},
                                   {"residual_valuation": val if val != float("inf") else "inf",
                                    "q": [repr(q) for q in ser.q]}, ok)).rstrip("\n"))
        if not ok:
            raise CheckFailed("residual valuation %s <= k_max" % val)
        return
    if act == "w2check":
        if args.theta is None:
            raise BadInput("w2check needs --theta")
        rep = I.p2_w2_check(args.theta, args.q0)
        out.write(I.dumps(I.report("p2_w2_check", {"theta": rep.theta, "q0": rep.q0, "m": rep.m},
                                   {"sqrt_identity": rep.sqrt_identity, "trace_one": rep.trace_one,
                                    "idempotent": rep.idempotent, "bergman": rep.bergman,
                                    "literal_one_term": rep.literal_one_term},
                                   rep.passed)).rstrip("\n"))
        if not rep.passed:
            raise CheckFailed("W2 check failed")
        return
    if act == "p5tau":
        res = I.p5_tau_series(args.g_max)
        F = {g: (repr(f) if g != 1 else "%s*ln(s)" % fmt_rational(f)) for g, f in res.F.items()}
        eng = {"g=%d,s=%s" % (g, fmt_rational(s)): [fmt_rational(a), fmt_rational(b)]
               for (g, s), (a, b) in sorted(res.engine.items())}
        label = None
        if args.g_max >= 5:
            label, _ = I.adjudicate_g5(res)
        ok = res.all_match()
        out.write(I.dumps(I.report("p5_tau_series", {"g_max": args.g_max},
                                   {"F": F, "engine": eng, "g5_at_s1": res.g5,
                                    "g5_source": label}, ok)).rstrip("\n"))
        if not ok:
            raise CheckFailed("sigma-form and engine disagree")
        return
    if act == "calogero":
        from ..integrable.calogero import DEFAULT_P0, DEFAULT_Q0
        q0 = args.q0_list or list(DEFAULT_Q0)
        p0 = args.p0_list or list(DEFAULT_P0)
        q0 = [fmt_rational(v) if not isinstance(v, str) else v for v in q0]
        p0 = [fmt_rational(v) if not isinstance(v, str) else v for v in p0]
        if args.halving:
            ratio, a, _ = I.halving_ratio(q0, p0, args.dt, args.t_max, p)
        else:
            a = I.calogero_run(q0, p0, args.dt, args.t_max, p, sign=args.sign)
            ratio = None
        ok = a.max_drift < context(p).mpf("1e-8") and (ratio is None or 12 <= ratio <= 20)
        res = {"drift": a.drift, "lax_residual": a.lax_residual, "min_gap": a.min_gap}
        if ratio is not None:
            res["halving_ratio"] = ratio
        out.write(I.dumps(I.report("calogero_run", {"q0": q0, "p0": p0, "dt": args.dt,
                                                    "t_max": args.t_max, "sign": args.sign},
                                   res, ok)).rstrip("\n"))
        if not ok:
            raise CheckFailed("conservation check failed")
        return
    raise BadInput("unknown painleve action %r" % act)


# -- universality --------------------------------------------------------------

def cmd_universality(args, out, p):
    from ..integrable.fredholm import fig8_table, fredholm_sine, sigma_ode_gap
    if args.action == "fig8":
        out.write(fig8_table(args.r_max, args.step, min(p, 64)).rstrip("\n"))
        return
    ctx = context(p)
    lines = ["s,E_nystrom,E_ode"]
    worst = ctx.zero
    for s in args.s:
        st = fmt_rational(s)
        a = fredholm_sine(st, args.lam, args.m, p)
        b = sigma_ode_gap(st, args.lam, p)
        worst = max(worst, abs(a - b))
        lines.append("%s,%s,%s" % (st, ctx.nstr(a, args.digits), ctx.nstr(b, args.digits)))
    out.write("\n".join(lines))
    if worst >= ctx.mpf(args.tol):
        raise CheckFailed("routes disagree by %s" % ctx.nstr(worst, 5))


# -- oracle --------------------------------------------------------------------

def cmd_oracle(args, out, p):
    from ..closed_forms import (Disputed, barnes_series, fg_oracle, gaussian_lnz_series,
                                partition_oracle, positive_prob_series, stirling_series,
                                toeplitz_expansion)
    if args.action == "fg":
        params = _params(args.param)
        if args.s is not None:
            params["s"] = args.s
        if args.T is not None:
            params["T"] = args.T
        v = fg_oracle(args.family, args.g, params)
        if isinstance(v, Disputed):
            for k in sorted(v.values):
                out.write("%s\t%s" % (k, fmt_rational(v.values[k])))
        elif isinstance(v, type(mpq(0))):
            out.write(fmt_rational(v))
        else:
            out.write(str(v))
        return
    if args.action == "partition":
        v = partition_oracle(args.model, args.N, args.T if args.T is not None else 1, p)
        out.write(_num_text(v.value, args.digits))
        return
    kind = args.kind
    if kind == "gaussian_lnz":
        ser = gaussian_lnz_series(args.order, args.T if args.T is not None else 1)
    elif kind == "barnes":
        ser = barnes_series(args.order)
    elif kind == "stirling":
        ser = stirling_series(args.order)
    elif kind == "positive":
        ser = positive_prob_series(min(args.order, 3))
    elif kind == "toeplitz":
        if args.a is None:
            raise BadInput("toeplitz series needs --a (Pythagorean tan(gamma/2))")
        ser = toeplitz_expansion(a=_rational(args.a), max_g=min(args.order, 2))
    else:
        raise BadInput("unknown series %r" % kind)
    out.write(ser.serialize().rstrip("\n"))


# -- parser ----------------------------------------------------------------------

def _common(p):
    p.add_argument("--prec", type=int, default=None, help="working precision in bits")
    p.add_argument("--out", default=None, help="write the result to this file")
    p.add_argument("--digits", type=int, default=30)


def _curve_args(p, required=True):
    p.add_argument("--curve", required=required)
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")


def _angle_args(p):
    p.add_argument("--gamma", help="angle expression, e.g. pi or 2*atan(3/4)")
    p.add_argument("--gamma-pi", help="angle as a rational multiple of pi")
    p.add_argument("--a", help="tan(gamma/2) as a rational")


def build_parser():
    top = argparse.ArgumentParser(prog="spectralab", allow_abbrev=False)
    top.add_argument("--version", action="version", version="spectralab %s" % __version__)
    groups = top.add_subparsers(dest="group", required=True)

    def sub(group, name):
        sp = group.add_parser(name, allow_abbrev=False)
        _common(sp)
        return sp

    g = groups.add_parser("curve").add_subparsers(dest="action", required=True)
    sub(g, "list")
    _curve_args(sub(g, "show"))
    sp = sub(g, "validate")
    sp.add_argument("file", nargs="?")
    _curve_args(sp, required=False)

    g = groups.add_parser("tr").add_subparsers(dest="action", required=True)
    sp = sub(g, "omega")
    _curve_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--at", type=_rational_list)
    sp = sub(g, "fg")
    _curve_args(sp)
    sp.add_argument("--g", type=int, required=True)
    sp = sub(g, "check")
    _curve_args(sp)
    sp.add_argument("--n-max", type=int, default=3)
    sp.add_argument("--g-max", type=int, default=1)
    sp.add_argument("--budget", type=int, default=4)

    g = groups.add_parser("toeplitz").add_subparsers(dest="action", required=True)
    for name in ("coeffs", "lndet", "oracle", "table"):
        sp = sub(g, name)
        _angle_args(sp)
        if name == "coeffs":
            sp.add_argument("--k-max", type=int, default=10)
        elif name in ("lndet", "oracle"):
            sp.add_argument("--n", type=int, required=True)
        else:
            sp.add_argument("--n-max", type=int, required=True)
            sp.add_argument("--n-min", type=int, default=1)
            sp.add_argument("--orders", type=int, default=3)

    g = groups.add_parser("mc").add_subparsers(dest="action", required=True)
    for name in ("run", "positive"):
        sp = sub(g, name)
        sp.add_argument("--N", type=int, required=True)
        sp.add_argument("--sweeps", type=int, required=True)
        sp.add_argument("--burn-in", type=int, default=1000)
        sp.add_argument("--thin", type=int, default=1)
        sp.add_argument("--chains", type=int, default=1)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--T", type=_rational, default=mpq(1))
        if name == "run":
            sp.add_argument("--model", default="gaussian")
            sp.add_argument("--gamma", default=None)
            sp.add_argument("--bins", type=int, default=60)
            sp.add_argument("--hist-out", default=None)

    g = groups.add_parser("painleve").add_subparsers(dest="action", required=True)
    for name in ("lax", "compat", "curve", "wkb", "w2check", "p5tau", "calogero"):
        sp = sub(g, name)
        if name in ("lax", "compat", "curve"):
            sp.add_argument("--name", required=True, choices=("P1", "P2", "P3", "P4", "P5", "P6"))
            sp.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
        if name == "compat":
            sp.add_argument("--points", type=int, default=20)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--perturb", type=_rational, default=mpq(0),
                            help="shift added to p' (a deliberately broken flow)")
        if name in ("curve", "wkb", "w2check"):
            sp.add_argument("--q0", type=_rational, default=mpq(1))
            sp.add_argument("--theta", type=_rational, default=None)
        if name == "wkb":
            sp.add_argument("--k-max", type=int, default=4)
        if name == "p5tau":
            sp.add_argument("--g-max", type=int, default=5)
        if name == "calogero":
            sp.add_argument("--q0", dest="q0_list", type=lambda s: s.split(","), default=None)
            sp.add_argument("--p0", dest="p0_list", type=lambda s: s.split(","), default=None)
            sp.add_argument("--dt", default="1e-3")
            sp.add_argument("--t-max", default="1")
            sp.add_argument("--sign", type=int, choices=(-1, 1), default=-1)
            sp.add_argument("--halving", action="store_true")

    g = groups.add_parser("universality").add_subparsers(dest="action", required=True)
    sp = sub(g, "fredholm")
    sp.add_argument("--s", type=_rational_list, default=[mpq(1, 2), mpq(1), mpq(2)])
    sp.add_argument("--lambda", dest="lam", default="1")
    sp.add_argument("--m", type=int, default=40)
    sp.add_argument("--tol", default="1e-8")
    sp.set_defaults(digits=20)
    sp = sub(g, "fig8")
    sp.add_argument("--r-max", default="3")
    sp.add_argument("--step", default="1/20")

    g = groups.add_parser("oracle").add_subparsers(dest="action", required=True)
    sp = sub(g, "fg")
    sp.add_argument("--family", required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--s", type=_rational)
    sp.add_argument("--T", type=_rational)
    sp.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    sp = sub(g, "partition")
    sp.add_argument("--model", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--T", type=_rational)
    sp = sub(g, "series")
    sp.add_argument("--kind", required=True,
                    choices=("gaussian_lnz", "barnes", "stirling", "positive", "toeplitz"))
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--T", type=_rational)
    sp.add_argument("--a", default=None)
    return top


HANDLERS = {"curve": cmd_curve, "tr": cmd_tr, "toeplitz": cmd_toeplitz, "mc": cmd_mc,
            "painleve": cmd_painleve, "universality": cmd_universality, "oracle": cmd_oracle}


def dispatch(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    out = Output(args.out)
    try:
        if args.prec:
            if args.prec < 32:
                raise BadInput("--prec must be >= 32")
            prec, source = args.prec, "--prec"
        else:
            prec, source = default_precision()
        sys.stderr.write(_stanza(args, prec, source))
        HANDLERS[args.group](args, out, prec)
    except CheckFailed as exc:
        out.flush()
        sys.stderr.write("check failed: %s\n" % exc)
        return EXIT_CHECK
    except (PrecisionError, ArithmeticError) as exc:
        # ZeroDivisionError, collisions, non-convergence
        sys.stderr.write("numeric failure: %s\n" % exc)
        return EXIT_NUMERIC
    except (BadInput, ValueError, KeyError, TypeError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write("bad input: %s\n" % msg)
        return EXIT_INPUT
    out.flush()
    return EXIT_OK


def main(argv=None):
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
