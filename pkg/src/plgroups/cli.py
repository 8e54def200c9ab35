"""Command-line front end.

Subcommands compute Iwasawa factors, ``E_s``, Poisson bivectors and the
delinearized form on T*SU(2), run residual suites and export s -> 0 sweeps.
Results are JSON (``schema`` key at the top) or CSV for sweeps. Complex
matrices are row-major arrays of ``[re, im]`` pairs.

Exit codes: 0 success, 1 invalid input, 2 a residual suite failed.
"""
import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__, cotangent, delin, grp, poisson, verify
from .liealg import basis_su_n

SCHEMA = "plgroups/1"
EXIT_OK, EXIT_INVALID, EXIT_RESIDUAL = 0, 1, 2


class ValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2, which is reserved for residual failures
    def error(self, message):
        raise ValidationError(message)


# ------------------------------------------------------------ encoding ---

def encode_matrix(M):
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_matrix(obj):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError("matrix must be a nested list of numbers or [re, im] pairs")
    if arr.ndim == 3 and arr.shape[-1] == 2:
        arr = arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError("expected a square matrix, got shape %s" % (arr.shape,))
    return arr.astype(complex)


def _framed(F):
    return {"frame": list(F.frame), "entries": np.asarray(F.entries).tolist()}


def parse_floats(text, name):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValidationError("--%s expects comma-separated numbers, got %r" % (name, text))
    if not vals or not np.all(np.isfinite(vals)):
        raise ValidationError("--%s must contain finite numbers" % name)
    return np.array(vals)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError("cannot read %s: %s" % (path, exc))


def _need(args, *names):
    missing = [nm for nm in names if getattr(args, nm.replace("-", "_")) is None]
    if missing:
        raise ValidationError("%s requires %s" % (args.command, ", ".join("--" + m for m in missing)))


def _lambda(args, n):
    lam = parse_floats(args.lam, "lambda")
    if lam.size != n * n - 1:
        raise ValidationError("--lambda needs %d coordinates for n=%d" % (n * n - 1, n))
    return lam


def _point(args):
    obj = _load_json(args.point)
    if not isinstance(obj, dict) or "k" not in obj or "xi" not in obj:
        raise ValidationError("--point file must hold an object with keys 'k' and 'xi'")
    k = decode_matrix(obj["k"])
    if np.abs(k @ k.conj().T - np.eye(k.shape[0])).max() > 1e-9:
        raise ValidationError("point.k is not unitary")
    return cotangent.CotangentPoint(k, np.asarray(obj["xi"], dtype=float))


# ------------------------------------------------------------ commands ---

def cmd_decompose(args):
    _need(args, "matrix")
    obj = _load_json(args.matrix)
    g = decode_matrix(obj["matrix"] if isinstance(obj, dict) else obj)
    k, b = grp.iwasawa_KAN(g)
    b2, k2 = grp.iwasawa_ANK(g)
    return {"KAN": {"k": encode_matrix(k), "b": encode_matrix(b)},
            "ANK": {"b": encode_matrix(b2), "k": encode_matrix(k2)}}


def cmd_es(args):
    _need(args, "s", "lam")
    lam = _lambda(args, args.n)
    b = grp.e_s(lam, args.s, n=args.n)
    out = {"n": args.n, "s": args.s, "lambda": lam.tolist(), "b": encode_matrix(b)}
    if args.n == 2:
        out["closed"] = grp.es_su2_closed(*lam, args.s)._asdict()
    return out


def cmd_bivector(args):
    _need(args, "s")
    if args.point is not None:
        pt = _point(args)
        F = poisson.pi_k(pt.k, args.s)
        return {"group": "K", "s": args.s, "pi": _framed(F)}
    _need(args, "lam")
    lam = _lambda(args, args.n)
    p = grp.e_s(lam, args.s, n=args.n)
    return {"group": "AN", "s": args.s, "p": encode_matrix(p),
            "pi": _framed(poisson.pi_an(p, args.s))}


def cmd_delin(args):
    _need(args, "s")
    if args.n != 2:
        raise ValidationError("delin is only defined for n=2")
    if args.point is not None:
        pt = _point(args)
    else:
        _need(args, "lam")
        pt = cotangent.CotangentPoint(np.eye(2, dtype=complex), _lambda(args, 2))
    W = delin.delin_at(pt, args.s)
    P = delin.pi_delin_at(pt, args.s)
    return {"s": args.s, "k": encode_matrix(pt.k), "xi": np.asarray(pt.xi).tolist(),
            "convention": dict(delin.CONVENTION),
            "omega": _framed(W), "pi": _framed(P)}


def cmd_verify(args):
    name = args.suite or "all"
    if name != "all" and name not in verify.SUITES:
        raise ValidationError("unknown suite %r (choose from all, %s)"
                              % (name, ", ".join(verify.SUITES)))
    reports = verify.run_suite(name, seed=args.seed, h=args.fd_step, tol=args.tol)
    for r in reports:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in reports)
    return {"suite": name, "seed": args.seed, "pass": ok,
            "reports": [_report_dict(r) for r in reports]}, (EXIT_OK if ok else EXIT_RESIDUAL)


def _report_dict(r):
    d = r.to_dict()
    d["samples"] = [[float(x) if np.isscalar(x) and not isinstance(x, str) else x for x in smp]
                    if isinstance(smp, (tuple, list)) else smp for smp in d["samples"]]
    return d


SELECTORS = ("pi_xy", "b_tt", "delin_vs_can")


def cmd_sweep(args):
    grid = parse_floats(args.grid, "grid") if args.grid else np.array(verify.SWEEP_GRID)
    q = args.quantity
    if q == "pi_xy":
        xi = _lambda(args, 2)[0] if args.lam else 1.0
        sel = verify.selector_pi_xy(xi)
    elif q == "b_tt":
        sel = verify.selector_b_tt(_lambda(args, 2)) if args.lam else verify.selector_b_tt()
    else:
        pt = _point(args) if args.point else cotangent.CotangentPoint(
            np.eye(2, dtype=complex), _lambda(args, 2) if args.lam else np.array([1.0, 0.6, -0.8]))
        sel = verify.selector_delin_vs_can(pt)
    try:
        table = verify.limit_sweep(sel, grid)
    except ValueError as exc:
        raise ValidationError(str(exc))
    return {"quantity": q, "table": table.to_dict()}


COMMANDS = {
    "decompose": cmd_decompose,
    "es": cmd_es,
    "bivector": cmd_bivector,
    "delin": cmd_delin,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def build_parser():
    p = _Parser(prog="plgroups", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("command", choices=list(COMMANDS))
    p.add_argument("--n", type=int, default=2, help="rank parameter of SU(n)")
    p.add_argument("--s", type=float, help="deformation parameter, s > 0")
    p.add_argument("--lambda", dest="lam", help="coadjoint coordinates, e.g. 1,0,0")
    p.add_argument("--point", help="JSON file with keys k (matrix) and xi (vector)")
    p.add_argument("--matrix", help="JSON file with a det-1 complex matrix")
    p.add_argument("--suite", help="residual suite name or 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fd-step", type=float, default=verify.FD_STEP)
    p.add_argument("--tol", type=float, help="override the suite tolerance")
    p.add_argument("--grid", help="decreasing s values for sweep, comma-separated")
    p.add_argument("--quantity", choices=SELECTORS, default="pi_xy", help="sweep selector")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output path (default stdout)")
    return p


def _to_csv(result):
    t = result["table"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "value", "fitted_slope"])
    for s, v in zip(t["s_values"], t["values"]):
        w.writerow([repr(float(s)), repr(float(v)), repr(float(t["slope"]))])
    return buf.getvalue()


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.n < 2:
            raise ValidationError("--n must be at least 2")
        if args.s is not None and not args.s > 0:
            raise ValidationError("--s must be positive")
        if args.format == "csv" and args.command != "sweep":
            raise ValidationError("csv output is only available for sweep")
        result = COMMANDS[args.command](args)
        code = EXIT_OK
        if isinstance(result, tuple):
            result, code = result
        if args.format == "csv":
            text = _to_csv(result)
        else:
            result = dict(result, schema=SCHEMA, command=args.command, version=__version__)
            text = json.dumps(result, sort_keys=True, indent=2) + "\n"
        _emit(text, args.out)
        return code
    except (ValidationError, ValueError, KeyError, NotImplementedError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        rec = {"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(msg)}}
        sys.stdout.write(json.dumps(rec, sort_keys=True) + "\n")
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
