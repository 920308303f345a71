"""Command-line interface.

Subcommands: ``sweep`` (tension samples over a frequency window, CSV),
``solve`` (localize one eigenvalue in a bracket with certified bounds, JSON),
``mode`` (rasterize the located eigenfunction, CSV), ``disc-check`` (run the
exact unit-disc identity suite, CSV report).

Exit codes: 0 success, 1 validation failure (disc-check), 2 usage error,
3 numerical failure.  All numeric output carries 17 significant digits so a
reparse reproduces the binary values exactly.

Heavy imports are deferred until after ``--threads`` has been applied to the
BLAS environment variables, so thread pinning works when the CLI owns the
process.
"""

import argparse
import os
import sys
import time

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _fmt(x):
    """17-significant-digit decimal, round-trip safe for binary64."""
    return format(float(x), ".17g")


class UsageError(Exception):
    pass


def parse_curve(spec):
    """Parse a curve specification string.

    ``radial:a0=<f>,eps=<f>,k=<int>,b=<f>`` or ``trig:<path>`` where the file
    holds whitespace-separated lines ``j c_j d_j``.
    """
    from .errors import InvalidCurveError
    from .geometry import RadialCurve

    if spec.startswith("radial:"):
        fields = {}
        for item in spec[len("radial:"):].split(","):
            if "=" not in item:
                raise UsageError(f"malformed curve field {item!r}")
            key, _, val = item.partition("=")
            fields[key.strip()] = val.strip()
        try:
            a0 = float(fields.pop("a0"))
            eps = float(fields.pop("eps"))
            k = int(fields.pop("k"))
            b = float(fields.pop("b"))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad radial curve spec: {exc}") from exc
        if fields:
            raise UsageError(f"unknown curve fields {sorted(fields)}")
        try:
            return RadialCurve.radial(a0, eps, k, b)
        except InvalidCurveError as exc:
            raise UsageError(str(exc)) from exc
    if spec.startswith("trig:"):
        path = spec[len("trig:"):]
        cos, sin = {}, {}
        try:
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    parts = line.split()
                    if len(parts) != 3:
                        raise UsageError(f"trig file line needs 'j c_j d_j': {line!r}")
                    try:
                        j = int(parts[0])
                        cj, dj = float(parts[1]), float(parts[2])
                    except ValueError as exc:
                        raise UsageError(f"bad trig coefficient line {line!r}: {exc}")
                    if j < 0:
                        raise UsageError(f"negative harmonic index in {line!r}")
                    cos[j] = cj
                    sin[j] = dj
        except OSError as exc:
            raise UsageError(f"cannot read trig file: {exc}") from exc
        if not cos:
            raise UsageError("trig file holds no coefficients")
        jmax = max(cos)
        c = [cos.get(j, 0.0) for j in range(jmax + 1)]
        d = [sin.get(j, 0.0) for j in range(1, jmax + 1)]
        try:
            return RadialCurve.trig(c, d)
        except InvalidCurveError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(f"curve spec must start with 'radial:' or 'trig:', got {spec!r}")


def _load_config(path):
    cfg = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"config line needs key=value: {line!r}")
                key, _, val = line.partition("=")
                cfg[key.strip()] = val.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    return cfg


def _resolve(args, schema):
    """Merge CLI values (always win), then config file, then defaults."""
    cfg = _load_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for name, (typ, default) in schema.items():
        val = getattr(args, name, None)
        if val is None and name in cfg:
            try:
                val = typ(cfg[name])
            except ValueError as exc:
                raise UsageError(f"config value for {name!r}: {exc}") from exc
        if val is None:
            val = default
        if val is None:
            raise UsageError(f"missing required option --{name}")
        out[name] = val
    return out


def _add_common(p, with_out=True):
    p.add_argument("--config", help="key=value file pre-populating flags (flags win)")
    p.add_argument("--threads", type=int, help="pin BLAS thread count")
    if with_out:
        p.add_argument("--out", help="output path")


def build_parser():
    ap = argparse.ArgumentParser(prog="neuspec",
                                 description="Neumann eigenvalues of smooth "
                                             "star-shaped planar domains with "
                                             "certified inclusion bounds")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="tension samples over a frequency window")
    p.add_argument("--curve")
    p.add_argument("--fmin", type=float)
    p.add_argument("--fmax", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--tau", type=float)
    p.add_argument("--eps", type=float)
    _add_common(p)

    p = sub.add_parser("solve", help="localize one eigenvalue in a bracket")
    p.add_argument("--curve")
    p.add_argument("--f0", type=float)
    p.add_argument("--f1", type=float)
    p.add_argument("--M", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--tau", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--cest", type=float)
    p.add_argument("--cenn", type=float)
    p.add_argument("--coarse", type=int,
                   help="presolve scan samples across the bracket")
    _add_common(p)

    p = sub.add_parser("mode", help="rasterize an eigenfunction on an interior grid")
    p.add_argument("--curve")
    p.add_argument("--freq", type=float)
    p.add_argument("--M", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--tau", type=float)
    p.add_argument("--nx", type=int)
    p.add_argument("--eps", type=float)
    _add_common(p)

    p = sub.add_parser("disc-check", help="run the unit-disc identity suite")
    p.add_argument("--nmax", type=int)
    p.add_argument("--lmax", type=int)
    _add_common(p)
    return ap


def cmd_sweep(args):
    schema = {
        "curve": (str, None), "fmin": (float, None), "fmax": (float, None),
        "steps": (int, None), "M": (int, None), "N": (int, None),
        "tau": (float, None), "eps": (float, 1e-14), "out": (str, None),
    }
    opt = _resolve(args, schema)
    if opt["steps"] < 2:
        raise UsageError("--steps must be >= 2")
    if not 0 < opt["fmin"] < opt["fmax"]:
        raise UsageError("need 0 < fmin < fmax")
    curve = parse_curve(opt["curve"])
    from .search import sweep

    samples = sweep(curve, opt["M"], opt["N"], opt["tau"],
                    opt["fmin"], opt["fmax"], opt["steps"], eps=opt["eps"])
    bad = [s for s in samples if not s.ok]
    for s in bad:
        print(f"sweep: evaluation failed at sqrtE={_fmt(s.sqrtE)}: {s.error}",
              file=sys.stderr)
    if len(bad) == len(samples):
        print("sweep: every sample failed", file=sys.stderr)
        return EXIT_NUMERICAL
    lines = ["sqrtE,tension_min,rank_eps,c_min"]
    for s in samples:
        if s.ok:
            lines.append(f"{_fmt(s.sqrtE)},{_fmt(s.t_min)},{s.rank_eps},{_fmt(s.c_min)}")
    with open(opt["out"], "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_solve(args):
    schema = {
        "curve": (str, None), "f0": (float, None), "f1": (float, None),
        "M": (int, None), "N": (int, None), "tau": (float, None),
        "tol": (float, 1e-13), "eps": (float, 1e-14),
        "cest": (float, 1.6), "cenn": (float, 7.4),
        "coarse": (int, 21), "out": (str, None),
    }
    opt = _resolve(args, schema)
    if not 0 < opt["f0"] < opt["f1"]:
        raise UsageError("need 0 < f0 < f1")
    curve = parse_curve(opt["curve"])
    import numpy as np

    from .errors import NeuspecError
    from .search import TensionSolver, localize_minimum

    t_start = time.perf_counter()
    try:
        solver = TensionSolver(curve, opt["M"], opt["N"], opt["tau"], eps=opt["eps"])
    except NeuspecError as exc:
        print(f"solve: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    f_lo, f_hi = opt["f0"], opt["f1"]
    n_coarse = max(int(opt["coarse"]), 0)
    if n_coarse >= 3:
        fs = np.linspace(f_lo, f_hi, n_coarse)
        ts = np.full(n_coarse, np.inf)
        for i, f in enumerate(fs):
            try:
                ts[i] = solver.evaluate(f * f).t_min
            except NeuspecError as exc:
                print(f"solve: presolve failed at sqrtE={_fmt(f)}: {exc}",
                      file=sys.stderr)
        if not np.isfinite(ts).any():
            print("solve: presolve failed at every sample", file=sys.stderr)
            return EXIT_NUMERICAL
        best = int(np.argmin(ts))
        best = min(max(best, 1), n_coarse - 2)
        f_lo, f_hi = fs[best - 1], fs[best + 1]
    try:
        res = localize_minimum(curve, opt["M"], opt["N"], opt["tau"],
                               (f_lo, f_hi), tol=opt["tol"], eps=opt["eps"],
                               c_est=opt["cest"], c_ennenbach=opt["cenn"],
                               solver=solver)
    except NeuspecError as exc:
        print(f"solve: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    wall = time.perf_counter() - t_start
    status = EXIT_OK
    if not res.converged:
        status = EXIT_NUMERICAL
        print(f"solve: convergence failure, best iterate at "
              f"sqrtE={_fmt(res.sqrtE)}", file=sys.stderr)
    doc = [
        ("sqrtE", _fmt(res.sqrtE)),
        ("E", _fmt(res.E)),
        ("t_min", _fmt(res.t_min)),
        ("t_classical", _fmt(res.t_classical)),
        ("eps_new", _fmt(res.eps_new)),
        ("eps_clas", _fmt(res.eps_clas)),
        ("eps_new_rel", _fmt(res.eps_new / res.E)),
        ("eps_clas_rel", _fmt(res.eps_clas / res.E)),
        ("n_evals", str(res.n_evals)),
        ("slope", _fmt(res.slope)),
        ("weyl_index", _fmt(res.weyl_index)),
        ("M", str(opt["M"])),
        ("N", str(opt["N"])),
        ("tau", _fmt(opt["tau"])),
        ("wall_seconds", _fmt(wall)),
        ("converged", "true" if res.converged else "false"),
    ]
    body = ",\n".join(f'  "{k}": {v}' for k, v in doc)
    with open(opt["out"], "w") as fh:
        fh.write("{\n" + body + "\n}\n")
    return status


def cmd_mode(args):
    schema = {
        "curve": (str, None), "freq": (float, None), "M": (int, None),
        "N": (int, None), "tau": (float, None), "nx": (int, None),
        "eps": (float, 1e-14), "out": (str, None),
    }
    opt = _resolve(args, schema)
    if opt["nx"] < 2:
        raise UsageError("--nx must be >= 2")
    if not opt["freq"] > 0:
        raise UsageError("--freq must be positive")
    curve = parse_curve(opt["curve"])
    from .assembly import point_source_sum
    from .errors import NeuspecError
    from .geometry import interior_grid
    from .search import TensionSolver

    try:
        solver = TensionSolver(curve, opt["M"], opt["N"], opt["tau"], eps=opt["eps"])
        ev = solver.evaluate(opt["freq"] ** 2)
        grid = interior_grid(curve, opt["nx"])
        pts = grid.points
        vals = point_source_sum(solver.builder.charges, ev.alpha,
                                opt["freq"] ** 2, pts)
    except NeuspecError as exc:
        print(f"mode: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    lines = ["ix,iy,x,y,u"]
    for (ix, iy), (px, py), u in zip(grid.indices, pts, vals):
        lines.append(f"{ix},{iy},{_fmt(px)},{_fmt(py)},{_fmt(u)}")
    with open(opt["out"], "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_disc_check(args):
    schema = {"nmax": (int, 60), "lmax": (int, 5), "out": (str, "")}
    opt = _resolve(args, schema)
    import numpy as np

    from . import disc
    from .errors import NeuspecError
    from .special import jnprime_zeros

    rows = []
    failures = 0
    sqrt2 = np.sqrt(2.0)
    for n in range(opt["nmax"] + 1):
        zeros = jnprime_zeros(n, opt["lmax"])
        for l, mu in enumerate(zeros, start=1):
            for parity in (("cos",) if n == 0 else ("cos", "sin")):
                mode = disc.DiscMode(n=n, l=l, mu=float(mu), parity=parity)
                exact = sqrt2 / np.sqrt(1.0 - (mode.h * n) ** 2)
                try:
                    ratio = disc.boundary_ratio(mode)
                    err = abs(ratio - exact) / exact
                    ok = err <= 1e-10
                except NeuspecError as exc:
                    ratio, err, ok = float("nan"), float("inf"), False
                failures += not ok
                rows.append(("v_ratio", n, l, parity, ratio, exact, err, ok))
                sigma = 1.0 - (mode.h * n) ** 2
                if sigma >= 2.0 * mode.h ** (2.0 / 3.0):
                    try:
                        wr = disc.weighted_ratio(mode)
                        werr = abs(wr - sqrt2) / sqrt2
                        wok = werr <= 1e-10
                    except NeuspecError:
                        wr, werr, wok = float("nan"), float("inf"), False
                    failures += not wok
                    rows.append(("v_ratio_2", n, l, parity, wr, sqrt2, werr, wok))
    qo = {}
    for center in (20.0, 40.0, 80.0):
        qo[center] = disc.quasi_orth_gram_norm(center)
        ok = 0.3 <= qo[center] <= 6.0
        failures += not ok
        rows.append(("quasi_orth", int(center), 0, "-", qo[center],
                     float("nan"), float("nan"), ok))
    spread = max(qo.values()) / min(qo.values())
    ok = spread < 2.0
    failures += not ok
    rows.append(("quasi_orth_spread", 0, 0, "-", spread, float("nan"),
                 float("nan"), ok))

    if opt["out"]:
        lines = ["check,n,l,parity,value,expected,rel_err,pass"]
        for kind, n, l, parity, val, exp, err, ok in rows:
            lines.append(f"{kind},{n},{l},{parity},{_fmt(val)},{_fmt(exp)},"
                         f"{_fmt(err)},{int(ok)}")
        with open(opt["out"], "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    n_checks = len(rows)
    if failures:
        print(f"disc-check: FAIL ({failures} of {n_checks} checks)")
        return EXIT_VALIDATION
    print(f"disc-check: PASS ({n_checks} checks)")
    return EXIT_OK


_COMMANDS = {
    "sweep": cmd_sweep,
    "solve": cmd_solve,
    "mode": cmd_mode,
    "disc-check": cmd_disc_check,
}


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "threads", None):
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
            os.environ[var] = str(args.threads)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
