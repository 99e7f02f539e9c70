"""``romlab`` command line.

Exit codes: 0 success, 1 computational failure, 2 input error, 3 stabilization did not converge.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .adversarial import (
    GreenbaumPrescription,
    RitzPrescription,
    greenbaum_system,
    prescribed_ritz_system,
    verify_greenbaum,
    verify_prescribed_ritz,
)
from .bounds import check_rom_disks, check_rom_strips, count_unstable, disk_bounds, strip_bounds, strip_interval
from .diagnostics import (
    DEFAULT_EPS_LEVELS,
    numerical_abscissa,
    pseudo_abscissa_estimate,
    pseudo_radius_estimate,
    pseudospectra_grid,
    spectral_summary,
    transient_envelope_continuous,
    transient_envelope_discrete,
)
from .errors import InputError, RomlabError
from .gallery import EXAMPLES, make_example
from .io import (
    SystemDocument,
    atomic_write,
    matrix_to_json,
    read_matrix_market,
    read_system,
    vector_to_json,
    write_json,
    write_matrix_market,
    write_system,
)
from .krylov import arnoldi, bilanczos, pod_basis, shift_invert_basis
from .stabilization import compare_transients, numerical_abscissa_comparison, stabilize_by_restart
from .systems import project_oblique, project_orthogonal, verify_moment_match

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NOT_CONVERGED = 0, 1, 2, 3


def _pairs(values):
    return [[float(complex(z).real), float(complex(z).imag)] for z in values]


def _threads():
    raw = os.environ.get("ROMLAB_THREADS")
    if not raw:
        return None
    try:
        t = int(raw)
    except ValueError:
        raise InputError(f"ROMLAB_THREADS must be an integer, got {raw!r}") from None
    return max(1, t)


def _load(args):
    if not args.input:
        raise InputError("--input is required")
    return read_system(args.input)


def _outdir(args):
    if args.output_dir is None:
        return None
    d = Path(args.output_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _write_csv(path, table_or_grid):
    atomic_write(path, table_or_grid.to_csv)


# commands


def cmd_analyze(args):
    doc = _load(args)
    s = spectral_summary(doc.A)
    sb = strip_bounds(doc.A)
    db = disk_bounds(doc.A)
    payload = {
        "n": doc.n,
        "summary": s.as_dict(),
        "strip": {"M": sb.M.tolist(), "Mneg": sb.Mneg.tolist(), "p_cap": sb.p_cap},
        "disk": {"G": db.G.tolist(), "p_cap": db.p_cap},
        "unstable_eigenvalues": count_unstable(s.eigenvalues, doc.domain),
    }
    lines = [
        f"n = {doc.n}  domain = {doc.domain}",
        f"alpha (spectral abscissa)  = {s.alpha:.10g}",
        f"rho   (spectral radius)    = {s.rho:.10g}",
        f"omega (numerical abscissa) = {s.omega:.10g}",
        f"nu    (numerical radius)   = {s.nu:.10g}",
        "",
        f"{'j':>4}  {'mu_j':>14}  {'M_j':>14}  {'M_-j':>14}  {'G_j':>14}",
    ]
    for j in range(min(doc.n, args.rows)):
        lines.append(f"{j + 1:>4}  {sb.mu[j]:>14.8g}  {sb.M[j]:>14.8g}  {sb.Mneg[j]:>14.8g}  {db.G[j]:>14.8g}")
    lines += ["", f"strip p_cap = {sb.p_cap}", f"disk p_cap = {db.p_cap}"]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _reduce(doc, method, k, shift, dps, seed):
    sys_ = doc.system()
    b = doc.start_vector(seed)
    if method == "arnoldi":
        fac = arnoldi(sys_.A, b, k)
        rom = project_orthogonal(sys_, fac.basis())
        errs = verify_moment_match(sys_, rom, rom.k)
    elif method == "shift-invert":
        fac = shift_invert_basis(sys_.A, b, shift, k)
        rom = project_orthogonal(sys_, fac.basis())
        errs = verify_moment_match(sys_, rom, rom.k - 1, expansion=shift) if rom.k > 1 else []
    elif method == "bilanczos":
        if doc.C is None:
            raise InputError("bilanczos needs an output vector: give 'c' or 'C' in the input")
        fac = bilanczos(sys_.A, sys_.b, sys_.c, k, dps=dps)
        if not fac.completed:
            raise RomlabError(f"bi-Lanczos {fac.breakdown_kind} breakdown at step {fac.breakdown_step}")
        kk = fac.k
        rom = project_oblique(sys_, fac.V[:, :kk], fac.W[:, :kk])
        errs = verify_moment_match(sys_, rom, 2 * kk)
    elif method == "pod":
        if doc.snapshots is None:
            raise InputError("pod needs a 'snapshots' field in the input")
        rom = project_orthogonal(sys_, pod_basis(doc.snapshots, k))
        errs = []
    else:
        raise InputError(f"unknown method {method!r}")
    return rom, errs


def cmd_reduce(args):
    doc = _load(args)
    rom, errs = _reduce(doc, args.method, args.k, args.shift, args.dps, args.seed)
    theta = rom.eigenvalues()
    unstable = count_unstable(theta, doc.domain)
    out = _outdir(args)
    if out is not None:
        write_matrix_market(out / "Ar.mtx", rom.Ar)
        write_matrix_market(out / "V.mtx", rom.V)
        if rom.kind == "oblique":
            write_matrix_market(out / "W.mtx", rom.W)
        write_system(out / "rom.json", SystemDocument.from_system(rom.as_system()))
    payload = {
        "method": args.method,
        "k": rom.k,
        "kind": rom.kind,
        "eigenvalues": _pairs(theta),
        "unstable_count": unstable,
        "moment_errors": errs,
    }
    lines = [f"{args.method} ROM of order {rom.k} ({rom.kind})", "eigenvalues:"]
    lines += [f"  {t.real:+.10g} {t.imag:+.10g}j" for t in theta]
    lines.append(f"unstable modes: {unstable}")
    if errs:
        lines.append("moment relative errors:")
        lines += [f"  s={s}: {e:.3e}" for s, e in enumerate(errs)]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_bounds(args):
    doc = _load(args)
    sb = strip_bounds(doc.A)
    db = disk_bounds(doc.A)
    k = args.k or doc.n
    if not 1 <= k <= doc.n:
        raise InputError(f"-k must lie in [1, {doc.n}]")
    strips = [strip_interval(sb, k, j) for j in range(1, k + 1)]
    payload = {
        "k": k,
        "strip_p_cap": sb.p_cap,
        "disk_p_cap": db.p_cap,
        "strips": [list(s) for s in strips],
        "disks": db.G[:k].tolist(),
    }
    lines = [f"bounds for orthogonal ROMs of order {k}", f"{'j':>4}  {'Re lower':>14}  {'Re upper':>14}  {'|.| upper':>14}"]
    lines += [f"{j:>4}  {lo:>14.8g}  {hi:>14.8g}  {g:>14.8g}"
              for j, ((lo, hi), g) in enumerate(zip(strips, db.G[:k]), start=1)]
    lines += [f"at most {sb.p_cap} modes with Re >= 0", f"at most {db.p_cap} modes with |.| >= 1"]
    if args.basis:
        V = read_matrix_market(args.basis)
        rom = project_orthogonal(doc.system(), V)
        rs, rd = check_rom_strips(doc.A, rom), check_rom_disks(doc.A, rom)
        payload["strip_check"] = {"ok": rs.ok, "records": rs.records()}
        payload["disk_check"] = {"ok": rd.ok, "records": rd.records()}
        lines += ["", "strip check:", rs.table(), "", "disk check:", rd.table()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_pseudospectra(args):
    doc = _load(args)
    eps = tuple(args.eps) if args.eps else DEFAULT_EPS_LEVELS
    grid = pseudospectra_grid(doc.A, args.re, args.im, args.resolution, eps, workers=_threads())
    out = _outdir(args)
    if out is not None:
        _write_csv(out / "pseudospectra.csv", grid)
    rows = [{"eps": e, "alpha_eps": pseudo_abscissa_estimate(grid, e), "rho_eps": pseudo_radius_estimate(grid, e)}
            for e in eps]
    payload = {
        "real_range": [float(grid.real_axis[0]), float(grid.real_axis[-1])],
        "imag_range": [float(grid.imag_axis[0]), float(grid.imag_axis[-1])],
        "resolution": [len(grid.real_axis), len(grid.imag_axis)],
        "levels": [{k: (v if np.isfinite(v) else None) for k, v in r.items()} for r in rows],
    }
    lines = [f"grid {len(grid.real_axis)} x {len(grid.imag_axis)} over "
             f"Re [{grid.real_axis[0]:.6g}, {grid.real_axis[-1]:.6g}] x Im [{grid.imag_axis[0]:.6g}, "
             f"{grid.imag_axis[-1]:.6g}]", f"{'eps':>12}  {'alpha_eps':>14}  {'rho_eps':>14}"]
    lines += [f"{r['eps']:>12.4g}  {r['alpha_eps']:>14.8g}  {r['rho_eps']:>14.8g}" for r in rows]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_transient(args):
    doc = _load(args)
    if doc.domain == "discrete":
        times = np.arange(args.steps + 1, dtype=float)
        env = transient_envelope_discrete(doc.A, args.steps)
    else:
        times = np.linspace(0.0, args.tmax, args.samples)
        env = transient_envelope_continuous(doc.A, times)
    omega = numerical_abscissa(doc.A)
    i = int(np.argmax(env))
    out = _outdir(args)
    if out is not None:
        def writer(fh):
            fh.write("t,norm\n")
            for t, e in zip(times, env):
                fh.write(f"{t:.17g},{e:.17g}\n")
        atomic_write(out / "transient.csv", writer)
    payload = {"omega": omega, "peak": float(env[i]), "peak_time": float(times[i]), "domain": doc.domain}
    _emit(args, payload, f"omega = {omega:.10g}\npeak norm {env[i]:.10g} at t = {times[i]:.6g}")
    return EXIT_OK


def _read_prescription(args, doc, cls):
    if args.prescription:
        try:
            data = json.loads(Path(args.prescription).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{args.prescription}: {exc}") from None
    elif doc is not None and doc.prescription is not None:
        data = doc.prescription
    else:
        raise InputError("--prescription is required")
    return cls.from_dict(data)


def cmd_adversarial(args):
    out = _outdir(args)
    if args.kind == "ritz":
        doc = read_system(args.input) if args.input else None
        p = _read_prescription(args, doc, RitzPrescription)
        A, b = prescribed_ritz_system(p)
        rep = verify_prescribed_ritz(A, b, p)
        payload = {"A": matrix_to_json(A), "b": vector_to_json(b), "verify": rep.as_dict()}
        lines = ["constructed A:", np.array2string(A, max_line_width=160, precision=6),
                 "stage mismatches: " + ", ".join(f"{m:.2e}" for m in rep.stage_mismatch),
                 f"final spectrum mismatch: {rep.final_mismatch:.2e}"]
        if out is not None:
            write_system(out / "system.json", SystemDocument(A, b[:, None], b.conj()[None, :], labels={"b": "e1"}))
    else:
        doc = _load(args)
        p = _read_prescription(args, doc, GreenbaumPrescription)
        b = doc.b if doc.b is not None else doc.start_vector(args.seed)
        c, gammas, _ = greenbaum_system(doc.A, b, p, dps=args.dps)
        rep = verify_greenbaum(doc.A, b, c, p, gammas, dps=args.dps)
        c_double = np.asarray([complex(z) for z in c])
        payload = {"gammas": gammas.tolist(), "c": vector_to_json(c_double), "verify": rep.as_dict()}
        lines = ["gammas: " + ", ".join(f"{g:.8g}" for g in gammas),
                 f"bi-Lanczos completed: {rep.completed} ({rep.breakdown_kind or 'clean'})",
                 f"max |T - T_prescribed| = {rep.mismatch:.3e} (tolerance {rep.tolerance:.3e})",
                 "unstable modes per order: " + ", ".join(str(u) for u in rep.unstable_counts)]
        if out is not None:
            write_system(out / "system.json",
                         SystemDocument(doc.A, b[:, None], c_double.conj()[None, :], domain=doc.domain))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_stabilize(args):
    doc = _load(args)
    x0 = doc.start_vector(args.seed)
    trace = stabilize_by_restart(doc.A, x0, args.k, args.rounds, doc.domain)
    roms = [r.rom for r in trace.rounds]
    omegas = numerical_abscissa_comparison(doc.A, roms)
    caps = [check_rom_strips(doc.A, rom).ok for rom in roms] if doc.domain == "continuous" \
        else [check_rom_disks(doc.A, rom).ok for rom in roms]
    payload = trace.as_dict()
    payload["omega"] = omegas
    payload["caps_respected"] = caps
    out = _outdir(args)
    if out is not None:
        write_json(out / "trace.json", payload)
        times = np.linspace(0.0, args.tmax, args.samples) if doc.domain == "continuous" else [args.steps]
        _write_csv(out / "envelopes.csv", compare_transients(doc.A, roms, times, doc.domain))
    lines = [f"round {i}: filtered {len(r.filter_roots)} roots, unstable after = {r.unstable_count_after}, "
             f"omega = {w:.6g}" for i, (r, w) in enumerate(zip(trace.rounds, omegas[1:]))]
    lines.insert(0, f"omega(A) = {omegas[0]:.6g}")
    lines.append("converged" if trace.converged else "NOT converged")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if trace.converged else EXIT_NOT_CONVERGED


def cmd_example(args):
    system, prescription = make_example(args.name, args.n, args.sub, args.diag, args.super, args.gamma)
    doc = SystemDocument.from_system(system, labels={"example": args.name},
                                     prescription=None if prescription is None else prescription.to_dict())
    out = _outdir(args)
    if out is not None:
        write_system(out / f"{args.name}.json", doc)
        if prescription is not None:
            write_json(out / f"{args.name}-prescription.json", prescription.to_dict())
    else:
        print(json.dumps(doc.to_dict(), indent=2))
    return EXIT_OK


# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="system document (JSON) or Matrix Market file")
    common.add_argument("--output-dir", "-o", help="directory for output files")
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for random start vectors")

    p = argparse.ArgumentParser(prog="romlab", description="Stability diagnostics for projection-based reduced models")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="spectral summary and bound tables")
    a.add_argument("--rows", type=int, default=10, help="table rows to print")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reduce", parents=[common], help="build a reduced model")
    r.add_argument("--method", choices=["arnoldi", "shift-invert", "bilanczos", "pod"], default="arnoldi")
    r.add_argument("-k", type=int, required=True, help="reduced order")
    r.add_argument("--shift", type=complex, default=0.0, help="expansion point for shift-invert")
    r.add_argument("--dps", type=int, default=None, help="extended precision digits for bilanczos")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bounds", parents=[common], help="strip and disk bounds, optional check of a basis")
    b.add_argument("-k", type=int, default=None, help="ROM order (default n)")
    b.add_argument("--basis", help="Matrix Market file with orthonormal basis V to check")
    b.set_defaults(func=cmd_bounds)

    ps = sub.add_parser("pseudospectra", parents=[common], help="smallest singular value grid")
    ps.add_argument("--re", type=float, nargs=2, metavar=("LO", "HI"))
    ps.add_argument("--im", type=float, nargs=2, metavar=("LO", "HI"))
    ps.add_argument("--resolution", type=int, default=101)
    ps.add_argument("--eps", type=float, nargs="+", help="levels (default 1e-1 down to 1e-4)")
    ps.set_defaults(func=cmd_pseudospectra)

    t = sub.add_parser("transient", parents=[common], help="propagator norm envelope")
    t.add_argument("--tmax", type=float, default=10.0)
    t.add_argument("--samples", type=int, default=201)
    t.add_argument("--steps", type=int, default=50, help="steps for discrete systems")
    t.set_defaults(func=cmd_transient)

    ad = sub.add_parser("adversarial", parents=[common], help="prescribed Ritz values or tridiagonal")
    ad.add_argument("kind", choices=["ritz", "greenbaum"])
    ad.add_argument("--prescription", help="prescription JSON")
    ad.add_argument("--dps", type=int, default=None, help="extended precision digits (greenbaum)")
    ad.set_defaults(func=cmd_adversarial)

    st = sub.add_parser("stabilize", parents=[common], help="filtered-restart stabilization")
    st.add_argument("-k", type=int, required=True)
    st.add_argument("--rounds", type=int, default=10)
    st.add_argument("--tmax", type=float, default=1.0)
    st.add_argument("--samples", type=int, default=101)
    st.add_argument("--steps", type=int, default=50)
    st.set_defaults(func=cmd_stabilize)

    ex = sub.add_parser("example", parents=[common], help="emit a built-in system")
    ex.add_argument("name", choices=list(EXAMPLES))
    ex.add_argument("--n", type=int, default=None)
    ex.add_argument("--sub", type=float, default=0.5)
    ex.add_argument("--diag", type=float, default=-2.0)
    ex.add_argument("--super", type=float, default=2.0)
    ex.add_argument("--gamma", type=float, default=0.75)
    ex.set_defaults(func=cmd_example)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"romlab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RomlabError as exc:
        print(f"romlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (np.linalg.LinAlgError, OverflowError, FloatingPointError) as exc:
        print(f"romlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
