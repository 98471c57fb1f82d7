"""Command-line front door.

Subcommands:
  scan           evaluate a (j, g) grid, write CSV
  trace          bisect phase boundaries for a list of j values, write JSON
  multicritical  bisect the transition order over j, write a JSON report
  ed-point       one full chain-cavity ED run, JSON to stdout or file
  selfcheck      run the built-in invariant suite

Exit codes: 0 success, 1 usage error, 2 per-point failures present (scan
output is still written).  Flags override values from an optional
``key = value`` config file (keys are the long option names); the worker
count falls back to the PHASEKIT_THREADS environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .model import ModelParams, ToleranceSet
from .scan import ScanSpec, dump_json, find_multicritical, scan_to_csv, trace_boundary


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _add_common(sp):
    sp.add_argument("--omega", type=float, default=1.0, help="photon frequency (default 1)")
    sp.add_argument("--eps", type=float, default=1.0, help="longitudinal field (default 1)")
    sp.add_argument("--tol-jump", type=float, default=1e-2,
                    help="first-order jump threshold (default 1e-2)")
    sp.add_argument("--config", type=str, default=None,
                    help="key = value file supplying defaults for any long option")


def build_parser() -> _Parser:
    parser = _Parser(prog="phasekit", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scan", help="grid scan to CSV")
    _add_common(sc)
    sc.add_argument("--method", choices=("mean-field", "effective", "ed-full"),
                    default="mean-field")
    sc.add_argument("--backend", choices=("free-fermion", "chain-ed"), default="chain-ed",
                    help="effective-method chain backend")
    sc.add_argument("--j-min", type=float, default=-0.6)
    sc.add_argument("--j-max", type=float, default=0.6)
    sc.add_argument("--j-steps", type=int, default=61)
    sc.add_argument("--g-min", type=float, default=0.0)
    sc.add_argument("--g-max", type=float, default=1.0)
    sc.add_argument("--g-steps", type=int, default=51)
    sc.add_argument("--n-sites", type=int, default=12)
    sc.add_argument("--n-max", type=int, default=16)
    sc.add_argument("--threads", type=int, default=None,
                    help="worker processes (default: PHASEKIT_THREADS or 1)")
    sc.add_argument("--out", type=str, required=True)

    tr = sub.add_parser("trace", help="boundary trace to JSON")
    _add_common(tr)
    tr.add_argument("--method", choices=("mean-field", "effective"), default="mean-field")
    tr.add_argument("--backend", choices=("free-fermion", "chain-ed"), default="chain-ed")
    tr.add_argument("--j-list", type=str, required=True,
                    help="comma-separated j values, e.g. \"-0.5,-0.3,0.25\"")
    tr.add_argument("--n-sites", type=int, default=16)
    tr.add_argument("--fade-above-j", type=float, default=None,
                    help="mark points with j above this as deviating (figure fading)")
    tr.add_argument("--out", type=str, required=True)

    mc = sub.add_parser("multicritical", help="transition-order bisection over j")
    _add_common(mc)
    mc.add_argument("--backend", choices=("chain-ed",), default="chain-ed")
    mc.add_argument("--j-min", type=float, default=0.25)
    mc.add_argument("--j-max", type=float, default=1.0)
    mc.add_argument("--n-sites", type=int, default=16)
    mc.add_argument("--out", type=str, required=True)

    ed = sub.add_parser("ed-point", help="one full light-matter ED run")
    _add_common(ed)
    ed.add_argument("--j", type=float, required=True)
    ed.add_argument("--g", type=float, required=True)
    ed.add_argument("--n-sites", type=int, default=8)
    ed.add_argument("--n-max", type=int, default=16)
    ed.add_argument("--displaced-frame", type=float, default=0.0)
    ed.add_argument("--converge-nmax", action="store_true",
                    help="double n_max until the energy settles")
    ed.add_argument("--energy-tol", type=float, default=1e-8)
    ed.add_argument("--out", type=str, default=None, help="JSON path (default stdout)")

    sub.add_parser("selfcheck", help="run the invariant suite")
    return parser


def _apply_config(parser: _Parser, argv: list[str]) -> list[str]:
    """Inject config-file values as defaults (flags still win)."""
    probe = _Parser(add_help=False)
    probe.add_argument("--config", type=str, default=None)
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv
    injected: list[str] = []
    with open(known.config) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not key or not value:
                continue
            flag = f"--{key}"
            if flag not in argv and not any(a.startswith(flag + "=") for a in argv):
                injected += [flag, value]
    # injected defaults go first so explicit flags override them
    return injected + argv


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if argv:
        argv = [argv[0]] + _apply_config(parser, argv[1:])
    args = parser.parse_args(argv)

    if args.command == "selfcheck":
        from .selfcheck import run_selfcheck

        return 0 if run_selfcheck() else 2

    tol = ToleranceSet(tol_jump=args.tol_jump)

    if args.command == "scan":
        threads = args.threads
        if threads is None:
            threads = int(os.environ.get("PHASEKIT_THREADS", "1"))
        spec = ScanSpec(
            j_min=args.j_min, j_max=args.j_max, j_steps=args.j_steps,
            g_min=args.g_min, g_max=args.g_max, g_steps=args.g_steps,
            method=args.method, backend=args.backend, n_sites=args.n_sites,
            n_max=args.n_max, omega=args.omega, eps=args.eps, tol=tol,
            threads=threads,
        )
        n_err = scan_to_csv(spec, args.out)
        if n_err:
            print(f"scan written to {args.out} with {n_err} failed points", file=sys.stderr)
            return 2
        print(f"scan written to {args.out}")
        return 0

    if args.command == "trace":
        j_list = [float(x) for x in args.j_list.split(",") if x.strip()]
        report = trace_boundary(
            args.method, j_list, omega=args.omega, eps=args.eps,
            backend=args.backend, n_sites=args.n_sites, t=tol,
            fade_above_j=args.fade_above_j,
        )
        dump_json(report, args.out)
        print(f"trace written to {args.out}")
        return 2 if report["errors"] else 0

    if args.command == "multicritical":
        report = find_multicritical(
            (args.j_min, args.j_max), omega=args.omega, eps=args.eps,
            backend=args.backend, n_sites=args.n_sites, t=tol,
        )
        dump_json(report, args.out)
        print(f"multicritical report written to {args.out} (j_mc = {report['j_mc']:.3f})")
        return 0

    if args.command == "ed-point":
        from dataclasses import asdict

        from .edfull import EDConfig, converge_nmax, ed_full_ground

        p = ModelParams(omega=args.omega, eps=args.eps, g=args.g, j=args.j)
        cfg = EDConfig(n_spins=args.n_sites, n_max=args.n_max,
                       displaced_frame=args.displaced_frame)
        if args.converge_nmax:
            res = converge_nmax(p, cfg, energy_tol=args.energy_tol)
        else:
            res = ed_full_ground(p, cfg)
        payload = {"params": asdict(p), "result": asdict(res)}
        if args.out:
            dump_json(payload, args.out)
            print(f"ed-point written to {args.out}")
        else:
            json.dump(payload, sys.stdout, indent=2, sort_keys=True)
            print()
        return 0

    return 1


if __name__ == "__main__":
    sys.exit(main())
