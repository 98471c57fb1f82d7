"""Grid scans, boundary traces and the multicritical report.

Output contracts (consumed by the figure renderer and tests):

* grids -- CSV, header ``j,g,energy,alpha_or_h,m_x,m_z,stag,label,method,flags``,
  floats at 12 significant digits, rows in row-major (j outer, g inner)
  order, byte-deterministic for a fixed spec;
* boundary traces and multicritical searches -- JSON.

Column semantics depend on the method: ``alpha_or_h`` holds the mean-field
photon displacement alpha, the effective induced field h*, or the ed-full
background-subtracted displacement proxy; ``stag`` holds the mean-field
staggered magnetization or the background-subtracted rms staggered
magnetization of the ED backends.  Per-point solver errors are recorded in
the ``flags`` column and never abort a scan.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import effective as eff
from . import meanfield as mf
from .edfull import EDConfig, ed_full_ground
from .model import AFM_N, ModelParams, OrderParams, ToleranceSet, classify_orders

CSV_COLUMNS = ("j", "g", "energy", "alpha_or_h", "m_x", "m_z", "stag", "label", "method", "flags")


@dataclass(frozen=True)
class ScanSpec:
    j_min: float
    j_max: float
    j_steps: int
    g_min: float
    g_max: float
    g_steps: int
    method: str = "mean-field"
    backend: str = "chain-ed"
    n_sites: int = 12
    n_max: int = 16
    omega: float = 1.0
    eps: float = 1.0
    tol: ToleranceSet = field(default_factory=ToleranceSet)
    threads: int = 1

    def __post_init__(self):
        if self.j_steps < 1 or self.g_steps < 1:
            raise ValueError("grid resolutions must be at least 1 point per axis")
        if self.method not in ("mean-field", "effective", "ed-full"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "effective" and self.backend not in ("free-fermion", "chain-ed"):
            raise ValueError(f"unknown backend {self.backend!r}")
        for name, v in (("j", (self.j_min, self.j_max)), ("g", (self.g_min, self.g_max))):
            if not all(math.isfinite(x) for x in v):
                raise ValueError(f"{name}-range must be finite")

    def j_values(self) -> np.ndarray:
        return np.linspace(self.j_min, self.j_max, self.j_steps)

    def g_values(self) -> np.ndarray:
        return np.linspace(self.g_min, self.g_max, self.g_steps)


@dataclass(frozen=True)
class ScanRecord:
    j: float
    g: float
    energy: float
    alpha_or_h: float
    m_x: float
    m_z: float
    stag: float
    label: str
    method: str
    flags: str


def _fmt(v: float) -> str:
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    if v == 0.0:
        return "0"
    return f"{v:.12g}"


def record_to_csv_line(r: ScanRecord) -> str:
    return ",".join(
        [_fmt(r.j), _fmt(r.g), _fmt(r.energy), _fmt(r.alpha_or_h), _fmt(r.m_x),
         _fmt(r.m_z), _fmt(r.stag), r.label, r.method, r.flags]
    )


def classify_proxy_orders(alpha: float, m_stag: float, t: ToleranceSet) -> str:
    """Threshold classification for proxy order parameters (no alpha/mx
    cross-check: symmetric finite-size states have <sum s^x> = 0 exactly)."""
    s = abs(alpha) > t.tol_order_param
    a = abs(m_stag) > t.tol_order_param
    if a:
        return "AFM-S" if s else "AFM-N"
    return "PM-S" if s else "PM-N"


def reclassify_row(row: dict, t: ToleranceSet | None = None) -> str:
    """Recompute the phase label from an emitted CSV row (consistency check)."""
    if t is None:
        t = ToleranceSet()
    method = row["method"]
    if method == "mean-field":
        o = OrderParams(
            photon_displacement=float(row["alpha_or_h"]), mx=float(row["m_x"]),
            mz=float(row["m_z"]), m_stag=float(row["stag"]),
        )
        return classify_orders(o, t)
    if method.startswith("effective"):
        g = float(row["g"])
        alpha = 0.0 if g == 0.0 else -float(row["alpha_or_h"]) / (4.0 * g)
        o = OrderParams(
            photon_displacement=alpha, mx=float(row["m_x"]),
            mz=float(row["m_z"]), m_stag=float(row["stag"]),
        )
        return classify_orders(o, t)
    return classify_proxy_orders(float(row["alpha_or_h"]), float(row["stag"]), t)


# ---------------------------------------------------------------------------
# per-row evaluation (one row = one j, all g ascending)
# ---------------------------------------------------------------------------


def _error_record(spec: ScanSpec, j: float, g: float, method: str, exc: Exception) -> ScanRecord:
    nan = float("nan")
    return ScanRecord(
        j=j, g=g, energy=nan, alpha_or_h=nan, m_x=nan, m_z=nan, stag=nan,
        label="", method=method, flags=f"error:{type(exc).__name__}",
    )


def _row_meanfield(spec: ScanSpec, j: float) -> list[ScanRecord]:
    out = []
    for g in spec.g_values():
        p = ModelParams(omega=spec.omega, eps=spec.eps, g=float(g), j=float(j))
        try:
            sol = mf.mf_minimize(p, spec.tol)
            flags = []
            if sol.coexistent:
                flags.append("coexistent")
            out.append(ScanRecord(
                j=float(j), g=float(g), energy=sol.energy,
                alpha_or_h=sol.ansatz.alpha, m_x=sol.orders.mx, m_z=sol.orders.mz,
                stag=sol.orders.m_stag, label=sol.label, method="mean-field",
                flags=";".join(flags),
            ))
        except Exception as exc:  # noqa: BLE001 - per-point errors are data
            out.append(_error_record(spec, float(j), float(g), "mean-field", exc))
    return out


def _row_effective(spec: ScanSpec, j: float) -> list[ScanRecord]:
    method = f"effective:{spec.backend}"
    p0 = ModelParams(omega=spec.omega, eps=spec.eps, g=0.0, j=float(j))
    try:
        backend = eff.make_backend(p0, spec.backend, spec.n_sites)
        method = f"effective:{backend.tag}"
    except Exception as exc:  # noqa: BLE001
        return [_error_record(spec, float(j), float(g), method, exc) for g in spec.g_values()]
    out = []
    for g in spec.g_values():
        p = p0.with_(g=float(g))
        try:
            sol = eff.minimize_h(p, backend, spec.tol)
            label = classify_orders(sol.orders, spec.tol)
            flags = []
            if sol.coexistent:
                flags.append("coexistent")
            out.append(ScanRecord(
                j=float(j), g=float(g), energy=sol.energy,
                alpha_or_h=sol.h_star, m_x=sol.orders.mx, m_z=sol.orders.mz,
                stag=sol.orders.m_stag, label=label, method=method,
                flags=";".join(flags),
            ))
        except Exception as exc:  # noqa: BLE001
            out.append(_error_record(spec, float(j), float(g), method, exc))
    return out


def _row_edfull(spec: ScanSpec, j: float) -> list[ScanRecord]:
    n = spec.n_sites
    method = f"ed-full({n},nmax={spec.n_max})"
    out = []
    for g in spec.g_values():
        p = ModelParams(omega=spec.omega, eps=spec.eps, g=float(g), j=float(j))
        try:
            cfg = EDConfig(n_spins=n, n_max=spec.n_max)
            r = ed_full_ground(p, cfg)
            # vacuum baseline: quad_fluct = 1/N, photon_density = 0 at g = 0
            excess = r.quad_fluct - 1.0 / n
            alpha_eff = math.sqrt(max(excess - 1.0 / n, 0.0) / 4.0)
            m_stag_eff = math.sqrt(max(r.s_pi - 1.25 / n, 0.0))
            label = classify_proxy_orders(alpha_eff, m_stag_eff, spec.tol)
            flags = []
            if r.degenerate:
                flags.append("degenerate")
            out.append(ScanRecord(
                j=float(j), g=float(g), energy=r.energy_per_site,
                alpha_or_h=alpha_eff, m_x=0.0, m_z=float("nan"),
                stag=m_stag_eff, label=label, method=method, flags=";".join(flags),
            ))
        except Exception as exc:  # noqa: BLE001
            out.append(_error_record(spec, float(j), float(g), method, exc))
    return out


_ROW_EVAL = {"mean-field": _row_meanfield, "effective": _row_effective, "ed-full": _row_edfull}


def _eval_row(args: tuple[ScanSpec, float]) -> list[ScanRecord]:
    spec, j = args
    return _ROW_EVAL[spec.method](spec, j)


def run_scan(spec: ScanSpec) -> list[ScanRecord]:
    """Evaluate every grid point once; deterministic row-major order."""
    jobs = [(spec, float(j)) for j in spec.j_values()]
    if spec.threads > 1:
        with ProcessPoolExecutor(max_workers=spec.threads) as pool:
            rows = list(pool.map(_eval_row, jobs, chunksize=1))
    else:
        rows = [_eval_row(job) for job in jobs]
    return [rec for row in rows for rec in row]


def write_csv(records: list[ScanRecord], path: str) -> None:
    lines = [",".join(CSV_COLUMNS)]
    lines += [record_to_csv_line(r) for r in records]
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def scan_to_csv(spec: ScanSpec, path: str) -> int:
    """Run the scan, write the CSV, return the number of error rows."""
    records = run_scan(spec)
    write_csv(records, path)
    return sum(1 for r in records if r.flags.startswith("error:"))


# ---------------------------------------------------------------------------
# boundary traces
# ---------------------------------------------------------------------------


def _mf_auto_bracket(p0: ModelParams, t: ToleranceSet, g_max: float = 2.0, dg: float = 0.02):
    prev = mf.mf_minimize(p0.with_(g=0.0), t).label
    g = dg
    while g <= g_max + 1e-12:
        cur = mf.mf_minimize(p0.with_(g=g), t).label
        if cur != prev:
            return g - dg, g
        g += dg
    raise mf.BracketError(f"no mean-field label switch below g={g_max}")


def trace_boundary(
    method: str,
    j_list: list[float],
    omega: float = 1.0,
    eps: float = 1.0,
    backend: str = "chain-ed",
    n_sites: int = 16,
    t: ToleranceSet | None = None,
    fade_above_j: float | None = None,
) -> dict:
    """Boundary points per j; AFM-side mean-field traces return both window
    edges.  Per-j failures are reported, not raised."""
    if t is None:
        t = ToleranceSet()
    points: list[dict] = []
    errors: dict[str, str] = {}
    for j in j_list:
        p0 = ModelParams(omega=omega, eps=eps, g=0.0, j=float(j))
        try:
            if method == "mean-field":
                from .model import classical_ground

                if classical_ground(p0).label == AFM_N:
                    window = mf.mf_intermediate_window(p0, t)
                    if window is None:
                        raise mf.BracketError("no AFM-S window found")
                    points.extend(tp.to_dict() for tp in window)
                else:
                    lo, hi = _mf_auto_bracket(p0, t)
                    points.append(mf.mf_boundary_bisect(p0, lo, hi, t).to_dict())
            elif method == "effective":
                tp = eff.locate_transition_g(p0, float(j), backend, t, n_sites=n_sites)
                points.append(tp.to_dict())
            else:
                raise ValueError(f"trace does not support method {method!r}")
        except Exception as exc:  # noqa: BLE001
            errors[_fmt(float(j))] = f"{type(exc).__name__}: {exc}"
    if fade_above_j is not None:
        for pt in points:
            if pt["j"] >= fade_above_j:
                pt["deviates"] = True
    return {"method": method, "backend": backend if method == "effective" else "mean-field",
            "points": points, "errors": errors}


def find_multicritical(
    j_bracket: tuple[float, float],
    omega: float = 1.0,
    eps: float = 1.0,
    backend: str = "chain-ed",
    n_sites: int = 16,
    t: ToleranceSet | None = None,
) -> dict:
    """JSON-ready report wrapping the multicritical bisection."""
    p0 = ModelParams(omega=omega, eps=eps, g=0.0, j=0.0)
    res = eff.locate_multicritical(p0, j_bracket, backend, t, n_sites=n_sites)
    return {
        "j_mc": res.j_mc,
        "j_bracket": list(res.j_bracket),
        "backend": res.backend,
        "probes": [tp.to_dict() for tp in res.probes],
    }


def dump_json(obj: dict, path: str) -> None:
    with open(path, "w", newline="") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
