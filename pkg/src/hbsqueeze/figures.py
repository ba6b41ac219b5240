"""Figure datasets (pseudo-yield surface, plate stress, pressure, force) and emitters."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import ParameterError, SolverError
from .first_order import R_MIN, find_r0, p1_profile, plate_stress
from .force import edge_pressure_pR, total_force
from .leading_order import pressure_zero_profile
from .numerics import ROOT_TOL, QUAD_TOL, Tolerance, tolerances
from .params import FluidParams
from .yield_surface import z0_of_r

__all__ = [
    "FIGURE_IDS",
    "SweepSpec",
    "Series",
    "FigureDataset",
    "run_figure",
    "run_sweep",
    "emit",
    "dump_csv",
]

FIGURE_IDS = ("fig2", "fig3", "fig4a", "fig4b", "fig5", "fig6")

# artifact defaults; the figure captions only fix eps and the n values
PROFILE_B = (0.01, 0.1, 1.0, 10.0)
FORCE_B = tuple(10.0 ** (k / 3.0) for k in range(-6, 7))

_DEFAULT_N = {
    "fig2": (0.25, 0.5, 1.0),
    "fig3": (0.5,),
    "fig4a": (0.5,),
    "fig4b": (0.5, 1.0, 1.5),
    "fig5": (1.0,),
    "fig6": (0.25, 0.5, 1.0, 1.5),
    "sweep": (0.25, 0.5, 1.0, 1.5),
}


@dataclass(frozen=True)
class SweepSpec:
    """Parameter grid for one dataset. Empty lists mean "use the figure default"."""

    B_values: tuple[float, ...] = ()
    n_values: tuple[float, ...] = ()
    eps: float = 0.1
    r_grid: int = 50
    z_grid: int = 21
    root_tol: Tolerance = ROOT_TOL
    quad_tol: Tolerance = QUAD_TOL

    def __post_init__(self):
        if self.r_grid < 2 or self.z_grid < 2:
            raise ParameterError(f"grids need at least 2 points, got r_grid={self.r_grid}, z_grid={self.z_grid}")
        if not 0 < self.eps < 1:
            raise ParameterError(f"eps must lie in (0, 1), got {self.eps!r}")
        object.__setattr__(self, "B_values", tuple(float(b) for b in self.B_values))
        object.__setattr__(self, "n_values", tuple(float(n) for n in self.n_values))

    def tolerance_dict(self) -> dict:
        return {"root": self.root_tol.as_dict(), "quad": self.quad_tol.as_dict()}


@dataclass
class Series:
    label: str
    points: list[tuple[float, float]] = field(default_factory=list)
    params: dict = field(default_factory=dict)


@dataclass
class FigureDataset:
    figure_id: str
    series: list[Series]
    params: dict
    metadata: dict

    def to_dict(self) -> dict:
        return {
            "figure_id": self.figure_id,
            "params": self.params,
            "metadata": self.metadata,
            "series": [{"label": s.label, "params": s.params, "points": [[x, y] for x, y in s.points]}
                       for s in self.series],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FigureDataset":
        series = [
            Series(label=s["label"], points=[(x, y) for x, y in s["points"]], params=s.get("params", {}))
            for s in data["series"]
        ]
        return cls(data["figure_id"], series, data.get("params", {}), data.get("metadata", {}))


def _resolve(spec: SweepSpec, figure_id: str) -> tuple[tuple[float, ...], tuple[float, ...]]:
    B = spec.B_values or (FORCE_B if figure_id in ("fig5", "fig6", "sweep") else PROFILE_B)
    n = spec.n_values or _DEFAULT_N[figure_id]
    return tuple(sorted(B)), tuple(n)


def _radii(spec: SweepSpec) -> list[float]:
    # cell centres: r = 0 is singular for first-order quantities
    N = spec.r_grid
    return [(i + 0.5) / N for i in range(N)]


def _fmt(x: float) -> str:
    return f"{x:g}"


def _params(B: float, n: float, eps: float) -> FluidParams:
    return FluidParams(B=B, n=n, eps=eps)


class _at:
    """Re-raise solver failures with the parameter coordinates attached."""

    def __init__(self, **coords):
        self.coords = coords

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, SolverError):
            where = ", ".join(f"{k}={v!r}" for k, v in self.coords.items())
            raise type(exc)(f"{exc} [at {where}]") from exc
        return False


def _fig2(spec, Bs, ns):
    N = spec.r_grid
    radii = [i / (N - 1) for i in range(N)]
    out = []
    for n in ns:
        for B in Bs:
            p = _params(B, n, spec.eps)
            s = Series(f"z0 B={_fmt(B)} n={_fmt(n)}", params={"B": B, "n": n})
            for r in radii:
                with _at(B=B, n=n, r=r):
                    s.points.append((r, z0_of_r(p, r)))
            out.append(s)
    return out


def _fig3(spec, Bs, ns):
    radii = [r for r in _radii(spec) if r > R_MIN]
    out = []
    for n in ns:
        diamonds = Series(f"r0 n={_fmt(n)}", params={"n": n, "marker": "diamond"})
        for B in Bs:
            p = _params(B, n, spec.eps)
            dashed = Series(f"tau0 B={_fmt(B)} n={_fmt(n)}", params={"B": B, "n": n, "order": 0})
            solid = Series(f"tau B={_fmt(B)} n={_fmt(n)}", params={"B": B, "n": n, "order": 1})
            for r in radii:
                with _at(B=B, n=n, r=r):
                    dashed.points.append((r, B / z0_of_r(p, r)))
                    solid.points.append((r, plate_stress(p, r)))
            out += [dashed, solid]
            with _at(B=B, n=n):
                r0 = find_r0(p)
            if r0 is not None:
                diamonds.points.append((r0, B))
        diamonds.points.sort()
        out.append(diamonds)
    return out


def _pressure_series(spec, B, n, both: bool):
    p = _params(B, n, spec.eps)
    radii = _radii(spec)
    with _at(B=B, n=n):
        pR = edge_pressure_pR(p)
        p0 = pressure_zero_profile(p, radii, pR)
        p1 = p1_profile(p, radii)
    total = Series(f"p B={_fmt(B)} n={_fmt(n)}", list(zip(radii, [a + spec.eps * b for a, b in zip(p0, p1)])),
                   {"B": B, "n": n, "order": 1})
    if not both:
        return [total]
    lead = Series(f"p0 B={_fmt(B)} n={_fmt(n)}", list(zip(radii, p0)), {"B": B, "n": n, "order": 0})
    return [lead, total]


def _fig4(spec, Bs, ns, both):
    out = []
    for n in ns:
        for B in Bs:
            out += _pressure_series(spec, B, n, both)
    return out


def _breakdowns(spec, Bs, n):
    rows = []
    for B in Bs:
        with _at(B=B, n=n):
            rows.append((B, total_force(_params(B, n, spec.eps))))
    return rows


def _fig5(spec, Bs, ns):
    out = []
    eps = spec.eps
    for n in ns:
        rows = _breakdowns(spec, Bs, n)
        tag = f"n={_fmt(n)}"
        out += [
            Series(f"F {tag}", [(B, f.F_total) for B, f in rows], {"n": n, "quantity": "F"}),
            Series(f"F0 {tag}", [(B, f.F0) for B, f in rows], {"n": n, "quantity": "F0"}),
            Series(f"|eps F1| {tag}", [(B, abs(eps * f.F1)) for B, f in rows], {"n": n, "quantity": "|eps F1|"}),
            Series(f"eps pi pR {tag}", [(B, eps * math.pi * f.p_R) for B, f in rows],
                   {"n": n, "quantity": "eps pi p_R"}),
        ]
    return out


def _fig6(spec, Bs, ns):
    out = []
    for n in ns:
        rows = _breakdowns(spec, Bs, n)
        out.append(Series(f"F n={_fmt(n)}", [(B, f.F_total) for B, f in rows], {"n": n, "quantity": "F"}))
    return out


def _sweep(spec, Bs, ns):
    out = []
    for n in ns:
        rows = _breakdowns(spec, Bs, n)
        tag = f"n={_fmt(n)}"
        for name, get in (("F", lambda f: f.F_total), ("F0", lambda f: f.F0),
                          ("F1", lambda f: f.F1), ("pR", lambda f: f.p_R)):
            out.append(Series(f"{name} {tag}", [(B, get(f)) for B, f in rows], {"n": n, "quantity": name}))
    return out


def _dataset(figure_id, spec, Bs, ns, series) -> FigureDataset:
    return FigureDataset(
        figure_id=figure_id,
        series=series,
        params={"B_values": list(Bs), "n_values": list(ns), "eps": spec.eps,
                "r_grid": spec.r_grid, "z_grid": spec.z_grid},
        metadata={"tolerances": spec.tolerance_dict(), "version": __version__, "r_min": R_MIN},
    )


def run_figure(spec: SweepSpec, figure_id: str) -> FigureDataset:
    """Evaluate every series of one figure on the grid described by ``spec``."""
    if figure_id not in FIGURE_IDS:
        raise ParameterError(f"unknown figure id {figure_id!r}; expected one of {', '.join(FIGURE_IDS)}")
    Bs, ns = _resolve(spec, figure_id)
    builders = {
        "fig2": _fig2,
        "fig3": _fig3,
        "fig4a": lambda s, b, n: _fig4(s, b, n, True),
        "fig4b": lambda s, b, n: _fig4(s, b, n, False),
        "fig5": _fig5,
        "fig6": _fig6,
    }
    with tolerances(root=spec.root_tol, quad=spec.quad_tol):
        series = builders[figure_id](spec, Bs, ns)
    return _dataset(figure_id, spec, Bs, ns, series)


def run_sweep(spec: SweepSpec) -> FigureDataset:
    """Force breakdown (F, F0, F1, p_R) against B for each n."""
    Bs, ns = _resolve(spec, "sweep")
    with tolerances(root=spec.root_tol, quad=spec.quad_tol):
        series = _sweep(spec, Bs, ns)
    return _dataset("sweep", spec, Bs, ns, series)


def dump_csv(dataset: FigureDataset, fh) -> None:
    """``series,x,y`` rows; floats in shortest round-trip form."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["series", "x", "y"])
    for s in dataset.series:
        for x, y in s.points:
            writer.writerow([s.label, repr(float(x)), repr(float(y))])


def _write_csv(dataset: FigureDataset, path: Path) -> None:
    with path.open("w", newline="") as fh:
        dump_csv(dataset, fh)


def _write_svg(dataset: FigureDataset, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for s in dataset.series:
        if not s.points:
            continue
        xs, ys = zip(*s.points)
        style = "D" if s.params.get("marker") == "diamond" else "-"
        ax.plot(xs, ys, style, label=s.label)
    if dataset.figure_id in ("fig5", "fig6", "sweep"):
        ax.set_xscale("log")
        if all(y > 0 for s in dataset.series for _, y in s.points):
            ax.set_yscale("log")
        ax.set_xlabel("B")
    else:
        ax.set_xlabel("r")
    ax.legend(fontsize=6)
    ax.set_title(dataset.figure_id)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def emit(dataset: FigureDataset, fmt: str, path: str | Path) -> Path:
    """Write ``dataset`` as ``csv``, ``json`` or ``svg``."""
    path = Path(path)
    try:
        if fmt == "csv":
            _write_csv(dataset, path)
        elif fmt == "json":
            path.write_text(json.dumps(dataset.to_dict(), indent=1))
        elif fmt == "svg":
            _write_svg(dataset, path)
        else:
            raise ParameterError(f"unknown format {fmt!r}; expected csv, json or svg")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
