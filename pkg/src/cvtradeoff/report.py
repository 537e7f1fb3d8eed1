"""CSV tables, JSON manifests and SVG figures for scenario results."""

from __future__ import annotations

import csv
import io
import json
import math

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "cvtradeoff"
import matplotlib.pyplot as plt  # noqa: E402

from .relations import C_AB  # noqa: E402

STAT_FIELDS = ("eps_a", "eps_b", "sigma_a", "sigma_b")
POINT_FIELDS = STAT_FIELDS + ("c_ab", "lhs_heisenberg", "lhs_ozawa", "lhs_branciard")


def fmt(x) -> str:
    """Nine significant digits in scientific notation."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{float(x):.8e}"


def _write_rows(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def scenario_header(result) -> list[str]:
    header = [result.config.scenario.parameter, *POINT_FIELDS]
    if result.points and result.points[0].mc is not None:
        header += [f"mc_{f}" for f in POINT_FIELDS if f != "c_ab"]
        header += [f"mc_spread_{f}" for f in STAT_FIELDS]
    return header


def scenario_csv(result) -> str:
    rows = []
    for p in result.points:
        row = [fmt(p.parameter)] + [fmt(getattr(p.analytic, f)) for f in POINT_FIELDS]
        if p.mc is not None:
            row += [fmt(getattr(p.mc, f)) for f in POINT_FIELDS if f != "c_ab"]
            row += [fmt(getattr(p.mc_spread, f)) for f in STAT_FIELDS]
        rows.append(row)
    return _write_rows(scenario_header(result), rows)


BOUNDS_HEADER = ["kind", "label", "parameter", "eps_a", "eps_b"]


def bounds_csv(plane) -> str:
    rows = []
    for (relation, variant), (xs, ys) in plane.curves.items():
        label = relation if variant == "any" else f"{relation}:{variant}"
        rows += [["curve", label, "", fmt(x), fmt(y)] for x, y in zip(xs, ys)]
    for name, pts in plane.points.items():
        rows += [["point", name, fmt(t), fmt(x), fmt(y)] for t, x, y in pts]
    return _write_rows(BOUNDS_HEADER, rows)


def manifest_json(manifest: dict) -> str:
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"


_SVG_META = {"Date": None, "Creator": None}


def _save(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata=_SVG_META)
    plt.close(fig)
    return buf.getvalue()


def scenario_svg(result) -> str:
    """Errors (left) and relation left-hand sides (right) against the scan parameter."""
    x = result.parameters
    param = result.config.scenario.parameter
    xlabel = "Relative phase (deg)" if param == "theta_deg" else "Transmission efficiency"
    has_mc = bool(result.points) and result.points[0].mc is not None

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for name, color in (("eps_a", "tab:red"), ("eps_b", "tab:blue")):
        ax1.plot(x, result.column(name), color=color, label=f"ε({name[-1].upper()})")
        if has_mc:
            spread = [getattr(p.mc_spread, name) for p in result.points]
            ax1.errorbar(x, result.column(name, "mc"), yerr=spread, fmt="o", color=color, ms=3)
    ax1.set_xlabel(xlabel)
    ax1.set_ylabel("Error")
    ax1.legend()

    for name, color, label in (
        ("lhs_heisenberg", "tab:blue", "Heisenberg"),
        ("lhs_ozawa", "tab:olive", "Ozawa"),
        ("lhs_branciard", "black", "Branciard"),
    ):
        ax2.plot(x, result.column(name), color=color, label=label)
        if has_mc:
            ax2.plot(x, result.column(name, "mc"), "o", color=color, ms=3)
    ax2.axhline(C_AB, color="red", label="C_AB = 0.25")
    ax2.set_xlabel(xlabel)
    ax2.set_ylabel("LHS of relations")
    ax2.legend()
    fig.tight_layout()
    return _save(fig)


def bounds_svg(plane) -> str:
    fig, ax = plt.subplots(figsize=(5, 5))
    styles = {"heisenberg": ("tab:blue", "--"), "ozawa": ("tab:olive", ":"), "branciard": ("gray", "-")}
    for (relation, variant), (xs, ys) in plane.curves.items():
        color, ls = styles[relation]
        alpha = 1.0 if variant in ("any", "state") else 0.5
        label = relation.capitalize() + ("" if variant == "any" else f" ({variant})")
        ax.plot(xs, ys, color=color, ls=ls, alpha=alpha, label=label)
    markers = {"error-free": ("o", "red"), "nonzero": ("D", "black"), "mixed": ("s", "tab:green")}
    for name, pts in plane.points.items():
        m, c = markers[name]
        ax.plot([p[1] for p in pts], [p[2] for p in pts], m, color=c, mfc="none", label=name)
    ax.set_xlim(-0.02, 1)
    ax.set_ylim(0, 1.5)
    ax.set_xlabel("ε(A)")
    ax.set_ylabel("ε(B)")
    ax.legend(fontsize="small")
    fig.tight_layout()
    return _save(fig)
