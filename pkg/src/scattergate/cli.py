"""Batch front-end: scenario runners, parameter sweeps, deterministic CSV output.

Scenarios: gate, wavepacket, lattice-transfer, lattice-sweep, design, and
reproduce-paper (the full desk-scale number table).  Configuration comes from
command-line flags plus an optional flat key=value file (flags win).  Output
files carry a comment header echoing the tool version and every resolved
parameter; identical configs produce byte-identical files (the timestamp
line is suppressed under --reproducible).

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

import argparse
import datetime
import math
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__, atomphys, lattice, wavepacket
from .core import NumericsError, basis_state, apply_gate, concurrence
from .smatrix import ScatteringContext, Statistics, build_gate, output_concurrence

_BASIS = ("uu", "ud", "du", "dd")


class ConfigError(ValueError):
    """Invalid or incomplete run configuration."""


@dataclass(frozen=True)
class RunConfig:
    """A validated scenario run: resolved parameters and output policy."""

    scenario: str
    params: dict
    out: str
    dat: str
    reproducible: bool
    jobs: int


# ---------------------------------------------------------------------------
# Value parsing
# ---------------------------------------------------------------------------

_LENGTH_UNITS = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "nm": 1e-9, "A": 1e-10, "angstrom": 1e-10}
_ANGULAR_UNITS = {"rad/s": 1.0, "krad/s": 1e3, "Mrad/s": 1e6}
_FREQ_UNITS = {"Hz": 2.0 * math.pi, "kHz": 2.0 * math.pi * 1e3, "MHz": 2.0 * math.pi * 1e6}
_MASS_UNITS = {"kg": 1.0}

_QUANTITY_RE = re.compile(r"^\s*([-+]?[\d.]+(?:[eE][-+]?\d+)?)\s*([A-Za-z/]*)\s*$")


def _parse_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"cannot parse boolean {value!r}")


def parse_quantity(text: str, kind: str) -> float:
    """Parse '50A', '1064nm', '100kHz', '2.5e5' into SI.

    kind selects the unit table: 'length', 'omega' (angular rad/s; Hz-family
    suffixes are ordinary frequencies and get a 2*pi), or 'mass'.  A bare
    number is taken as already SI (rad/s for 'omega').
    """
    m = _QUANTITY_RE.match(str(text))
    if not m:
        raise ConfigError(f"cannot parse quantity {text!r}")
    value, unit = float(m.group(1)), m.group(2)
    if not unit:
        return value
    tables = {
        "length": _LENGTH_UNITS,
        "omega": {**_ANGULAR_UNITS, **_FREQ_UNITS},
        "mass": _MASS_UNITS,
    }[kind]
    if unit not in tables:
        raise ConfigError(f"unknown {kind} unit {unit!r} in {text!r}")
    return value * tables[unit]


def parse_grid(text: str) -> list:
    """Parse 'a:b:s' (inclusive endpoints within roundoff), 'x,y,z' or 'x'."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid {text!r} must be start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ConfigError(f"grid {text!r} must have step > 0 and stop >= start")
        n = int(round((stop - start) / step))
        return [round(start + k * step, 12) for k in range(n + 1)]
    return [float(p) for p in text.split(",") if p.strip()]


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


# ---------------------------------------------------------------------------
# Output assembly
# ---------------------------------------------------------------------------

def render_csv(config: RunConfig, columns, rows) -> str:
    lines = [f"# scattergate {__version__}"]
    if not config.reproducible:
        lines.append(f"# generated {datetime.datetime.now().isoformat()}")
    lines.append(f"# scenario = {config.scenario}")
    for key in sorted(config.params):
        lines.append(f"# {key} = {_fmt(config.params[key])}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def emit_plot_data(rows, columns) -> str:
    """Whitespace-separated numeric table with a leading column-name comment.

    Refuses an empty row list and rows whose length differs from columns.
    """
    if not rows:
        raise ValueError("plot data needs at least one row")
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(
                f"mixed-length rows: expected {len(columns)} columns, got {len(row)}"
            )
    lines = ["# " + " ".join(columns)]
    for row in rows:
        lines.append(" ".join(_fmt(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _parallel_map(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Scenario: gate
# ---------------------------------------------------------------------------

def _validate_gate(p):
    try:
        stats = Statistics(p.get("stats", "boson"))
        ctx = ScatteringContext(stats, float(p["p_a"]), float(p["p_b"]), float(p["c"]))
        if ctx.p_total == 0 and ctx.c == 0:
            raise ValueError("p_A + p_B and c cannot both vanish")
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"gate scenario: {exc}") from exc
    return {"p_a": ctx.p_a, "p_b": ctx.p_b, "c": ctx.c, "stats": stats.value}


def _run_gate(config):
    p = config.params
    ctx = ScatteringContext(Statistics(p["stats"]), p["p_a"], p["p_b"], p["c"])
    gate = build_gate(ctx)
    conc = output_concurrence(ctx)
    out_state = apply_gate(gate, basis_state("ud"))
    text = [f"gate for p_A={_fmt(p['p_a'])}, p_B={_fmt(p['p_b'])}, "
            f"c={_fmt(p['c'])}, statistics={p['stats']} (basis uu, ud, du, dd):"]
    for i in range(4):
        text.append(
            "  [" + "  ".join(f"{gate.matrix[i, j]:+.6f}" for j in range(4)) + "]"
        )
    text.append(f"output state on |ud>: {np.array2string(out_state.amplitudes, precision=6)}")
    text.append(f"output concurrence on |ud>: {_fmt(conc)}")
    columns = ["p_a", "p_b", "c", "stats", "concurrence"]
    row = [p["p_a"], p["p_b"], p["c"], p["stats"], conc]
    for i in range(4):
        for j in range(4):
            columns += [f"g_{_BASIS[i]}_{_BASIS[j]}_re", f"g_{_BASIS[i]}_{_BASIS[j]}_im"]
            row += [gate.matrix[i, j].real, gate.matrix[i, j].imag]
    return columns, [row], None, "\n".join(text)


# ---------------------------------------------------------------------------
# Scenario: wavepacket
# ---------------------------------------------------------------------------

def _validate_wavepacket(p):
    try:
        deltas = parse_grid(p.get("delta", "0"))
        etas = parse_grid(p["eta"])
        c = float(p.get("c", 1.0))
        if c <= 0:
            raise ValueError("c must be > 0")
        for eta in etas:
            if eta <= 0:
                raise ValueError(f"eta must be > 0, got {eta}")
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"wavepacket scenario: {exc}") from exc
    return {
        "delta": deltas,
        "eta": etas,
        "c": c,
        "oracle": _parse_bool(p.get("oracle", False)),
    }


def _wavepacket_point(args):
    delta, eta, c, oracle = args
    spec = wavepacket.WavepacketSpec(delta=delta, eta=eta, c=c)
    analytic = wavepacket.analytic_concurrence(spec)
    if not oracle:
        return (delta, eta, analytic)
    numeric = wavepacket.numeric_concurrence(c * (1.0 + delta), eta * c, c)
    return (delta, eta, analytic, numeric, abs(analytic - numeric))


def _run_wavepacket(config):
    p = config.params
    points = sorted((d, e, p["c"], p["oracle"]) for d in p["delta"] for e in p["eta"])
    rows = _parallel_map(_wavepacket_point, points, config.jobs)
    rows.sort(key=lambda r: (r[0], r[1]))
    columns = ["delta", "eta", "concurrence"]
    if p["oracle"]:
        columns += ["concurrence_numeric", "abs_diff"]
    text = "\n".join(
        f"delta={_fmt(r[0])} eta={_fmt(r[1])} C={_fmt(r[2])}" for r in rows
    )
    return columns, rows, (columns, rows), text


# ---------------------------------------------------------------------------
# Scenario: lattice-transfer
# ---------------------------------------------------------------------------

def _validate_lattice_transfer(p):
    try:
        n_list = [int(v) for v in parse_grid(p["n"])]
        j = float(p.get("j", 1.0))
        if j <= 0:
            raise ValueError("J must be > 0")
        for n in n_list:
            if n < 3:
                raise ValueError(f"chain length must be >= 3, got {n}")
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"lattice-transfer scenario: {exc}") from exc
    return {"n": sorted(n_list), "j": j}


def _transfer_point(args):
    n, j = args
    opt = lattice.optimize_boundary_coupling(n, j)
    p_grid, density = lattice.momentum_distribution(n, j, opt.j0, opt.t_transfer / 2.0)
    center, _ = lattice.fit_lorentzian_peak(p_grid, density)
    return (n, j, opt.j0, opt.t_transfer, opt.f_1n, opt.f_1n**4, abs(center))


def _run_lattice_transfer(config):
    p = config.params
    rows = _parallel_map(_transfer_point, [(n, p["j"]) for n in p["n"]], config.jobs)
    rows.sort(key=lambda r: r[0])
    columns = ["n", "j", "j0_opt", "t_transfer", "f_1n", "f_1n_pow4", "momentum_peak_abs"]
    text = "\n".join(
        f"N={r[0]}: J0/J={_fmt(r[2])} t={_fmt(r[3])} f_1N={_fmt(r[4])}" for r in rows
    )
    dat = ([c for c in columns if c != "j"], [r[:1] + r[2:] for r in rows])
    return columns, rows, dat, text


# ---------------------------------------------------------------------------
# Scenario: lattice-sweep
# ---------------------------------------------------------------------------

def _validate_lattice_sweep(p):
    try:
        n = int(p["n"])
        if n < 3:
            raise ValueError(f"chain length must be >= 3, got {n}")
        u_grid = parse_grid(p["u_grid"])
        if any(u < 0 for u in u_grid):
            raise ValueError("U values must be >= 0")
        j = float(p.get("j", 1.0))
        if j <= 0:
            raise ValueError("J must be > 0")
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"lattice-sweep scenario: {exc}") from exc
    return {"n": n, "u_grid": sorted(u_grid), "j": j}


def _run_lattice_sweep(config):
    p = config.params
    opt = lattice.optimize_boundary_coupling(p["n"], p["j"])
    points = [(p["n"], p["j"], opt.j0, u, opt.t_transfer) for u in p["u_grid"]]
    results = _parallel_map(lattice.endpoint_concurrence_point, points, config.jobs)
    rows = [
        (u, c, abs(ratio), float(np.angle(ratio)))
        for u, (c, ratio) in zip(p["u_grid"], results)
    ]
    rows.sort(key=lambda r: r[0])
    columns = ["u", "c_1n", "ratio_abs", "ratio_phase"]
    best = max(rows, key=lambda r: r[1])
    text = (
        f"N={p['n']}: J0/J={_fmt(opt.j0)} t={_fmt(opt.t_transfer)} "
        f"f_1N={_fmt(opt.f_1n)}\n"
        f"C_1N argmax: U={_fmt(best[0])} C={_fmt(best[1])}"
    )
    return columns, rows, (columns, rows), text


# ---------------------------------------------------------------------------
# Scenario: design
# ---------------------------------------------------------------------------

def _validate_design(p):
    try:
        species = p.get("species", "rb87")
        if species != "rb87":
            preset = atomphys.load_species_preset(species)
        else:
            preset = None
        wavelengths = [
            parse_quantity(w, "length") for w in str(p["wavelength"]).split(",")
        ]
        omega = parse_quantity(p.get("omega_perp", "1e5"), "omega")
        a3d = parse_quantity(p["a3d"], "length") if "a3d" in p and p["a3d"] is not None else None
    except (KeyError, ValueError, OSError) as exc:
        raise ConfigError(f"design scenario: {exc}") from exc
    return {
        "species": species,
        "preset": preset,
        "wavelength": sorted(wavelengths),
        "omega_perp": omega,
        "a3d": a3d,
    }


def _run_design(config):
    p = config.params
    rows = []
    for lam in p["wavelength"]:
        if p["preset"] is None:
            params = atomphys.rb87_params(
                omega_perp=p["omega_perp"],
                wavelength=lam,
                **({"a3d": p["a3d"]} if p["a3d"] else {}),
            )
        else:
            params = atomphys.params_from_preset(
                p["preset"], omega_perp=p["omega_perp"], wavelength=lam
            )
        c_1d = atomphys.coupling_from_3d(params)
        p_star = atomphys.cic_corrected_momentum(c_1d, params)
        v0, j_hop = atomphys.design_lattice_depth(params)
        energies = atomphys.lattice_params(params, v0)
        rows.append(
            (
                lam,
                c_1d,
                p_star,
                energies.e_recoil,
                v0,
                j_hop,
                j_hop / atomphys.PLANCK_H,
                energies.u_ud,
                energies.u_ud / (2.0 * j_hop),
            )
        )
    columns = [
        "wavelength_m", "c_1d_per_m", "p_star_per_m", "e_recoil_J",
        "v0_over_er", "j_hop_J", "j_over_h_Hz", "u_ud_J", "u_over_2j",
    ]
    text = "\n".join(
        f"lambda={_fmt(r[0])} m: c={_fmt(r[1])} 1/m, V0/E_R={_fmt(r[4])}, "
        f"J/h={_fmt(r[6])} Hz"
        for r in rows
    )
    return columns, rows, (columns, rows), text


# ---------------------------------------------------------------------------
# Scenario: reproduce-paper
# ---------------------------------------------------------------------------

def _summary_row(name, value, lo, hi):
    return (name, value, lo, hi, int(lo <= value <= hi))


def _paper_gate_block():
    c = 1.0
    p_grid = np.linspace(0.05, 5.0, 400)
    conc = [
        output_concurrence(ScatteringContext(Statistics.BOSON, p, 0.0, c))
        for p in p_grid
    ]
    best = float(p_grid[int(np.argmax(conc))])
    at_c = output_concurrence(ScatteringContext(Statistics.BOSON, c, 0.0, c))
    rows = list(zip(p_grid.tolist(), conc))
    return rows, [
        _summary_row("gate_concurrence_at_p_eq_c", at_c, 1.0, 1.0),
        _summary_row("gate_argmax_p_over_c", best, 0.98, 1.02),
    ]


def _paper_wavepacket_block(jobs):
    points = sorted(
        (d, e, 1.0, True) for d in (-0.3, 0.0, 0.3) for e in (0.05, 0.2, 0.5)
    )
    rows = _parallel_map(_wavepacket_point, points, jobs)
    worst = max(r[4] for r in rows)
    c_plus = {e: r[2] for r in rows for e in [r[1]] if r[0] == 0.3}
    c_minus = {e: r[2] for r in rows for e in [r[1]] if r[0] == -0.3}
    margin = min(c_plus[e] - c_minus[e] for e in (0.3, 0.5) if e in c_plus)
    summary = [
        _summary_row("wavepacket_worst_formula_vs_quadrature", worst, 0.0, 1e-6),
        _summary_row("wavepacket_plus_minus_delta_margin", margin, 1e-12, 1.0),
    ]
    return rows, summary


def _paper_lattice_block(n, jobs):
    opt = lattice.optimize_boundary_coupling(n, 1.0)
    u_grid = [round(0.5 + 0.025 * k, 12) for k in range(41)]
    points = [(n, 1.0, opt.j0, u, opt.t_transfer) for u in u_grid]
    results = _parallel_map(lattice.endpoint_concurrence_point, points, jobs)
    sweep_rows = [
        (u, c, abs(r), float(np.angle(r))) for u, (c, r) in zip(u_grid, results)
    ]
    u_opt = lattice.extract_u_opt(n, 1.0)
    c_opt = lattice.boundary_concurrence(n, u_opt, 1.0)
    ja = lattice.joint_amplitudes(
        lattice.LatticeSpec(n, 1.0, opt.j0, 0.0),
        lattice.Sector.SYMMETRIC_IDENTICAL,
        opt.t_transfer,
        "chebyshev",
    )
    null_ratio = abs(ja.a_11 / ja.a_1n)
    expected = {25: (0.97, 0.95, 0.88), 51: (0.95, 0.97, 0.81)}
    f_ref, u_ref, c_ref = expected.get(n, (opt.f_1n, u_opt, c_opt))
    summary = [
        _summary_row(f"f_1n_N{n}", opt.f_1n, f_ref - 0.01, f_ref + 0.01),
        _summary_row(
            f"t_transfer_over_njj_N{n}", opt.t_transfer / n, 0.8, 1.5
        ),
        _summary_row(f"u_opt_N{n}", u_opt, u_ref - 0.01, u_ref + 0.01),
        _summary_row(f"c_opt_N{n}", c_opt, c_ref - 0.02, c_ref + 0.02),
        _summary_row(f"identical_null_ratio_N{n}", null_ratio, 0.0, 0.02),
    ]
    transfer_row = (n, opt.j0, opt.t_transfer, opt.f_1n, opt.f_1n**4, null_ratio)
    return transfer_row, sweep_rows, summary


def _paper_collision_block():
    rows, summary = [], []
    for u in (0.25, 0.5, 1.0):
        res = lattice.collide_packets(u_updown=2.0 * u)
        ratio = res.ratio
        rel = abs(ratio - (-1j * u)) / u
        rows.append((u, ratio.real, ratio.imag, -u, rel))
        summary.append(_summary_row(f"collision_rel_err_u{_fmt(u)}", rel, 0.0, 0.05))
    return rows, summary


def _paper_design_block():
    rows = []
    summary = []
    for lam in (830e-9, 1064e-9):
        params = atomphys.rb87_params(wavelength=lam)
        c_1d = atomphys.coupling_from_3d(params)
        v0, j_hop = atomphys.design_lattice_depth(params)
        j_over_h = j_hop / atomphys.PLANCK_H
        rows.append((lam, c_1d, v0, j_over_h))
        tag = f"{lam*1e9:.0f}nm"
        summary += [
            _summary_row(f"design_v0_over_er_{tag}", v0, 1.5, 6.0),
            _summary_row(f"design_j_over_h_Hz_{tag}", j_over_h, 100.0, 800.0),
        ]
    summary.append(
        _summary_row("rb87_coupling_c_per_m", rows[0][1], 2e5, 5e6)
    )
    return rows, summary


def _validate_reproduce(p):
    outdir = str(p.get("outdir", "paper-reproduction"))
    return {"outdir": outdir}


def _run_reproduce(config):
    jobs = config.jobs
    outdir = config.params["outdir"]
    files = {}
    summary = []

    gate_rows, s = _paper_gate_block()
    summary += s
    files["gate_scan.dat"] = emit_plot_data(gate_rows, ["p_over_c", "concurrence"])

    wp_rows, s = _paper_wavepacket_block(jobs)
    summary += s
    files["wavepacket_grid.csv"] = _rows_csv(
        config, ["delta", "eta", "concurrence", "concurrence_numeric", "abs_diff"],
        wp_rows,
    )
    eta_rows = [
        (e, wavepacket.analytic_concurrence(wavepacket.WavepacketSpec(0.0, e)))
        for e in [round(0.01 + 0.01 * k, 12) for k in range(60)]
    ]
    files["concurrence_vs_eta.dat"] = emit_plot_data(eta_rows, ["eta", "concurrence"])

    transfer_rows = []
    for n in (25, 51):
        transfer_row, sweep_rows, s = _paper_lattice_block(n, jobs)
        transfer_rows.append(transfer_row)
        summary += s
        files[f"lattice_sweep_N{n}.csv"] = _rows_csv(
            config, ["u", "c_1n", "ratio_abs", "ratio_phase"], sweep_rows
        )
        files[f"lattice_sweep_N{n}.dat"] = emit_plot_data(
            [(r[0], r[1]) for r in sweep_rows], ["u", "c_1n"]
        )
    files["lattice_transfer.csv"] = _rows_csv(
        config,
        ["n", "j0_opt", "t_transfer", "f_1n", "f_1n_pow4", "identical_null_ratio"],
        transfer_rows,
    )

    coll_rows, s = _paper_collision_block()
    summary += s
    files["collision.csv"] = _rows_csv(
        config, ["u", "ratio_re", "ratio_im", "predicted_im", "rel_err"], coll_rows
    )

    design_rows, s = _paper_design_block()
    summary += s
    files["design_rb87.csv"] = _rows_csv(
        config, ["wavelength_m", "c_1d_per_m", "v0_over_er", "j_over_h_Hz"], design_rows
    )

    files["summary.csv"] = _rows_csv(
        config, ["quantity", "value", "band_lo", "band_hi", "ok"], summary
    )
    n_fail = sum(1 for r in summary if not r[4])
    text = "\n".join(
        f"{'ok ' if r[4] else 'FAIL'} {r[0]} = {_fmt(r[1])} (band {_fmt(r[2])} .. {_fmt(r[3])})"
        for r in summary
    )
    text += f"\n{len(summary) - n_fail}/{len(summary)} checks in band"
    return files, text, outdir


def _rows_csv(config, columns, rows):
    return render_csv(config, columns, rows)


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------

_SCENARIOS = {
    "gate": (_validate_gate, _run_gate),
    "wavepacket": (_validate_wavepacket, _run_wavepacket),
    "lattice-transfer": (_validate_lattice_transfer, _run_lattice_transfer),
    "lattice-sweep": (_validate_lattice_sweep, _run_lattice_sweep),
    "design": (_validate_design, _run_design),
    "reproduce-paper": (_validate_reproduce, _run_reproduce),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scattergate",
        description="Two-qubit gates from 1D scattering: simulators and designers.",
    )
    sub = parser.add_subparsers(dest="scenario", required=True)

    def common(sp):
        sp.add_argument("--config", help="flat key=value config file; flags override")
        sp.add_argument("--out", help="CSV output path")
        sp.add_argument("--dat", help="plot-data (.dat) output path")
        sp.add_argument("--reproducible", action="store_true",
                        help="suppress the timestamp comment for byte-identical output")
        sp.add_argument("--jobs", type=int, default=1,
                        help="parallel worker processes for sweep points")

    sp = sub.add_parser("gate", help="one collision gate and its concurrence")
    sp.add_argument("--pA", dest="p_a")
    sp.add_argument("--pB", dest="p_b")
    sp.add_argument("--c", dest="c")
    sp.add_argument("--stats", dest="stats", choices=["boson", "fermion"])
    common(sp)

    sp = sub.add_parser("wavepacket", help="Gaussian-packet concurrence grid")
    sp.add_argument("--delta", dest="delta")
    sp.add_argument("--eta", dest="eta")
    sp.add_argument("--c", dest="c")
    sp.add_argument("--oracle", dest="oracle", action="store_const", const=True,
                    help="add the quadrature-oracle column")
    common(sp)

    sp = sub.add_parser("lattice-transfer", help="optimize boundary couplings")
    sp.add_argument("--N", dest="n")
    sp.add_argument("--J", dest="j")
    common(sp)

    sp = sub.add_parser("lattice-sweep", help="C_1N versus U at the transfer time")
    sp.add_argument("--N", dest="n")
    sp.add_argument("--U-grid", dest="u_grid")
    sp.add_argument("--J", dest="j")
    common(sp)

    sp = sub.add_parser("design", help="atomic parameters: c, momentum, lattice depth")
    sp.add_argument("--species", dest="species",
                    help="'rb87' or a species preset file path")
    sp.add_argument("--lambda", dest="wavelength",
                    help="laser wavelength(s), e.g. '1064nm' or '830nm,1064nm'")
    sp.add_argument("--omega-perp", dest="omega_perp",
                    help="transverse trap frequency (rad/s; Hz suffixes get 2*pi)")
    sp.add_argument("--a3d", dest="a3d", help="3D scattering length, e.g. '50A'")
    common(sp)

    sp = sub.add_parser("reproduce-paper", help="full desk-scale number table")
    sp.add_argument("--outdir", dest="outdir")
    common(sp)

    return parser


def _read_config_file(path) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value")
                key, _, value = line.partition("=")
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


def resolve_config(args) -> RunConfig:
    scenario = args.scenario
    validate, _ = _SCENARIOS[scenario]
    raw = {}
    if getattr(args, "config", None):
        raw.update(_read_config_file(args.config))
    skip = {"scenario", "config", "out", "dat", "reproducible", "jobs"}
    for key, value in vars(args).items():
        if key in skip or value is None:
            continue
        raw[key] = value
    jobs = int(getattr(args, "jobs", 1) or 1)
    if jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    params = validate(raw)
    return RunConfig(
        scenario=scenario,
        params=params,
        out=getattr(args, "out", None),
        dat=getattr(args, "dat", None),
        reproducible=bool(getattr(args, "reproducible", False)),
        jobs=jobs,
    )


def run(config: RunConfig) -> int:
    _, runner = _SCENARIOS[config.scenario]
    if config.scenario == "reproduce-paper":
        files, text, outdir = runner(config)
        os.makedirs(outdir, exist_ok=True)
        for name in sorted(files):
            with open(os.path.join(outdir, name), "w", encoding="utf-8") as fh:
                fh.write(files[name])
        print(text)
        return 0
    columns, rows, dat, text = runner(config)
    csv_text = render_csv(config, columns, rows)
    dat_text = None
    if config.dat is not None:
        if dat is None:
            raise ConfigError(f"scenario {config.scenario} has no plot-data output")
        dat_columns, dat_rows = dat
        dat_text = emit_plot_data(dat_rows, dat_columns)
    if config.out is not None:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    if dat_text is not None:
        with open(config.dat, "w", encoding="utf-8") as fh:
            fh.write(dat_text)
    if text:
        print(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = resolve_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericsError, ValueError) as exc:
        print(
            f"numerical failure in scenario '{config.scenario}' "
            f"(params {config.params}): {exc}",
            file=sys.stderr,
        )
        return 3


if __name__ == "__main__":
    sys.exit(main())
