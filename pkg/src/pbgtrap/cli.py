"""Command-line entry point: figures, sweeps, oracle runs and Stark-shift planning."""

from __future__ import annotations

import argparse
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import band_edge, oracle_bath
from .band_edge import DEGENERATE_D, PhysicalParams, amplitude_series, steady_amplitude_sq
from .dynamics import BellLikeState, apply_two_qubit_map, build_bell_like
from .entanglement import asymptotic_concurrence, closed_form_from_q2, concurrence, esd_threshold

log = logging.getLogger("pbgtrap")

QUANTITIES = ("q", "q2", "c_phi", "c_psi", "c_general", "asymptotic")
FIGURE_DETUNINGS = (-10.0, -4.0, -1.0, 0.0, 1.0, 10.0)
SWEEP_SKIP = 1e-3
BELL_ALPHA = 1.0 / math.sqrt(2.0)
REFERENCE_BETA_HZ = 20e3


@dataclass(frozen=True)
class SweepSpec:
    quantity: str
    d_values: tuple[float, ...]
    tau_max: float = 10.0
    tau_step: float = 0.01
    alpha: float = BELL_ALPHA
    gamma: float = 0.0
    family: str = "phi"

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ValueError(f"quantity must be one of {QUANTITIES}")
        if self.family not in ("phi", "psi"):
            raise ValueError("family must be 'phi' or 'psi'")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if not self.d_values:
            raise ValueError("no detunings given")
        if not (self.tau_max >= 0 and self.tau_step > 0):
            raise ValueError("need tau_max >= 0 and tau_step > 0")
        for d in self.d_values:
            band_edge.check_detuning(d)

    def tau_grid(self) -> np.ndarray:
        n = int(round(self.tau_max / self.tau_step))
        return np.round(np.arange(n + 1) * self.tau_step, 12)


def fmt(v: float) -> str:
    return f"{float(v) + 0.0:.12g}"


def detuning_grid(start: float, stop: float, step: float) -> list[float]:
    """Evenly spaced detunings with points near the degenerate value removed."""
    n = int(round((stop - start) / step))
    grid = []
    for k in range(n + 1):
        d = round(start + k * step, 10)
        if abs(d - DEGENERATE_D) < SWEEP_SKIP:
            log.warning("skipping d=%s: within %g of the degenerate detuning", d, SWEEP_SKIP)
            continue
        grid.append(d)
    return grid


def _label(d: float) -> str:
    return f"d={fmt(d)}"


def _column(args) -> list[tuple[str, np.ndarray]]:
    spec, d = args
    taus = spec.tau_grid()
    series = amplitude_series(d, taus)
    q2 = series.q2
    if spec.quantity == "q":
        return [(f"q({_label(d)})_re", series.q.real), (f"q({_label(d)})_im", series.q.imag)]
    if spec.quantity == "q2":
        return [(f"q2({_label(d)})", q2)]
    if spec.quantity in ("c_phi", "c_psi"):
        family = spec.quantity[2:]
        return [(f"{spec.quantity}({_label(d)})", closed_form_from_q2(family, spec.alpha, q2))]
    rho0 = build_bell_like(BellLikeState(spec.family, spec.alpha, spec.gamma))
    values = np.array([concurrence(apply_two_qubit_map(rho0, q)) for q in series.q])
    return [(f"c_general({_label(d)})", values)]


def _asymptotic_row(args) -> list[float]:
    spec, d = args
    q2 = steady_amplitude_sq(d)
    return [d, q2, float(closed_form_from_q2(spec.family, spec.alpha, q2))]


def _map(func, items, workers: int):
    if workers <= 1:
        return list(map(func, items))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def run_series(spec: SweepSpec, workers: int = 1) -> tuple[list[str], list[list[float]]]:
    """Header and rows for a sweep; output order never depends on ``workers``."""
    items = [(spec, d) for d in spec.d_values]
    if spec.quantity == "asymptotic":
        rows = _map(_asymptotic_row, items, workers)
        return ["d", "q2_inf", f"c_{spec.family}_inf"], rows
    columns = [c for cols in _map(_column, items, workers) for c in cols]
    taus = spec.tau_grid()
    header = ["tau"] + [name for name, _ in columns]
    rows = [[t] + [vals[i] for _, vals in columns] for i, t in enumerate(taus)]
    return header, rows


def write_csv(path: Path, header: list[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)] + [",".join(fmt(v) for v in row) for row in rows]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_svg(path: Path, header: list[str], rows, title: str = "") -> None:
    """Minimal line chart: first column on x, one polyline per remaining column."""
    data = np.asarray(rows, dtype=float)
    x = data[:, 0]
    ys = data[:, 1:]
    width, height, pad = 800, 500, 60
    xmin, xmax = float(x.min()), float(x.max())
    ymin, ymax = min(0.0, float(ys.min())), max(1.0, float(ys.max()))
    xspan = xmax - xmin or 1.0
    yspan = ymax - ymin or 1.0

    def sx(v):
        return pad + (v - xmin) / xspan * (width - 2 * pad)

    def sy(v):
        return height - pad - (v - ymin) / yspan * (height - 2 * pad)

    colors = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 15}" text-anchor="middle">{header[0]}</text>',
        f'<text x="{pad}" y="{height - pad + 20}" text-anchor="middle">{fmt(xmin)}</text>',
        f'<text x="{width - pad}" y="{height - pad + 20}" text-anchor="middle">{fmt(xmax)}</text>',
        f'<text x="{pad - 8}" y="{sy(ymin)}" text-anchor="end">{fmt(ymin)}</text>',
        f'<text x="{pad - 8}" y="{sy(ymax)}" text-anchor="end">{fmt(ymax)}</text>',
    ]
    if title:
        parts.append(f'<text x="{width / 2}" y="30" text-anchor="middle">{title}</text>')
    for k, name in enumerate(header[1:]):
        color = colors[k % len(colors)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, ys[:, k]))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = pad + 20 * k
        parts.append(f'<line x1="{width - 230}" y1="{ly}" x2="{width - 205}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{width - 200}" y="{ly + 5}" font-size="13">{name}</text>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")


def figure_table(n: int, workers: int = 1) -> tuple[list[str], list[list[float]]]:
    if n in (1, 2):
        quantity = "c_phi" if n == 1 else "c_psi"
        spec = SweepSpec(quantity, FIGURE_DETUNINGS, tau_max=10.0, tau_step=0.01)
        return run_series(spec, workers)
    if n == 3:
        items = detuning_grid(-10.0, 10.0, 0.05)
        rows = _map(_figure3_row, items, workers)
        return ["d", "c_phi_inf", "c_psi_inf"], rows
    raise ValueError("figure must be 1, 2 or 3")


def _figure3_row(d: float) -> list[float]:
    return [
        d,
        asymptotic_concurrence("phi", BELL_ALPHA, d),
        asymptotic_concurrence("psi", BELL_ALPHA, d),
    ]


def cmd_figure(args) -> int:
    header, rows = figure_table(args.n, args.workers)
    out = Path(args.out) / f"figure{args.n}.csv"
    write_csv(out, header, rows)
    print(f"wrote {out}")
    if args.svg:
        svg = out.with_suffix(".svg")
        titles = {1: "C_phi(tau), Bell state", 2: "C_psi(tau), Bell state", 3: "asymptotic concurrence vs d"}
        write_svg(svg, header, rows, titles[args.n])
        print(f"wrote {svg}")
    return 0


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def cmd_series(args) -> int:
    if args.d_range:
        start, stop, step = _parse_floats(args.d_range.replace(":", ","))
        d_values = tuple(detuning_grid(start, stop, step))
    elif args.d:
        d_values = tuple(args.d)
    else:
        raise ValueError("give --d or --d-range")
    spec = SweepSpec(
        quantity=args.quantity,
        d_values=d_values,
        tau_max=args.tau_max,
        tau_step=args.tau_step,
        alpha=args.alpha,
        gamma=args.gamma,
        family=args.family,
    )
    header, rows = run_series(spec, args.workers)
    out = Path(args.output)
    write_csv(out, header, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    if args.svg:
        write_svg(out.with_suffix(".svg"), header, rows, spec.quantity)
    return 0


def cmd_oracle(args) -> int:
    taus = np.linspace(0.0, args.tau_max, args.tau_points)
    report = oracle_bath.compare_to_analytic(
        args.d, taus, n_modes=args.n_modes, e_max=args.e_max, grid=args.grid
    )
    for line in report.header_lines():
        print(line)
    if args.output:
        out = Path(args.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        rows = zip(report.taus, report.q2_analytic, report.q2_oracle, report.deviation)
        body = [",".join(fmt(v) for v in row) for row in rows]
        text = "".join(f"# {line}\n" for line in report.header_lines())
        text += "tau,q2_analytic,q2_oracle,abs_deviation\n" + "\n".join(body) + "\n"
        out.write_text(text, encoding="utf-8")
        print(f"wrote {out}")
    return 0 if report.passed else 2


def stark_plan(d_in: float, d_out: float, alpha: float = BELL_ALPHA) -> dict:
    q2_in, q2_out = steady_amplitude_sq(d_in), steady_amplitude_sq(d_out)
    plan = {
        "shift": d_out - d_in,
        "d_in": d_in,
        "d_out": d_out,
        "alpha": alpha,
        "q2_in": q2_in,
        "q2_out": q2_out,
        "c_phi_in": asymptotic_concurrence("phi", alpha, d_in),
        "c_psi_in": asymptotic_concurrence("psi", alpha, d_in),
        "c_phi_out": asymptotic_concurrence("phi", alpha, d_out),
        "c_psi_out": asymptotic_concurrence("psi", alpha, d_out),
    }
    threshold = esd_threshold(alpha, "psi") if 0.0 < alpha < 1.0 else None
    plan["psi_threshold"] = threshold
    plan["esd_risk_out"] = threshold is not None and q2_out <= threshold
    return plan


def cmd_stark_plan(args) -> int:
    p = stark_plan(args.d_in, args.d_out, args.alpha)
    print(f"required shift Delta/beta = {fmt(p['shift'])}")
    print(f"alpha = {fmt(p['alpha'])}")
    for side in ("in", "out"):
        print(
            f"d_{side} = {fmt(p['d_' + side])}: |q_s|^2 = {fmt(p['q2_' + side])}, "
            f"C_phi(inf) = {fmt(p['c_phi_' + side])}, C_psi(inf) = {fmt(p['c_psi_' + side])}"
        )
    if p["psi_threshold"] is None:
        print("psi family: no finite-|q| sudden-death threshold for this alpha")
    else:
        verdict = "ESD RISK" if p["esd_risk_out"] else "no ESD risk"
        print(
            f"psi family: concurrence dies when |q|^2 <= {fmt(p['psi_threshold'])}; "
            f"at d_out |q_s|^2 = {fmt(p['q2_out'])} -> {verdict}"
        )
    return 0


def cmd_beta(args) -> int:
    beta = band_edge.beta_from_physical(PhysicalParams(args.omega0, args.dipole))
    print(f"beta = {beta:.6e} s^-1 (beta/2pi = {beta / (2 * math.pi):.6e} Hz)")
    print(f"ratio to 20 kHz reference: {beta / REFERENCE_BETA_HZ:.3f}")
    print(
        "caveat: omega0 is read as an angular frequency (rad/s). Whether the quoted "
        "'50 GHz' is ordinary or angular is not specified; the 20 kHz figure is an "
        "order-of-magnitude value."
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pbgtrap", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("figure", help="reproduce figure 1, 2 or 3 as CSV")
    f.add_argument("n", type=int, choices=(1, 2, 3))
    f.add_argument("--out", default=".")
    f.add_argument("--svg", action="store_true")
    f.add_argument("--workers", type=int, default=1)
    f.set_defaults(func=cmd_figure)

    s = sub.add_parser("series", help="general sweep over detunings and time")
    s.add_argument("--quantity", choices=QUANTITIES, default="q2")
    s.add_argument("--d", type=float, nargs="+", help="detunings d = delta/beta")
    s.add_argument("--d-range", help="START:STOP:STEP detuning grid")
    s.add_argument("--tau-max", type=float, default=10.0)
    s.add_argument("--tau-step", type=float, default=0.01)
    s.add_argument("--alpha", type=float, default=BELL_ALPHA)
    s.add_argument("--gamma", type=float, default=0.0)
    s.add_argument("--family", choices=("phi", "psi"), default="phi")
    s.add_argument("--output", default="series.csv")
    s.add_argument("--svg", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_series)

    o = sub.add_parser("oracle", help="compare q(tau) with the discretized-bath oracle")
    o.add_argument("--d", type=float, required=True)
    o.add_argument("--n-modes", type=int, default=oracle_bath.DEFAULT_N_MODES)
    o.add_argument("--e-max", type=float, default=oracle_bath.DEFAULT_E_MAX)
    o.add_argument("--tau-max", type=float, default=10.0)
    o.add_argument("--tau-points", type=int, default=101)
    o.add_argument("--grid", choices=oracle_bath.GRIDS, default="sqrt")
    o.add_argument("--output")
    o.set_defaults(func=cmd_oracle)

    k = sub.add_parser("stark-plan", help="trapping before and after a Stark shift")
    k.add_argument("--d-in", type=float, required=True)
    k.add_argument("--d-out", type=float, required=True)
    k.add_argument("--alpha", type=float, default=BELL_ALPHA)
    k.set_defaults(func=cmd_stark_plan)

    b = sub.add_parser("beta", help="beta from transition frequency and dipole moment")
    b.add_argument("--omega0", type=float, required=True, help="rad/s")
    b.add_argument("--dipole", type=float, required=True, help="C m")
    b.set_defaults(func=cmd_beta)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
