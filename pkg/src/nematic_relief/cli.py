"""Command-line entry point: ``nematic-relief <subcommand> [options]``.

Exit codes: 0 success, 2 verdict failure, 1 invalid input or runtime error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import fields
from .circle import (
    CircleField,
    CircleFrustration,
    admissible_domain,
    auto_c0,
    classify_degeneracies,
    winding_charge,
)
from .compatibility import compatibility_residuals, heliconical_state, residual_record
from .core import ElasticConstants, ericksen_satisfied, oseen_frank_energy
from .errors import DomainError
from .halfplane import HalfPlaneField, LineFrustration, Verdict
from .quasiuniform import fd_gradient, one_d_uniformity, ratio_test, state_at, verify_quasi_uniformity
from .render import emit_csv, emit_svg, read_csv, sample_grid
from .scenarios import SCENARIOS, build_figures, circle_scene, halfplane_scene

EXIT_OK, EXIT_ERROR, EXIT_VERDICT = 0, 1, 2


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with other invalid input; 2 is kept for verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _floats(text: str, count: int, name: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in str(text).split(","))
    except ValueError as exc:
        raise ConfigError(f"{name}: expected {count} comma-separated numbers") from exc
    if len(vals) != count:
        raise ConfigError(f"{name}: expected {count} comma-separated numbers, got {len(vals)}")
    return vals


def _grid(text: str) -> tuple[int, int]:
    nx, ny = _floats(text, 2, "grid")
    if nx < 2 or ny < 2 or nx != int(nx) or ny != int(ny):
        raise ConfigError("grid must be two integers, each at least 2")
    return int(nx), int(ny)


def _fmt_pi(t: float) -> str:
    return f"{t:.12g} ({t / math.pi:.12g}pi)"


def _write_report(lines: list[str], out: Path | None, name: str) -> None:
    text = "".join(line + "\n" for line in lines)
    sys.stdout.write(text)
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        with open(out / name, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# profiles ---------------------------------------------------------------------


def line_profile(args) -> LineFrustration:
    if args.profile_csv:
        return LineFrustration.from_csv(args.profile_csv)
    name = args.profile
    if name == "tanh":
        return LineFrustration.tanh(args.bstar)
    if name == "quintic":
        return LineFrustration.quintic(args.bstar)
    if name == "hybrid":
        return LineFrustration.hybrid(args.bstar)
    if name == "sinusoidal":
        return LineFrustration.sinusoidal(args.amplitude, args.period)
    if name == "linear":
        return LineFrustration.linear(args.slope, args.intercept)
    if name == "constant":
        return LineFrustration.constant(args.value)
    raise ConfigError(f"unknown line profile {name!r}")


def circle_profile(args) -> CircleFrustration:
    if args.profile_csv:
        return CircleFrustration.from_csv(args.profile_csv)
    if args.m is None:
        raise ConfigError("circle profiles need --m")
    m = float(args.m)
    if abs(2 * m - round(2 * m)) > 1e-12:
        raise ConfigError("m must be an integer or half-integer")
    c0 = auto_c0(m, args.bstar) if str(args.c0) == "auto" else float(args.c0)
    if args.profile == "frank":
        return CircleFrustration.frank(m, c0)
    if args.profile == "perturbed":
        return CircleFrustration.perturbed(m, c0)
    raise ConfigError(f"unknown circle profile {args.profile!r}")


# named fields for verify / energy ---------------------------------------------


def named_field(name: str, bstar: float = 2.0):
    """Sampler and default probe points for a named scenario."""
    key, _, arg = name.partition(":")
    ring = [(1.3 * math.cos(t), 1.3 * math.sin(t)) for t in np.linspace(0.3, 6.0, 8)]
    if key == "hedgehog":
        pts = [(0.7, 0.2, 0.4), (-0.5, 1.1, 0.3), (0.2, -0.9, -1.4), (1.5, 0.5, -0.2)]
        return fields.hedgehog(), pts
    if key == "bend":
        return fields.pure_bend(), ring
    if key == "splay":
        return fields.planar_splay(), ring
    if key == "spiral":
        return fields.planar_spiral(float(arg or 0.5)), ring
    if key == "uniform":
        return fields.uniform(float(arg or 0.0)), ring
    if key == "single-variable":
        return fields.single_variable(lambda x: x, "phi=x"), [(x, 0.3) for x in (-1.0, -0.4, 0.2, 0.9, 1.7)]
    if key == "halfplane":
        fr = {"tanh": LineFrustration.tanh, "quintic": LineFrustration.quintic, "hybrid": LineFrustration.hybrid}
        if (arg or "tanh") not in fr:
            raise ConfigError(f"unknown half-plane scenario {arg!r}")
        solver = HalfPlaneField(fr[arg or "tanh"](bstar), bstar)
        return solver.sampler(margin=1e-3), [(-1.0, 0.5), (0.0, 1.0), (0.7, 2.0), (1.5, 0.8), (-2.0, 3.0)]
    if key == "circle":
        m = float(arg or 1.5)
        c0 = auto_c0(m, bstar) if m != 1.0 else 0.0
        solver = CircleField(CircleFrustration.frank(m, c0), bstar)
        pts = [(1.5, 0.5), (2.0, 1.5), (-1.5, 1.2), (0.3, 2.5), (-2.5, -0.3)]
        return solver.sampler(), pts
    raise ConfigError(f"unknown scenario {name!r}")


# subcommands ------------------------------------------------------------------


def cmd_halfplane(args) -> int:
    fr = line_profile(args)
    window = _floats(args.window or "-3,3,0,4", 4, "window")
    grid = _grid(args.grid or "40,40")
    solver = HalfPlaneField(fr, args.bstar)
    rel = solver.relievability
    lines = [
        f"profile={fr.tag}",
        f"b_star={args.bstar:.12g}",
        f"verdict={rel.verdict.value}",
        f"side={rel.side or 'none'}",
        f"monotone={rel.monotone}",
        f"range_ok={'true' if rel.range_ok else 'false'}",
        f"touches_boundary={'true' if rel.touches_boundary else 'false'}",
        f"phi_range={rel.phi_range[0]:.12g},{rel.phi_range[1]:.12g}",
    ]
    if rel.first_violation is not None:
        lines.append(f"first_violation={rel.first_violation:.12g}")
    out = Path(args.out) if args.out else None
    if rel.verdict == Verdict.NOT_RELIEVABLE:
        _write_report(lines, out, "halfplane_report.txt")
        return EXIT_VERDICT
    if out is not None:
        xmin, xmax, ymin, ymax = window
        ylo = max(ymin, 0.0) if solver.side == "upper" else ymin
        yhi = min(ymax, 0.0) if solver.side == "lower" else ymax
        vp = (xmin, xmax, ylo, yhi)
        y_seed = 0.02 if solver.side != "lower" else -0.02
        seeds = [(x, y_seed) for x in np.linspace(xmin, xmax, 12)[1:-1]]
        scene, _ = halfplane_scene(fr, args.bstar, vp, np.linspace(xmin, xmax, 25), seeds, title=f"half-plane {fr.tag}")
        out.mkdir(parents=True, exist_ok=True)
        emit_svg(scene, out / "halfplane.svg")
        emit_csv(sample_grid(solver, vp, grid), out / "halfplane.csv")
        lines.append(f"svg={out / 'halfplane.svg'}")
        lines.append(f"csv={out / 'halfplane.csv'}")
    _write_report(lines, out, "halfplane_report.txt")
    return EXIT_OK


def cmd_circle(args) -> int:
    fr = circle_profile(args)
    q = winding_charge(fr)
    if abs(q - fr.m) > 1e-9:
        raise ConfigError(f"profile winds with charge {q:.12g}, not m = {fr.m:g}")
    deg = classify_degeneracies(fr, args.bstar)
    dom = admissible_domain(fr, args.bstar)
    lines = [
        f"profile={fr.kind}",
        f"m={fr.m:.12g}",
        f"c0={fr.c0:.12g}",
        f"b_star={args.bstar:.12g}",
        f"domain={dom.kind}",
        f"bounded={'true' if dom.bounded else 'false'}",
        f"resonant={'true' if deg.resonant_global else 'false'}",
        f"tangency_count={len(deg.tangency)}",
    ]
    lines += [f"tangency={_fmt_pi(t)}" for t in deg.tangency]
    lines += [f"radial={_fmt_pi(t)}" for t in deg.resonant]
    out = Path(args.out) if args.out else None
    if out is not None:
        window = _floats(args.window or "-4,4,-4,4", 4, "window")
        grid = _grid(args.grid or "40,40")
        seeds = [(1.05 * math.cos(t), 1.05 * math.sin(t)) for t in np.linspace(0, 2 * math.pi, 10, endpoint=False)]
        scene, solver = circle_scene(fr, args.bstar, window, seeds=seeds, region=True, title=f"m={fr.m:g}")
        out.mkdir(parents=True, exist_ok=True)
        emit_svg(scene, out / "circle.svg")
        emit_csv(sample_grid(solver, window, grid), out / "circle.csv")
        lines.append(f"svg={out / 'circle.svg'}")
        lines.append(f"csv={out / 'circle.csv'}")
    _write_report(lines, out, "circle_report.txt")
    return EXIT_OK


def cmd_verify(args) -> int:
    out = Path(args.out) if args.out else None
    if args.csv:
        rows = read_csv(args.csv)
        good = rows[np.all(np.isfinite(rows[:, 3:8]), axis=1)]
        if good.shape[0] < 3:
            raise ConfigError("CSV field needs at least three finite rows")
        report = ratio_test(good[:, 3:8], args.tol, "csv")
        source = f"csv={args.csv}"
    else:
        sampler, probes = named_field(args.scenario, args.bstar)
        report = verify_quasi_uniformity(sampler, probes, args.tol, args.convention)
        source = f"scenario={args.scenario}"
    _write_report([source] + report.to_record().splitlines(), out, "verify_report.txt")
    return EXIT_OK if report.verdict else EXIT_VERDICT


def cmd_compat(args) -> int:
    rng = np.random.default_rng(args.seed)
    states = []
    if args.alpha is not None:
        states.append((args.alpha, args.sign, args.gz, args.gzz))
    for _ in range(args.random):
        states.append(
            (
                float(rng.uniform(0.05, math.pi / 2 - 0.05)),
                int(rng.choice([-1, 1])),
                float(rng.uniform(-3, 3)),
                float(rng.uniform(-3, 3)),
            )
        )
    if not states:
        raise ConfigError("give --alpha or --random N")
    lines, worst = [], 0.0
    for i, (a, s, gz, gzz) in enumerate(states):
        h = heliconical_state(a, s, gz, gzz)
        r = compatibility_residuals(h.constants, h.connector)
        worst = max(worst, float(np.max(np.abs(r))))
        lines.append(f"state={i} alpha={a:.12g} sign={s:+d} gz={gz:.12g} gzz={gzz:.12g}")
        lines += residual_record(r).splitlines()
    lines.append(f"max_residual={worst:.12g}")
    lines.append(f"tol={args.tol:.12g}")
    _write_report(lines, Path(args.out) if args.out else None, "compat_report.txt")
    return EXIT_OK if worst <= args.tol else EXIT_VERDICT


def cmd_energy(args) -> int:
    K = ElasticConstants(args.K11, args.K22, args.K33, args.K24)
    sampler, _ = named_field(args.scenario, args.bstar)
    if sampler.dim != 2:
        raise ConfigError("energy runs on planar scenarios")
    xmin, xmax, ymin, ymax = _floats(args.window or "-2,2,-2,2", 4, "window")
    nx, ny = _grid(args.grid or "9,9")
    w_d, w_m, gap, used = 0.0, 0.0, 0.0, 0
    for y in np.linspace(ymin, ymax, ny):
        for x in np.linspace(xmin, xmax, nx):
            p = np.array([x, y])
            try:
                st = state_at(sampler, p)
            except (DomainError, LookupError):
                continue
            G = fd_gradient(sampler, p)
            a, b = oseen_frank_energy(st, st.B, K, G, tol=1e-6)
            w_d, w_m, gap, used = w_d + a, w_m + b, max(gap, abs(a - b)), used + 1
    ok = ericksen_satisfied(K)
    lines = [
        f"scenario={args.scenario}",
        f"points={used}",
        f"W_direct_sum={w_d:.12g}",
        f"W_modes_sum={w_m:.12g}",
        f"max_pointwise_gap={gap:.12g}",
        f"ericksen={'true' if ok else 'false'}",
    ]
    _write_report(lines, Path(args.out) if args.out else None, "energy_report.txt")
    return EXIT_OK if ok and gap <= args.tol else EXIT_VERDICT


def cmd_oned(args) -> int:
    if args.curve == "line":
        profile = line_profile(args)
    else:
        profile = circle_profile(args)
    res = one_d_uniformity(args.curve, profile, args.samples, tol=args.tol)
    lines = [
        f"curve={args.curve}",
        f"uniform={'true' if res.uniform else 'false'}",
        f"gamma0={res.gamma0:.12g}" if res.gamma0 is not None else "gamma0=none",
        f"gamma_spread={float(np.ptp(res.gammas)):.12g}",
    ]
    _write_report(lines, Path(args.out) if args.out else None, "oned_report.txt")
    return EXIT_OK if res.uniform else EXIT_VERDICT


def cmd_figures(args) -> int:
    names = args.only.split(",") if args.only else None
    if names:
        known = {s.name for s in SCENARIOS}
        bad = [n for n in names if n not in known]
        if bad:
            raise ConfigError(f"unknown figure scenario(s): {', '.join(bad)}")
    for p in build_figures(args.out, names):
        print(p)
    return EXIT_OK


# parser -----------------------------------------------------------------------


def _profile_options(p, kind: str) -> None:
    if kind == "line":
        p.add_argument("--profile", default=None, help="tanh, quintic, hybrid, sinusoidal, linear or constant")
        p.add_argument("--amplitude", type=float, default=None)
        p.add_argument("--period", type=float, default=None)
        p.add_argument("--slope", type=float, default=None)
        p.add_argument("--intercept", type=float, default=None)
        p.add_argument("--value", type=float, default=None)
    else:
        p.add_argument("--profile", default=None, help="frank or perturbed")
        p.add_argument("--m", type=float, default=None)
        p.add_argument("--c0", default=None, help="number or 'auto'")
    p.add_argument("--profile-csv", default=None)


DEFAULTS = {
    "bstar": 2.0,
    "amplitude": math.pi / 10,
    "period": 2.0,
    "slope": -math.pi / 4,
    "intercept": 0.0,
    "value": 0.0,
    "c0": "0",
    "tol": None,
    "convention": "canonical",
    "scenario": None,
    "K11": 1.0,
    "K22": 1.0,
    "K33": 1.0,
    "K24": 0.5,
    "seed": 0,
    "random": 0,
    "sign": 1,
    "gz": 1.0,
    "gzz": 0.0,
    "samples": 201,
    "curve": "line",
}
TOL_DEFAULTS = {"verify": 1e-5, "compat": 1e-10, "energy": 1e-10, "oned": 1e-8}
PROFILE_DEFAULTS = {"halfplane": "tanh", "circle": "frank", "oned": None}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nematic-relief", description="Quasi-uniform planar director fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None, help="flat key = value TOML file")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--bstar", type=float, default=None)

    p = sub.add_parser("halfplane", help="relieve a profile given on the x-axis")
    common(p)
    _profile_options(p, "line")
    p.add_argument("--window", default=None, help="xmin,xmax,ymin,ymax")
    p.add_argument("--grid", default=None, help="nx,ny for the CSV samples")

    p = sub.add_parser("circle", help="relieve a profile given on the unit circle")
    common(p)
    _profile_options(p, "circle")
    p.add_argument("--window", default=None)
    p.add_argument("--grid", default=None)

    p = sub.add_parser("verify", help="ratio test on a named scenario or a CSV field")
    common(p)
    p.add_argument("--scenario", default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--convention", default=None, choices=("canonical", "line", "circle"))
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("compat", help="compatibility residuals of heliconical states")
    common(p)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--sign", type=int, default=None, choices=(1, -1))
    p.add_argument("--gz", type=float, default=None)
    p.add_argument("--gzz", type=float, default=None)
    p.add_argument("--random", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("energy", help="Frank energy, Cartesian and mode forms, over a grid")
    common(p)
    p.add_argument("--scenario", default=None)
    for k in ("K11", "K22", "K33", "K24"):
        p.add_argument(f"--{k}", type=float, default=None)
    p.add_argument("--window", default=None)
    p.add_argument("--grid", default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("oned", help="one-dimensional uniformity along a boundary")
    common(p)
    p.add_argument("--curve", default=None, choices=("line", "circle"))
    p.add_argument("--profile", default=None)
    p.add_argument("--amplitude", type=float, default=None)
    p.add_argument("--period", type=float, default=None)
    p.add_argument("--slope", type=float, default=None)
    p.add_argument("--intercept", type=float, default=None)
    p.add_argument("--value", type=float, default=None)
    p.add_argument("--m", type=float, default=None)
    p.add_argument("--c0", default=None)
    p.add_argument("--profile-csv", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("figures", help="render every built-in figure scenario")
    p.add_argument("--out", default="figures")
    p.add_argument("--only", default=None, help="comma-separated scenario names")
    p.add_argument("--config", default=None)
    return parser


def load_config(path) -> dict:
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    for k, v in data.items():
        if isinstance(v, dict):
            raise ConfigError(f"config must be flat; section {k!r} found")
    return {k.replace("-", "_"): v for k, v in data.items()}


def resolve(args) -> argparse.Namespace:
    """Fill unset options from the config file, then from defaults."""
    cfg = load_config(args.config) if getattr(args, "config", None) else {}
    ns = vars(args)
    for k, v in cfg.items():
        if k not in ns:
            raise ConfigError(f"unknown config key {k!r} for {args.command}")
        if ns[k] is None:
            ns[k] = v
    for k, v in DEFAULTS.items():
        if k in ns and ns[k] is None:
            ns[k] = v
    if "tol" in ns and ns["tol"] is None:
        ns["tol"] = TOL_DEFAULTS.get(args.command, 1e-8)
    if "profile" in ns and ns["profile"] is None:
        if args.command == "oned":
            ns["profile"] = "linear" if ns.get("curve") == "line" else "frank"
        else:
            ns["profile"] = PROFILE_DEFAULTS.get(args.command)
    if args.command in ("verify", "energy") and not ns.get("scenario") and not ns.get("csv"):
        if args.command == "energy":
            ns["scenario"] = "spiral:0.5"
        else:
            raise ConfigError("verify needs --scenario or --csv")
    return args


COMMANDS = {
    "halfplane": cmd_halfplane,
    "circle": cmd_circle,
    "verify": cmd_verify,
    "compat": cmd_compat,
    "energy": cmd_energy,
    "oned": cmd_oned,
    "figures": cmd_figures,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = resolve(args)
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError, OSError, LookupError, tomllib.TOMLDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
