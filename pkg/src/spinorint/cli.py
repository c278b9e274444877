"""Command-line front end.

Subcommands evaluate propagators, run oracle comparisons, scan fringes,
integrate spin-mixing phases and map laboratory fields, emitting CSV or
JSON that is byte-identical for identical inputs (17 significant digits,
no timestamps).  Values may come from a ``key = value`` config file
(``--config``); command-line flags override file values and the effective
parameter set is echoed into every output header.

Exit codes: 0 success, 2 invalid parameters, 3 numerical failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .crossings import (
    ParabolicParams,
    LZParams,
    composite_alpha_beta,
    crossing_diagnostics,
    dynamical_phase_sigma,
    sigma_diabatic_approx,
    lz_amplitude,
    lz_phase,
    lz_propagator,
    transition_prob_1_to_3,
    transition_prob_2level,
)
from .fields import LabFields, load_lab_config, map_fields, validate_ica
from .interferometer import (
    InterferometerConfig,
    chi_psi,
    fringe_scan,
    population_1_to_m1,
    total_propagator,
    visibility_prefactor,
)
from .majorana import TwoLevelPropagator, lift
from .spinor_gp import (
    SMAState,
    coupling_constants,
    extract_gp_propagator,
    integrate_sma,
    load_species,
    spin_mixing_rate_bound,
)
from .tdse import (
    HamiltonianSpec,
    IntegrationError,
    IntegrationWindow,
    compare_with_ica,
    ica_transition_probability,
    integrate,
)

_REQUIRED = object()


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _read_kv(path) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out


def _opt(args, cfg: dict, name: str, typ, default=_REQUIRED):
    """Flag value if given, else config-file value, else default."""
    val = getattr(args, name, None)
    if val is None and name in cfg:
        val = typ(cfg[name])
    if val is None:
        if default is _REQUIRED:
            raise ValueError(f"missing required parameter --{name.replace('_', '-')}")
        val = default
    return val


def _cpx(text) -> complex:
    if isinstance(text, complex):
        return text
    return complex(str(text).replace(" ", ""))


def _matrix_json(mat: np.ndarray):
    return [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in np.asarray(mat)]


def _complex_json(z: complex):
    return {"re": float(z.real), "im": float(z.imag)}


# ---------------------------------------------------------------- commands

def _cmd_lz(args, cfg):
    lam = _opt(args, cfg, "Lambda", float)
    mat = lz_propagator(lam)
    params = {"Lambda": lam}
    result = {"R": lz_amplitude(lam), "phi": lz_phase(lam), "propagator": _matrix_json(mat)}
    return params, result, None


def _cmd_parabolic(args, cfg):
    p = ParabolicParams(_opt(args, cfg, "eps", float), _opt(args, cfg, "mu", float))
    diag = crossing_diagnostics(p)
    comp = composite_alpha_beta(p)
    params = {"eps": p.epsilon, "mu": p.mu}
    result = {
        "Lambda": diag.lambda_eff,
        "R": lz_amplitude(diag.lambda_eff),
        "phi": lz_phase(diag.lambda_eff),
        "sigma": dynamical_phase_sigma(p),
        "sigma_diabatic_approx": sigma_diabatic_approx(p),
        "tau_c": diag.tau_c,
        "tau_z": diag.tau_z,
        "ica_margin": diag.ica_margin,
        "regime": diag.regime,
        "alpha": _complex_json(comp.alpha),
        "beta": _complex_json(comp.beta),
        "P_1_to_2": transition_prob_2level(p),
        "P_1_to_3": transition_prob_1_to_3(p),
    }
    return params, result, None


def _cmd_lift(args, cfg):
    alpha = _cpx(_opt(args, cfg, "alpha", _cpx))
    beta = _cpx(_opt(args, cfg, "beta", _cpx))
    n = _opt(args, cfg, "levels", int, 3)
    mat = lift(TwoLevelPropagator(alpha, beta), n)
    params = {"alpha": str(alpha), "beta": str(beta), "levels": n}
    return params, {"matrix": _matrix_json(mat)}, None


def _cmd_oracle(args, cfg):
    model = _opt(args, cfg, "model", str, "parabolic")
    levels = _opt(args, cfg, "levels", int, 2)
    rel_tol = _opt(args, cfg, "rel_tol", float, 1e-10)
    params = {"model": model, "levels": levels, "rel_tol": rel_tol}
    if model == "parabolic":
        p = ParabolicParams(_opt(args, cfg, "eps", float), _opt(args, cfg, "mu", float))
        spec = HamiltonianSpec("parabolic", levels, p)
        mult = _opt(args, cfg, "window_mult", float, 8.0)
        window = IntegrationWindow.multiples_of_tau_c(p, mult)
        params.update(eps=p.epsilon, mu=p.mu, window_mult=mult)
    elif model == "lz":
        lam = _opt(args, cfg, "Lambda", float)
        spec = HamiltonianSpec("lz", levels, LZParams(lam))
        half = _opt(args, cfg, "window_half_width", float, max(50.0, 100.0 * lam))
        window = IntegrationWindow.symmetric(half)
        params.update(Lambda=lam, window_half_width=half)
    else:
        raise ValueError(f"unknown model {model!r}")
    res = integrate(spec, window=window, rel_tol=rel_tol)
    result = {
        "populations": [float(x) for x in res.populations],
        "adiabatic_populations": [float(x) for x in res.adiabatic_populations],
        "norm_drift": res.norm_drift,
        "step_count": res.step_count,
    }
    if model == "parabolic":
        p_num = float(res.populations[-1])
        p_ica = ica_transition_probability(spec.params, levels)
        margin = crossing_diagnostics(spec.params).ica_margin
        result["comparison"] = {
            "p_oracle": p_num,
            "p_ica": p_ica,
            "abs_error": abs(p_num - p_ica),
            "ica_margin": float(margin),
            "ica_ok": bool(margin >= 5.0),
        }
    return params, result, None


def _cmd_gp(args, cfg):
    species_name = _opt(args, cfg, "species", str, "rb87")
    density = _opt(args, cfg, "density", float, 1e14)
    duration = _opt(args, cfg, "duration", float)
    rel_tol = _opt(args, cfg, "rel_tol", float, 1e-10)
    raw = _opt(args, cfg, "initial", str, "0.7071067811865476,0.5,0.5")
    zeta = np.array([_cpx(tok) for tok in raw.split(",")], dtype=complex)
    if zeta.shape != (3,):
        raise ValueError("initial state needs exactly three comma-separated amplitudes")
    nrm = np.linalg.norm(zeta)
    if nrm == 0:
        raise ValueError("initial state must be nonzero")
    zeta = zeta / nrm
    species = load_species(species_name, n_max_cm3=density)
    traj = integrate_sma(SMAState(zeta, density), species, duration, rel_tol=rel_tol)
    phases, _ = extract_gp_propagator(traj)
    pops = np.abs(traj.zetas) ** 2
    mag = pops[:, 0] - pops[:, 2]
    lam_s, lam_a = coupling_constants(species)
    params = {"species": species_name, "density_cm3": density, "duration_s": duration,
              "rel_tol": rel_tol, "initial": [str(z) for z in zeta]}
    result = {
        "theta1": phases.theta1,
        "theta_m1": phases.theta_m1,
        "lambda_s_Jm3": lam_s,
        "lambda_a_Jm3": lam_a,
        "gamma_bound_per_s": spin_mixing_rate_bound(species),
        "max_population_change": float(np.abs(pops - pops[0]).max()),
        "norm_drift": float(np.abs(pops.sum(axis=1) - 1).max()),
        "magnetization_drift": float(np.abs(mag - mag[0]).max()),
    }
    return params, result, None


def _cmd_interferometer(args, cfg):
    c = InterferometerConfig(
        R=_opt(args, cfg, "R", float),
        phi=_opt(args, cfg, "phi", float, 0.0),
        sigma=_opt(args, cfg, "sigma", float, 0.0),
        theta1=_opt(args, cfg, "theta1", float, 0.0),
        theta_m1=_opt(args, cfg, "theta_m1", float, 0.0))
    chi, psi = chi_psi(c)
    params = {"R": c.R, "phi": c.phi, "sigma": c.sigma,
              "theta1": c.theta1, "theta_m1": c.theta_m1}
    result = {"chi": chi, "psi": psi,
              "P_1_to_m1": population_1_to_m1(c),
              "visibility_prefactor": visibility_prefactor(c.R),
              "U_tot": _matrix_json(total_propagator(c))}
    return params, result, None


def _cmd_map_fields(args, cfg):
    lab_path = getattr(args, "lab_config", None)
    if lab_path is not None:
        fields = load_lab_config(lab_path)
    else:
        fields = LabFields(
            B_x_gauss=_opt(args, cfg, "Bx", float),
            B_z0_gauss=_opt(args, cfg, "Bz0", float),
            Bdot_gauss_per_s=_opt(args, cfg, "Bdot", float),
            g_F=_opt(args, cfg, "gF", float, 0.5))
    margin = _opt(args, cfg, "margin", float, 5.0)
    m = map_fields(fields)
    ica = validate_ica(m, margin=margin)
    params = {"Bx": fields.B_x_gauss, "Bz0": fields.B_z0_gauss,
              "Bdot": fields.Bdot_gauss_per_s, "gF": fields.g_F, "margin": margin}
    result = {"mu": m.mu, "eps": m.epsilon, "eps_mu": m.epsilon * m.mu,
              "t_c_s": m.t_c_s, "t_z_s": m.t_z_s, "R": m.R,
              "Lambda": m.Lambda, "regime": m.regime,
              "ica": {"ratio": ica.ratio, "margin": ica.margin, "ok": ica.ok}}
    return params, result, None


def _cmd_scan(args, cfg):
    eps = _opt(args, cfg, "eps", float)
    mu = _opt(args, cfg, "mu", float)
    sweep = _opt(args, cfg, "sweep", str, "sigma")
    start = _opt(args, cfg, "start", float)
    stop = _opt(args, cfg, "stop", float)
    points = _opt(args, cfg, "points", int, 200)
    theta1 = _opt(args, cfg, "theta1", float, 0.0)
    theta_m1 = _opt(args, cfg, "theta_m1", float, 0.0)
    if points < 2:
        raise ValueError("need at least 2 scan points")
    p = ParabolicParams(eps, mu)
    base = InterferometerConfig(R=lz_amplitude(p.Lambda), phi=lz_phase(p.Lambda),
                                sigma=dynamical_phase_sigma(p),
                                theta1=theta1, theta_m1=theta_m1)
    grid = np.linspace(start, stop, points)
    scan = fringe_scan(base, sweep, grid)
    params = {"eps": eps, "mu": mu, "sweep": sweep, "from": start, "to": stop,
              "points": points, "theta1": theta1, "theta_m1": theta_m1,
              "R": base.R, "phi": base.phi}
    rows = [(sweep, "chi", "psi", "P")]
    for g, chi, pop in zip(scan.grid, scan.chi, scan.populations):
        rows.append((_fmt(g), _fmt(chi), _fmt(scan.psi), _fmt(pop)))
    result = {"visibility": scan.visibility,
              "minima": [float(x) for x in scan.minima],
              "maxima": [float(x) for x in scan.maxima],
              sweep: [float(x) for x in scan.grid],
              "chi": [float(x) for x in scan.chi],
              "psi": scan.psi,
              "P": [float(x) for x in scan.populations]}
    return params, result, rows


def _paper_checks(rel_tol: float = 1e-8):
    """Every paper-anchored number: (name, computed, target, tolerance, ok)."""
    checks = []

    def add(name, value, target, tol, ok=None):
        if ok is None:
            ok = abs(value - target) <= tol
        checks.append({"check": name, "value": float(value), "target": target,
                       "tolerance": tol, "pass": bool(ok)})

    m = map_fields(LabFields(60e-3, 300e-3, 5e4, 0.5))
    add("field mapping: mu", m.mu, 5.0, 1e-12)
    add("field mapping: eps*mu", m.epsilon * m.mu, 10.0, 0.5)
    add("field mapping: t_c (s)", m.t_c_s, 24e-6, 0.01 * 24e-6)
    add("field mapping: t_z (s)", m.t_z_s, 2e-6, 0.15 * 2e-6)
    add("field mapping: R", m.R, 0.78, 0.01 * 0.78)
    add("field mapping: ICA ratio t_c/t_z >= 5", validate_ica(m).ratio, 5.0, 0.0,
        ok=validate_ica(m).ok)

    rb = load_species("rb87", n_max_cm3=1e14)
    gamma = spin_mixing_rate_bound(rb)
    add("spin mixing: gamma (1/s) in [80, 100]", gamma, 90.0, 10.0)
    add("spin mixing: gamma * 100 us < 0.01", gamma * 100e-6, 0.0, 0.01)
    _, lam_a_rb = coupling_constants(rb)
    add("spin mixing: lambda_a(rb87) < 0", lam_a_rb, 0.0, 0.0, ok=lam_a_rb < 0)
    _, lam_a_na = coupling_constants(load_species("na23"))
    add("spin mixing: lambda_a(na23) > 0", lam_a_na, 0.0, 0.0, ok=lam_a_na > 0)

    add("LZ phase: phi(0) = pi/4", lz_phase(0.0), np.pi / 4, 1e-12)
    grid = np.linspace(0.0, 20.0, 200)
    vals = np.array([lz_phase(x) for x in grid])
    add("LZ phase: monotone decrease to phi(20) < 0.01", vals[-1], 0.0, 0.01,
        ok=bool(np.all(np.diff(vals) < 0) and vals[-1] < 0.01))

    p = ParabolicParams(1.0, 20.0)
    sig = dynamical_phase_sigma(p)
    approx = sigma_diabatic_approx(p)
    add("sigma: within 2% of large-mu approx at mu=20", sig, approx, 0.02 * sig)
    add("sigma: exceeds diabatic value", sig, approx, 0.0, ok=sig > approx)

    rng = np.random.default_rng(202306)
    worst = 0.0
    for _ in range(1000):
        c = InterferometerConfig(R=rng.uniform(0.05, 0.95),
                                 phi=rng.uniform(-np.pi, np.pi),
                                 sigma=rng.uniform(0, 4 * np.pi),
                                 theta1=rng.uniform(-np.pi, np.pi),
                                 theta_m1=rng.uniform(-np.pi, np.pi))
        worst = max(worst, abs(population_1_to_m1(c) - abs(total_propagator(c)[2, 0]) ** 2))
    add("interferometer: closed form equals |U_31|^2", worst, 0.0, 1e-12)

    from scipy.optimize import minimize_scalar
    opt = minimize_scalar(lambda r: -visibility_prefactor(r), bounds=(0.1, 0.99),
                          method="bounded", options={"xatol": 1e-10})
    add("interferometer: prefactor max at 1/sqrt(2)", opt.x, 1 / np.sqrt(2), 1e-6)

    for levels in (2, 3):
        p = ParabolicParams(2.0, 5.0)
        rec = compare_with_ica(HamiltonianSpec("parabolic", levels, p), rel_tol=rel_tol)
        add(f"oracle vs ICA at eps=2 mu=5, {levels} levels", rec.abs_error, 0.0, 0.02)
    return checks


def _cmd_report(args, cfg):
    checks = _paper_checks()
    params = {"version": __version__}
    result = {"checks": checks, "all_pass": all(c["pass"] for c in checks)}
    rows = [("check", "value", "target", "tolerance", "pass")]
    for c in checks:
        rows.append((c["check"], _fmt(c["value"]), _fmt(c["target"]),
                     _fmt(c["tolerance"]), str(c["pass"])))
    return params, result, rows


_COMMANDS = {
    "lz": _cmd_lz,
    "parabolic": _cmd_parabolic,
    "lift": _cmd_lift,
    "oracle": _cmd_oracle,
    "gp": _cmd_gp,
    "interferometer": _cmd_interferometer,
    "map-fields": _cmd_map_fields,
    "scan": _cmd_scan,
    "report": _cmd_report,
}


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="spinorint", description=__doc__.split("\n\n")[0])
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value defaults file (flags override)")
        sp.add_argument("--output", "-o", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default=None)

    sp = sub.add_parser("lz", help="Landau-Zener propagator at a given Lambda")
    sp.add_argument("--Lambda", type=float)
    common(sp)

    sp = sub.add_parser("parabolic", help="parabolic double-crossing composite")
    sp.add_argument("--eps", type=float)
    sp.add_argument("--mu", type=float)
    common(sp)

    sp = sub.add_parser("lift", help="lift a two-level propagator to n levels")
    sp.add_argument("--alpha", type=_cpx)
    sp.add_argument("--beta", type=_cpx)
    sp.add_argument("--levels", type=int)
    common(sp)

    sp = sub.add_parser("oracle", help="integrate the time-dependent Schrodinger equation")
    sp.add_argument("--model", choices=("lz", "parabolic"))
    sp.add_argument("--levels", type=int)
    sp.add_argument("--eps", type=float)
    sp.add_argument("--mu", type=float)
    sp.add_argument("--Lambda", type=float)
    sp.add_argument("--window-mult", dest="window_mult", type=float)
    sp.add_argument("--window-half-width", dest="window_half_width", type=float)
    sp.add_argument("--rel-tol", dest="rel_tol", type=float)
    common(sp)

    sp = sub.add_parser("gp", help="spin-mixing phase accumulation between crossings")
    sp.add_argument("--species")
    sp.add_argument("--density", type=float, help="density in cm^-3")
    sp.add_argument("--duration", type=float, help="duration in seconds")
    sp.add_argument("--initial", help="three comma-separated complex amplitudes")
    sp.add_argument("--rel-tol", dest="rel_tol", type=float)
    common(sp)

    sp = sub.add_parser("interferometer", help="total propagator and output population")
    sp.add_argument("--R", type=float)
    sp.add_argument("--phi", type=float)
    sp.add_argument("--sigma", type=float)
    sp.add_argument("--theta1", type=float)
    sp.add_argument("--theta-m1", dest="theta_m1", type=float)
    common(sp)

    sp = sub.add_parser("map-fields", help="laboratory fields to model parameters")
    sp.add_argument("--Bx", type=float, help="coupling field (Gauss)")
    sp.add_argument("--Bz0", type=float, help="bias at sweep midpoint (Gauss)")
    sp.add_argument("--Bdot", type=float, help="sweep rate at the crossings (Gauss/s)")
    sp.add_argument("--gF", type=float)
    sp.add_argument("--margin", type=float)
    sp.add_argument("--lab-config", dest="lab_config", help="key = value field file")
    common(sp)

    sp = sub.add_parser("scan", help="fringe scan of the output population")
    sp.add_argument("--eps", type=float)
    sp.add_argument("--mu", type=float)
    sp.add_argument("--sweep", choices=("sigma", "chi"))
    sp.add_argument("--from", dest="start", type=float)
    sp.add_argument("--to", dest="stop", type=float)
    sp.add_argument("--points", type=int)
    sp.add_argument("--theta1", type=float)
    sp.add_argument("--theta-m1", dest="theta_m1", type=float)
    common(sp)

    sp = sub.add_parser("report", help="recompute every anchored reference number")
    common(sp)

    return top


def _emit(args, command: str, params: dict, result: dict, rows) -> None:
    fmt = args.format or ("csv" if rows is not None and command == "scan" else "json")
    if fmt == "csv" and rows is None:
        raise ValueError(f"command {command!r} has no CSV representation")
    if fmt == "csv":
        header = " ".join(f"{k}={v}" for k, v in params.items())
        lines = [f"# spinorint {command} {header}"]
        lines += [",".join(str(c) for c in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({"command": command, "params": params, "result": result},
                          indent=2) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _read_kv(args.config) if getattr(args, "config", None) else {}
        params, result, rows = _COMMANDS[args.command](args, cfg)
        _emit(args, args.command, params, result, rows)
    except OSError as exc:
        _error_record("io", exc)
        return 4
    except (IntegrationError, ArithmeticError) as exc:
        _error_record("numerical", exc)
        return 3
    except ValueError as exc:
        _error_record("invalid-parameters", exc)
        return 2
    return 0


def _error_record(kind: str, exc: Exception) -> None:
    json.dump({"error": {"kind": kind, "message": str(exc)}}, sys.stderr)
    sys.stderr.write("\n")


if __name__ == "__main__":
    sys.exit(main())
