"""Configuration-driven experiment runner.

Usage::

    rational-fourier run CONFIG [--output DIR] [--seed N] [--parallel]

The config is INI-style text (see ``README.md`` for the grammar).  Every
suite writes ``<suite>.csv`` plus a ``<suite>.json`` metadata sidecar to
the output directory and prints one summary line.  The exit status is 0
when every suite passes, 1 on a suite failure, 2 on a config error and 3
on an I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import functions, poles
from .basis import BasisSystem, phi
from .errors import ConfigParseError, SuiteFailure
from .kernels import (
    cd_direct_minus,
    cd_direct_plus,
    cd_kernel_minus,
    cd_kernel_plus,
    dirichlet_closed,
    dirichlet_direct,
    dirichlet_sine,
)
from .quadrature import inner_product
from .series import (
    BOUND_NAMES,
    ExperimentReport,
    bound_check,
    dini_convergence,
    jump_convergence,
    lp_error,
    riemann_lebesgue_probe,
    sine_integral_probe,
)

SUITES = (
    "orthonormality",
    "kernel_equivalence",
    "lp_convergence",
    "jump_pointwise",
    "dini_pointwise",
    "bounds",
    "probes",
)
GENERATORS = ("constant", "geometric_im", "power_law", "file")

SUITE_DEFAULTS = {
    "orthonormality": {"threshold": "1e-8"},
    "kernel_equivalence": {"samples": "200", "threshold": "1e-9", "cd_threshold": "1e-10"},
    "lp_convergence": {"p": "2"},
    "jump_pointwise": {"x0": "0", "function": "signed_exp", "final_tol": "0.05"},
    "dini_pointwise": {"x0": "0", "function": "gaussian", "final_tol": "0.05"},
    "bounds": {
        "x_min": "-5",
        "x_max": "5",
        "x_points": "21",
        "y_max": "5",
        "y_points": "20",
        "fd_step": "1e-5",
    },
    "probes": {"x": "0", "delta": "1", "sine_tol": "0.05", "rl_final": "0.05"},
}


@dataclass
class ExperimentConfig:
    generator: str
    generator_params: dict
    pole_count: int
    jitter: float
    function: str
    function_params: dict
    suites: list
    n_list: list
    tol: float
    slack: float
    fd_slack: float
    seed: int
    output: Path
    suite_params: dict = field(default_factory=dict)
    base_dir: Path = Path(".")

    def suite_n_list(self, suite: str) -> list:
        return self.suite_params[suite].get("n_list", self.n_list)


@dataclass
class SuiteResult:
    name: str
    report: ExperimentReport
    passed: bool
    worst_margin: float
    violation: str | None = None


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


def _line_of(text: str, section: str, key: str | None = None):
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        m = re.match(r"\[(.+)\]$", s)
        if m:
            current = m.group(1).strip()
            if key is None and current == section:
                return lineno
            continue
        if current == section and key is not None and re.match(rf"{re.escape(key)}\s*[=:]", s):
            return lineno
    return None


def _int_list(text, section, key, value):
    try:
        out = [int(v) for v in value.replace(",", " ").split()]
    except ValueError:
        raise ConfigParseError(_line_of(text, section, key), f"{key} must be a list of integers") from None
    if not out:
        raise ConfigParseError(_line_of(text, section, key), f"{key} must be nonempty")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ConfigParseError(_line_of(text, section, key), f"{key} must be strictly increasing")
    return out


def _number(text, section, key, value, kind=float, positive=False):
    try:
        v = kind(value)
    except ValueError:
        raise ConfigParseError(_line_of(text, section, key), f"{key} = {value!r} is not a valid {kind.__name__}") from None
    if positive and not v > 0:
        raise ConfigParseError(_line_of(text, section, key), f"{key} must be positive")
    return v


def parse_config(text: str, base_dir=".") -> ExperimentConfig:
    """Parse and validate config text; raises :class:`ConfigParseError`."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigParseError(getattr(exc, "lineno", None), str(exc).splitlines()[0]) from None

    for sec in ("poles", "run"):
        if not cp.has_section(sec):
            raise ConfigParseError(None, f"missing required section [{sec}]")
    known = {"poles", "function", "run", *SUITES}
    for sec in cp.sections():
        if sec not in known:
            raise ConfigParseError(_line_of(text, sec), f"unknown section [{sec}]")

    pol = dict(cp["poles"])
    gen = pol.pop("generator", "constant")
    if gen not in GENERATORS:
        raise ConfigParseError(_line_of(text, "poles", "generator"), f"generator must be one of {GENERATORS}")
    count = _number(text, "poles", "count", pol.pop("count", "300"), int, positive=True)
    jitter = _number(text, "poles", "jitter", pol.pop("jitter", "0"))
    if gen == "file":
        if "path" not in pol:
            raise ConfigParseError(_line_of(text, "poles"), "file generator needs path")
        gparams = {"path": pol.pop("path")}
    else:
        gparams = {k: _number(text, "poles", k, v) for k, v in pol.items()}

    fn = dict(cp["function"]) if cp.has_section("function") else {}
    fname = fn.pop("name", "lorentzian")
    if fname not in functions.REGISTRY:
        raise ConfigParseError(_line_of(text, "function", "name"), f"unknown function {fname!r}")
    fparams = {k: _number(text, "function", k, v) for k, v in fn.items()}

    run = cp["run"]
    if "n_list" not in run:
        raise ConfigParseError(_line_of(text, "run"), "run.n_list is required")
    n_list = _int_list(text, "run", "n_list", run["n_list"])
    if n_list[0] < 1:
        raise ConfigParseError(_line_of(text, "run", "n_list"), "n_list entries must be >= 1")
    suites = [s.strip() for s in run.get("suites", ",".join(SUITES)).replace(",", " ").split()]
    for s in suites:
        if s not in SUITES:
            raise ConfigParseError(_line_of(text, "run", "suites"), f"unknown suite {s!r}")
    if not suites:
        raise ConfigParseError(_line_of(text, "run", "suites"), "no suites selected")

    suite_params = {}
    for s in SUITES:
        params = dict(SUITE_DEFAULTS[s])
        if cp.has_section(s):
            params.update(cp[s])
        parsed = {}
        for k, v in params.items():
            if k == "n_list":
                parsed[k] = _int_list(text, s, k, v)
            elif k == "function":
                if v not in functions.REGISTRY:
                    raise ConfigParseError(_line_of(text, s, k), f"unknown function {v!r}")
                parsed[k] = v
            elif k in ("samples", "x_points", "y_points"):
                parsed[k] = _number(text, s, k, v, int, positive=True)
            else:
                parsed[k] = _number(text, s, k, v)
        suite_params[s] = parsed

    return ExperimentConfig(
        generator=gen,
        generator_params=gparams,
        pole_count=count,
        jitter=jitter,
        function=fname,
        function_params=fparams,
        suites=suites,
        n_list=n_list,
        tol=_number(text, "run", "tol", run.get("tol", "1e-10"), positive=True),
        slack=_number(text, "run", "slack", run.get("slack", "1e-9"), positive=True),
        fd_slack=_number(text, "run", "fd_slack", run.get("fd_slack", "1e-3"), positive=True),
        seed=_number(text, "run", "seed", run.get("seed", "0"), int),
        output=Path(run.get("output", "results")),
        suite_params=suite_params,
        base_dir=Path(base_dir),
    )


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(path.read_text(), base_dir=path.parent)


# ---------------------------------------------------------------------------
# building inputs
# ---------------------------------------------------------------------------


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 stream keyed by the run seed plus a per-suite label."""
    return np.random.Generator(np.random.PCG64([seed & (2**64 - 1), *stream]))


def build_poles(cfg: ExperimentConfig) -> poles.PoleSequence:
    g = cfg.generator
    p = cfg.generator_params
    if g == "constant":
        seq = poles.constant_poles(cfg.pole_count, p.get("re", 0.0), p.get("im", 2.0))
    elif g == "geometric_im":
        seq = poles.geometric_im(cfg.pole_count, p.get("base", 0.5), p.get("scale", 1.0))
    elif g == "power_law":
        seq = poles.power_law(
            cfg.pole_count, p.get("alpha", 0.5), p.get("beta", 0.75), p.get("re_scale", 1.0), p.get("im_scale", 1.0)
        )
    else:
        path = Path(p["path"])
        seq = poles.load_poles(path if path.is_absolute() else cfg.base_dir / path)
    if cfg.jitter:
        rng = make_rng(cfg.seed, 0)
        u = rng.uniform(-1.0, 1.0, size=(2, len(seq)))
        z = seq.poles
        seq = poles.PoleSequence(
            (z.real + cfg.jitter * u[0]) + 1j * z.imag * (1.0 + cfg.jitter * u[1]),
            name=f"{seq.name}+jitter({cfg.jitter})",
        )
    return poles.validate(seq)


def _function(cfg, name=None):
    if name is None or name == cfg.function:
        return functions.make_function(cfg.function, **cfg.function_params)
    return functions.make_function(name)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_orthonormality(cfg, upper, rng):
    prm = cfg.suite_params["orthonormality"]
    system = BasisSystem.paired(upper)
    rep = ExperimentReport(("n", "k_min", "k_max", "max_deviation"))
    worst = math.inf
    for n in cfg.suite_n_list("orthonormality"):
        ks = range(-n, n + 1)
        size = len(ks)
        gram = np.empty((size, size), complex)
        for i, j in enumerate(ks):
            for l in range(i, size):
                k = ks[l]
                val = inner_product(lambda x, j=j: phi(system, j, x), lambda x, k=k: phi(system, k, x), cfg.tol)
                gram[i, l] = val
                gram[l, i] = np.conj(val)
        dev = float(np.max(np.abs(gram - np.eye(size))))
        rep.rows.append({"n": n, "k_min": -n, "k_max": n, "max_deviation": dev})
        worst = min(worst, prm["threshold"] - dev)
    ok = worst >= 0
    return SuiteResult("orthonormality", rep, ok, worst, None if ok else "Gram matrix deviates from identity")


def suite_kernel_equivalence(cfg, upper, rng):
    prm = cfg.suite_params["kernel_equivalence"]
    samples = prm["samples"]
    paired = BasisSystem.paired(upper)
    lower_rand = poles.random_poles(rng, len(upper)).conjugate()
    general = BasisSystem(upper, lower_rand)
    min_im = float(np.min(upper.poles.imag))
    rep = ExperimentReport(("n", "cd_plus_rel", "cd_minus_rel", "closed_abs", "closed_general_abs", "sine_abs", "diagonal_pairs"))
    worst = math.inf
    violation = None
    for n in cfg.suite_n_list("kernel_equivalence"):
        m = n + 1
        # complex pairs for the CD identities, kept off conj(z) == zeta
        z = rng.uniform(-5, 5, samples) + 1j * rng.uniform(-0.4 * min_im, 3.0, samples)
        zeta = rng.uniform(-5, 5, samples) + 1j * rng.uniform(-0.4 * min_im, 3.0, samples)
        far = np.abs(np.conj(zeta) - z) > 0.1
        z, zeta = z[far], zeta[far]
        cdp = np.max(_rel(cd_kernel_plus(upper, n, z, zeta), cd_direct_plus(paired, n, z, zeta)))
        cdm = np.max(_rel(cd_kernel_minus(paired.lower, m, z, zeta), cd_direct_minus(paired, m, z, zeta)))
        x = rng.uniform(-5, 5, samples)
        sep = 10.0 ** rng.uniform(-8, 1, samples) * rng.choice([-1.0, 1.0], samples)
        sep[: max(1, samples // 20)] = 0.0
        t = x + sep
        direct = dirichlet_direct(paired, n, m, x, t)
        closed = np.max(np.abs(dirichlet_closed(paired, n, m, x, t) - direct))
        closed_g = np.max(np.abs(dirichlet_closed(general, n, m, x, t) - dirichlet_direct(general, n, m, x, t)))
        sine = np.max(np.abs(dirichlet_sine(upper, n, x, t) - direct))
        diag = int(np.sum(np.abs(sep) < 1e-6 * (1 + np.abs(x))))
        rep.rows.append(
            {
                "n": n,
                "cd_plus_rel": float(cdp),
                "cd_minus_rel": float(cdm),
                "closed_abs": float(closed),
                "closed_general_abs": float(closed_g),
                "sine_abs": float(sine),
                "diagonal_pairs": diag,
            }
        )
        checks = [
            ("CD identity (upper) relative error", prm["cd_threshold"] - cdp),
            ("CD identity (lower) relative error", prm["cd_threshold"] - cdm),
            ("exponential kernel vs direct sum", prm["threshold"] - closed),
            ("exponential kernel vs direct sum (unpaired)", prm["threshold"] - closed_g),
            ("sine kernel vs direct sum", prm["threshold"] - sine),
        ]
        for label, margin in checks:
            if margin < 0 and violation is None:
                violation = f"{label} at n={n}"
            worst = min(worst, float(margin))
    return SuiteResult("kernel_equivalence", rep, violation is None, worst, violation)


def _rel(a, b):
    return np.abs(a - b) / np.maximum(np.abs(b), np.finfo(float).tiny)


def suite_lp_convergence(cfg, upper, rng):
    prm = cfg.suite_params["lp_convergence"]
    system = BasisSystem.paired(upper)
    f = _function(cfg, prm.get("function"))
    rep = ExperimentReport(("n", "p", "lp_error"), metadata={"function": f.name})
    errs = []
    for n in cfg.suite_n_list("lp_convergence"):
        e = lp_error(system, f, n, prm["p"], cfg.tol)
        errs.append(e)
        rep.rows.append({"n": n, "p": prm["p"], "lp_error": e})
    drops = [a - b for a, b in zip(errs, errs[1:])]
    worst = min(drops) if drops else 0.0
    ok = worst > 0 or not drops
    return SuiteResult("lp_convergence", rep, ok, worst, None if ok else "Lp error not strictly decreasing")


def suite_jump_pointwise(cfg, upper, rng):
    prm = cfg.suite_params["jump_pointwise"]
    system = BasisSystem.paired(upper)
    f = _function(cfg, prm.get("function"))
    rep = jump_convergence(system, f, prm["x0"], cfg.suite_n_list("jump_pointwise"), cfg.tol)
    dev = rep.column("deviation")
    trend = 0.5 * dev[0] - dev[-1]
    final = prm["final_tol"] - dev[-1]
    worst = min(trend, final)
    violation = None
    if trend < 0:
        violation = "deviation at largest n exceeds half the deviation at smallest n"
    elif final < 0:
        violation = "final deviation above final_tol"
    return SuiteResult("jump_pointwise", rep, violation is None, worst, violation)


def suite_dini_pointwise(cfg, upper, rng):
    prm = cfg.suite_params["dini_pointwise"]
    system = BasisSystem.paired(upper)
    f = _function(cfg, prm.get("function"))
    rep = dini_convergence(system, f, prm["x0"], cfg.suite_n_list("dini_pointwise"), cfg.tol)
    worst = prm["final_tol"] - rep.column("deviation")[-1]
    ok = worst >= 0
    return SuiteResult("dini_pointwise", rep, ok, worst, None if ok else "final deviation above final_tol")


def suite_bounds(cfg, upper, rng):
    prm = cfg.suite_params["bounds"]
    xg = np.linspace(prm["x_min"], prm["x_max"], prm["x_points"])
    yg = np.linspace(prm["y_max"] / prm["y_points"], prm["y_max"], prm["y_points"])
    rep = ExperimentReport(("n", "sigma", "varsigma", *BOUND_NAMES))
    worst = math.inf
    violation = None
    for n in cfg.suite_n_list("bounds"):
        b = bound_check(upper, n, xg, yg, prm["fd_step"])
        w = b.worst()
        rep.rows.append({"n": n, "sigma": b.sigma, "varsigma": b.varsigma, **w})
        for name, margin in b.violations(cfg.slack, cfg.fd_slack):
            if violation is None:
                violation = f"{name} at n={n}"
        worst = min(worst, *w.values())
    return SuiteResult("bounds", rep, violation is None, worst, violation)


def suite_probes(cfg, upper, rng):
    prm = cfg.suite_params["probes"]
    ns = cfg.suite_n_list("probes")
    sine = sine_integral_probe(upper, ns, prm["x"], prm["delta"], tol=cfg.tol)
    rl = riemann_lebesgue_probe(upper, lambda y: np.exp(-y), ns, prm["x"], tol=cfg.tol)
    rep = ExperimentReport(("n", "sine_integral", "pi_half_gap", "riemann_lebesgue"))
    for n, s, r in zip(ns, sine, rl):
        rep.rows.append({"n": n, "sine_integral": s, "pi_half_gap": abs(s - math.pi / 2), "riemann_lebesgue": r})
    mags = [abs(r) for r in rl]
    # (label, margin, strict): strict margins must be > 0, others >= 0
    checks = [
        ("sine integral not within sine_tol of pi/2 at largest n", prm["sine_tol"] - abs(sine[-1] - math.pi / 2), False),
        ("Riemann-Lebesgue probe above rl_final at largest n", prm["rl_final"] - mags[-1], False),
    ]
    if len(mags) > 1:
        drop = min(a - b for a, b in zip(mags, mags[1:]))
        checks.append(("Riemann-Lebesgue probe not strictly decreasing", drop, True))
    violation = next((label for label, m, strict in checks if m < 0 or (strict and m == 0)), None)
    worst = min(m for _, m, _ in checks)
    return SuiteResult("probes", rep, violation is None, worst, violation)


SUITE_FUNCS = {
    "orthonormality": suite_orthonormality,
    "kernel_equivalence": suite_kernel_equivalence,
    "lp_convergence": suite_lp_convergence,
    "jump_pointwise": suite_jump_pointwise,
    "dini_pointwise": suite_dini_pointwise,
    "bounds": suite_bounds,
    "probes": suite_probes,
}


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def emit_csv(report: ExperimentReport, path) -> None:
    if not report.rows:
        raise ValueError("refusing to write a report without rows")
    report.to_csv(path)


def _run_suite(cfg, upper, name):
    rng = make_rng(cfg.seed, 1 + SUITES.index(name))
    return SUITE_FUNCS[name](cfg, upper, rng)


def run(cfg: ExperimentConfig, parallel: bool = False, stream=None) -> list[SuiteResult]:
    """Run every configured suite, write reports, print one line per suite."""
    stream = sys.stdout if stream is None else stream
    upper = build_poles(cfg)
    if parallel and len(cfg.suites) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda s: _run_suite(cfg, upper, s), cfg.suites))
    else:
        results = [_run_suite(cfg, upper, s) for s in cfg.suites]
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    for res in results:
        res.report.metadata.update(
            {
                "suite": res.name,
                "poles": upper.name,
                "seed": cfg.seed,
                "tol": cfg.tol,
                "passed": res.passed,
                "worst_margin": res.worst_margin,
            }
        )
        emit_csv(res.report, out / f"{res.name}.csv")
        (out / f"{res.name}.json").write_text(json.dumps(res.report.metadata, sort_keys=True, indent=2, default=str) + "\n")
        status = "PASS" if res.passed else "FAIL"
        line = f"{res.name:<20} {status}  worst_margin={res.worst_margin:.6g}"
        if res.violation:
            line += f"  first_violation: {res.violation}"
        print(line, file=stream)
    return results


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rational-fourier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run the suites described by a config file")
    r.add_argument("config", type=Path)
    r.add_argument("--output", type=Path, default=None, help="output directory (overrides run.output)")
    r.add_argument("--seed", type=int, default=None, help="64-bit seed (overrides run.seed)")
    r.add_argument("--parallel", action="store_true", help="run suites concurrently; output order is unchanged")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigParseError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    if args.output is not None:
        cfg.output = args.output
    if args.seed is not None:
        cfg.seed = args.seed
    try:
        results = run(cfg, parallel=args.parallel)
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    failed = [r for r in results if not r.passed]
    if failed:
        err = SuiteFailure(failed[0].name, failed[0].violation, failed[0].worst_margin)
        print(str(err), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
