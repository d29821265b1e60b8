"""Command-line surface: estimation, inference, sensitivity sweeps,
changes-in-changes bounds, and simulation studies.

Every report embeds a manifest (command, resolved configuration, input
digest, tool version, master seed where applicable); JSON output is
deterministic, so equal manifests and inputs produce byte-identical
bytes.  Exit codes: 0 success, 1 a tagged acceptance threshold failed
(simulate only), 2 usage or validation error, 3 internal numerical
failure.  Human-readable numbers are rounded for display; JSON carries
full precision.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

from . import __version__
from .bounds import (
    PiBound,
    SignRegime,
    conditional_identified_sets,
    did_estimand,
    identified_set_benchmark,
    identified_set_imperfect,
    reconcile_regime,
    robustness_cutoff,
    sensitivity_sweep,
)
from .cic import CicData, cic_identified_set
from .inference import (
    DegenerateVarianceError,
    bound_variances,
    confidence_set,
    robust_null_check,
    summary_mode_infer,
)
from .numerics import NoRootInBracketError
from .panel import GTransform, PanelFormatError, load_two_period, treatment_ratio
from .simulate import (
    DgpConfig,
    coverage_study,
    decomposition_check,
    post_treatment_identity_check,
    staggered_identity_check,
    toy_bound_check,
)

EXIT_OK = 0
EXIT_THRESHOLD = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class CliError(ValueError):
    """Flag or input validation failure (exit code 2)."""


def _parse_g(spec: str) -> GTransform:
    if spec == "identity":
        return GTransform.identity()
    if spec.startswith("indicator:"):
        try:
            return GTransform.indicator(float(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise CliError(f"--g indicator threshold: {exc}") from None
    raise CliError(f"--g must be 'identity' or 'indicator:<u>', got {spec!r}")


def _parse_pi(spec: str) -> PiBound | str:
    """Returns a PiBound, or the marker string "stratum" for the
    per-stratum analysis path."""
    if spec == "treatment-ratio":
        return PiBound.from_treatment_ratio()
    if spec == "stratum":
        return "stratum"
    if spec.startswith("const:"):
        try:
            return PiBound.constant(float(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise CliError(f"--pi const: {exc}") from None
    raise CliError(
        f"--pi must be 'const:<v>', 'treatment-ratio', or 'stratum', got {spec!r}"
    )


def _parse_regime(sign_mu: str, sign_tau: str) -> SignRegime:
    mu_map = {"pos": 1, "neg": -1}
    tau_map = {"pos": 1, "neg": -1, "zero": 0}
    if sign_mu not in mu_map:
        raise CliError(f"--sign-mu must be pos|neg, got {sign_mu!r}")
    if sign_tau not in tau_map:
        raise CliError(f"--sign-tau must be pos|neg|zero, got {sign_tau!r}")
    return SignRegime(sign_mu=mu_map[sign_mu], sign_tau=tau_map[sign_tau])


def _parse_float_list(spec: str, flag: str) -> list[float]:
    try:
        return [float(tok) for tok in spec.split(",") if tok != ""]
    except ValueError:
        raise CliError(f"{flag} must be a comma-separated list of numbers") from None


def _parse_summary(tokens: list[str]) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise CliError(f"--summary expects m=<v> se=<v> n=<v>, got {tok!r}")
        key, raw = tok.split("=", 1)
        if key not in ("m", "se", "n"):
            raise CliError(f"--summary key must be m, se, or n, got {key!r}")
        try:
            out[key] = float(raw)
        except ValueError:
            raise CliError(f"--summary {key} is not a number: {raw!r}") from None
    for key in ("m", "se"):
        if key not in out:
            raise CliError(f"--summary is missing {key}=<v>")
    out.setdefault("n", 1.0)
    return out


def _load_panel(args):
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            return load_two_period(fh, layout=args.layout)
    except OSError as exc:
        raise CliError(f"cannot read --input: {exc}") from None


def _jsonable(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "unbounded"
        if math.isnan(x):
            return None
    return x


def _interval_dict(interval) -> dict:
    d = {
        "lower": _jsonable(interval.lower),
        "upper": _jsonable(interval.upper),
        "theorem_tag": interval.theorem_tag,
        "pi": interval.pi_used,
        "epsilon": interval.epsilon_used,
    }
    if interval.regime is not None:
        d["sign_mu"] = interval.regime.sign_mu
        d["sign_tau"] = interval.regime.sign_tau
    return d


def _manifest(command: str, config: dict, input_digest: dict, outputs, seed=None) -> dict:
    manifest = {
        "command": command,
        "config": config,
        "input_digest": input_digest,
        "outputs": sorted(outputs),
        "tool_version": __version__,
    }
    if seed is not None:
        manifest["master_seed"] = seed
    return manifest


def _emit_json(manifest: dict, results: dict) -> None:
    print(json.dumps({"manifest": manifest, "results": results}, sort_keys=True, indent=2))


def _fmt(x, nd: int = 6) -> str:
    if x is None:
        return "absent"
    if isinstance(x, str):
        return x
    if isinstance(x, float) and math.isinf(x):
        return "unbounded"
    return f"{x:.{nd}g}"


def _interval_text(interval) -> str:
    return f"[{_fmt(interval.lower)}, {_fmt(interval.upper)}]"


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------

def _add_estimate_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="panel CSV path")
    p.add_argument("--layout", default="wide", choices=("wide", "long"))
    p.add_argument("--g", default="identity", help="identity | indicator:<u>")
    p.add_argument("--pi", default="treatment-ratio",
                   help="const:<v> | treatment-ratio | stratum")
    p.add_argument("--sign-mu", default="pos", help="pos | neg")
    p.add_argument("--sign-tau", default="neg", help="pos | neg | zero")
    p.add_argument("--epsilon", type=float, default=None,
                   help="wrong-anticipation rate (imperfect-anticipation bounds)")
    p.add_argument("--auto-flip-sign", action="store_true",
                   help="flip the declared sign of mu to match the estimate")
    p.add_argument("--format", default="text", choices=("text", "json"))


def _estimate_payload(args):
    if not args.input:
        raise CliError("--input is required")
    panel = _load_panel(args)
    g = _parse_g(args.g)
    pi_bound = _parse_pi(args.pi)
    regime = _parse_regime(args.sign_mu, args.sign_tau)
    digest = {"rows": panel.n, "n_treated": panel.n_treated, "n_control": panel.n_control}
    caught: list[str] = []

    if pi_bound == "stratum":
        if panel.strata is None:
            raise CliError("--pi stratum needs a panel with a stratum column")
        from .bounds import conditional_estimand

        per = PiBound.from_treatment_ratio()
        with warnings.catch_warnings(record=True) as wlist:
            warnings.simplefilter("always")
            m_by_stratum = conditional_estimand(panel, g)
            sets = conditional_identified_sets(panel, g, per, regime)
        caught.extend(str(w.message) for w in wlist)
        strata = {
            str(label): {
                "m_hat": m_by_stratum[label],
                "pi": sets[label].pi_used,
                "interval": _interval_dict(sets[label]),
            }
            for label in m_by_stratum
        }
        results = {"strata": strata, "g": g.describe(), "pi_policy": "stratum", "warnings": caught}
        return panel, regime, g, digest, results

    pi = pi_bound.resolve(panel=panel)
    m_hat = did_estimand(panel, g)
    with warnings.catch_warnings(record=True) as wlist:
        warnings.simplefilter("always")
        regime = reconcile_regime(m_hat, regime, auto_flip=args.auto_flip_sign)
    caught.extend(str(w.message) for w in wlist)
    if args.epsilon is None:
        interval = identified_set_benchmark(m_hat, pi, regime)
    else:
        interval = identified_set_imperfect(m_hat, pi, args.epsilon, regime)
    results = {
        "m_hat": m_hat,
        "pi_policy": pi_bound.describe(),
        "pi": pi,
        "g": g.describe(),
        "regime": regime.describe(),
        "interval": _interval_dict(interval),
        "warnings": caught,
    }
    return panel, regime, g, digest, results


def cmd_estimate(args) -> int:
    panel, regime, g, digest, results = _estimate_payload(args)
    config = {
        "g": args.g,
        "pi": args.pi,
        "sign_mu": args.sign_mu,
        "sign_tau": args.sign_tau,
        "epsilon": args.epsilon,
        "auto_flip_sign": args.auto_flip_sign,
        "layout": args.layout,
    }
    manifest = _manifest("estimate", config, digest, results.keys())
    if args.format == "json":
        _emit_json(manifest, results)
        return EXIT_OK
    for w in results.get("warnings", ()):
        print(f"warning: {w}", file=sys.stderr)
    if "strata" in results:
        print(f"g: {results['g']}   pi policy: per-stratum treatment ratio")
        for label, entry in results["strata"].items():
            iv = entry["interval"]
            print(
                f"  stratum {label}: m-hat {_fmt(entry['m_hat'])}  pi {_fmt(entry['pi'])}  "
                f"set [{_fmt(iv['lower'])}, {_fmt(iv['upper'])}]"
            )
        return EXIT_OK
    iv = results["interval"]
    print(f"m-hat: {_fmt(results['m_hat'])}")
    print(f"pi:    {_fmt(results['pi'])} ({results['pi_policy']})")
    print(f"signs: {results['regime']}")
    tag = iv["theorem_tag"]
    print(f"identified set ({tag}): [{_fmt(iv['lower'])}, {_fmt(iv['upper'])}]")
    return EXIT_OK


# ---------------------------------------------------------------------------
# infer
# ---------------------------------------------------------------------------

def _add_infer_flags(p: argparse.ArgumentParser) -> None:
    _add_estimate_flags(p)
    p.add_argument("--alpha", type=float, default=0.95)
    p.add_argument("--summary", nargs="+", metavar="k=v",
                   help="summary-statistics mode: m=<v> se=<v> [n=<v>]")


def _infer_payload(args):
    regime = _parse_regime(args.sign_mu, args.sign_tau)
    caught: list[str] = []
    if args.summary:
        summ = _parse_summary(args.summary)
        pi_bound = _parse_pi(args.pi)
        if pi_bound.kind != "constant":
            raise CliError("summary mode needs --pi const:<v> (no panel to resolve from)")
        pi = pi_bound.value
        m_hat, se = summ["m"], summ["se"]
        with warnings.catch_warnings(record=True) as wlist:
            warnings.simplefilter("always")
            regime = reconcile_regime(m_hat, regime, auto_flip=args.auto_flip_sign)
        caught.extend(str(w.message) for w in wlist)
        interval, cs = summary_mode_infer(m_hat, se, pi, args.epsilon, regime, args.alpha)
        t_tilde = m_hat / se
        digest = {"summary": summ}
        sigma_note = {"sigma_l": None, "sigma_u": None, "se": se}
    else:
        if not args.input:
            raise CliError("either --input or --summary is required")
        panel = _load_panel(args)
        g = _parse_g(args.g)
        pi_bound = _parse_pi(args.pi)
        if pi_bound == "stratum":
            raise CliError("per-stratum inference is not supported; use estimate --pi stratum")
        pi = pi_bound.resolve(panel=panel)
        m_hat = did_estimand(panel, g)
        with warnings.catch_warnings(record=True) as wlist:
            warnings.simplefilter("always")
            regime = reconcile_regime(m_hat, regime, auto_flip=args.auto_flip_sign)
        caught.extend(str(w.message) for w in wlist)
        if args.epsilon is None:
            interval = identified_set_benchmark(m_hat, pi, regime)
        else:
            interval = identified_set_imperfect(m_hat, pi, args.epsilon, regime)
        vc = bound_variances(panel, g, pi, regime, epsilon=args.epsilon)
        cs = confidence_set(interval.lower, interval.upper, vc, args.alpha)
        se_m = bound_variances(panel, g, 0.0, SignRegime(1, 0)).se
        t_tilde = m_hat / se_m
        digest = {"rows": panel.n, "n_treated": panel.n_treated, "n_control": panel.n_control}
        sigma_note = {"sigma_l": vc.sigma_l, "sigma_u": vc.sigma_u, "se": vc.se}
    verdict = None
    if regime.s == -1:
        verdict = robust_null_check(t_tilde, args.alpha, regime)
    results = {
        "m_hat": m_hat,
        "pi": pi,
        "regime": regime.describe(),
        "interval": _interval_dict(interval),
        "confidence_set": {
            "lower": cs.lower,
            "upper": cs.upper,
            "c_n": cs.c_n,
            "alpha": cs.alpha,
            "delta_hat": cs.delta_hat,
        },
        "sigma": sigma_note,
        "t_tilde": t_tilde,
        "robust_null": verdict,
        "warnings": caught,
    }
    return digest, results


def cmd_infer(args) -> int:
    digest, results = _infer_payload(args)
    config = {
        "g": args.g,
        "pi": args.pi,
        "sign_mu": args.sign_mu,
        "sign_tau": args.sign_tau,
        "epsilon": args.epsilon,
        "alpha": args.alpha,
        "auto_flip_sign": args.auto_flip_sign,
        "layout": args.layout,
        "summary_mode": bool(args.summary),
    }
    manifest = _manifest("infer", config, digest, results.keys())
    if args.format == "json":
        _emit_json(manifest, results)
        return EXIT_OK
    for w in results.get("warnings", ()):
        print(f"warning: {w}", file=sys.stderr)
    iv = results["interval"]
    cs = results["confidence_set"]
    print(f"m-hat: {_fmt(results['m_hat'])}   pi: {_fmt(results['pi'])}   signs: {results['regime']}")
    print(f"identified set ({iv['theorem_tag']}): [{_fmt(iv['lower'])}, {_fmt(iv['upper'])}]")
    print(
        f"confidence set ({cs['alpha']:g}): [{_fmt(cs['lower'])}, {_fmt(cs['upper'])}]"
        f"   C_n {_fmt(cs['c_n'])}"
    )
    print(f"t-statistic (no anticipation): {_fmt(results['t_tilde'])}")
    if results["robust_null"] is not None:
        print(f"zero-effect null: {results['robust_null']}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sensitivity
# ---------------------------------------------------------------------------

def _add_sensitivity_flags(p: argparse.ArgumentParser) -> None:
    _add_infer_flags(p)
    p.add_argument("--pi-grid", required=True, help="comma-separated pi values")
    p.add_argument("--epsilon-grid", default=None, help="comma-separated epsilon values")


def cmd_sensitivity(args) -> int:
    regime = _parse_regime(args.sign_mu, args.sign_tau)
    pis = _parse_float_list(args.pi_grid, "--pi-grid")
    eps_grid = (
        _parse_float_list(args.epsilon_grid, "--epsilon-grid")
        if args.epsilon_grid
        else [None]
    )
    if args.summary:
        summ = _parse_summary(args.summary)
        m_hat, se, n = summ["m"], summ["se"], int(summ["n"])
        digest = {"summary": summ}
    else:
        if not args.input:
            raise CliError("either --input or --summary is required")
        panel = _load_panel(args)
        g = _parse_g(args.g)
        m_hat = did_estimand(panel, g)
        se = bound_variances(panel, g, 0.0, SignRegime(1, 0)).se
        n = panel.n
        digest = {"rows": panel.n, "n_treated": panel.n_treated, "n_control": panel.n_control}
    regime = reconcile_regime(m_hat, regime, auto_flip=args.auto_flip_sign)
    grid = [(pi, eps) for pi in pis for eps in eps_grid]
    rows = sensitivity_sweep(m_hat, se, n, grid, regime, args.alpha)
    cutoff = robustness_cutoff(rows)
    config = {
        "pi_grid": pis,
        "epsilon_grid": None if eps_grid == [None] else eps_grid,
        "sign_mu": args.sign_mu,
        "sign_tau": args.sign_tau,
        "alpha": args.alpha,
        "m_hat": m_hat,
        "se": se,
    }
    if args.format == "json":
        results = {
            "rows": [
                {
                    "pi": r.pi,
                    "epsilon": r.epsilon,
                    "set_l": r.set_lower,
                    "set_u": r.set_upper,
                    "cs_l": r.cs_lower,
                    "cs_u": r.cs_upper,
                }
                for r in rows
            ],
            "robustness_cutoff_pi": cutoff,
        }
        _emit_json(_manifest("sensitivity", config, digest, results.keys()), results)
        return EXIT_OK
    print("pi,epsilon,set_l,set_u,cs_l,cs_u")
    for r in rows:
        eps = "" if r.epsilon is None else repr(r.epsilon)
        print(f"{r.pi!r},{eps},{r.set_lower!r},{r.set_upper!r},{r.cs_lower!r},{r.cs_upper!r}")
    print(f"# robustness_cutoff_pi={'none' if cutoff is None else repr(cutoff)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# cic
# ---------------------------------------------------------------------------

def _add_cic_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="long-layout panel CSV path")
    p.add_argument("--q", required=True, help="comma-separated quantile levels")
    p.add_argument("--pi", type=float, required=True)
    p.add_argument("--sign-mu", default="pos", help="pos | neg")
    p.add_argument("--sign-tau", default="neg", help="pos | neg | zero")
    p.add_argument("--format", default="text", choices=("text", "json"))


def cmd_cic(args) -> int:
    regime = _parse_regime(args.sign_mu, args.sign_tau)
    qs = _parse_float_list(args.q, "--q")
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            panel = load_two_period(fh, layout="long")
    except OSError as exc:
        raise CliError(f"cannot read --input: {exc}") from None
    data = CicData.from_panel(panel)
    rows = []
    for q in qs:
        res = cic_identified_set(q, args.pi, regime, data)
        rows.append(
            {
                "q": q,
                "m_q": res.m_q,
                "phi_u": res.phi_u,
                "phi_l": res.phi_l,
                "phi_tilde_u": _jsonable(res.phi_tilde_u),
                "phi_tilde_l": _jsonable(res.phi_tilde_l),
                "set_l": _jsonable(res.raw_lower),
                "set_u": _jsonable(res.raw_upper),
                "empty": res.is_empty,
            }
        )
    digest = {"rows": panel.n, "n_treated": panel.n_treated, "n_control": panel.n_control}
    config = {
        "q": qs,
        "pi": args.pi,
        "sign_mu": args.sign_mu,
        "sign_tau": args.sign_tau,
    }
    if args.format == "json":
        results = {"rows": rows}
        _emit_json(_manifest("cic", config, digest, results.keys()), results)
        return EXIT_OK
    print("q      m_q        phi_u      phi_l      phi~_u     phi~_l     set")
    for r in rows:
        set_txt = (
            "EMPTY identified set (bound candidates cross); reported, not clamped"
            if r["empty"]
            else f"[{_fmt(r['set_l'])}, {_fmt(r['set_u'])}]"
        )
        print(
            f"{r['q']:<6g} {_fmt(r['m_q']):<10} {_fmt(r['phi_u']):<10} "
            f"{_fmt(r['phi_l']):<10} {_fmt(r['phi_tilde_u']):<10} "
            f"{_fmt(r['phi_tilde_l']):<10} {set_txt}"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _add_simulate_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scenario", required=True,
                   choices=("benchmark", "imperfect", "toy", "staggered", "identity"))
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--seed", type=int, default=20260808)
    p.add_argument("--mu", type=float, default=0.2)
    p.add_argument("--tau", type=float, default=-0.2)
    p.add_argument("--lam", type=float, default=None, help="anticipation probability")
    p.add_argument("--lambda-grid", default="0,0.2,0.4",
                   help="benchmark scenario: anticipation probabilities")
    p.add_argument("--pi", type=float, default=0.4)
    p.add_argument("--alpha", type=float, default=0.95)
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--p-treat", type=float, default=0.5)
    p.add_argument("--noise-sd", type=float, default=1.0)
    p.add_argument("--noise-rho", type=float, default=0.5)
    p.add_argument("--noise-dist", default="normal", choices=("normal", "student_t"))
    p.add_argument("--tau1", type=float, default=0.3)
    p.add_argument("--tau2", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.9)
    p.add_argument("--toy-alpha", type=float, default=1.0)
    p.add_argument("--toy-power", type=float, default=2.0)
    p.add_argument("--periods", type=int, default=4)
    p.add_argument("--cohort-shares", default="0,0.25,0.25")
    p.add_argument("--e", type=int, default=3)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--tpost", type=int, default=4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--coverage-threshold", type=float, default=0.945)
    p.add_argument("--falsify", action="store_true",
                   help="tag the run as a falsification study (assumption-violating)")


def cmd_simulate(args) -> int:
    scenario = args.scenario
    base = dict(
        n=args.n,
        mu=args.mu,
        tau=args.tau,
        p_treat=args.p_treat,
        noise_sd=args.noise_sd,
        noise_rho=args.noise_rho,
        noise_dist=args.noise_dist,
        delta=args.delta,
        seed=args.seed,
        falsification=args.falsify,
    )
    exit_code = EXIT_OK
    if scenario == "benchmark":
        lams = _parse_float_list(args.lambda_grid, "--lambda-grid")
        grid = [DgpConfig(lam=l, **base) for l in lams]
        report = coverage_study(grid, args.pi, args.alpha, args.reps, workers=args.workers)
        results = report.to_dict()
        results["threshold"] = args.coverage_threshold
        if args.falsify:
            results["verdict"] = "falsification run; threshold gating skipped"
        else:
            ok = report.min_coverage >= args.coverage_threshold
            results["verdict"] = "pass" if ok else "fail"
            exit_code = EXIT_OK if ok else EXIT_THRESHOLD
        config = {"scenario": scenario, "grid": [c.to_dict() for c in grid],
                  "pi": args.pi, "alpha": args.alpha, "reps": args.reps}
    elif scenario == "imperfect":
        cfg = DgpConfig(lam=args.lam if args.lam is not None else 0.3,
                        epsilon=args.epsilon, **base)
        report = decomposition_check(cfg, variant="imperfect")
        results = report.to_dict()
        exit_code = EXIT_OK if report.passed else EXIT_THRESHOLD
        config = {"scenario": scenario, "config": cfg.to_dict()}
    elif scenario == "toy":
        cfg = DgpConfig(lam=0.0, toy_alpha=args.toy_alpha, toy_power=args.toy_power, **base)
        report = toy_bound_check(cfg)
        results = report.to_dict()
        exit_code = EXIT_OK if report.passed else EXIT_THRESHOLD
        config = {"scenario": scenario, "config": cfg.to_dict()}
    elif scenario == "staggered":
        cfg = DgpConfig(lam=args.lam if args.lam is not None else 0.3, **base)
        shares = _parse_float_list(args.cohort_shares, "--cohort-shares")
        report = staggered_identity_check(
            cfg, T=args.periods, cohort_shares=shares, e=args.e, s=args.s, t=args.tpost
        )
        results = report.to_dict()
        exit_code = EXIT_OK if report.passed else EXIT_THRESHOLD
        config = {"scenario": scenario, "config": cfg.to_dict(),
                  "cohort_shares": shares, "periods": args.periods,
                  "e": args.e, "s": args.s, "t": args.tpost}
    else:  # identity
        cfg = DgpConfig(lam=args.lam if args.lam is not None else 0.3,
                        tau1=args.tau1, tau2=args.tau2, **base)
        report = post_treatment_identity_check(cfg, reps=args.reps)
        results = report.to_dict()
        exit_code = EXIT_OK if report.passed else EXIT_THRESHOLD
        config = {"scenario": scenario, "config": cfg.to_dict(), "reps": args.reps}
    manifest = _manifest("simulate", config, {}, results.keys(), seed=args.seed)
    _emit_json(manifest, results)
    return exit_code


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antebounds",
        description="Treatment-effect bounds and inference under anticipatory behavior",
    )
    parser.add_argument("--version", action="version", version=f"antebounds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_estimate_flags(sub.add_parser("estimate", help="identified sets from panel data"))
    _add_infer_flags(sub.add_parser("infer", help="add confidence sets and the robust-null verdict"))
    _add_sensitivity_flags(sub.add_parser("sensitivity", help="sweep pi (and epsilon) grids"))
    _add_cic_flags(sub.add_parser("cic", help="changes-in-changes quantile bounds"))
    _add_simulate_flags(sub.add_parser("simulate", help="seeded Monte Carlo studies"))
    return parser


_HANDLERS = {
    "estimate": cmd_estimate,
    "infer": cmd_infer,
    "sensitivity": cmd_sensitivity,
    "cic": cmd_cic,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (CliError, PanelFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoRootInBracketError, DegenerateVarianceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
