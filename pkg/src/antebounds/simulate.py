"""Synthetic data-generating processes and Monte Carlo verification engines.

Every generator knows its ground truth (effect, anticipatory effect,
anticipation share, error rate), so bounds and confidence procedures can
be checked against the truth they are supposed to cover.  Replications
are seeded by mixing a master seed with the replication index
(SplitMix64), making every study reproducible bit-for-bit and independent
of execution order or worker count.

Falsification configs (anticipation share above the cap, or anticipatory
effects larger than the treatment effect) are first-class but must be
tagged: they exist to demonstrate that the bounds break when their
assumptions do.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Sequence

import numpy as np

from .bounds import (
    SignRegime,
    did_estimand,
    identified_set_benchmark,
    staggered_estimand,
)
from .cic import CicData
from .inference import bound_variances, confidence_set
from .panel import CohortPanel, GTransform, TwoPeriodPanel

__all__ = [
    "DgpConfig",
    "CicDgpConfig",
    "PanelTruth",
    "GridPointResult",
    "CoverageReport",
    "CheckReport",
    "derive_seed",
    "generate_two_period",
    "generate_imperfect",
    "generate_toy_anticipation",
    "generate_post_treatment",
    "generate_staggered",
    "generate_cic",
    "coverage_study",
    "decomposition_check",
    "staggered_identity_check",
    "toy_bound_check",
    "post_treatment_identity_check",
]

_MASK64 = (1 << 64) - 1


def derive_seed(master: int, index: int) -> int:
    """SplitMix64 mix of a master seed and a replication index.

    Deterministic and well-spread, so replication streams are independent
    of the order in which workers execute them.
    """
    z = (master + 0x9E3779B97F4A7C15 * (index + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@dataclass(frozen=True)
class DgpConfig:
    """Two-period (and staggered) DGP parameters with known ground truth.

    ``lam`` is the true anticipation probability among the treated (and,
    where the scenario allows it, the control group); ``epsilon`` the
    wrong-anticipation rate among anticipators.  ``noise_rho`` is the
    cross-period correlation of the unit noise: 1 would make within-group
    outcome changes degenerate, so the default keeps it interior.
    """

    n: int
    mu: float
    tau: float
    lam: float
    epsilon: float = 0.0
    p_treat: float = 0.5
    base_means: tuple[float, float] = (0.0, 1.0)
    trend: float = 0.5
    noise_sd: float = 1.0
    noise_rho: float = 0.5
    noise_dist: str = "normal"
    noise_df: float = 5.0
    tau1: float = 0.0
    tau2: float = 0.0
    delta: float = 0.9
    toy_alpha: float | None = None
    toy_power: float = 1.0
    seed: int = 0
    falsification: bool = False

    def __post_init__(self) -> None:
        if self.n < 4:
            raise ValueError(f"n must be at least 4, got {self.n}")
        for name in ("lam", "epsilon"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if not (0.0 < self.p_treat < 1.0):
            raise ValueError(f"p_treat must lie in (0, 1), got {self.p_treat}")
        if self.noise_sd <= 0.0:
            raise ValueError(f"noise_sd must be positive, got {self.noise_sd}")
        if not (0.0 <= self.noise_rho <= 1.0):
            raise ValueError(f"noise_rho must lie in [0, 1], got {self.noise_rho}")
        if self.noise_dist not in ("normal", "student_t"):
            raise ValueError(f"noise_dist must be 'normal' or 'student_t'")
        if self.noise_dist == "student_t" and self.noise_df <= 2.0:
            raise ValueError("student_t noise needs noise_df > 2 for finite variance")
        if not (0.0 < self.delta < 1.0):
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")

    def satisfies_assumptions(self, pi: float) -> bool:
        """Magnitude restriction plus anticipation share within the cap."""
        return abs(self.tau) <= abs(self.mu) + 1e-12 and self.lam <= pi + 1e-12

    def regime(self) -> SignRegime:
        sign_mu = 1 if self.mu >= 0 else -1
        sign_tau = 0 if self.tau == 0 else (1 if self.tau > 0 else -1)
        return SignRegime(sign_mu=sign_mu, sign_tau=sign_tau)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PanelTruth:
    """Ground truth recorded alongside a generated panel."""

    mu: float
    tau: float
    lam: float
    epsilon: float
    predicted_m: float
    anticipation_share: float


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & _MASK64)


def _unit_noise(rng: np.random.Generator, cfg: DgpConfig, periods: int = 2) -> np.ndarray:
    """(n, periods) noise with cross-period correlation noise_rho."""
    if cfg.noise_dist == "normal":
        draw = lambda size: rng.standard_normal(size)
    else:
        scale = math.sqrt((cfg.noise_df - 2.0) / cfg.noise_df)
        draw = lambda size: rng.standard_t(cfg.noise_df, size) * scale
    common = draw(cfg.n)[:, None]
    idio = draw((cfg.n, periods))
    rho = cfg.noise_rho
    return cfg.noise_sd * (math.sqrt(rho) * common + math.sqrt(1.0 - rho) * idio)


def _panel_from_arrays(cfg: DgpConfig, y0, y1, d) -> TwoPeriodPanel:
    ids = tuple(f"u{i:07d}" for i in range(cfg.n))
    return TwoPeriodPanel(unit_ids=ids, y0=y0, y1=y1, d=d.astype(int))


def generate_two_period(cfg: DgpConfig, return_truth: bool = False):
    """Benchmark DGP: perfect anticipation, treated anticipators only.

    Both groups share the trend, so parallel trends holds by construction;
    anticipators shift the pre-period outcome by tau, which biases the DID
    contrast to mu - lam * tau.
    """
    rng = _rng(cfg.seed)
    d = rng.random(cfg.n) < cfg.p_treat
    a = d & (rng.random(cfg.n) < cfg.lam)
    noise = _unit_noise(rng, cfg)
    base = np.where(d, cfg.base_means[1], cfg.base_means[0])
    y0 = base + noise[:, 0] + a * cfg.tau
    y1 = base + cfg.trend + noise[:, 1] + d * cfg.mu
    panel = _panel_from_arrays(cfg, y0, y1, d)
    if not return_truth:
        return panel
    truth = PanelTruth(
        mu=cfg.mu,
        tau=cfg.tau,
        lam=cfg.lam,
        epsilon=0.0,
        predicted_m=cfg.mu - cfg.lam * cfg.tau,
        anticipation_share=float(a[d].mean()) if d.any() else 0.0,
    )
    return panel, truth


def generate_imperfect(cfg: DgpConfig, return_truth: bool = False):
    """Imperfect anticipation: anticipators in both groups, wrong with
    probability epsilon.

    Only units whose ANTICIPATED status is treated shift in the
    pre-period: correct anticipators in the treated group and wrong ones
    in the control group.  The contrast converges to
    mu - lam * (1 - 2*epsilon) * tau.
    """
    rng = _rng(cfg.seed)
    d = rng.random(cfg.n) < cfg.p_treat
    anticipates = rng.random(cfg.n) < cfg.lam
    wrong = anticipates & (rng.random(cfg.n) < cfg.epsilon)
    # anticipated-treated layer: treated & correct, or control & wrong
    shifts = anticipates & ((d & ~wrong) | (~d & wrong))
    noise = _unit_noise(rng, cfg)
    base = np.where(d, cfg.base_means[1], cfg.base_means[0])
    y0 = base + noise[:, 0] + shifts * cfg.tau
    y1 = base + cfg.trend + noise[:, 1] + d * cfg.mu
    panel = _panel_from_arrays(cfg, y0, y1, d)
    if not return_truth:
        return panel
    truth = PanelTruth(
        mu=cfg.mu,
        tau=cfg.tau,
        lam=cfg.lam,
        epsilon=cfg.epsilon,
        predicted_m=cfg.mu - cfg.lam * (1.0 - 2.0 * cfg.epsilon) * cfg.tau,
        anticipation_share=float(anticipates.mean()),
    )
    return panel, truth


def generate_toy_anticipation(cfg: DgpConfig, return_truth: bool = False):
    """Information-density anticipation: A = 1{U <= alpha * P[D=1]}.

    U follows F(x) = x^k on [0, 1] with k >= 1, i.e. a nondecreasing
    density; together with alpha <= 1 this keeps the anticipation share
    below the treatment share, the bound the treatment-ratio pi policy
    relies on.
    """
    if cfg.toy_alpha is None:
        raise ValueError("toy model requires toy_alpha to be set")
    if not (0.0 < cfg.toy_alpha <= 1.0):
        raise ValueError(
            f"toy_alpha must lie in (0, 1] so the signal level stays in the "
            f"U support, got {cfg.toy_alpha}"
        )
    if cfg.toy_power < 1.0:
        raise ValueError(
            f"toy_power < 1 gives a decreasing density for U, which breaks "
            f"the anticipation-share bound (got {cfg.toy_power})"
        )
    rng = _rng(cfg.seed)
    d = rng.random(cfg.n) < cfg.p_treat
    u = rng.random(cfg.n) ** (1.0 / cfg.toy_power)
    threshold = cfg.toy_alpha * cfg.p_treat
    a = u <= threshold  # both groups anticipate; only treated ones react
    noise = _unit_noise(rng, cfg)
    base = np.where(d, cfg.base_means[1], cfg.base_means[0])
    y0 = base + noise[:, 0] + (a & d) * cfg.tau
    y1 = base + cfg.trend + noise[:, 1] + d * cfg.mu
    panel = _panel_from_arrays(cfg, y0, y1, d)
    if not return_truth:
        return panel
    share = threshold**cfg.toy_power
    truth = PanelTruth(
        mu=cfg.mu,
        tau=cfg.tau,
        lam=share,
        epsilon=0.0,
        predicted_m=cfg.mu - share * cfg.tau,
        anticipation_share=float(a.mean()),
    )
    return panel, truth


def generate_post_treatment(cfg: DgpConfig, return_truth: bool = False):
    """Anticipators shift by tau1 before treatment and tau2 after it.

    The contrast converges to mu - lam * (tau1 - tau2): equal pre and post
    anticipatory effects cancel and leave identification untouched.
    """
    rng = _rng(cfg.seed)
    d = rng.random(cfg.n) < cfg.p_treat
    a = d & (rng.random(cfg.n) < cfg.lam)
    noise = _unit_noise(rng, cfg)
    base = np.where(d, cfg.base_means[1], cfg.base_means[0])
    y0 = base + noise[:, 0] + a * cfg.tau1
    y1 = base + cfg.trend + noise[:, 1] + d * cfg.mu + a * cfg.tau2
    panel = _panel_from_arrays(cfg, y0, y1, d)
    if not return_truth:
        return panel
    truth = PanelTruth(
        mu=cfg.mu,
        tau=cfg.tau1,
        lam=cfg.lam,
        epsilon=0.0,
        predicted_m=cfg.mu - cfg.lam * (cfg.tau1 - cfg.tau2),
        anticipation_share=float(a[d].mean()) if d.any() else 0.0,
    )
    return panel, truth


def generate_staggered(
    cfg: DgpConfig, T: int, cohort_shares: Sequence[float], return_truth: bool = False
):
    """Staggered adoption: cohort e first treated at period e, treated ever
    after; anticipation in pre-period s with probability lam * delta^(e-s).

    A single uniform draw per unit thresholds every pre-period, so
    anticipation switches on at some period and stays on while matching
    the marginal probabilities exactly.
    """
    if T < 2:
        raise ValueError(f"staggered design needs T >= 2, got {T}")
    shares = np.asarray(cohort_shares, dtype=float)
    if shares.ndim != 1 or len(shares) > T:
        raise ValueError("cohort_shares must list shares for cohorts e = 1..L, L <= T")
    if (shares < 0).any() or shares.sum() > 1.0 + 1e-12:
        raise ValueError("cohort shares must be nonnegative and sum to at most 1")
    never_share = max(0.0, 1.0 - shares.sum())
    if never_share <= 0.0:
        raise ValueError("staggered design needs a never-treated remainder share")
    rng = _rng(cfg.seed)
    cohorts_values = np.array([float(e) for e in range(1, len(shares) + 1)] + [math.inf])
    probs = np.concatenate((shares, [never_share]))
    probs = probs / probs.sum()
    cohorts = rng.choice(cohorts_values, size=cfg.n, p=probs)
    v = rng.random(cfg.n)
    if cfg.noise_dist == "normal":
        draw = lambda size: rng.standard_normal(size)
    else:
        scale = math.sqrt((cfg.noise_df - 2.0) / cfg.noise_df)
        draw = lambda size: rng.standard_t(cfg.noise_df, size) * scale
    common = draw(cfg.n)[:, None]
    idio = draw((cfg.n, T))
    noise = cfg.noise_sd * (
        math.sqrt(cfg.noise_rho) * common + math.sqrt(1.0 - cfg.noise_rho) * idio
    )
    ever = np.isfinite(cohorts)
    base = np.where(ever, cfg.base_means[1], cfg.base_means[0])
    periods = np.arange(1, T + 1)[None, :]
    treated_now = ever[:, None] & (periods >= cohorts[:, None])
    with np.errstate(invalid="ignore"):
        h = np.where(
            ever[:, None] & (periods < cohorts[:, None]),
            cfg.lam * cfg.delta ** (cohorts[:, None] - periods),
            0.0,
        )
    anticipating = v[:, None] < h
    outcomes = (
        base[:, None]
        + cfg.trend * periods
        + noise
        + cfg.mu * treated_now
        + cfg.tau * anticipating
    )
    ids = tuple(f"u{i:07d}" for i in range(cfg.n))
    panel = CohortPanel(unit_ids=ids, outcomes=outcomes, cohorts=cohorts)
    if not return_truth:
        return panel
    truth = PanelTruth(
        mu=cfg.mu,
        tau=cfg.tau,
        lam=cfg.lam,
        epsilon=0.0,
        predicted_m=math.nan,  # depends on (e, s); see h_probability
        anticipation_share=float(anticipating.any(axis=1).mean()),
    )
    return panel, truth


def h_probability(cfg: DgpConfig, e: int, s: int) -> float:
    """Anticipation probability in pre-period s for cohort e."""
    if not s < e:
        raise ValueError(f"pre-period must precede treatment: s={s}, e={e}")
    return cfg.lam * cfg.delta ** (e - s)


@dataclass(frozen=True)
class CicDgpConfig:
    """Changes-in-changes DGP with constant quantile effect.

    Clean outcomes are phi(u, 0) = u and phi(u, 1) = intercept + slope*u
    (strictly increasing, slope away from 1 so the magnitude-route root is
    well-defined); the treated draw U from [u_lo, u_hi] inside the control
    support [0, 1].  Treated units gain ``effect`` at t=1 and anticipators
    (share lam) shift by ``tau_shift`` at t=0, so mu(q) = effect and
    tau(q) = tau_shift at every q.
    """

    n: int
    effect: float
    tau_shift: float = 0.0
    lam: float = 0.0
    slope: float = 0.5
    intercept: float = 0.25
    u_lo: float = 0.0
    u_hi: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 4:
            raise ValueError("n must be at least 4")
        if self.slope <= 0.0:
            raise ValueError("slope must be positive for a monotone period map")
        if not (0.0 <= self.lam <= 1.0):
            raise ValueError(f"lam must lie in [0, 1], got {self.lam}")
        if not (0.0 <= self.u_lo < self.u_hi <= 1.0):
            raise ValueError("treated U support must be inside [0, 1]")

    def to_dict(self) -> dict:
        return asdict(self)

    def true_counterfactual_quantile(self, q: float) -> float:
        """Quantile of the clean treated outcome at t=1: intercept +
        slope * Q_{U|treated}(q)."""
        return self.intercept + self.slope * (self.u_lo + q * (self.u_hi - self.u_lo))


def generate_cic(cfg: CicDgpConfig) -> CicData:
    """Draw the four observed samples of the changes-in-changes DGP."""
    rng = _rng(cfg.seed)
    n_t = cfg.n // 2
    n_c = cfg.n - n_t
    u_control = rng.random(n_c)
    u_treated = cfg.u_lo + (cfg.u_hi - cfg.u_lo) * rng.random(n_t)
    a = rng.random(n_t) < cfg.lam
    y00 = u_control
    y01 = cfg.intercept + cfg.slope * u_control
    y10 = u_treated + a * cfg.tau_shift
    y11 = cfg.intercept + cfg.slope * u_treated + cfg.effect
    return CicData.from_samples(
        treated_t0=y10, treated_t1=y11, control_t0=y00, control_t1=y01
    )


@dataclass(frozen=True)
class GridPointResult:
    """Per-grid-point coverage and average set lengths."""

    lam: float
    coverage: float
    mean_set_length: float
    mean_cs_length: float
    reps: int
    falsification: bool

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CoverageReport:
    """Coverage study output: one entry per DGP grid point."""

    points: tuple
    pi: float
    alpha: float
    reps: int
    master_seeds: tuple

    @property
    def min_coverage(self) -> float:
        return min(p.coverage for p in self.points)

    def to_dict(self) -> dict:
        return {
            "pi": self.pi,
            "alpha": self.alpha,
            "reps": self.reps,
            "master_seeds": list(self.master_seeds),
            "points": [p.to_dict() for p in self.points],
            "min_coverage": self.min_coverage,
        }


def _coverage_rep(args) -> tuple[float, float, float]:
    cfg, pi, alpha, rep = args
    panel = generate_two_period(replace(cfg, seed=derive_seed(cfg.seed, rep)))
    g = GTransform.identity()
    regime = cfg.regime()
    m_hat = did_estimand(panel, g)
    interval = identified_set_benchmark(m_hat, pi, regime)
    vc = bound_variances(panel, g, pi, regime)
    cs = confidence_set(interval.lower, interval.upper, vc, alpha)
    return (
        1.0 if cs.contains(cfg.mu) else 0.0,
        interval.width,
        cs.upper - cs.lower,
    )


def coverage_study(
    cfg_grid: Sequence[DgpConfig],
    pi_for_estimator: float,
    alpha: float,
    reps: int,
    workers: int = 1,
) -> CoverageReport:
    """Empirical coverage of the confidence set across a DGP grid.

    Each replication draws a fresh benchmark panel, runs the full
    estimate -> interval -> variance -> confidence-set pipeline, and
    records whether the true effect landed inside.  Configs violating the
    assumptions are rejected unless explicitly tagged as falsification
    runs, whose points are flagged in the report.
    """
    if reps < 1:
        raise ValueError("reps must be positive")
    for cfg in cfg_grid:
        if not cfg.satisfies_assumptions(pi_for_estimator) and not cfg.falsification:
            raise ValueError(
                f"config with lam={cfg.lam}, tau={cfg.tau}, mu={cfg.mu} violates "
                f"the assumptions for pi={pi_for_estimator}; tag it falsification "
                "if that is intentional"
            )
    points = []
    for cfg in cfg_grid:
        jobs = [(cfg, pi_for_estimator, alpha, rep) for rep in range(reps)]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_coverage_rep, jobs, chunksize=max(1, reps // (4 * workers))))
        else:
            results = [_coverage_rep(job) for job in jobs]
        arr = np.asarray(results)
        points.append(
            GridPointResult(
                lam=cfg.lam,
                coverage=float(arr[:, 0].mean()),
                mean_set_length=float(arr[:, 1].mean()),
                mean_cs_length=float(arr[:, 2].mean()),
                reps=reps,
                falsification=cfg.falsification,
            )
        )
    return CoverageReport(
        points=tuple(points),
        pi=pi_for_estimator,
        alpha=alpha,
        reps=reps,
        master_seeds=tuple(cfg.seed for cfg in cfg_grid),
    )


@dataclass(frozen=True)
class CheckReport:
    """Generic estimate-versus-prediction check with a 3-sigma verdict."""

    name: str
    estimate: float
    predicted: float
    se: float
    passed: bool
    details: dict = field(default_factory=dict)

    @property
    def z(self) -> float:
        return (self.estimate - self.predicted) / self.se if self.se > 0 else math.inf

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "estimate": self.estimate,
            "predicted": self.predicted,
            "se": self.se,
            "z": self.z,
            "passed": self.passed,
            "details": dict(self.details),
        }


def _did_se(panel: TwoPeriodPanel) -> float:
    """Standard error of the DID contrast (identity transform)."""
    vc = bound_variances(panel, GTransform.identity(), 0.0, SignRegime(1, 0))
    return vc.se


def decomposition_check(cfg: DgpConfig, variant: str = "benchmark") -> CheckReport:
    """One large-n draw: the DID contrast against its predicted bias.

    Benchmark predicts mu - lam*tau; the imperfect variant predicts
    mu - lam*(1-2*epsilon)*tau.
    """
    if variant == "benchmark":
        panel, truth = generate_two_period(cfg, return_truth=True)
    elif variant == "imperfect":
        panel, truth = generate_imperfect(cfg, return_truth=True)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    m_hat = did_estimand(panel, GTransform.identity())
    se = _did_se(panel)
    passed = abs(m_hat - truth.predicted_m) <= 3.0 * se
    return CheckReport(
        name=f"decomposition/{variant}",
        estimate=m_hat,
        predicted=truth.predicted_m,
        se=se,
        passed=passed,
        details={"lam": cfg.lam, "epsilon": cfg.epsilon, "n": cfg.n},
    )


def staggered_identity_check(
    cfg: DgpConfig, T: int, cohort_shares: Sequence[float], e: int, s: int, t: int
) -> CheckReport:
    """Staggered contrast against mu - lam * delta^(e-s) * tau."""
    panel = generate_staggered(cfg, T, cohort_shares)
    g = GTransform.identity()
    m_hat = staggered_estimand(panel, e, s, t, g)
    diff = panel.outcomes_at(t) - panel.outcomes_at(s)
    in_cohort = panel.cohort_mask(float(e))
    never = panel.cohort_mask(math.inf)
    se = math.sqrt(
        diff[in_cohort].var(ddof=1) / in_cohort.sum()
        + diff[never].var(ddof=1) / never.sum()
    )
    predicted = cfg.mu - h_probability(cfg, e, s) * cfg.tau
    passed = abs(m_hat - predicted) <= 3.0 * se
    return CheckReport(
        name="staggered-identity",
        estimate=m_hat,
        predicted=predicted,
        se=se,
        passed=passed,
        details={"e": e, "s": s, "t": t, "h": h_probability(cfg, e, s), "n": cfg.n},
    )


def toy_bound_check(cfg: DgpConfig) -> CheckReport:
    """Empirical anticipation share against the treatment share bound."""
    panel, truth = generate_toy_anticipation(cfg, return_truth=True)
    share = truth.anticipation_share
    ratio = panel.n_treated / panel.n
    se = math.sqrt(
        share * (1.0 - share) / panel.n + ratio * (1.0 - ratio) / panel.n
    )
    passed = share <= ratio + 3.0 * max(se, 1e-12)
    return CheckReport(
        name="toy-anticipation-bound",
        estimate=share,
        predicted=ratio,
        se=se,
        passed=passed,
        details={
            "toy_alpha": cfg.toy_alpha,
            "toy_power": cfg.toy_power,
            "theoretical_share": (cfg.toy_alpha * cfg.p_treat) ** cfg.toy_power,
            "n": cfg.n,
        },
    )


def post_treatment_identity_check(cfg: DgpConfig, reps: int) -> CheckReport:
    """Across replications, the mean contrast against mu - lam*(tau1-tau2)."""
    if reps < 2:
        raise ValueError("identity check needs at least 2 replications")
    g = GTransform.identity()
    m_hats = np.empty(reps)
    for rep in range(reps):
        panel = generate_post_treatment(replace(cfg, seed=derive_seed(cfg.seed, rep)))
        m_hats[rep] = did_estimand(panel, g)
    predicted = cfg.mu - cfg.lam * (cfg.tau1 - cfg.tau2)
    se = float(m_hats.std(ddof=1) / math.sqrt(reps))
    estimate = float(m_hats.mean())
    passed = abs(estimate - predicted) <= 3.0 * max(se, 1e-12)
    return CheckReport(
        name="post-treatment-identity",
        estimate=estimate,
        predicted=predicted,
        se=se,
        passed=passed,
        details={"tau1": cfg.tau1, "tau2": cfg.tau2, "lam": cfg.lam, "reps": reps},
    )
