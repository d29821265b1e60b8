"""Panel containers, outcome transformations, and group-by-period statistics.

Panels are immutable after construction and safe to share across threads.
CSV loading accepts both wide (one row per unit) and long (one row per
unit-period) two-period layouts, plus a long cohort layout for staggered
designs with ``inf`` marking never-treated units.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "PanelFormatError",
    "GTransform",
    "TwoPeriodPanel",
    "CohortPanel",
    "GroupStats",
    "load_two_period",
    "load_cohort",
    "group_stats",
    "treatment_ratio",
]

NEVER_TREATED = math.inf


class PanelFormatError(ValueError):
    """Input data violates the panel contract; names the offending row/field."""

    def __init__(self, message: str, row: object = None, field: str | None = None):
        detail = message
        if row is not None:
            detail += f" (row: {row!r}"
            detail += f", field: {field})" if field else ")"
        elif field:
            detail += f" (field: {field})"
        super().__init__(detail)
        self.row = row
        self.field = field


@dataclass(frozen=True)
class GTransform:
    """Measurable outcome transformation selecting the parameter family.

    ``identity`` targets the plain average effect; ``indicator(u)`` maps
    y -> 1{y <= u} (ties at u count, the cutoff is included) and targets
    distributional effects.  Arbitrary measurable functions plug in via
    :meth:`custom`.
    """

    kind: str
    threshold: float | None = None
    fn: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    @staticmethod
    def identity() -> "GTransform":
        return GTransform(kind="identity")

    @staticmethod
    def indicator(threshold: float) -> "GTransform":
        if not math.isfinite(threshold):
            raise ValueError(f"indicator threshold must be finite, got {threshold}")
        return GTransform(kind="indicator", threshold=float(threshold))

    @staticmethod
    def custom(fn: Callable[[np.ndarray], np.ndarray], label: str = "custom") -> "GTransform":
        return GTransform(kind=label, fn=fn)

    def apply(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.kind == "identity":
            return y
        if self.kind == "indicator":
            return (y <= self.threshold).astype(float)
        if self.fn is None:
            raise ValueError(f"GTransform kind {self.kind!r} has no callable attached")
        return np.asarray(self.fn(y), dtype=float)

    def describe(self) -> str:
        if self.kind == "indicator":
            return f"indicator(u={self.threshold})"
        return self.kind


@dataclass(frozen=True)
class TwoPeriodPanel:
    """Unit-level outcomes for the two-period design.

    Holds the observed outcomes at t=0 and t=1 and the treatment indicator.
    Anticipation status is deliberately absent: it is unobservable and only
    synthetic data-generating processes know it.
    """

    unit_ids: tuple
    y0: np.ndarray
    y1: np.ndarray
    d: np.ndarray
    strata: tuple | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "y0", np.asarray(self.y0, dtype=float))
        object.__setattr__(self, "y1", np.asarray(self.y1, dtype=float))
        object.__setattr__(self, "d", np.asarray(self.d, dtype=np.int64))
        n = len(self.unit_ids)
        if not (self.y0.shape == self.y1.shape == self.d.shape == (n,)):
            raise PanelFormatError("panel columns must have one entry per unit")
        if self.strata is not None and len(self.strata) != n:
            raise PanelFormatError("stratum column must have one entry per unit")
        if len(set(self.unit_ids)) != n:
            raise PanelFormatError("unit_id values must be unique")
        if not (np.isfinite(self.y0).all() and np.isfinite(self.y1).all()):
            raise PanelFormatError("outcomes must be finite reals")
        if not np.isin(self.d, (0, 1)).all():
            raise PanelFormatError("treatment indicator must be 0 or 1", field="d")
        if self.n_treated < 1 or self.n_control < 1:
            raise PanelFormatError(
                "panel needs at least one treated and one control unit"
            )

    @property
    def n(self) -> int:
        return len(self.unit_ids)

    @property
    def n_treated(self) -> int:
        return int(self.d.sum())

    @property
    def n_control(self) -> int:
        return self.n - self.n_treated

    def stratum_labels(self) -> tuple:
        """Distinct stratum labels in first-appearance order; a single
        implicit stratum when no stratum column was provided."""
        if self.strata is None:
            return ("<all>",)
        seen: dict = {}
        for s in self.strata:
            seen.setdefault(s, None)
        return tuple(seen)

    def restrict_to_stratum(self, label) -> "TwoPeriodPanel":
        if self.strata is None:
            if label == "<all>":
                return self
            raise KeyError(f"panel has no stratum column (asked for {label!r})")
        mask = np.array([s == label for s in self.strata])
        if not mask.any():
            raise KeyError(f"no units in stratum {label!r}")
        ids = tuple(u for u, m in zip(self.unit_ids, mask) if m)
        return TwoPeriodPanel(
            unit_ids=ids,
            y0=self.y0[mask],
            y1=self.y1[mask],
            d=self.d[mask],
            strata=None,
        )


@dataclass(frozen=True)
class CohortPanel:
    """Multi-period outcomes with first-treatment cohorts.

    ``outcomes`` is (n_units, T) with periods 1..T; ``cohorts`` holds the
    first treatment period per unit, ``inf`` for never-treated.
    """

    unit_ids: tuple
    outcomes: np.ndarray
    cohorts: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "outcomes", np.asarray(self.outcomes, dtype=float))
        object.__setattr__(self, "cohorts", np.asarray(self.cohorts, dtype=float))
        n = len(self.unit_ids)
        if self.outcomes.ndim != 2 or self.outcomes.shape[0] != n:
            raise PanelFormatError("outcomes must be an (n_units, T) matrix")
        if self.outcomes.shape[1] < 2:
            raise PanelFormatError("cohort panel needs at least two periods")
        if len(set(self.unit_ids)) != n:
            raise PanelFormatError("unit_id values must be unique")
        if not np.isfinite(self.outcomes).all():
            raise PanelFormatError("outcomes must be finite reals")
        finite = self.cohorts[np.isfinite(self.cohorts)]
        if ((finite < 1) | (finite > self.n_periods) | (finite != np.floor(finite))).any():
            raise PanelFormatError("cohorts must be integer periods in 1..T or inf")
        if not np.isinf(self.cohorts).any():
            raise PanelFormatError("cohort panel needs at least one never-treated unit")

    @property
    def n(self) -> int:
        return len(self.unit_ids)

    @property
    def n_periods(self) -> int:
        return int(self.outcomes.shape[1])

    def outcomes_at(self, period: int) -> np.ndarray:
        if not 1 <= period <= self.n_periods:
            raise ValueError(f"period {period} outside 1..{self.n_periods}")
        return self.outcomes[:, period - 1]

    def cohort_mask(self, e: float) -> np.ndarray:
        if math.isinf(e):
            return np.isinf(self.cohorts)
        return self.cohorts == e

    def cohort_share_up_to(self, e: int) -> float:
        """Share of units first treated at or before period e."""
        return float((self.cohorts <= e).mean())


@dataclass(frozen=True)
class GroupStats:
    """Group-by-period means, variances, and cross-period covariances.

    ``delta[d, t]`` is the sample mean of the transformed outcome in
    treatment group d at period t; variances and covariances use the
    n_d - 1 denominator.
    """

    delta: np.ndarray
    sigma2: np.ndarray
    cov: np.ndarray
    n0: int
    n1: int

    @property
    def n(self) -> int:
        return self.n0 + self.n1

    @property
    def p_hat(self) -> float:
        return self.n1 / self.n

    def diff_in_diff(self) -> float:
        return float(
            (self.delta[1, 1] - self.delta[1, 0]) - (self.delta[0, 1] - self.delta[0, 0])
        )


def group_stats(panel: TwoPeriodPanel, g: GTransform) -> GroupStats:
    """Means, variances, and covariances of g(y) by group and period.

    Requires at least two units per group so the n-1 denominators are
    defined.
    """
    g0 = g.apply(panel.y0)
    g1 = g.apply(panel.y1)
    delta = np.zeros((2, 2))
    sigma2 = np.zeros((2, 2))
    cov = np.zeros(2)
    counts = [panel.n_control, panel.n_treated]
    for d in (0, 1):
        mask = panel.d == d
        nd = counts[d]
        if nd < 2:
            raise ValueError(
                f"insufficient group size: group d={d} has {nd} unit(s), need >= 2"
            )
        a0 = g0[mask]
        a1 = g1[mask]
        delta[d, 0] = a0.mean()
        delta[d, 1] = a1.mean()
        sigma2[d, 0] = ((a0 - delta[d, 0]) ** 2).sum() / (nd - 1)
        sigma2[d, 1] = ((a1 - delta[d, 1]) ** 2).sum() / (nd - 1)
        cov[d] = ((a1 - delta[d, 1]) * (a0 - delta[d, 0])).sum() / (nd - 1)
    return GroupStats(delta=delta, sigma2=sigma2, cov=cov, n0=counts[0], n1=counts[1])


def treatment_ratio(panel: TwoPeriodPanel) -> float:
    """Empirical treatment share n1/n."""
    return panel.n_treated / panel.n


def _parse_float(raw: str, row_num: int, field: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise PanelFormatError(
            f"non-numeric value {raw!r}", row=row_num, field=field
        ) from None
    if not math.isfinite(value):
        raise PanelFormatError(f"non-finite value {raw!r}", row=row_num, field=field)
    return value


def _parse_d(raw: str, row_num: int) -> int:
    if raw not in ("0", "1"):
        raise PanelFormatError(
            f"treatment must be 0 or 1, got {raw!r}", row=row_num, field="d"
        )
    return int(raw)


def _open_reader(source) -> csv.DictReader:
    if isinstance(source, (str, bytes)):
        source = io.StringIO(source if isinstance(source, str) else source.decode())
    reader = csv.DictReader(source)
    if reader.fieldnames is None:
        raise PanelFormatError("empty input: no header row")
    return reader


def _require_columns(reader: csv.DictReader, required: Sequence[str]) -> None:
    have = set(reader.fieldnames or ())
    missing = [c for c in required if c not in have]
    if missing:
        raise PanelFormatError(f"missing column(s): {', '.join(missing)}")


def load_two_period(source, layout: str = "wide") -> TwoPeriodPanel:
    """Load a two-period panel from CSV text (stream, path contents, or str).

    Wide layout: header ``unit_id,y0,y1,d[,stratum]``, one row per unit.
    Long layout: header ``unit_id,t,y,d[,stratum]`` with t in {0,1}, exactly
    one row per (unit, period), and d constant within unit.
    """
    if layout not in ("wide", "long"):
        raise ValueError(f"layout must be 'wide' or 'long', got {layout!r}")
    reader = _open_reader(source)
    if layout == "wide":
        return _load_wide(reader)
    return _load_long(reader)


def _load_wide(reader: csv.DictReader) -> TwoPeriodPanel:
    _require_columns(reader, ("unit_id", "y0", "y1", "d"))
    has_stratum = "stratum" in (reader.fieldnames or ())
    ids, y0s, y1s, ds, strata = [], [], [], [], []
    for row_num, row in enumerate(reader, start=2):
        ids.append(row["unit_id"])
        y0s.append(_parse_float(row["y0"], row_num, "y0"))
        y1s.append(_parse_float(row["y1"], row_num, "y1"))
        ds.append(_parse_d(row["d"], row_num))
        if has_stratum:
            strata.append(row["stratum"])
    if not ids:
        raise PanelFormatError("no data rows")
    return TwoPeriodPanel(
        unit_ids=tuple(ids),
        y0=np.array(y0s),
        y1=np.array(y1s),
        d=np.array(ds),
        strata=tuple(strata) if has_stratum else None,
    )


def _load_long(reader: csv.DictReader) -> TwoPeriodPanel:
    _require_columns(reader, ("unit_id", "t", "y", "d"))
    has_stratum = "stratum" in (reader.fieldnames or ())
    records: dict = {}
    order: list = []
    for row_num, row in enumerate(reader, start=2):
        uid = row["unit_id"]
        t_raw = row["t"]
        if t_raw not in ("0", "1"):
            raise PanelFormatError(
                f"period must be 0 or 1, got {t_raw!r}", row=row_num, field="t"
            )
        t = int(t_raw)
        y = _parse_float(row["y"], row_num, "y")
        d = _parse_d(row["d"], row_num)
        stratum = row["stratum"] if has_stratum else None
        if uid not in records:
            records[uid] = {"y": {}, "d": d, "stratum": stratum}
            order.append(uid)
        rec = records[uid]
        if t in rec["y"]:
            raise PanelFormatError(
                f"duplicate (unit, period) for unit {uid!r} at t={t}", row=row_num
            )
        if rec["d"] != d:
            raise PanelFormatError(
                f"treatment not constant within unit {uid!r}", row=row_num, field="d"
            )
        if has_stratum and rec["stratum"] != stratum:
            raise PanelFormatError(
                f"stratum not constant within unit {uid!r}", row=row_num, field="stratum"
            )
        rec["y"][t] = y
    if not order:
        raise PanelFormatError("no data rows")
    ids, y0s, y1s, ds, strata = [], [], [], [], []
    for uid in order:
        rec = records[uid]
        if set(rec["y"]) != {0, 1}:
            have = sorted(rec["y"])
            raise PanelFormatError(
                f"missing period for unit {uid!r}: have t={have}, need both 0 and 1"
            )
        ids.append(uid)
        y0s.append(rec["y"][0])
        y1s.append(rec["y"][1])
        ds.append(rec["d"])
        strata.append(rec["stratum"])
    return TwoPeriodPanel(
        unit_ids=tuple(ids),
        y0=np.array(y0s),
        y1=np.array(y1s),
        d=np.array(ds),
        strata=tuple(strata) if has_stratum else None,
    )


def load_cohort(source) -> CohortPanel:
    """Load a cohort panel from long CSV with header ``unit_id,t,y,e``.

    ``e`` is the positive integer first-treatment period or the literal
    token ``inf`` for never-treated units.
    """
    reader = _open_reader(source)
    _require_columns(reader, ("unit_id", "t", "y", "e"))
    records: dict = {}
    order: list = []
    for row_num, row in enumerate(reader, start=2):
        uid = row["unit_id"]
        try:
            t = int(row["t"])
        except (TypeError, ValueError):
            raise PanelFormatError(
                f"non-integer period {row['t']!r}", row=row_num, field="t"
            ) from None
        y = _parse_float(row["y"], row_num, "y")
        e_raw = row["e"]
        if e_raw == "inf":
            e = NEVER_TREATED
        else:
            try:
                e = float(int(e_raw))
            except (TypeError, ValueError):
                raise PanelFormatError(
                    f"cohort must be a positive integer or 'inf', got {e_raw!r}",
                    row=row_num,
                    field="e",
                ) from None
        if uid not in records:
            records[uid] = {"y": {}, "e": e}
            order.append(uid)
        rec = records[uid]
        if t in rec["y"]:
            raise PanelFormatError(
                f"duplicate (unit, period) for unit {uid!r} at t={t}", row=row_num
            )
        if rec["e"] != e:
            raise PanelFormatError(
                f"cohort not constant within unit {uid!r}", row=row_num, field="e"
            )
        rec["y"][t] = y
    if not order:
        raise PanelFormatError("no data rows")
    periods = sorted({t for rec in records.values() for t in rec["y"]})
    expected = list(range(1, len(periods) + 1))
    if periods != expected:
        raise PanelFormatError(f"periods must be 1..T with no gaps, got {periods}")
    outcomes = np.empty((len(order), len(periods)))
    cohorts = np.empty(len(order))
    for i, uid in enumerate(order):
        rec = records[uid]
        missing = [t for t in expected if t not in rec["y"]]
        if missing:
            raise PanelFormatError(f"missing period for unit {uid!r}: t={missing}")
        outcomes[i] = [rec["y"][t] for t in expected]
        cohorts[i] = rec["e"]
    return CohortPanel(unit_ids=tuple(order), outcomes=outcomes, cohorts=cohorts)
