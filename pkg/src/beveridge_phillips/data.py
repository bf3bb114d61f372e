"""Empirical series: monthly CSV input, inflation and tightness gaps, and a
kinked least-squares line through the point of divine coincidence.

Input CSVs have a ``date,value`` header with ISO months (``2021-04`` or
``2021-04-01``). Inflation is the percent change from a year ago on a
12-calendar-month lag, as a fraction; no interpolation is done.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import DateMisalignmentError, InsufficientDataError

DEFAULT_TARGET = 0.02
MIN_POINTS_PER_SIDE = 3


@dataclass(frozen=True)
class SeriesPoint:
    date: dt.date  # first day of the month
    value: float


@dataclass(frozen=True)
class GapPoint:
    date: dt.date
    tightness_gap: float
    inflation_gap: float


@dataclass(frozen=True)
class KinkedFit:
    slope_tight: float
    slope_slack: float
    intercept: float
    n_tight: int
    n_slack: int
    rss: float
    r_squared: float

    @property
    def steeper_when_tight(self) -> bool:
        return self.slope_tight > self.slope_slack


def parse_month(text: str) -> dt.date:
    text = text.strip()
    for fmt in ("%Y-%m-%d", "%Y-%m"):
        try:
            d = dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
        return d.replace(day=1)
    raise ValueError(f"not an ISO month: {text!r}")


def month_index(d: dt.date) -> int:
    return d.year * 12 + d.month - 1


def validate_series(points, name: str = "series") -> None:
    prev = None
    for p in points:
        if not math.isfinite(p.value):
            raise ValueError(f"{name}: non-finite value at {p.date}")
        if prev is not None and month_index(p.date) <= month_index(prev):
            raise DateMisalignmentError(f"{name}: dates not strictly increasing at {p.date}")
        prev = p.date


def read_series_csv(path) -> list[SeriesPoint]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"date", "value"} <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected a 'date,value' header")
        points = [SeriesPoint(parse_month(row["date"]), float(row["value"])) for row in reader]
    validate_series(points, str(path))
    return points


def write_series_csv(path, points) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", "value"])
        for p in points:
            w.writerow([p.date.strftime("%Y-%m"), repr(float(p.value))])


def year_over_year(index) -> dict[int, float]:
    """Fractional change from 12 months earlier, keyed by month index."""
    by_month = {month_index(p.date): p.value for p in index}
    return {m: (v - by_month[m - 12]) / by_month[m - 12] for m, v in by_month.items() if m - 12 in by_month}


def compute_gaps(price_index, tightness, target: float = DEFAULT_TARGET) -> list[GapPoint]:
    """Inflation gap (YoY inflation minus ``target``) and tightness gap
    (tightness minus 1) on the months where both are defined."""
    validate_series(price_index, "price index")
    validate_series(tightness, "tightness")
    levels = {month_index(p.date): p.value for p in price_index}
    defined = [m for m in sorted(levels) if m - 12 in levels]
    if not defined:
        raise InsufficientDataError("price index needs two observations 12 months apart")
    theta = {month_index(p.date): p.value for p in tightness}
    common = [m for m in defined if m in theta]
    if not common:
        raise DateMisalignmentError("no month has both an inflation rate and a tightness value")
    # exact rational arithmetic on the stored levels and the decimal target,
    # rounded once: a series growing exactly 5% gives exactly 0.03 at 2%
    target_q = Fraction(repr(float(target)))
    out = []
    for m in common:
        gap = float(Fraction(levels[m]) / Fraction(levels[m - 12]) - 1 - target_q)
        out.append(GapPoint(dt.date(m // 12, m % 12 + 1, 1), theta[m] - 1.0, gap))
    return out


def quarterly_means(gaps) -> list[tuple[str, float, float]]:
    """Quarterly averages over quarters with all three months present."""
    buckets: dict[tuple[int, int], list[GapPoint]] = {}
    for g in gaps:
        buckets.setdefault((g.date.year, (g.date.month - 1) // 3 + 1), []).append(g)
    out = []
    for (year, q), pts in sorted(buckets.items()):
        if len(pts) == 3:
            out.append((f"{year}Q{q}", float(np.mean([p.tightness_gap for p in pts])),
                        float(np.mean([p.inflation_gap for p in pts]))))
    return out


def write_gaps_csv(path, gaps) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", "tightness_gap", "inflation_gap"])
        for g in gaps:
            w.writerow([g.date.strftime("%Y-%m"), repr(float(g.tightness_gap)), repr(float(g.inflation_gap))])


def write_quarterly_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["quarter", "tightness_gap", "inflation_gap"])
        for label, tg, ig in rows:
            w.writerow([label, repr(tg), repr(ig)])


def read_gaps_csv(path) -> list[GapPoint]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        need = {"date", "tightness_gap", "inflation_gap"}
        if reader.fieldnames is None or not need <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected a 'date,tightness_gap,inflation_gap' header")
        return [GapPoint(parse_month(r["date"]), float(r["tightness_gap"]), float(r["inflation_gap"]))
                for r in reader]


def fit_kinked_line(gaps, kink_at_origin: bool = True) -> KinkedFit:
    """Least-squares line with separate slopes on either side of zero
    tightness gap.

    With ``kink_at_origin`` the line passes through the origin (inflation on
    target at efficient tightness); otherwise the level at the kink is fitted
    too. Points with a tightness gap of exactly zero count for neither side.
    """
    x = np.array([g.tightness_gap for g in gaps], dtype=float)
    y = np.array([g.inflation_gap for g in gaps], dtype=float)
    n_tight, n_slack = int(np.sum(x > 0)), int(np.sum(x < 0))
    if n_tight < MIN_POINTS_PER_SIDE or n_slack < MIN_POINTS_PER_SIDE:
        raise InsufficientDataError(
            f"need {MIN_POINTS_PER_SIDE} points on each side of zero, got {n_tight} tight and {n_slack} slack")
    cols = [np.maximum(x, 0.0), np.minimum(x, 0.0)]
    if not kink_at_origin:
        cols.append(np.ones_like(x))
    design = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    rss = float(resid @ resid)
    tss = float(np.sum((y - y.mean()) ** 2))
    return KinkedFit(
        slope_tight=float(coef[0]),
        slope_slack=float(coef[1]),
        intercept=float(coef[2]) if not kink_at_origin else 0.0,
        n_tight=n_tight,
        n_slack=n_slack,
        rss=rss,
        # undefined when the inflation gap barely varies
        r_squared=1.0 - rss / tss if tss > 1e-12 * float(y @ y) else math.nan,
    )


def synthetic_index(start: dt.date, months: int, annual_rate: float = 0.05, base: float = 100.0):
    """Geometric monthly price index growing ``annual_rate`` per year."""
    m0 = month_index(start)
    return [SeriesPoint(dt.date((m0 + k) // 12, (m0 + k) % 12 + 1, 1), base * (1 + annual_rate) ** (k / 12))
            for k in range(months)]


def bundled_fixture(name: str) -> Path:
    """Path to a small synthetic CSV shipped with the package."""
    return Path(__file__).parent / "fixtures" / name
