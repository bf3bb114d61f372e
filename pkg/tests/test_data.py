import datetime as dt

import numpy as np
import pytest

from beveridge_phillips import (
    DateMisalignmentError,
    InsufficientDataError,
    SeriesPoint,
    compute_gaps,
    fit_kinked_line,
    read_series_csv,
)
from beveridge_phillips.data import (
    GapPoint,
    bundled_fixture,
    parse_month,
    quarterly_means,
    read_gaps_csv,
    synthetic_index,
    write_gaps_csv,
    write_series_csv,
)


def monthly(start, values):
    y, m = start
    out = []
    for k, v in enumerate(values):
        mm = m - 1 + k
        out.append(SeriesPoint(dt.date(y + mm // 12, mm % 12 + 1, 1), float(v)))
    return out


def test_parse_month():
    assert parse_month("2021-04") == dt.date(2021, 4, 1)
    assert parse_month("2021-04-17") == dt.date(2021, 4, 1)
    with pytest.raises(ValueError):
        parse_month("April 2021")


def test_hundred_to_one_oh_five():
    index = monthly((2020, 1), [100.0] + [101.0] * 11 + [105.0])
    theta = monthly((2021, 1), [1.0])
    (g,) = compute_gaps(index, theta, 0.02)
    assert g.date == dt.date(2021, 1, 1)
    assert g.inflation_gap == 0.03
    assert g.tightness_gap == 0.0


def test_constant_index():
    index = monthly((2020, 1), [250.0] * 30)
    theta = monthly((2020, 1), np.linspace(0.8, 1.2, 30))
    gaps = compute_gaps(index, theta)
    assert len(gaps) == 18
    assert all(g.inflation_gap == -0.02 for g in gaps)


def test_synthetic_geometric_index():
    index = synthetic_index(dt.date(2018, 1, 1), 60, 0.05)
    theta = monthly((2018, 1), [1.0] * 60)
    gaps = compute_gaps(index, theta)
    assert max(abs(g.inflation_gap - 0.03) for g in gaps) < 1e-15


def test_output_restricted_to_common_dates():
    index = monthly((2020, 1), [100.0 + k for k in range(24)])
    theta = monthly((2020, 6), [1.1] * 12)
    gaps = compute_gaps(index, theta)
    assert [g.date for g in gaps] == [dt.date(2021, m, 1) for m in range(1, 6)]


def test_gap_errors():
    with pytest.raises(InsufficientDataError):
        compute_gaps(monthly((2020, 1), [100.0] * 12), monthly((2020, 1), [1.0] * 12))
    with pytest.raises(DateMisalignmentError):
        compute_gaps(monthly((2020, 1), [100.0] * 13), monthly((2010, 1), [1.0] * 12))
    backwards = list(reversed(monthly((2020, 1), [100.0] * 13)))
    with pytest.raises(DateMisalignmentError):
        compute_gaps(backwards, monthly((2021, 1), [1.0]))
    with pytest.raises(ValueError):
        compute_gaps(monthly((2020, 1), [100.0] * 12 + [float("nan")]), monthly((2021, 1), [1.0]))


def test_gap_on_missing_lag_month_is_skipped():
    index = monthly((2020, 1), [100.0 + k for k in range(26)])
    del index[3]  # 2020-04 missing, so 2021-04 has no lag
    gaps = compute_gaps(index, monthly((2020, 1), [1.0] * 26))
    assert dt.date(2021, 4, 1) not in [g.date for g in gaps]
    assert dt.date(2021, 5, 1) in [g.date for g in gaps]


def test_quarterly_means_use_full_quarters():
    gaps = [GapPoint(dt.date(2021, m, 1), 0.1 * m, 0.01 * m) for m in range(2, 8)]
    rows = quarterly_means(gaps)
    assert [r[0] for r in rows] == ["2021Q2"]
    assert rows[0][1] == pytest.approx(0.5) and rows[0][2] == pytest.approx(0.05)


def test_csv_round_trip_is_deterministic(tmp_path):
    index = read_series_csv(bundled_fixture("synthetic_index.csv"))
    theta = read_series_csv(bundled_fixture("synthetic_tightness.csv"))
    gaps = compute_gaps(index, theta)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_gaps_csv(a, gaps)
    write_gaps_csv(b, compute_gaps(index, theta))
    assert a.read_bytes() == b.read_bytes()
    assert read_gaps_csv(a) == gaps
    s = tmp_path / "s.csv"
    write_series_csv(s, index)
    assert read_series_csv(s) == index


def test_bad_csv_header(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("when,level\n2020-01,1\n")
    with pytest.raises(ValueError):
        read_series_csv(p)


def planted(slope_tight, slope_slack, xs, intercept=0.0, noise=None):
    ys = np.where(xs > 0, slope_tight * xs, slope_slack * xs) + intercept
    if noise is not None:
        ys = ys + noise
    return [GapPoint(dt.date(2000, 1, 1), float(x), float(y)) for x, y in zip(xs, ys)]


def test_fit_recovers_planted_slopes():
    xs = np.linspace(-0.4, 0.5, 19)
    fit = fit_kinked_line(planted(0.9, 0.3, xs))
    assert fit.slope_tight == pytest.approx(0.9, abs=1e-12)
    assert fit.slope_slack == pytest.approx(0.3, abs=1e-12)
    assert fit.rss < 1e-25 and fit.r_squared == pytest.approx(1.0)
    assert (fit.n_tight, fit.n_slack) == (10, 8)  # the point at zero counts for neither side


def test_fit_with_free_intercept():
    xs = np.linspace(-0.4, 0.5, 19)
    fit = fit_kinked_line(planted(0.9, 0.3, xs, intercept=0.01), kink_at_origin=False)
    assert fit.intercept == pytest.approx(0.01, abs=1e-12)
    assert fit.slope_tight == pytest.approx(0.9, abs=1e-12)


def test_fit_symmetric_line_with_noise():
    rng = np.random.default_rng(0)
    xs = np.linspace(-0.5, 0.5, 400)
    fit = fit_kinked_line(planted(0.5, 0.5, xs, noise=rng.normal(0, 1e-4, xs.size)))
    assert fit.slope_tight == pytest.approx(fit.slope_slack, abs=5e-5)


def test_fit_needs_both_sides():
    with pytest.raises(InsufficientDataError):
        fit_kinked_line(planted(0.9, 0.3, np.linspace(0.1, 0.5, 10)))
    with pytest.raises(InsufficientDataError):
        fit_kinked_line(planted(0.9, 0.3, np.array([-0.1, -0.2, 0.1, 0.2, 0.3])))


def test_fit_constant_gap_has_undefined_r_squared():
    xs = np.linspace(-0.4, 0.5, 10)
    pts = [GapPoint(dt.date(2000, 1, 1), float(x), 0.03) for x in xs]
    assert np.isnan(fit_kinked_line(pts).r_squared)
