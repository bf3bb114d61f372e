"""From monthly series to the gap diagram: inflation gap against tightness
gap, with separate slopes when the labor market is tight or slack.

Uses the small synthetic series shipped with the package. Real data can be
fetched with scripts/fetch_fred.py and passed on the command line.

Run: python demos/04_data_overlay.py [index.csv tightness.csv]
"""

import sys

from beveridge_phillips import compute_gaps, fit_kinked_line, read_series_csv
from beveridge_phillips.data import bundled_fixture, quarterly_means

if len(sys.argv) == 3:
    index_path, theta_path = sys.argv[1:]
else:
    index_path = bundled_fixture("synthetic_index.csv")
    theta_path = bundled_fixture("synthetic_tightness.csv")

gaps = compute_gaps(read_series_csv(index_path), read_series_csv(theta_path), target=0.02)
print(f"{len(gaps)} months with both an annual inflation rate and a tightness reading")
for label, tg, ig in quarterly_means(gaps)[:6]:
    print(f"  {label}: tightness gap {tg:+.3f}, inflation gap {ig:+.4f}")

try:
    fit = fit_kinked_line(gaps)
except ValueError as exc:
    sys.exit(f"cannot fit: {exc}")
print(f"\nslope when tight {fit.slope_tight:.4f} ({fit.n_tight} months), "
      f"when slack {fit.slope_slack:.4f} ({fit.n_slack} months)")
print("steeper when tight" if fit.steeper_when_tight else "not steeper when tight")
