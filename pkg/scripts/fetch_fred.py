"""Download monthly FRED series as ``date,value`` CSVs for ``bpc gaps``.

Network access is needed; nothing in the library calls this. Example:

    python scripts/fetch_fred.py CPILFESL core_cpi.csv
    python scripts/fetch_fred.py PCEPI pce.csv

Tightness (vacancies over unemployed) must be built from two series, for
instance JTSJOL / UNEMPLOY, by dividing month by month.
"""

import csv
import io
import sys
import urllib.request

URL = "https://fred.stlouisfed.org/graph/fredgraph.csv?id={series}"


def fetch(series: str) -> list[tuple[str, float]]:
    with urllib.request.urlopen(URL.format(series=series), timeout=30) as resp:
        text = resp.read().decode()
    rows = []
    for row in csv.reader(io.StringIO(text)):
        if len(row) != 2 or row[1] in ("", "."):
            continue
        try:
            rows.append((row[0][:7], float(row[1])))
        except ValueError:
            continue  # header
    return rows


def main(argv):
    if len(argv) != 2:
        print(__doc__)
        return 1
    series, path = argv
    rows = fetch(series)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", "value"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
