"""Write configs/mixed.csv, a tabulated quartic whose regime at b = 1.95 is Mixed."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from nonlinearity import quartic_columns  # noqa: E402
from utils.output import write_csv  # noqa: E402

OUT_PATH = os.path.join(os.path.dirname(__file__), "..", "configs", "mixed.csv")
ALPHA = 0.25
KAPPA = 8.0


def main():
    path = write_csv(OUT_PATH, ["s", "f", "fp", "fpp"], zip(*quartic_columns(ALPHA, KAPPA)))
    print(f"✅ Wrote {os.path.normpath(path)}")


if __name__ == "__main__":
    main()
