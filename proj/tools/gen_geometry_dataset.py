#!/usr/bin/env python3
"""Generate the bundled transmon geometry dataset.

The table stands in for pre-collected simulation data. Frequencies follow
a fixed ground-truth polynomial so that fits against it can be checked
exactly:

    f [GHz] = 7.2 - 0.012*height - 0.004*gap + 1.5e-5*height^2

sampled on an 11 x 11 lattice (gap 10..60 um step 5, height 50..350 um
step 30).
"""

import argparse
import csv
import sys


def ground_truth(gap_um: float, height_um: float) -> float:
    return 7.2 - 0.012 * height_um - 0.004 * gap_um + 1.5e-5 * height_um**2


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", default="-")
    args = parser.parse_args()

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["pad_gap_um", "pad_height_um", "frequency_ghz"])
    for gi in range(11):
        gap = 10 + 5 * gi
        for hi in range(11):
            height = 50 + 30 * hi
            writer.writerow([gap, height, f"{ground_truth(gap, height):.12g}"])
    if out is not sys.stdout:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
