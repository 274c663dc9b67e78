#!/usr/bin/env python3
"""Map Renyi branch points over block lengths, showing the even/odd
alternation of the real part and the drift to infinity as the two weight
branches degenerate.
"""

import csv
import sys

from vbsent.closed_form import branch_points


def main():
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "L", "m", "sign", "alpha_re", "alpha_im", "residual"])
    for n in (2, 3):
        for L in range(2, 13):
            for point in branch_points(n, L, range(3)):
                writer.writerow([n, L, point.m, point.sign,
                                 f"{point.alpha.real:.17g}", f"{point.alpha.imag:.17g}",
                                 f"{point.residual:.3e}"])


if __name__ == "__main__":
    main()
