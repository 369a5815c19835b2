#!/usr/bin/env python3
"""Stand-in external solver: smooth Gaussian bump on the unit cube.

Usage: smooth_stub.py <params.txt> <sample-dir>

Writes exp(-sum_m (y_m - 1/2)^2) as a single-value field.
"""
import math
import struct
import sys


def main() -> int:
    params_path, sample_dir = sys.argv[1], sys.argv[2]
    with open(params_path) as fh:
        y = [float(tok) for tok in fh.read().split()]
    value = math.exp(-sum((ym - 0.5) ** 2 for ym in y))
    with open(sample_dir + "/qoi.bin", "wb") as fh:
        fh.write(struct.pack("<Q", 1))
        fh.write(struct.pack("<d", value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
