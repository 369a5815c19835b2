#!/usr/bin/env python3
"""Stand-in external solver: evaluates the product benchmark.

Usage: gfunction_stub.py <params.txt> <sample-dir>

Reads one line of space-separated parameters, writes the scalar
u(y) = prod_m (|4 y_m - 2| + a_m) / (1 + a_m), a_m = (m - 2)/2,
to <sample-dir>/qoi.bin in the count-prefixed little-endian format.
"""
import struct
import sys


def main() -> int:
    params_path, sample_dir = sys.argv[1], sys.argv[2]
    with open(params_path) as fh:
        y = [float(tok) for tok in fh.read().split()]
    value = 1.0
    for m, ym in enumerate(y, start=1):
        a = (m - 2.0) / 2.0
        value *= (abs(4.0 * ym - 2.0) + a) / (1.0 + a)
    with open(sample_dir + "/qoi.bin", "wb") as fh:
        fh.write(struct.pack("<Q", 1))
        fh.write(struct.pack("<d", value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
