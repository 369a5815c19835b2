#!/usr/bin/env python3
"""Stand-in external solver that always answers 7.

Usage: constant_stub.py <params.txt> <sample-dir>
"""
import struct
import sys


def main() -> int:
    sample_dir = sys.argv[2]
    with open(sample_dir + "/qoi.bin", "wb") as fh:
        fh.write(struct.pack("<Q", 1))
        fh.write(struct.pack("<d", 7.0))
    return 0


if __name__ == "__main__":
    sys.exit(main())
