"""
Driving an external solver through the file protocol
====================================================

Treats a small script as a black-box solver: each sample gets its own
directory with a params.txt written in, the command runs there, and the
binary qoi.bin it leaves behind is read back.  Finished directories are
marked done, so a rerun costs zero launches.
"""
import sys
import tempfile
from pathlib import Path

import numpy as np

from rbfuq import External, ParameterDomain, halton_points, run_campaign

# the bundled scalar benchmark stub, spelled as a portable command line
stub = Path(__file__).resolve().parent.parent / "stubs" / "gfunction_stub.py"
command = f'"{sys.executable}" "{stub}" {{params}} {{dir}}'
print("command template:", command)

domain = ParameterDomain.unit(3)
points = halton_points(domain, 6)

with tempfile.TemporaryDirectory() as tmp:
    spec = External(command=command, root=str(Path(tmp) / "runs"), expected_m=1)

    result = run_campaign(spec, points, jobs=2)
    print(f"\nfirst pass: launched {result.launched}, cached {result.cached}")
    for y, q in zip(points.points, result.table[:, 0]):
        print(f"  y = {np.round(y, 4)}  ->  {q:.6f}")

    # every sample directory now holds params.txt, qoi.bin, and done
    sample0 = sorted((Path(tmp) / "runs" / "samples").iterdir())[0]
    print("\nsample directory contents:", sorted(p.name for p in sample0.iterdir()))
    print("params.txt:", sample0.joinpath("params.txt").read_text().strip())

    # rerun: done markers short-circuit the launches, outputs are reread
    again = run_campaign(spec, points, jobs=2)
    print(f"\nsecond pass: launched {again.launched}, cached {again.cached}")
    print("tables bitwise equal:", np.array_equal(result.table, again.table))
