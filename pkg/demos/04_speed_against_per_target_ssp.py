"""
Engine against one SSP run per target
=====================================

The engine shares work between targets, so its advantage grows with
density. Small sizes here keep the script quick; the CLI ``bench``
command runs the larger sweep.
"""

from multipath.bench import rows_to_csv, run_bench

for density in ("sparse", "dense"):
    rows = run_bench([40, 80, 160], p=3, density=density, reps=1)
    print(density)
    print(rows_to_csv(rows))
