"""
Recall error against memory load
================================

Sweeps the number of stored pairs q at fixed dimension m and compares the
plain memory, the three query modes of the orthonormalized memory, and the
pseudoinverse memory.  Writes ``sweep.csv`` and ``sweep.svg`` next to this
script (or into the directory given as the first argument).
"""
# %%
import sys
from pathlib import Path

import eqcmm

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
out_dir.mkdir(parents=True, exist_ok=True)

m = 32
config = eqcmm.SweepConfig(dim=m, q_values=[2, 4, 8, 16, 24, 32, 33, 40], trials=10, seed=2024)
report = eqcmm.run_sweep(config)

# %%
print(f"{'q':>3} {'method':<12} {'mean err':>10} {'mean |cos|':>10} {'noise':>10} {'rank':>4}  verdict")
for r in report.rows:
    print(f"{r.q:>3} {r.method:<12} {r.mean_err:10.2e} {r.mean_cos:10.4f} {r.mean_noise:10.2e} {r.rank:>4}  {r.verdict}")

# %%
eqcmm.emit_csv(report, out_dir / "sweep.csv")
eqcmm.emit_plot(report, out_dir / "sweep.svg")
print("wrote", out_dir / "sweep.csv", "and", out_dir / "sweep.svg")
# Past q = m the keys cannot all be independent: the extra pairs are dropped
# from the orthonormalized memory and every method carries recall error.
