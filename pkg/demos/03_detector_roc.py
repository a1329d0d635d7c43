"""Empirical and theoretical ROC points for the four detectors.

Reproduces the detector-comparison experiment at desk scale: the energy
detector cannot separate the hypotheses at realistic leakage levels, the
matched filter sets the coherent upper bound, and the ratio tests sit in
between (the full GLRT tracks the energy detector once the interferer is
removed).  Writes a CSV and, when matplotlib is present, a PNG.
"""

import os

from losense.harness import ExperimentSpec, run_roc, write_outputs
from losense.model import NetworkConfig

HERE = os.path.dirname(__file__)
OUT = os.path.join(HERE, "out")

cfg = NetworkConfig.from_file(os.path.join(HERE, os.pardir, "configs", "roc.json"))
cfg = cfg.replace(M=4000)  # desk scale; raise toward 1e5 for the full effect

spec = ExperimentSpec(
    name="roc",
    config=cfg,
    pfa_grid=(0.01, 0.02, 0.05, 0.1, 0.2, 0.5),
    trials=1500,
    master_seed=2718,
    detectors=("ED", "MF", "GLRT1", "GLRT2"),
)

result = run_roc(spec, workers=2)
paths = write_outputs(result, OUT)
print(f"rows written to {paths[0]}  ({result.wall_time:.1f}s)")

print(f"\n{'kind':6s} {'pfa*':>6s} {'pfa_emp':>8s} {'pd_emp':>8s} {'pd_theory':>10s}")
for row in result.rows:
    print(
        f"{row['kind']:6s} {row['pfa_target']:6.2f} {row['pfa_emp']:8.3f} "
        f"{row['pd_emp']:8.3f} {row['pd_theory']:10.3f}"
    )

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for kind, marker in (("MF", "o"), ("GLRT1", "s"), ("GLRT2", "d"), ("ED", "x")):
        pts = [(r["pfa_emp"], r["pd_emp"]) for r in result.rows if r["kind"] == kind]
        pts.sort()
        ax.plot(*zip(*pts), marker=marker, label=kind)
    ax.plot([0, 1], [0, 1], "k:", lw=0.8, label="chance")
    ax.set_xlabel("false-alarm probability")
    ax.set_ylabel("detection probability")
    ax.set_title("Eavesdropper-detector ROC (desk scale)")
    ax.legend()
    fig.tight_layout()
    png = os.path.join(OUT, "roc.png")
    fig.savefig(png, dpi=120)
    print(f"\nplot saved to {png}")
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
