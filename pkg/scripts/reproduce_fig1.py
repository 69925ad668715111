"""Write closed-form vs numerical P_max curves for both W-type families.

    python scripts/reproduce_fig1.py --outdir results/

Produces w3.csv and w4.csv (same columns as ``groverian sweep``) and, when
matplotlib is importable, fig1.png with closed forms as lines and the grid
and alternating results as dots.
"""

import argparse
import csv
from pathlib import Path

from groverian.cli import main


def load(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def plot(curves, out):
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available; skipping figure")
        return
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, (family, rows) in zip(axes, curves.items()):
        k = [float(r["kappa"]) for r in rows]
        ax.plot(k, [float(r["p_closed"]) for r in rows], "-", label="closed form")
        ax.plot(k, [float(r["p_grid"]) for r in rows], "k.", label="grid search")
        ax.set_xlabel("kappa")
        ax.set_title(family)
    axes[0].set_ylabel("P_max")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def run():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="results")
    parser.add_argument("--steps", type=int, default=60)
    parser.add_argument("--kappa-max", type=float, default=3.0)
    args = parser.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    curves = {}
    for family in ("w3", "w4"):
        path = outdir / f"{family}.csv"
        main(["sweep", "--family", family, "--kappa-min", "0.05", "--kappa-max", str(args.kappa_max),
              "--steps", str(args.steps), "--with-grid", "--out", str(path)])
        rows = load(path)
        d_alt = max(abs(float(r["p_closed"]) - float(r["p_alt"])) for r in rows)
        d_grid = max(abs(float(r["p_closed"]) - float(r["p_grid"])) for r in rows)
        print(f"{family}: {len(rows)} points, max|closed-alt|={d_alt:.2e}, max|closed-grid|={d_grid:.2e}")
        curves[family] = rows
    plot(curves, outdir / "fig1.png")


if __name__ == "__main__":
    run()
