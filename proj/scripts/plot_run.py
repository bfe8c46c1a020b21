#!/usr/bin/env python3
"""Render the CSV tables of an apnn run directory to PNG files.

    python3 scripts/plot_run.py runs/test1-inverse-ap-s1-20250101T000000Z

Writes fields.png (truth and error maps), history.png (loss and parameter
traces) and, for SIR runs, series.png (R_t and cumulative infected) into the
run directory. The apnn binary itself only emits data.
"""

import argparse
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def grid(df, column):
    table = df.pivot(index="t", columns="x", values=column)
    return table.columns.values, table.index.values, table.values


def plot_fields(run, out):
    truth = pd.read_csv(run / "truth" / "truth.csv")
    errors = pd.read_csv(run / "errors.csv")
    comps = [c for c in truth.columns if c not in ("t", "x")]
    fig, axes = plt.subplots(2, len(comps), figsize=(3.2 * len(comps), 5.5), squeeze=False)
    for k, c in enumerate(comps):
        for row, (df, col, title) in enumerate(((truth, c, c), (errors, f"err_{c}", f"error {c}"))):
            x, t, v = grid(df, col)
            im = axes[row][k].pcolormesh(x, t, v, shading="auto", cmap="viridis")
            axes[row][k].set_title(title)
            axes[row][k].set_xlabel("x")
            axes[row][k].set_ylabel("t")
            fig.colorbar(im, ax=axes[row][k])
    fig.tight_layout()
    fig.savefig(out / "fields.png", dpi=120)
    plt.close(fig)


def plot_history(run, out):
    h = pd.read_csv(run / "history.csv")
    params = [c for c in h.columns if c not in ("epoch", "total", "validation")
              and not c.startswith(("data", "boundary", "residual", "conservation"))]
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].semilogy(h["epoch"], h["total"], label="training")
    axes[0].semilogy(h["epoch"], h["validation"], label="validation")
    axes[0].set_xlabel("epoch")
    axes[0].legend()
    for p in params:
        axes[1].plot(h["epoch"], h[p], label=p)
    report = json.loads((run / "report.json").read_text())
    for row in report.get("parameters", []):
        axes[1].axhline(row["truth"], color="gray", linestyle=":")
    axes[1].set_xlabel("epoch")
    if params:
        axes[1].legend()
    fig.tight_layout()
    fig.savefig(out / "history.png", dpi=120)
    plt.close(fig)


def plot_series(run, out):
    path = run / "series.csv"
    if not path.exists():
        return
    s = pd.read_csv(path)
    report = json.loads((run / "report.json").read_text())
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for ax, key, label in ((axes[0], "infected", "int I dx"), (axes[1], "rt", "R_t")):
        ax.plot(s["t"], s[f"{key}_truth"], "k-", label="truth")
        ax.plot(s["t"], s[f"{key}_network"], "r--", label="network")
        if report.get("t_train") is not None:
            ax.axvline(report["t_train"], color="gray", linestyle=":")
        ax.set_xlabel("t")
        ax.set_title(label)
        ax.legend()
    fig.tight_layout()
    fig.savefig(out / "series.png", dpi=120)
    plt.close(fig)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("run", type=Path, help="run directory written by `apnn run`")
    ap.add_argument("--out", type=Path, help="output directory (default: the run directory)")
    args = ap.parse_args()
    out = args.out or args.run
    out.mkdir(parents=True, exist_ok=True)
    plot_fields(args.run, out)
    plot_history(args.run, out)
    plot_series(args.run, out)


if __name__ == "__main__":
    main()
