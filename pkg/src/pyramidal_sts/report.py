"""Existence sweep over a range of orders, written as CSV plus figures."""

from __future__ import annotations

import csv
import time
from pathlib import Path

from .builder import build_3pyramidal, group_descriptor_for
from .errors import NonExistenceError
from .verifier import verify_pyramidal, verify_sts

FIELDS = ["v", "class", "verdict", "group", "case", "blocks", "steiner", "pyramidal",
          "method", "build_s", "verify_s"]


def residue_class(v):
    if v % 24 in (3, 19):
        return f"48n+{v % 48}"
    return f"24n+{v % 24}"


def sweep(limit, start=3):
    """One row per v ≡ 1, 3 (mod 6) in ``[start, limit]``."""
    rows = []
    for v in range(start, limit + 1):
        if v % 6 not in (1, 3):
            continue
        row = dict.fromkeys(FIELDS, "")
        row.update(v=v, **{"class": residue_class(v)})
        t0 = time.perf_counter()
        try:
            T = build_3pyramidal(v)
        except NonExistenceError:
            row["verdict"] = "no"
            rows.append(row)
            continue
        t1 = time.perf_counter()
        sts = verify_sts(T)
        pyr = verify_pyramidal(T, T.group, 3)
        t2 = time.perf_counter()
        row.update(verdict="yes", group=group_descriptor_for(v), case=T.case, blocks=len(T.blocks),
                   steiner=sts.ok, pyramidal=pyr.ok, method=pyr.method,
                   build_s=round(t1 - t0, 4), verify_s=round(t2 - t1, 4))
        rows.append(row)
    return rows


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=FIELDS)
        w.writeheader()
        w.writerows(rows)


def plot_sweep(rows, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    built = [r for r in rows if r["verdict"] == "yes"]
    refused = [r for r in rows if r["verdict"] == "no"]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))

    cases = sorted({r["case"] for r in built})
    for case in cases:
        sel = [r for r in built if r["case"] == case]
        ax1.plot([r["v"] for r in sel], [r["build_s"] + r["verify_s"] for r in sel],
                 "o", ms=3.5, label=case)
    ax1.set_xlabel("v")
    ax1.set_ylabel("build + verify time (s)")
    ax1.set_title("constructed systems")
    if cases:
        ax1.legend(fontsize=8, frameon=False)

    # existence map: one column per residue class
    classes = ["24n+1", "48n+3", "48n+27", "24n+7", "24n+9", "24n+13", "24n+15",
               "48n+19", "48n+43", "24n+21"]
    ypos = {c: i for i, c in enumerate(classes)}
    for sel, color, lab in ((built, "tab:green", "exists"), (refused, "tab:red", "refused")):
        pts = [r for r in sel if r["class"] in ypos]
        ax2.scatter([r["v"] for r in pts], [ypos[r["class"]] for r in pts],
                    s=6, c=color, label=lab, marker="s")
    ax2.set_yticks(range(len(classes)))
    ax2.set_yticklabels(classes, fontsize=8)
    ax2.set_xlabel("v")
    ax2.set_title("3-pyramidal STS(v) by residue class")
    ax2.legend(fontsize=8, frameon=False, loc="upper center", bbox_to_anchor=(0.5, -0.13), ncol=2)

    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(limit, out_dir, start=3):
    """Run :func:`sweep` and write ``sweep.csv`` and ``sweep.png`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = sweep(limit, start)
    csv_path, png_path = out / "sweep.csv", out / "sweep.png"
    write_csv(rows, csv_path)
    plot_sweep(rows, png_path)
    return rows, csv_path, png_path


__all__ = ["sweep", "write_csv", "plot_sweep", "write_report", "residue_class"]
