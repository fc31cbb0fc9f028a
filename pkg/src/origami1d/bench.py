"""Scaling benchmark for the forest builder, with shaped adversarial inputs.

Shapes:

* ``tessellation`` -- uniformly spaced creases; no run ever has strictly
  longer flanks, so the scan does no crimps at all.
* ``nested`` -- blocks of geometrically growing intervals around a unit
  core, separated by long intervals.  Every block collapses through a
  full cascade of fused runs re-examined to the left, the worst case for
  the scan's backtracking.
* ``random`` -- foldable patterns from the inverse-crimp generator.

The report is a delimited table (CSV) of size versus wall time and the
scan's comparison counter; ``write_outputs`` also renders a log-log
matplotlib figure next to the CSV.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

from .crimp_forest import build_crimp_forest
from .pattern import MVPattern, generate_random, mv_pattern

SHAPES = ("tessellation", "random", "nested")

_NESTED_LEVELS = 16


def tessellation_pattern(num_creases: int) -> MVPattern:
    """Evenly spaced creases with alternating labels; crimp-free."""
    positions = [2 * i for i in range(num_creases + 2)]
    labels = ("MV" * (num_creases // 2 + 1))[:num_creases]
    return mv_pattern(positions, labels)


def nested_pattern(num_creases: int, levels: int = _NESTED_LEVELS) -> MVPattern:
    """Cascade blocks: ``2^L .. 2, 1, 2 .. 2^L`` between long separators.

    Each block fuses inward step by step (every fused value stays below
    the next flank) and the block residue then fuses with its separators,
    so nearly every crease is consumed by a cascading even crimp.
    Alternating labels make every fold pair opposite-parity: cascade
    pairs sit at odd index distances.
    """
    block = [1 << j for j in range(levels, 0, -1)]
    block = block + [1] + block[::-1]
    sep = 1 << (levels + 3)
    lengths = [sep]
    creases = 1  # boundary crease after the first separator
    while creases < num_creases:
        lengths.extend(block)
        lengths.append(sep)
        creases += len(block) + 1
    positions = [0]
    for l in lengths:
        positions.append(positions[-1] + l)
    n = len(positions) - 2
    labels = ("MV" * (n // 2 + 1))[:n]
    return mv_pattern(positions, labels)


def shaped_pattern(shape: str, num_creases: int, seed: int = 0) -> MVPattern:
    if shape == "tessellation":
        return tessellation_pattern(num_creases)
    if shape == "nested":
        return nested_pattern(num_creases)
    if shape == "random":
        return generate_random(num_creases, seed, strategy="inverse")
    raise ValueError(f"unknown shape {shape!r}")


@dataclass(frozen=True)
class BenchRow:
    shape: str
    num_creases: int
    seconds: float
    comparisons: int
    nodes: int
    monocrimps: int


def run_once(p: MVPattern) -> BenchRow:
    t0 = time.perf_counter()
    forest = build_crimp_forest(p)
    dt = time.perf_counter() - t0
    return BenchRow(
        "?",
        p.pattern.num_creases,
        dt,
        forest.comparison_count,
        len(forest.nodes),
        forest.monocrimp_count,
    )


def run_bench(shape: str, sizes, seed: int = 0) -> list[BenchRow]:
    rows = []
    for n in sizes:
        p = shaped_pattern(shape, n, seed)
        row = run_once(p)
        rows.append(
            BenchRow(
                shape,
                row.num_creases,
                row.seconds,
                row.comparisons,
                row.nodes,
                row.monocrimps,
            )
        )
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["shape", "n", "seconds", "comparisons", "nodes", "monocrimps"])
    for r in rows:
        writer.writerow(
            [r.shape, r.num_creases, f"{r.seconds:.6f}", r.comparisons, r.nodes, r.monocrimps]
        )
    return buf.getvalue()


def format_table(rows) -> str:
    lines = [
        f"{'shape':<14}{'n':>10}{'seconds':>12}{'comparisons':>14}"
        f"{'nodes':>10}{'monocrimps':>12}"
    ]
    for r in rows:
        lines.append(
            f"{r.shape:<14}{r.num_creases:>10}{r.seconds:>12.4f}"
            f"{r.comparisons:>14}{r.nodes:>10}{r.monocrimps:>12}"
        )
    return "\n".join(lines)


def write_outputs(rows, out_dir) -> tuple[str, str]:
    """Write bench.csv and bench.png into `out_dir`; returns the paths."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "bench.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(rows_to_csv(rows))
    png_path = os.path.join(out_dir, "bench.png")
    _plot(rows, png_path)
    return csv_path, png_path


def _plot(rows, png_path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    shapes = sorted({r.shape for r in rows})
    fig, (ax_time, ax_cmp) = plt.subplots(1, 2, figsize=(9, 3.6))
    for shape in shapes:
        pts = sorted(
            (r.num_creases, r.seconds, r.comparisons)
            for r in rows
            if r.shape == shape
        )
        ns = [p[0] for p in pts]
        ax_time.loglog(ns, [p[1] for p in pts], "o-", label=shape)
        ax_cmp.loglog(ns, [p[2] for p in pts], "o-", label=shape)
    ax_time.set_xlabel("creases")
    ax_time.set_ylabel("seconds")
    ax_time.set_title("forest build time")
    ax_cmp.set_xlabel("creases")
    ax_cmp.set_ylabel("comparisons")
    ax_cmp.set_title("scan comparisons")
    ax_time.legend()
    ax_cmp.legend()
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
