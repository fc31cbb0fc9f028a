"""Command-line interface.

Exit codes follow one contract everywhere: 0 for an affirmative verdict
or plain success, 1 for a negative verdict (not foldable, not forcing,
growth check failed), 2 for usage or input errors.  ``--json`` switches
any verdict-producing command to a stable machine-readable document
``{"command", "result", "timing_ms"}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .crimp_forest import build_crimp_forest, export_forest
from .fold_engine import (
    UnfoldableError,
    fold_ops_to_json,
    folded_state,
    is_flat_foldable,
)
from .forcing import ReconstructionError, forcing_set, reconstruct_mv
from .oracle import (
    BudgetExceededError,
    OracleBudget,
    dfs_foldable,
    is_forcing,
    minimum_forcing_size,
)
from .pattern import (
    MVPattern,
    PartialMVAssignment,
    PartialMVPattern,
    PatternError,
    generate_random,
    parse_pattern,
    serialize_pattern,
)

ENV_BUDGET = "ORIGAMI_FORCE_BUDGET"


def _load(path: str) -> MVPattern | PartialMVPattern:
    with open(path, encoding="utf-8") as fh:
        return parse_pattern(fh.read())


def _complete(p) -> MVPattern:
    if isinstance(p, PartialMVPattern):
        raise PatternError("this command needs a fully labeled pattern (no '?')")
    return p


def _budget(args) -> OracleBudget:
    kwargs = {}
    free = getattr(args, "free_budget", None)
    if free is None and os.environ.get(ENV_BUDGET):
        free = int(os.environ[ENV_BUDGET])
    if free is not None:
        kwargs["max_free_creases"] = free
    states = getattr(args, "state_budget", None)
    if states is not None:
        kwargs["max_dfs_states"] = states
    seconds = getattr(args, "time_budget", None)
    if seconds is not None:
        kwargs["time_limit"] = seconds
    return OracleBudget(**kwargs)


def _emit(args, command: str, result: dict, human: str, t0: float) -> None:
    if getattr(args, "json", False):
        doc = {
            "command": command,
            "result": result,
            "timing_ms": round((time.perf_counter() - t0) * 1000, 3),
        }
        print(json.dumps(doc, separators=(",", ":"), sort_keys=True))
    else:
        print(human)


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    p = _complete(_load(args.file))
    fold = is_flat_foldable(p)
    if fold:
        ops = fold_ops_to_json(fold.witness)
        crimps = sum(1 for o in ops if o["op"] == "monocrimp")
        human = (
            f"foldable: yes ({crimps} monocrimps, {len(ops) - crimps} end folds)\n"
            + "\n".join(json.dumps(o, separators=(",", ":")) for o in ops)
        )
        _emit(args, "check", {"foldable": True, "witness": ops}, human.rstrip(), t0)
        return 0
    cert = fold.certificate
    blocking = cert.remaining()
    result = {
        "foldable": False,
        "certificate": {
            "creases": list(cert.crease_ids),
            "labels": cert.labels,
            "distance": cert.distance,
            "blocking": list(blocking),
        },
    }
    human = (
        f"foldable: no\nstuck run: creases {tuple(cert.crease_ids)} labeled "
        f"{cert.labels!r} (spacing {cert.distance}); same-parity creases "
        f"{tuple(blocking)} cannot crimp"
    )
    _emit(args, "check", result, human, t0)
    return 1


def cmd_force(args) -> int:
    t0 = time.perf_counter()
    p = _complete(_load(args.file))
    try:
        fs = forcing_set(p)
    except UnfoldableError as exc:
        print(f"not foldable: {exc}", file=sys.stderr)
        return 1
    result = fs.to_json_dict()
    lines = [
        f"forcing set: {' '.join('c%d' % c for c in fs.crease_ids)}",
        f"size {fs.size} = m + e = {fs.monocrimp_count} + {fs.end_count}",
    ]
    if args.verify:
        ok = is_forcing(p, fs.crease_ids, _budget(args))
        result["verified"] = ok
        if not ok:
            _emit(args, "force", result, "oracle verification FAILED", t0)
            return 1
        lines.append("oracle verification: ok")
    _emit(args, "force", result, "\n".join(lines), t0)
    return 0


def cmd_forest(args) -> int:
    p = _complete(_load(args.file))
    try:
        forest = build_crimp_forest(p)
    except UnfoldableError as exc:
        print(f"not foldable: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(export_forest(forest, args.format))
    if args.format == "json":
        sys.stdout.write("\n")
    return 0


def cmd_reconstruct(args) -> int:
    t0 = time.perf_counter()
    p = _load(args.file)
    partial = (
        p.mv
        if isinstance(p, PartialMVPattern)
        else PartialMVAssignment(p.mv.labels)
    )
    mv = reconstruct_mv(p.pattern, partial)
    result = {"positions": list(p.pattern.positions), "mv": mv.labels}
    human = serialize_pattern(MVPattern(p.pattern, mv)).rstrip()
    _emit(args, "reconstruct", result, human, t0)
    return 0


def cmd_gen(args) -> int:
    p = generate_random(args.creases, args.seed, strategy=args.strategy)
    sys.stdout.write(serialize_pattern(p))
    return 0


def cmd_render(args) -> int:
    from . import render

    p = _load(args.file)
    if args.folded:
        try:
            state = folded_state(_complete(p))
        except UnfoldableError as exc:
            print(f"not foldable: {exc}", file=sys.stderr)
            return 1
        text = (
            render.render_folded_ascii(state)
            if args.format == "ascii"
            else render.render_folded_svg(state)
        )
    else:
        text = (
            render.render_ruler(p)
            if args.format == "ascii"
            else render.render_pattern_svg(p)
        )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _parse_crease_set(text: str) -> set[int]:
    if not text.strip():
        return set()
    try:
        return {int(tok) for tok in text.replace(",", " ").split()}
    except ValueError:
        raise PatternError(f"invalid crease set {text!r}") from None


def cmd_oracle(args) -> int:
    t0 = time.perf_counter()
    p = _complete(_load(args.file))
    budget = _budget(args)
    stats: dict = {}
    if args.oracle_cmd == "check":
        ok = dfs_foldable(p, budget, stats_out=stats)
        result = {"foldable": ok, **stats}
        _emit(args, "oracle check", result, f"foldable: {'yes' if ok else 'no'} "
              f"(dfs states: {stats['dfs_states']})", t0)
        return 0 if ok else 1
    if args.oracle_cmd == "force":
        creases = _parse_crease_set(args.set)
        try:
            ok = is_forcing(p, creases, budget, stats_out=stats)
        except UnfoldableError as exc:
            print(f"not foldable: {exc}", file=sys.stderr)
            return 1
        result = {"forcing": ok, "creases": sorted(creases), **stats}
        _emit(args, "oracle force", result,
              f"forcing: {'yes' if ok else 'no'} "
              f"(completions: {stats['completions']}, dfs states: {stats['dfs_states']})",
              t0)
        return 0 if ok else 1
    # min
    try:
        size, witness = minimum_forcing_size(p, budget, stats_out=stats)
    except UnfoldableError as exc:
        print(f"not foldable: {exc}", file=sys.stderr)
        return 1
    result = {"minimum": size, "witness": list(witness), **stats}
    _emit(args, "oracle min", result,
          f"minimum forcing set size: {size} "
          f"(witness: {' '.join('c%d' % c for c in witness) or 'empty'})", t0)
    return 0


def cmd_bench(args) -> int:
    from . import bench

    sizes = []
    n = 1000
    while n < args.max_n:
        sizes.append(n)
        n *= 2
    sizes.append(args.max_n)
    rows = bench.run_bench(args.shape, sizes, args.seed)
    print(bench.format_table(rows))
    linear = True
    for a, b in zip(rows, rows[1:]):
        if a.comparisons and b.num_creases <= 2 * a.num_creases * 1.1:
            if b.comparisons > 3 * a.comparisons:
                linear = False
    print(f"near-linear growth (comparisons <= 3x per doubling): "
          f"{'yes' if linear else 'NO'}")
    if args.out_dir:
        csv_path, png_path = bench.write_outputs(rows, args.out_dir)
        print(f"wrote {csv_path} and {png_path}")
    return 0 if linear else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="origami1d",
        description="Flat-foldability, crimp forests and minimum forcing "
        "sets for 1D mountain-valley crease patterns.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable verdict")

    def add_budget(sp):
        sp.add_argument("--free-budget", type=int, default=None,
                        help=f"max free creases for oracle enumeration "
                             f"(env {ENV_BUDGET})")
        sp.add_argument("--state-budget", type=int, default=None,
                        help="max DFS states")
        sp.add_argument("--time-budget", type=float, default=None,
                        help="oracle time ceiling in seconds")

    sp = sub.add_parser("check", help="decide flat-foldability")
    sp.add_argument("file")
    add_json(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("force", help="compute the minimum forcing set")
    sp.add_argument("file")
    sp.add_argument("--verify", action="store_true",
                    help="cross-check with the brute-force oracle")
    add_json(sp)
    add_budget(sp)
    sp.set_defaults(func=cmd_force)

    sp = sub.add_parser("forest", help="export the crimp forest")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    sp.set_defaults(func=cmd_forest)

    sp = sub.add_parser("reconstruct",
                        help="recover all labels from forcing-set labels")
    sp.add_argument("file")
    add_json(sp)
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("gen", help="generate a random foldable pattern")
    sp.add_argument("--creases", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--strategy", choices=("auto", "rejection", "inverse"),
                    default="auto")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("render", help="draw the pattern or its folded stack")
    sp.add_argument("file")
    sp.add_argument("--folded", action="store_true")
    sp.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("oracle", help="brute-force ground-truth checks")
    sp.add_argument("oracle_cmd", choices=("check", "force", "min"))
    sp.add_argument("file")
    sp.add_argument("--set", default="",
                    help="crease ids for 'force', e.g. '1,4,9'")
    add_json(sp)
    add_budget(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="scaling benchmark of the forest builder")
    sp.add_argument("--max-n", type=int, default=100_000)
    sp.add_argument("--shape", choices=("tessellation", "random", "nested"),
                    default="nested")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out-dir", default=None,
                    help="write bench.csv and bench.png here")
    sp.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PatternError, ReconstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
