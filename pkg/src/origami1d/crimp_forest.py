"""Crimp forest construction via the linear left-to-right scan.

Each crimped run becomes a forest node; a node is the parent of every
earlier node whose surviving crease its run consumes, and the creases
that survive the whole reduction form the end sequence.  Even-size nodes
never have a survivor, so they are always roots; an odd-size root's
survivor is an end crease.

The forest structure, node sizes, crease spacings and the snapshot
positions are all determined by interval lengths alone; labels decide
only which crease of an odd run survives.  ``build_structural_forest``
exploits this to build the forest without any labels, handing survivors
fresh negative placeholder ids.

The scan builder is the product code path and counts its interval
comparisons (``comparison_count``), which grow linearly in the input.
``build_crimp_forest_random_order`` is a deliberately simple quadratic
re-scan builder that crimps in random order; it exists for differential
tests only.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from ._reduction import ForestNode, reduce_pattern
from .fold_engine import UnfoldableError
from .pattern import CreasePattern, MVPattern

__all__ = [
    "CrimpForest",
    "ForestNode",
    "build_crimp_forest",
    "build_structural_forest",
    "build_crimp_forest_random_order",
    "forest_isomorphic",
    "export_forest",
    "crimp_signatures",
    "end_signature",
]


@dataclass(frozen=True)
class CrimpForest:
    """Rooted trees of crimped runs plus the residual end sequence."""

    nodes: tuple[ForestNode, ...]
    roots: tuple[int, ...]
    end_crease_ids: tuple[int, ...]
    end_positions: tuple[int, ...]
    end_lengths: tuple[int, ...]
    end_labels: str | None
    monocrimp_count: int
    comparison_count: int

    @property
    def end_count(self) -> int:
        return len(self.end_crease_ids)

    def preorder(self):
        """Node ids tree by tree, parents before children, leftmost first."""
        for root in self.roots:
            stack = [root]
            while stack:
                nid = stack.pop()
                yield nid
                stack.extend(reversed(self.nodes[nid].children))


def _finalize(scan, labels: str | None) -> CrimpForest:
    nodes = tuple(scan.nodes)
    roots = sorted(
        (i for i, nd in enumerate(nodes) if nd.parent is None),
        key=lambda i: (nodes[i].start, i),
    )
    end_labels = (
        None
        if labels is None
        else "".join(labels[c - 1] for c in scan.end_crease_ids)
    )
    return CrimpForest(
        nodes,
        tuple(roots),
        scan.end_crease_ids,
        scan.end_positions,
        scan.end_lengths,
        end_labels,
        scan.monocrimps,
        scan.comparisons,
    )


def build_crimp_forest(p: MVPattern) -> CrimpForest:
    """Build the crimp forest of a flat-foldable pattern in linear time."""
    scan = reduce_pattern(p.positions, p.labels)
    if scan.stuck is not None:
        raise UnfoldableError(
            f"pattern is not flat-foldable: run {scan.stuck.crease_ids} "
            f"with labels {scan.stuck.labels!r} cannot be crimped",
            scan.stuck,
        )
    return _finalize(scan, p.labels)


def build_structural_forest(pattern: CreasePattern) -> CrimpForest:
    """Label-free forest from interval lengths alone.

    Survivors of odd runs get placeholder ids ``-(node_id + 1)`` since
    their identity depends on labels; everything else matches the
    labeled forest of any foldable assignment.
    """
    scan = reduce_pattern(pattern.positions, None)
    return _finalize(scan, None)


def build_crimp_forest_random_order(p: MVPattern, rng: random.Random) -> CrimpForest:
    """Differential-testing double: crimp in random order by full re-scans.

    Quadratic and deliberately independent of the scan builder: each step
    lists every crimpable run of the current pattern, crimps one at
    random (random opposite pair first inside the run), and repeats.
    """
    positions = list(p.positions)
    ids = list(range(1, len(positions) - 1))
    labels = p.labels
    nodes: list[ForestNode] = []
    owner: dict[int, int] = {}
    monocrimps = 0

    def runs():
        out = []
        a = 0
        n_int = len(positions) - 1
        iv = [positions[i + 1] - positions[i] for i in range(n_int)]
        while a < n_int:
            b = a
            while b + 1 < n_int and iv[b + 1] == iv[a]:
                b += 1
            if 1 <= a and b <= n_int - 2 and iv[a - 1] > iv[a] and iv[b + 1] > iv[a]:
                out.append((a, b, iv[a]))
            a = b + 1
        return out

    while True:
        found = runs()
        if not found:
            break
        a, b, d = found[rng.randrange(len(found))]
        run_ids = ids[a - 1 : b + 1]
        run_start = positions[a]
        labs = "".join(labels[c - 1] for c in run_ids)
        node_id = len(nodes)
        remaining = list(run_ids)
        pair_list = []
        while len(remaining) > 1:
            pairs = [
                t
                for t in range(len(remaining) - 1)
                if labels[remaining[t] - 1] != labels[remaining[t + 1] - 1]
            ]
            if not pairs:
                raise UnfoldableError(
                    f"pattern is not flat-foldable: run {tuple(run_ids)} "
                    f"with labels {labs!r} cannot be crimped"
                )
            t = pairs[rng.randrange(len(pairs))]
            pair_list.append((remaining[t], remaining[t + 1]))
            del remaining[t : t + 2]
        survivor = remaining[0] if remaining else None
        monocrimps += len(pair_list)
        for cid in run_ids:
            child = owner.pop(cid, None)
            if child is not None:
                nodes[child].parent = node_id
        nodes.append(
            ForestNode(
                node_id,
                tuple(run_ids),
                labs,
                d,
                run_start,
                survivor,
                tuple(pair_list),
            )
        )
        # Apply the crimp: fuse intervals and drop the crimped creases.
        size = b - a + 2
        shift = 2 * d * (size // 2)
        if survivor is None:
            positions = positions[:a] + [x - shift for x in positions[b + 2 :]]
            ids = ids[: a - 1] + ids[b + 1 :]
        else:
            owner[survivor] = node_id
            positions = positions[: a + 1] + [x - shift for x in positions[b + 2 :]]
            ids = ids[: a - 1] + [survivor] + ids[b + 1 :]

    for node_id, node in enumerate(nodes):
        if node.parent is not None:
            parent = nodes[node.parent]
            if parent._children is None:
                parent._children = [node_id]
            else:
                parent._children.append(node_id)

    end_ids = tuple(ids)
    end_positions = tuple(positions[1:-1])
    end_lengths = tuple(
        positions[i + 1] - positions[i] for i in range(len(positions) - 1)
    )
    roots = sorted(
        (i for i, nd in enumerate(nodes) if nd.parent is None),
        key=lambda i: (nodes[i].start, i),
    )
    return CrimpForest(
        tuple(nodes),
        tuple(roots),
        end_ids,
        end_positions,
        end_lengths,
        "".join(labels[c - 1] for c in end_ids),
        monocrimps,
        0,
    )


def _anchor_map(forest: CrimpForest, pattern: CreasePattern) -> dict[int, int]:
    """Stable point per crease id: original position, survivors recursing
    to the original position of their run's leftmost crease.

    Stable points identify creases across crimp orders and labelings,
    where survivor ids do not.
    """
    anchors: dict[int, int] = {}
    for node in forest.nodes:  # children precede parents (creation order)
        for cid in node.crease_ids:
            if cid not in anchors and cid > 0:
                anchors[cid] = pattern.positions[cid]
        if node.survivor is not None:
            anchors[node.survivor] = anchors[node.crease_ids[0]]
    for cid in forest.end_crease_ids:
        if cid > 0 and cid not in anchors:
            anchors[cid] = pattern.positions[cid]
    return anchors


def crimp_signatures(forest: CrimpForest, pattern: CreasePattern):
    """Order- and label-independent multiset of the crimps performed.

    Each node is signed with the stable points its creases carry *when
    the crimp happens*; the survivor's anchor update applies only to
    later runs that consume it.
    """
    anchors: dict[int, int] = {}
    sigs = []
    for node in forest.nodes:
        for cid in node.crease_ids:
            if cid > 0 and cid not in anchors:
                anchors[cid] = pattern.positions[cid]
        sigs.append((node.distance, tuple(anchors[c] for c in node.crease_ids)))
        if node.survivor is not None:
            anchors[node.survivor] = anchors[node.crease_ids[0]]
    return sorted(sigs)


def end_signature(forest: CrimpForest, pattern: CreasePattern):
    """End creases as (stable point, label) plus the final gap values."""
    anchors = _anchor_map(forest, pattern)
    creases = tuple(
        (anchors[c], None if forest.end_labels is None else forest.end_labels[i])
        for i, c in enumerate(forest.end_crease_ids)
    )
    return creases, forest.end_lengths


def _canonical(forest: CrimpForest, nid: int):
    node = forest.nodes[nid]
    child_survivors = {forest.nodes[c].survivor for c in node.children}
    first_time = tuple(
        (slot, cid)
        for slot, cid in enumerate(node.crease_ids)
        if cid not in child_survivors
    )
    # children keyed by the slot their survivor occupies, which is the one
    # child ordering independent of crimp order and labels
    children = sorted(
        node.children,
        key=lambda c: node.crease_ids.index(forest.nodes[c].survivor),
    )
    return (
        node.size,
        node.distance,
        first_time,
        tuple(_canonical(forest, c) for c in children),
    )


def forest_isomorphic(f1: CrimpForest, f2: CrimpForest) -> bool:
    """Structural identity: tree shapes, run sizes, spacings, snapshot
    positions and first-time crease slots all match (survivor identities
    are allowed to differ)."""
    if f1.end_positions != f2.end_positions or f1.end_lengths != f2.end_lengths:
        return False
    c1 = sorted(_canonical(f1, r) for r in f1.roots)
    c2 = sorted(_canonical(f2, r) for r in f2.roots)
    return c1 == c2


def _crease_name(cid: int) -> str:
    return f"c{cid}" if cid > 0 else f"x{-cid}"


def _node_label(node: ForestNode) -> str:
    names = ",".join(_crease_name(c) for c in node.crease_ids)
    return f"({names}) d={node.distance}"


def export_forest(forest: CrimpForest, format: str = "dot") -> str:
    """Render the forest as a DOT digraph or a JSON tree."""
    if format == "dot":
        lines = ["digraph crimp_forest {"]
        for node in forest.nodes:
            lines.append(f'  n{node.id} [label="{_node_label(node)}"];')
        for node in forest.nodes:
            for child in node.children:
                lines.append(f"  n{node.id} -> n{child};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if format == "json":

        def tree(nid: int) -> dict:
            node = forest.nodes[nid]
            return {
                "id": node.id,
                "creases": list(node.crease_ids),
                "labels": node.labels,
                "distance": node.distance,
                "positions": list(node.crease_positions),
                "survivor": node.survivor,
                "children": [tree(c) for c in node.children],
            }

        return json.dumps(
            {"roots": [tree(r) for r in forest.roots]}, separators=(",", ":")
        )
    raise ValueError(f"unknown export format {format!r}")
