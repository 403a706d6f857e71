"""Nodes of the matching tree and their half-adjacency matrices.

A node is a sequence of complete bipartite matchings plus an optional
partially specified matching that pairs left vertices 1..t in order.
Leaves carry exactly d complete matchings and combine into a d-regular
bipartite multigraph on n vertices.  All indices are 0-based internally
and 1-based in JSON.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import BlockSpec, Matrix


class IsLeaf(ValueError):
    """Child enumeration requested on a leaf node."""


class NotALeaf(ValueError):
    """Graph extraction requested on an incomplete node."""


@dataclass(frozen=True)
class Params:
    """Problem size: n vertices total (even), degree d; m = n/2 per side."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError("n must be an even integer >= 2")
        if self.d < 1:
            raise ValueError("d must be a positive integer")

    @property
    def m(self) -> int:
        return self.n // 2


@dataclass(frozen=True)
class NodeState:
    """A tree node: complete matchings plus an optional partial prefix.

    complete[k][i] is the right partner of left vertex i in the k-th
    complete matching; partial lists the right partners of left vertices
    0..t-1 (None when no matching is in progress).
    """

    complete: tuple = ()
    partial: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "complete", tuple(tuple(p) for p in self.complete))
        if self.partial is not None:
            object.__setattr__(self, "partial", tuple(self.partial))

    def is_leaf(self, params: Params) -> bool:
        return len(self.complete) == params.d and self.partial is None

    def validate(self, params: Params) -> None:
        m, d = params.m, params.d
        total = len(self.complete) + (1 if self.partial is not None else 0)
        if total > d:
            raise ValueError(f"node carries {total} matchings, more than d={d}")
        for match in self.complete:
            if sorted(match) != list(range(m)):
                raise ValueError(f"not a permutation of 0..{m - 1}: {match}")
        if self.partial is not None:
            t = len(self.partial)
            if not 1 <= t < m:
                raise ValueError(f"partial length {t} out of range 1..{m - 1}")
            if len(set(self.partial)) != t or any(not 0 <= j < m for j in self.partial):
                raise ValueError("partial partners must be distinct and in range")
            if len(self.complete) >= d:
                raise ValueError("partial matching on a node that already has d matchings")


@dataclass(frozen=True)
class Multigraph:
    """d-regular bipartite multigraph as an m x m edge-multiplicity matrix."""

    params: Params
    multiplicity: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "multiplicity", tuple(tuple(row) for row in self.multiplicity)
        )
        m = self.params.m
        if len(self.multiplicity) != m or any(len(r) != m for r in self.multiplicity):
            raise ValueError("multiplicity matrix must be m x m")
        if any(not isinstance(x, int) or x < 0 for row in self.multiplicity for x in row):
            raise ValueError("multiplicities must be nonnegative integers")


def children(node: NodeState, params: Params) -> list[NodeState]:
    """Children in deterministic ascending-partner order.

    With a partial of length t: one child per unmatched right vertex,
    extending the partial; a child reaching length m is promoted to a
    complete matching.  Without a partial (and fewer than d matchings):
    one child per right vertex, starting a new partial at left vertex 1.
    """
    if node.is_leaf(params):
        raise IsLeaf("leaf nodes have no children")
    m = params.m
    kids = []
    if node.partial is not None:
        used = set(node.partial)
        for j in range(m):
            if j in used:
                continue
            extended = node.partial + (j,)
            if len(extended) == m:
                kids.append(NodeState(node.complete + (extended,), None))
            else:
                kids.append(NodeState(node.complete, extended))
    else:
        for j in range(m):
            if m == 1:
                kids.append(NodeState(node.complete + ((j,),), None))
            else:
                kids.append(NodeState(node.complete, (j,)))
    return kids


def half_adjacency(node: NodeState, params: Params) -> tuple[Matrix, BlockSpec]:
    """The fixed m x m edge-count matrix plus the random-block index sets.

    The block is (unmatched lefts) x (unmatched rights) while a partial
    matching is open, the full index set when a fresh random matching is
    pending, and empty on a leaf.
    """
    m = params.m
    counts = [[0] * m for _ in range(m)]
    for match in node.complete:
        for i, j in enumerate(match):
            counts[i][j] += 1
    if node.partial is not None:
        for i, j in enumerate(node.partial):
            counts[i][j] += 1
        t = len(node.partial)
        block = BlockSpec(
            tuple(range(t, m)),
            tuple(sorted(set(range(m)) - set(node.partial))),
        )
    elif len(node.complete) < params.d:
        block = BlockSpec(tuple(range(m)), tuple(range(m)))
    else:
        block = BlockSpec((), ())
    t = len(node.partial) if node.partial is not None else 0
    base = len(node.complete)
    for i in range(m):
        assert sum(counts[i]) == base + (1 if i < t else 0), "row sum invariant broken"
    return Matrix.from_rows(counts), block


def leaf_graph(node: NodeState, params: Params) -> Multigraph:
    """Combine a leaf's d matchings into the edge-multiplicity matrix."""
    if not node.is_leaf(params):
        raise NotALeaf("node is not a leaf")
    m = params.m
    counts = [[0] * m for _ in range(m)]
    for match in node.complete:
        for i, j in enumerate(match):
            counts[i][j] += 1
    return Multigraph(params, tuple(tuple(row) for row in counts))


def node_to_json(node: NodeState) -> dict:
    """1-based JSON form: {"complete": [[...]], "partial": [...]}."""
    return {
        "complete": [[j + 1 for j in match] for match in node.complete],
        "partial": [j + 1 for j in node.partial] if node.partial is not None else [],
    }


def node_from_json(data: dict, params: Params) -> NodeState:
    if not isinstance(data, dict) or "complete" not in data:
        raise ValueError("node JSON must be an object with a 'complete' key")
    complete = tuple(tuple(int(j) - 1 for j in match) for match in data["complete"])
    raw_partial = data.get("partial") or []
    partial = tuple(int(j) - 1 for j in raw_partial) or None
    node = NodeState(complete, partial)
    node.validate(params)
    return node


def multigraph_to_json(graph: Multigraph) -> dict:
    return {
        "n": graph.params.n,
        "d": graph.params.d,
        "multiplicity": [list(row) for row in graph.multiplicity],
    }


def multigraph_from_json(data: dict) -> Multigraph:
    if not isinstance(data, dict):
        raise ValueError("multigraph JSON must be an object")
    try:
        params = Params(int(data["n"]), int(data["d"]))
        rows = tuple(tuple(int(x) for x in row) for row in data["multiplicity"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed multigraph JSON: {exc}") from exc
    return Multigraph(params, rows)
