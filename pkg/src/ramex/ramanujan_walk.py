"""Greedy descent through the matching tree and exact certification.

The walk starts at the root, evaluates every child's polynomial, and
descends into the first child (ascending partner order) whose max root is
at most sqrt(q) with q = 4(d-1), tested exactly over Q[sqrt(q)].  At a
leaf the matchings combine into a d-regular bipartite multigraph whose
nontrivial spectrum is certified to lie in [-2 sqrt(d-1), 2 sqrt(d-1)]:
bipartite spectra are symmetric about zero, so bounding the max root
bounds the min root as well.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_algebra import (
    NonzeroRemainder,
    QuadNum,
    UniPoly,
    poly_div_exact,
    poly_shift_by_sqrt,
    quad_sign,
)
from .exact_linalg import Matrix, charpoly
from .expectation_engine import node_polynomial
from .matching_family import Multigraph, NodeState, Params, children


class NotRegular(ValueError):
    """The multigraph is not d-regular bipartite."""


class NoPassingChild(RuntimeError):
    """No child passed the root bound.

    Impossible for a correct implementation when the current node passes
    (the parent polynomial is an average of the children's, which share a
    common interlacing), so outside the degenerate d = 1 regime this
    always indicates a bug.  Carries the full stage transcript.
    """

    def __init__(self, message: str, node=None, child_nodes=(), child_polys=()):
        super().__init__(message)
        self.node = node
        self.child_nodes = tuple(child_nodes)
        self.child_polys = tuple(child_polys)


def max_root_leq_sqrt(p: UniPoly, q: int) -> bool:
    """Exact test whether the max root of real-rooted p is <= sqrt(q).

    Shifts to p(x + sqrt(q)) over Q[sqrt(q)]; nonpositive roots of the
    shifted polynomial are equivalent to all its coefficients being
    nonnegative, decided by exact quadratic signs.  q = 0 degenerates to
    testing p's own coefficients.
    """
    if p.is_zero:
        raise ValueError("p must be nonzero")
    if q < 0:
        raise ValueError("q must be nonnegative")
    if q == 0:
        return all(quad_sign(c) >= 0 for c in p.coeffs)
    shifted = poly_shift_by_sqrt(p, q)
    return all(quad_sign(c) >= 0 for c in shifted.coeffs)


@dataclass(frozen=True)
class Certificate:
    """Exact evidence about a multigraph's nontrivial spectrum."""

    graph: Multigraph
    bound_q: int
    adjacency_charpoly: UniPoly
    nontrivial_poly: UniPoly | None
    shifted_coeffs: tuple  # QuadNum coefficients of nontrivial(x + sqrt(q))
    shifted_nonneg: tuple  # per-coefficient sign transcript
    passed: bool
    reason: str | None = None


def certify(graph: Multigraph) -> Certificate:
    """Certify a d-regular bipartite multigraph exactly.

    Builds the n x n adjacency, takes its exact characteristic polynomial,
    divides out the trivial factor x^2 - d^2 once, and runs the sqrt-q
    root test with q = 4(d-1).  A non-dividing trivial factor (extra +/- d
    eigenvalue pairs that x^2 - d^2 cannot absorb) is reported as a failed
    certificate rather than an error.
    """
    params = graph.params
    m, d = params.m, params.d
    mult = graph.multiplicity
    for i in range(m):
        if sum(mult[i]) != d:
            raise NotRegular(f"left vertex {i + 1} has degree {sum(mult[i])} != {d}")
    for j in range(m):
        colsum = sum(mult[i][j] for i in range(m))
        if colsum != d:
            raise NotRegular(f"right vertex {j + 1} has degree {colsum} != {d}")

    n = params.n
    adj = [[0] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            adj[i][m + j] = mult[i][j]
            adj[m + j][i] = mult[i][j]
    adj_poly = charpoly(Matrix.from_rows(adj))
    q = 4 * (d - 1)
    try:
        nontrivial = poly_div_exact(
            adj_poly, UniPoly((Fraction(-(d * d)), Fraction(0), Fraction(1)))
        )
    except NonzeroRemainder:
        return Certificate(
            graph=graph,
            bound_q=q,
            adjacency_charpoly=adj_poly,
            nontrivial_poly=None,
            shifted_coeffs=(),
            shifted_nonneg=(),
            passed=False,
            reason="trivial factor x^2 - d^2 does not divide the adjacency polynomial",
        )
    if q == 0:
        shifted = tuple(QuadNum(Fraction(c), 0, 0) for c in nontrivial.coeffs)
    else:
        shifted = poly_shift_by_sqrt(nontrivial, q).coeffs
    signs = tuple(quad_sign(c) >= 0 for c in shifted)
    return Certificate(
        graph=graph,
        bound_q=q,
        adjacency_charpoly=adj_poly,
        nontrivial_poly=nontrivial,
        shifted_coeffs=shifted,
        shifted_nonneg=signs,
        passed=all(signs),
    )


@dataclass(frozen=True)
class WalkStage:
    """One expansion of the walk: a node, its evaluated children, the pick."""

    node: NodeState
    node_poly: UniPoly
    child_nodes: tuple
    child_polys: tuple
    child_passed: tuple
    chosen: int


@dataclass(frozen=True)
class WalkResult:
    params: Params
    bound_q: int
    leaf: NodeState
    leaf_poly: UniPoly
    stages: tuple = field(default_factory=tuple)


def _child_poly_task(args) -> UniPoly:
    node, params = args
    return node_polynomial(node, params).poly


def _average(polys) -> UniPoly:
    total = UniPoly()
    for p in polys:
        total = total + p
    return Fraction(1, len(polys)) * total


def walk(params: Params, jobs: int = 1, canonical_first: bool = False) -> WalkResult:
    """Descend from the root to a leaf, keeping the invariant that the
    current node's polynomial passes the sqrt(q) bound, q = 4(d-1).

    Children are all evaluated (independently; in worker processes when
    jobs > 1) and scanned in deterministic ascending order for the first
    passing one, so results never depend on scheduling.  canonical_first
    pins the first matching to the identity, a pure relabeling symmetry.
    """
    q = 4 * (params.d - 1)
    if canonical_first:
        current = NodeState((tuple(range(params.m)),), None)
    else:
        current = NodeState((), None)
    current_poly = node_polynomial(current, params).poly
    if not max_root_leq_sqrt(current_poly, q):
        raise NoPassingChild(
            f"start node polynomial {current_poly} already violates the bound "
            f"sqrt({q}) (expected only in the degenerate d=1 regime)",
            node=current,
        )

    stages = []
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while not current.is_leaf(params):
            kids = children(current, params)
            tasks = [(k, params) for k in kids]
            if pool is not None:
                polys = list(pool.map(_child_poly_task, tasks))
            else:
                polys = [_child_poly_task(t) for t in tasks]
            assert _average(polys) == current_poly, (
                "parent polynomial is not the average of its children"
            )
            passed = [max_root_leq_sqrt(p, q) for p in polys]
            try:
                idx = passed.index(True)
            except ValueError:
                raise NoPassingChild(
                    f"no child of {current} passes the sqrt({q}) bound",
                    node=current,
                    child_nodes=kids,
                    child_polys=polys,
                ) from None
            stages.append(
                WalkStage(
                    node=current,
                    node_poly=current_poly,
                    child_nodes=tuple(kids),
                    child_polys=tuple(polys),
                    child_passed=tuple(passed),
                    chosen=idx,
                )
            )
            current = kids[idx]
            current_poly = polys[idx]
    finally:
        if pool is not None:
            pool.shutdown()
    return WalkResult(
        params=params,
        bound_q=q,
        leaf=current,
        leaf_poly=current_poly,
        stages=tuple(stages),
    )


def find_leaf(params: Params, jobs: int = 1, canonical_first: bool = False) -> NodeState:
    """The leaf reached by the first-passing-child descent."""
    return walk(params, jobs=jobs, canonical_first=canonical_first).leaf


def certificate_to_json(cert: Certificate) -> dict:
    """Wire format: exact strings only, no floating point anywhere."""
    data = {
        "n": cert.graph.params.n,
        "d": cert.graph.params.d,
        "q": cert.bound_q,
        "adjacency_charpoly": [str(Fraction(c)) for c in cert.adjacency_charpoly.coeffs],
        "nontrivial_charpoly": (
            [str(Fraction(c)) for c in cert.nontrivial_poly.coeffs]
            if cert.nontrivial_poly is not None
            else None
        ),
        "shifted_coeffs": [
            {"a": str(c.a), "b": str(c.b)} for c in cert.shifted_coeffs
        ],
        "passed": cert.passed,
    }
    if cert.reason is not None:
        data["reason"] = cert.reason
    return data
