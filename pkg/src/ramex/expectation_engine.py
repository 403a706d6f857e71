"""Exact expected characteristic polynomials for matching-tree nodes.

The pipeline per node: build the fixed half-adjacency matrix, average the
in-progress matching over its block by quadrature (Householder reduction
plus the trivariate determinant's squared-minor sums), convert the Gram
polynomial to the adjacency polynomial via y -> x^2, fold in each still
unplaced uniformly random matching with the linear convolution step, and
finally divide out the trivial eigenvalue factor x^2 - d^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_algebra import UniPoly, poly_div_exact, poly_substitute_square
from .exact_linalg import (
    BlockSpec,
    Matrix,
    RationalityViolation,
    charpoly,
    householder_block_reduce,
    trivariate_detpoly,
)
from .matching_family import NodeState, Params, half_adjacency


def _comb0(a: int, b: int) -> int:
    """Binomial with the vanishing convention: 0 when b < 0 or b > a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def g_weight(lhat: int, k: int, kprime: int, p: int, q: int) -> Fraction:
    """Expected-minor counting weight C(lhat-p, k-k') C(lhat-q, k-k') / C(lhat, k-k').

    Counts the completions U of U' and V of V' whose off-part lies fully
    inside the reduced block, weighted by the expected squared minor of
    the random orthogonal part; zero whenever the denominator vanishes
    (the numerator vanishes first except in the 0/0 case).
    """
    denom = _comb0(lhat, k - kprime)
    if denom == 0:
        return Fraction(0)
    return Fraction(_comb0(lhat - p, k - kprime) * _comb0(lhat - q, k - kprime), denom)


@dataclass(frozen=True)
class CTensor:
    """Squared-minor sums C[k'][p][q] of the reduced matrix, indexed by
    minor size k' and row/column overlap (p, q) with the reduced block.

    All entries are exact nonnegative rationals; C[0][0][0] == 1.
    """

    m: int
    lhat: int
    values: tuple

    @classmethod
    def from_tripoly(cls, tri, m: int, lhat: int) -> "CTensor":
        values = tuple(
            tuple(
                tuple(tri.coefficient(m - kp, p, q) for q in range(lhat + 1))
                for p in range(lhat + 1)
            )
            for kp in range(m + 1)
        )
        if values[0][0][0] != 1:
            raise RationalityViolation(f"C[0][0][0] = {values[0][0][0]}, expected 1")
        return cls(m, lhat, values)

    def get(self, kprime: int, p: int, q: int) -> Fraction:
        return self.values[kprime][p][q]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "lhat": self.lhat,
            "values": [
                [[str(c) for c in row] for row in plane] for plane in self.values
            ],
        }


@dataclass(frozen=True)
class NodePoly:
    """A node's polynomial: monic, even, degree n - 2, rational coefficients."""

    poly: UniPoly


def _gram_charpoly(a: Matrix) -> UniPoly:
    """det(yI - A^T A)."""
    return charpoly(a.transpose() @ a)


def _expected_gram_charpoly(
    a: Matrix, block: BlockSpec
) -> tuple[UniPoly, CTensor | None]:
    """E[det(yI - (A + P_B)^T (A + P_B))] over a uniformly random
    permutation P_B on the block, plus the extracted squared-minor tensor
    (None on the degenerate block sizes 0 and 1 that bypass quadrature)."""
    m = a.nrows
    l = block.size
    if l == 0:
        return _gram_charpoly(a), None
    if l == 1:
        bumped = [list(row) for row in a.entries]
        bumped[block.rows[0]][block.cols[0]] += 1
        return _gram_charpoly(Matrix.from_rows(bumped)), None

    mean = Fraction(1, l)
    in_rows = set(block.rows)
    in_cols = set(block.cols)
    aug = Matrix.from_rows(
        [
            [
                Fraction(x) + mean if i in in_rows and j in in_cols else Fraction(x)
                for j, x in enumerate(row)
            ]
            for i, row in enumerate(a.entries)
        ]
    )
    ahat, reduced = householder_block_reduce(aug, block)
    tri = trivariate_detpoly(ahat, reduced)
    lhat = l - 1
    tensor = CTensor.from_tripoly(tri, m, lhat)

    coeffs = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        total = Fraction(0)
        for kp in range(k + 1):
            for p in range(lhat + 1):
                for q in range(lhat + 1):
                    c = tensor.get(kp, p, q)
                    if c:
                        w = g_weight(lhat, k, kp, p, q)
                        if w:
                            total += w * c
        coeffs[m - k] = total if k % 2 == 0 else -total
    return UniPoly(tuple(coeffs)), tensor


def fixed_plus_random_block_expected(a: Matrix, block: BlockSpec) -> UniPoly:
    """Expected Gram characteristic polynomial of the fixed matrix plus a
    uniformly random permutation on the given block."""
    return _expected_gram_charpoly(a, block)[0]


def add_random_matching(p_adj: UniPoly, params: Params, c: int) -> UniPoly:
    """Expected adjacency characteristic polynomial after adding one
    uniformly random perfect matching to a (random) c-regular bipartite
    multigraph whose expected adjacency polynomial is p_adj.

    Route: recover the Gram polynomial from the even coefficients, peel
    off the aligned singular value factor (y - c^2), apply the full-block
    overlap specialization of the quadrature weights on the reduced
    (m-1)-dimensional polynomial, re-attach (y - (c+1)^2), and substitute
    y -> x^2.  The aligned singular value moving from c^2 to (c+1)^2 is
    forced by regularity: the all-ones vector is always a singular vector.
    """
    m, n = params.m, params.n
    if c < 0:
        raise ValueError("c must be nonnegative")
    if p_adj.degree != n or not p_adj.is_monic:
        raise ValueError(f"expected a monic degree-{n} adjacency polynomial")
    if any(p_adj.coeff(i) for i in range(1, n + 1, 2)):
        raise ValueError("adjacency polynomial of a bipartite graph must be even")

    gram = UniPoly(p_adj.coeffs[0::2])
    reduced = poly_div_exact(gram, UniPoly((Fraction(-(c * c)), Fraction(1))))

    s_old = [
        (1 if k % 2 == 0 else -1) * Fraction(reduced.coeff(m - 1 - k))
        for k in range(m)
    ]
    s_new = [
        sum(
            (g_weight(m - 1, k, kp, kp, kp) * s_old[kp] for kp in range(k + 1)),
            Fraction(0),
        )
        for k in range(m)
    ]
    out = [Fraction(0)] * m
    for k in range(m):
        out[m - 1 - k] = s_new[k] if k % 2 == 0 else -s_new[k]
    lifted = UniPoly(tuple(out)) * UniPoly((Fraction(-((c + 1) ** 2)), Fraction(1)))
    return poly_substitute_square(lifted)


def _node_polynomial_full(
    node: NodeState, params: Params
) -> tuple[NodePoly, CTensor | None]:
    a, block = half_adjacency(node, params)
    gram, tensor = _expected_gram_charpoly(a, block)
    p_adj = poly_substitute_square(gram)
    placed = len(node.complete) if node.is_leaf(params) else len(node.complete) + 1
    for c in range(placed, params.d):
        p_adj = add_random_matching(p_adj, params, c)
    d = params.d
    body = poly_div_exact(p_adj, UniPoly((Fraction(-(d * d)), Fraction(0), Fraction(1))))
    assert body.degree == params.n - 2 and body.is_monic, "degree bookkeeping broken"
    assert not any(body.coeff(i) for i in range(1, body.degree + 1, 2)), (
        "node polynomial must be even"
    )
    return NodePoly(body), tensor


def node_polynomial(node: NodeState, params: Params) -> NodePoly:
    """The node's expected characteristic polynomial after removing the
    trivial eigenvalue factor: monic, even, degree n - 2, exact."""
    return _node_polynomial_full(node, params)[0]


def node_polynomial_debug(
    node: NodeState, params: Params
) -> tuple[NodePoly, CTensor | None]:
    """node_polynomial plus the squared-minor tensor of the quadrature
    step, for the JSON debug surface (None when the block was degenerate)."""
    return _node_polynomial_full(node, params)
