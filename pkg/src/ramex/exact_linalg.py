"""Exact dense linear algebra over rationals and quadratic-field numbers.

Provides the Berkowitz (division-free) characteristic polynomial, the
Householder block reduction that rotates a block's all-ones direction onto
its smallest index, and the trivariate determinant polynomial computed by
exact evaluation/interpolation on the integer grid {0..l_hat}^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_algebra import QuadNum, TriPoly, UniPoly


class BlockTooSmall(ValueError):
    """Householder reduction needs a block of size at least 2."""


class RationalityViolation(ArithmeticError):
    """A coefficient that must be rational and nonnegative was not.

    The sqrt(l) parts of the trivariate determinant polynomial must cancel
    exactly and leave nonnegative rationals (they are sums of squared
    minors); anything else is a hard implementation error.
    """


# Count of detected violations, for audit by the acceptance suite.  Every
# violation also raises, so a completed run implies a zero count.
RATIONALITY_VIOLATIONS = 0


def rationality_violation_count() -> int:
    return RATIONALITY_VIOLATIONS


def _violation(message: str) -> RationalityViolation:
    global RATIONALITY_VIOLATIONS
    RATIONALITY_VIOLATIONS += 1
    return RationalityViolation(message)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense rectangular matrix over an exact scalar ring."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries))) if self.entries else self

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return Matrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __neg__(self):
        return Matrix(tuple(tuple(-x for x in row) for row in self.entries))

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().entries
        return Matrix(
            tuple(
                tuple(_dot(row, col) for col in cols)
                for row in self.entries
            )
        )

    def map_entries(self, fn) -> "Matrix":
        return Matrix(tuple(tuple(fn(x) for x in row) for row in self.entries))


def _dot(xs, ys):
    acc = 0
    for x, y in zip(xs, ys):
        if x and y:
            acc = acc + x * y
    return acc


@dataclass(frozen=True)
class BlockSpec:
    """Ordered row and column index sets of a square sub-block."""

    rows: tuple
    cols: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        cols = tuple(self.cols)
        if len(rows) != len(cols):
            raise ValueError("block must have equally many rows and columns")
        for idx in (rows, cols):
            if any(i < 0 for i in idx) or list(idx) != sorted(set(idx)):
                raise ValueError("block indices must be distinct, ascending, nonnegative")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def size(self) -> int:
        return len(self.rows)


def charpoly(matrix: Matrix) -> UniPoly:
    """det(xI - M) by the division-free Berkowitz algorithm; exact, monic.

    Works over any exact commutative ring (here: ints, Fractions,
    QuadNums), which is why a division-free method is used.
    """
    if not matrix.is_square:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = matrix.nrows
    a = matrix.entries
    coeffs = [1]  # descending; charpoly of the empty matrix
    for k in range(1, n + 1):
        corner = a[k - 1][k - 1]
        row = [a[k - 1][j] for j in range(k - 1)]
        col = [a[i][k - 1] for i in range(k - 1)]
        # Toeplitz sequence: t0 = 1, t1 = -corner, t_i = -(row . A^(i-2) . col)
        t = [1, -corner]
        vec = col
        for i in range(2, k + 1):
            t.append(-_dot(row, vec))
            if i < k:
                vec = [_dot(a[r][: k - 1], vec) for r in range(k - 1)]
        new = []
        for i in range(k + 1):
            acc = 0
            for j in range(max(0, i - k), min(i, k - 1) + 1):
                cj = coeffs[j]
                if cj:
                    acc = acc + t[i - j] * cj
            new.append(acc)
        coeffs = new
    return UniPoly(tuple(reversed(coeffs)))


def _householder(size: int, radicand: int) -> list[list[QuadNum]]:
    """The size x size reflector H mapping the all-ones direction to e_0.

    H = I - 2 v v^T / (v^T v) with v = u - e_0 and u the unit all-ones
    vector; entries live in Q[sqrt(size)] (radicand is always the block
    size here).  H is exactly orthogonal and symmetric.
    """
    inv_root = Fraction(1, size)  # 1/sqrt(l) == sqrt(l)/l
    u = [QuadNum(0, inv_root, radicand) for _ in range(size)]
    v = list(u)
    v[0] = v[0] - 1
    vtv = QuadNum(2, -2 * inv_root, radicand)  # 2 - 2/sqrt(l), nonzero for l >= 2
    h = []
    for i in range(size):
        row = []
        for j in range(size):
            val = (v[i] * v[j] * 2) / vtv
            row.append((QuadNum(1, 0, radicand) - val) if i == j else -val)
        h.append(row)
    return h


def householder_block_reduce(a_aug: Matrix, block: BlockSpec) -> tuple[Matrix, BlockSpec]:
    """Rotate the block's all-ones row and column directions onto its
    smallest row/column index.

    a_aug must already carry the block mean (1/l on every block cell).
    Returns (H_r . a_aug . H_c^T, block minus the two pivot indices); the
    result lives in Q[sqrt(l)].  Entries outside the block rows/columns
    are untouched by the corresponding transform.
    """
    l = block.size
    if l < 2:
        raise BlockTooSmall(f"block size {l} < 2")
    m = a_aug.nrows
    radicand = l
    hblock = _householder(l, radicand)

    def embed(indices) -> Matrix:
        h = [[QuadNum(1 if i == j else 0, 0, radicand) for j in range(m)] for i in range(m)]
        for bi, i in enumerate(indices):
            for bj, j in enumerate(indices):
                h[i][j] = hblock[bi][bj]
        return Matrix.from_rows(h)

    h_rows = embed(block.rows)
    h_cols = embed(block.cols)
    aq = a_aug.map_entries(lambda x: QuadNum(Fraction(x), 0, radicand))
    ahat = h_rows @ aq @ h_cols.transpose()
    # Orthogonal invariance: the reduction must preserve singular values.
    assert charpoly(ahat.transpose() @ ahat) == charpoly(
        a_aug.transpose() @ a_aug
    ), "Householder reduction changed the singular values"
    reduced = BlockSpec(block.rows[1:], block.cols[1:])
    return ahat, reduced


def _div_by_int(x, k: int):
    # ints must widen to Fraction, never fall into float division
    return Fraction(x, k) if isinstance(x, int) else x / k


def _interp_integer_nodes(values: list) -> list:
    """Coefficients (ascending, untrimmed) of the polynomial taking
    values[i] at the node i, for i = 0..len-1.  Newton divided differences;
    all divisions are by integers, so this stays inside the scalar ring
    extended by rationals."""
    count = len(values)
    table = list(values)
    dd = [table[0]]
    for step in range(1, count):
        table = [_div_by_int(table[i + 1] - table[i], step) for i in range(len(table) - 1)]
        dd.append(table[0])
    coeffs = [0] * count
    basis = [1]  # product (t - 0)(t - 1)... built incrementally
    for j, c in enumerate(dd):
        for i, b in enumerate(basis):
            if b:
                coeffs[i] = coeffs[i] + c * b
        if j < count - 1:
            nxt = [0] * (len(basis) + 1)
            for i, b in enumerate(basis):
                nxt[i] = nxt[i] - j * b
                nxt[i + 1] = nxt[i + 1] + b
            basis = nxt
    return coeffs


def _scaled_product(ahat: Matrix, reduced: BlockSpec, t_r: int, t_c: int) -> Matrix:
    """ahat^T . R . ahat . C with R, C the diagonal selectors carrying t_r
    on the reduced block rows and t_c on the reduced block columns."""
    rows = set(reduced.rows)
    cols = set(reduced.cols)
    scaled = Matrix(
        tuple(
            tuple(x * t_r for x in row) if i in rows else row
            for i, row in enumerate(ahat.entries)
        )
    )
    prod = ahat.transpose() @ scaled
    return Matrix(
        tuple(
            tuple(x * t_c if j in cols else x for j, x in enumerate(row))
            for row in prod.entries
        )
    )


def _as_rational(value, context: str) -> Fraction:
    if isinstance(value, QuadNum):
        r = value.rational_value()
        if r is None:
            raise _violation(f"irrational residue {value} in {context}")
        return r
    return Fraction(value)


def trivariate_detpoly(ahat: Matrix, reduced_block: BlockSpec) -> TriPoly:
    """det(ahat^T ((I-D_r) + t_r D_r) ahat ((I-D_c) + t_c D_c) + lam I)
    as an exact trivariate polynomial.

    Computed by evaluation at every integer pair (t_r, t_c) in
    {0..l_hat}^2 followed by exact Lagrange/Newton interpolation.  The
    coefficient of lam**(m-k') t_r**p t_c**q is the squared-minor sum
    C_{k',p,q}; each must come out rational (the sqrt parts cancel) and
    nonnegative, which is asserted here.
    """
    if not ahat.is_square:
        raise ValueError("square matrix required")
    m = ahat.nrows
    lhat = reduced_block.size
    grid = [
        [charpoly(-_scaled_product(ahat, reduced_block, tr, tc)) for tc in range(lhat + 1)]
        for tr in range(lhat + 1)
    ]
    planes = []
    for i in range(m + 1):
        # interpolate this lam-coefficient over t_c (per row), then t_r
        rows_tc = [
            _interp_integer_nodes([grid[tr][tc].coeff(i) for tc in range(lhat + 1)])
            for tr in range(lhat + 1)
        ]
        plane = [[None] * (lhat + 1) for _ in range(lhat + 1)]
        for q in range(lhat + 1):
            col = _interp_integer_nodes([rows_tc[tr][q] for tr in range(lhat + 1)])
            for p in range(lhat + 1):
                kprime = m - i
                c = _as_rational(col[p], f"C[k'={kprime}][p={p}][q={q}]")
                if c < 0:
                    raise _violation(f"negative squared-minor sum C[{kprime}][{p}][{q}] = {c}")
                plane[p][q] = c
        planes.append(tuple(tuple(row) for row in plane))
    return TriPoly(tuple(planes))
