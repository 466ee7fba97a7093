"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Matrices are immutable :class:`RatMatrix` values;
the heavy lifting (products, row reduction) is delegated to FLINT's
``fmpq_mat`` which works with arbitrary precision integers throughout.
Empty matrices (0 x n, n x 0) are ordinary values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from .errors import DimensionError, ParseError

Rational = Fraction

_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (sign on the numerator only)."""
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    m = _RAT_RE.match(text.strip())
    if m is None:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _to_fmpq(x):
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        x = parse_rational(x)
        return flint.fmpq(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


class RatMatrix:
    """Immutable ``rows x cols`` matrix of rationals."""

    __slots__ = ("_m",)

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape {rows}x{cols}")
        flat = [_to_fmpq(e) for e in entries]
        if not flat:
            self._m = flint.fmpq_mat(rows, cols)
        elif len(flat) != rows * cols:
            raise DimensionError(
                f"{len(flat)} entries do not fill a {rows}x{cols} matrix")
        else:
            self._m = flint.fmpq_mat(rows, cols, flat)

    @classmethod
    def _wrap(cls, m) -> "RatMatrix":
        obj = cls.__new__(cls)
        obj._m = m
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = list(rows)
        if cols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int):
        columns = list(columns)
        for c in columns:
            if len(c) != nrows:
                raise DimensionError("column length does not match row count")
        flat = [columns[j][i] for i in range(nrows) for j in range(len(columns))]
        return cls(nrows, len(columns), flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._wrap(flint.fmpq_mat(n, n, [1 if i == j else 0
                                               for i in range(n) for j in range(n)]))

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets) -> "RatMatrix":
        """Sparse constructor from ``(i, j, value)``; repeated positions are summed."""
        m = flint.fmpq_mat(rows, cols)
        for i, j, v in triplets:
            m[i, j] = m[i, j] + _to_fmpq(v)
        return cls._wrap(m)

    @property
    def rows(self) -> int:
        return self._m.nrows()

    @property
    def cols(self) -> int:
        return self._m.ncols()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(_to_fraction(e) for e in self._m.entries())

    def tolist(self) -> list[list[Fraction]]:
        e = self.entries
        c = self.cols
        return [list(e[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(_to_fraction(self._m[i, j]) for i in range(self.rows))

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def nonzeros(self):
        """Yield ``(i, j, value)`` for nonzero entries, value as ``fmpq``."""
        c = self.cols
        for k, e in enumerate(self._m.entries()):
            if e:
                yield k // c, k % c, e

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return _to_fraction(self._m[i, j])

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._m == other._m

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        body = [[format_rational(x) for x in row] for row in self.tolist()]
        return f"RatMatrix({self.rows}x{self.cols}, {body})"

    def is_zero(self) -> bool:
        return not any(self._m.entries())

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._wrap(self._m.transpose())

    def transpose(self) -> "RatMatrix":
        return self.T

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        _same_shape(self, other)
        return RatMatrix._wrap(self._m + other._m)

    def __sub__(self, other):
        _same_shape(self, other)
        return RatMatrix._wrap(self._m - other._m)

    def __neg__(self):
        return RatMatrix._wrap(-self._m)

    def scale(self, c) -> "RatMatrix":
        c = _to_fmpq(c)
        if self.rows == 0 or self.cols == 0:
            return self
        return RatMatrix._wrap(self._m * c)


def _same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def matmul(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    if A.rows == 0 or B.cols == 0 or A.cols == 0:
        return RatMatrix.zeros(A.rows, B.cols)
    return RatMatrix._wrap(A._m * B._m)


def transpose(M: RatMatrix) -> RatMatrix:
    return M.T


def rref(M: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    if M.rows == 0 or M.cols == 0:
        return M, []
    R, r = M._m.rref()
    pivots = []
    row = 0
    for j in range(M.cols):
        if row < r and R[row, j] != 0:
            pivots.append(j)
            row += 1
    return RatMatrix._wrap(R), pivots


def rank(M: RatMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return M._m.rank()


def kernel_matrix(M: RatMatrix) -> RatMatrix:
    """``cols x k`` matrix whose columns form a basis of ``{v : Mv = 0}``."""
    R, pivots = rref(M)
    return kernel_from_rref(R, pivots, M.cols)


def kernel_from_rref(R: RatMatrix, pivots, n: int) -> RatMatrix:
    """Kernel basis read off an rref: one column per free variable, in order."""
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    out = flint.fmpq_mat(n, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
        for row, p in enumerate(pivots):
            v = R._m[row, f]
            if v:
                out[p, k] = -v
    return RatMatrix._wrap(out)


def kernel_basis(M: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space; one tuple per basis vector."""
    return kernel_matrix(M).columns()


def column_space_pivots(M: RatMatrix) -> list[int]:
    """Indices of a maximal independent set of columns, greedy from the left."""
    return rref(M)[1]


def solve(A: RatMatrix, B: RatMatrix) -> RatMatrix | None:
    """A particular solution X of ``A X = B`` (free variables set to 0).

    Returns None when the system is inconsistent.
    """
    if A.rows != B.rows:
        raise DimensionError(f"solve: {A.rows} rows vs {B.rows} rows")
    n, k = A.cols, B.cols
    if A.rows == 0:
        return RatMatrix.zeros(n, k)
    R, pivots = rref(hstack([A, B]))
    if pivots and pivots[-1] >= n:
        return None
    X = flint.fmpq_mat(n, k)
    for row, p in enumerate(pivots):
        for c in range(k):
            v = R._m[row, n + c]
            if v:
                X[p, c] = v
    return RatMatrix._wrap(X)


def inverse(M: RatMatrix) -> RatMatrix:
    if M.rows != M.cols:
        raise DimensionError("inverse of a non-square matrix")
    if M.rows == 0:
        return M
    if rank(M) != M.rows:
        raise ZeroDivisionError("matrix is singular")
    return RatMatrix._wrap(M._m.inv())


def assemble(rows: int, cols: int, pieces) -> RatMatrix:
    """Build a matrix from ``(row_offset, col_offset, block)`` triples.

    Overlapping blocks are summed.
    """
    if rows == 0 or cols == 0:
        for r0, c0, block in pieces:
            if r0 + block.rows > rows or c0 + block.cols > cols:
                raise DimensionError("block does not fit")
        return RatMatrix.zeros(rows, cols)
    flat = [0] * (rows * cols)
    placed = []
    for r0, c0, block in pieces:
        br, bc = block.rows, block.cols
        if r0 + br > rows or c0 + bc > cols:
            raise DimensionError("block does not fit")
        if br == 0 or bc == 0:
            continue
        src = block._m.entries()
        overlaps = any(r0 < r1 + h and r1 < r0 + br and c0 < c1 + w and c1 < c0 + bc
                       for r1, c1, h, w in placed)
        placed.append((r0, c0, br, bc))
        if not overlaps:
            for i in range(br):
                base = (r0 + i) * cols + c0
                flat[base:base + bc] = src[i * bc:(i + 1) * bc]
            continue
        for i in range(br):
            base = (r0 + i) * cols + c0
            for j in range(bc):
                v = src[i * bc + j]
                if v:
                    flat[base + j] = flat[base + j] + v
    return RatMatrix._wrap(flint.fmpq_mat(rows, cols, flat))


def _selector(idx, n: int):
    """0/1 matrix whose row a picks coordinate ``idx[a]`` out of n."""
    S = flint.fmpq_mat(len(idx), n)
    for a, i in enumerate(idx):
        S[a, i] = 1
    return S


def select_columns(M: RatMatrix, idx) -> RatMatrix:
    """The submatrix on the given columns, in the given order."""
    idx = list(idx)
    if M.rows == 0 or not idx:
        return RatMatrix.zeros(M.rows, len(idx))
    # multiplying by a selector keeps the copy inside flint
    return RatMatrix._wrap(M._m * _selector(idx, M.cols).transpose())


def select_rows(M: RatMatrix, idx) -> RatMatrix:
    idx = list(idx)
    if M.cols == 0 or not idx:
        return RatMatrix.zeros(len(idx), M.cols)
    return RatMatrix._wrap(_selector(idx, M.rows) * M._m)


def hstack(blocks: Sequence[RatMatrix]) -> RatMatrix:
    if not blocks:
        raise DimensionError("hstack of nothing")
    r = blocks[0].rows
    pieces, off = [], 0
    for b in blocks:
        if b.rows != r:
            raise DimensionError("hstack row mismatch")
        pieces.append((0, off, b))
        off += b.cols
    return assemble(r, off, pieces)


def vstack(blocks: Sequence[RatMatrix]) -> RatMatrix:
    if not blocks:
        raise DimensionError("vstack of nothing")
    c = blocks[0].cols
    pieces, off = [], 0
    for b in blocks:
        if b.cols != c:
            raise DimensionError("vstack column mismatch")
        pieces.append((off, 0, b))
        off += b.rows
    return assemble(off, c, pieces)


def block_diag(blocks: Sequence[RatMatrix]) -> RatMatrix:
    pieces, r, c = [], 0, 0
    for b in blocks:
        pieces.append((r, c, b))
        r += b.rows
        c += b.cols
    return assemble(r, c, pieces)


def kron(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    """Kronecker product; row index of the result is ``i_A * B.rows + i_B``."""
    rows, cols = A.rows * B.rows, A.cols * B.cols
    flat = [0] * (rows * cols)
    bnz = list(B.nonzeros())
    for ia, ja, a in A.nonzeros():
        for ib, jb, b in bnz:
            flat[(ia * B.rows + ib) * cols + ja * B.cols + jb] = a * b
    if rows == 0 or cols == 0:
        return RatMatrix.zeros(rows, cols)
    return RatMatrix._wrap(flint.fmpq_mat(rows, cols, flat))


def kron_entries(A: RatMatrix, B: RatMatrix, r0: int = 0, c0: int = 0, sign: int = 1):
    """Nonzero ``(i, j, value)`` of ``sign * kron(A, B)`` placed at offset ``(r0, c0)``."""
    bnz = list(B.nonzeros())
    br, bc = B.rows, B.cols
    for ia, ja, a in A.nonzeros():
        a = a if sign == 1 else -a
        for ib, jb, b in bnz:
            yield r0 + ia * br + ib, c0 + ja * bc + jb, a * b


def sparse_matrix(rows: int, cols: int, entry_iters) -> RatMatrix:
    """Matrix from several iterables of ``(i, j, value)``; repeats are summed."""
    return RatMatrix.from_triplets(rows, cols, (t for it in entry_iters for t in it))

