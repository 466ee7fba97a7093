"""Hom complexes, their cohomology, and graded Poincare data.

``Hom(X, Y)^n = (+)_i Hom(X^i, Y^{i+n})`` with ``(df)^i = d_Y f^i - (-1)^n f^{i+1} d_X``.
Components are ordered by ascending ``i``; each ``Hom(X^i, Y^{i+n})`` block
is a ``dim Y^{i+n} x dim X^i`` matrix flattened row-major.  Because every
complex of rational vector spaces is both K-projective and K-injective, this
plain Hom complex already computes derived Hom.
"""

from __future__ import annotations

import re
from typing import Mapping

from .cxcore import BoundedComplex, ChainMap, homology_dims
from .errors import ParseError
from .ratlin import RatMatrix, kron_entries, rank, sparse_matrix


class LaurentPoly:
    """Integer Laurent polynomial in q, stored as ``{exponent: coefficient}``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        for m, a in (coeffs or {}).items():
            a = int(a)
            if a:
                c[int(m)] = c.get(int(m), 0) + a
        self._c = {m: a for m, a in sorted(c.items()) if a}

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls({exp: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def coeff(self, m: int) -> int:
        return self._c.get(m, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other):
        out = dict(self._c)
        for m, a in other._c.items():
            out[m] = out.get(m, 0) + a
        return LaurentPoly(out)

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({m: c * a for m, a in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q^k``."""
        return LaurentPoly({m + k: a for m, a in self._c.items()})

    def __call__(self, at: int) -> int:
        return evaluate(self, at)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __repr__(self):
        return f"LaurentPoly({self._c})"

    def __str__(self):
        return format_poly(self)

    def to_json(self) -> dict[str, int]:
        return {str(m): a for m, a in self._c.items()}

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if not isinstance(data, dict):
            raise ParseError("Laurent polynomial must be an object of exponent -> integer")
        out = {}
        for k, v in data.items():
            try:
                m = int(k)
            except ValueError:
                raise ParseError(f"bad exponent {k!r}") from None
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"coefficient of q^{k} is not an integer")
            out[m] = v
        return cls(out)


def format_poly(P: LaurentPoly) -> str:
    """Render as e.g. ``3*q^-1 + 2 + 5*q^2``."""
    if P.is_zero():
        return "0"
    parts = []
    for m, a in P.coeffs.items():
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if m == 0:
            body = str(mag)
        else:
            mono = "q" if m == 1 else f"q^{m}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"^(?:(\d+)\*)?q(?:\^(-?\d+))?$|^(\d+)$")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`format_poly`."""
    text = text.strip()
    if text == "0":
        return LaurentPoly()
    tokens = text.replace(" - ", " + -").split(" + ")
    out = {}
    for tok in tokens:
        tok = tok.strip()
        neg = tok.startswith("-")
        tok = tok.lstrip("-")
        m = _TERM.match(tok)
        if m is None:
            raise ParseError(f"bad term {tok!r}")
        if m.group(3) is not None:
            exp, a = 0, int(m.group(3))
        else:
            a = int(m.group(1)) if m.group(1) else 1
            exp = int(m.group(2)) if m.group(2) is not None else 1
        out[exp] = out.get(exp, 0) + (-a if neg else a)
    return LaurentPoly(out)


def evaluate(P: LaurentPoly, at: int) -> int:
    """P(1) (total weight) or P(-1) (Euler weight)."""
    if at not in (1, -1):
        raise ValueError("Laurent polynomials are only specialised at q = 1 or q = -1")
    if at == 1:
        return sum(P.coeffs.values())
    return sum(a if m % 2 == 0 else -a for m, a in P.coeffs.items())


def hom_layout(X: BoundedComplex, Y: BoundedComplex) -> dict[int, list[tuple[int, int]]]:
    """For each degree n, the blocks ``(i, offset)`` of ``Hom(X, Y)^n``."""
    blocks: dict[int, list] = {}
    for i in X.degrees:
        for j in Y.degrees:
            blocks.setdefault(j - i, []).append(i)
    out = {}
    for n in sorted(blocks):
        off, lst = 0, []
        for i in sorted(blocks[n]):
            lst.append((i, off))
            off += X.dim(i) * Y.dim(i + n)
        out[n] = lst
    return out


def _hom_differential(X: BoundedComplex, Y: BoundedComplex, layout, dims, n: int) -> RatMatrix:
    toff = dict(layout[n + 1])
    pieces = []
    sign = -1 if n % 2 == 0 else 1  # -(-1)^n
    for i, off in layout[n]:
        # f^i  ->  d_Y f^i  in Hom(X^i, Y^{i+n+1})
        if i in toff:
            pieces.append(kron_entries(Y.d(i + n), RatMatrix.identity(X.dim(i)),
                                       toff[i], off))
        # f^i  ->  -(-1)^n f^i d_X^{i-1}  in Hom(X^{i-1}, Y^{i+n})
        if i - 1 in toff:
            pieces.append(kron_entries(RatMatrix.identity(Y.dim(i + n)), X.d(i - 1).T,
                                       toff[i - 1], off, sign))
    return sparse_matrix(dims[n + 1], dims[n], pieces)


def _hom_dims(X, Y, layout):
    return {n: sum(X.dim(i) * Y.dim(i + n) for i, _ in blocks) for n, blocks in layout.items()}


def hom_complex(X: BoundedComplex, Y: BoundedComplex) -> BoundedComplex:
    layout = hom_layout(X, Y)
    dims = _hom_dims(X, Y, layout)
    diffs = {n: _hom_differential(X, Y, layout, dims, n) for n in layout if n + 1 in layout}
    return BoundedComplex(dims, diffs)


def rhom_nonzero(X: BoundedComplex, Y: BoundedComplex) -> bool:
    """Whether ``Hom(X, Y)`` has any cohomology, stopping at the first nonzero degree.

    Same answer as ``not poincare(X, Y).is_zero()``; differentials are built
    and ranked only as far as needed.
    """
    layout = hom_layout(X, Y)
    dims = _hom_dims(X, Y, layout)
    ranks: dict[int, int] = {}

    def rk(n):
        if n not in ranks:
            ranks[n] = (rank(_hom_differential(X, Y, layout, dims, n))
                        if n in layout and n + 1 in layout else 0)
        return ranks[n]

    # larger spaces first: they are the likeliest to carry cohomology
    for n in sorted(dims, key=lambda m: (-dims[m], m)):
        if dims[n] - rk(n) - rk(n - 1) > 0:
            return True
    return False


def map_to_cochain(f: ChainMap) -> RatMatrix:
    """The degree-0 element of ``Hom(X, Y)`` represented by f, as a column."""
    X, Y = f.source, f.target
    layout = hom_layout(X, Y).get(0, [])
    total = sum(X.dim(i) * Y.dim(i) for i, _ in layout)
    vals = []
    for i, _ in layout:
        vals.extend(f.comp(i).entries)
    return RatMatrix(total, 1, vals)


def cochain_to_map(X: BoundedComplex, Y: BoundedComplex, v) -> ChainMap:
    """Inverse of :func:`map_to_cochain` (v is any length-``dim Hom^0`` sequence)."""
    v = list(v)
    comps = {}
    for i, off in hom_layout(X, Y).get(0, []):
        r, c = Y.dim(i), X.dim(i)
        comps[i] = RatMatrix(r, c, v[off:off + r * c])
    return ChainMap(X, Y, comps)


def precompose_matrix(g: ChainMap, Y: BoundedComplex, n: int) -> RatMatrix:
    """Matrix of ``phi -> phi o g`` from ``Hom(B, Y)^n`` to ``Hom(A, Y)^n`` for ``g : A -> B``.

    ``Hom(Z[1], Y)^{n+1}`` and ``Hom(Z, Y)^n`` have the same blocks in the
    same order and the same differential, so precomposing with a map into a
    shifted complex needs no extra bookkeeping.
    """
    A, B = g.source, g.target
    lb = dict(hom_layout(B, Y).get(n, []))
    la = dict(hom_layout(A, Y).get(n, []))
    rows = sum(A.dim(i) * Y.dim(i + n) for i in la)
    cols = sum(B.dim(j) * Y.dim(j + n) for j in lb)
    pieces = []
    for i, aoff in la.items():
        if i in lb:
            # row-major vec(F G) = (I (x) G^T) vec(F)
            pieces.append(kron_entries(RatMatrix.identity(Y.dim(i + n)), g.comp(i).T,
                                       aoff, lb[i]))
    return sparse_matrix(rows, cols, pieces)


def postcompose_matrix(g: ChainMap, X: BoundedComplex, n: int) -> RatMatrix:
    """Matrix of ``phi -> g o phi`` from ``Hom(X, A)^n`` to ``Hom(X, B)^n`` for ``g : A -> B``."""
    A, B = g.source, g.target
    la = dict(hom_layout(X, A).get(n, []))
    lb = dict(hom_layout(X, B).get(n, []))
    rows = sum(X.dim(i) * B.dim(i + n) for i in lb)
    cols = sum(X.dim(i) * A.dim(i + n) for i in la)
    pieces = []
    for i, aoff in la.items():
        if i in lb:
            pieces.append(kron_entries(g.comp(i + n), RatMatrix.identity(X.dim(i)),
                                       lb[i], aoff))
    return sparse_matrix(rows, cols, pieces)


def rhom_cohomology(X: BoundedComplex, Y: BoundedComplex) -> dict[int, int]:
    return homology_dims(hom_complex(X, Y))


def poincare(X: BoundedComplex, Y: BoundedComplex) -> LaurentPoly:
    return LaurentPoly(rhom_cohomology(X, Y))


def semisimple_pairing(hx: Mapping[int, int], hy: Mapping[int, int]) -> LaurentPoly:
    """``sum_m (sum_i hx(i) hy(i+m)) q^m`` from homology dimensions alone."""
    out: dict[int, int] = {}
    for i, a in hx.items():
        for j, b in hy.items():
            out[j - i] = out.get(j - i, 0) + a * b
    return LaurentPoly(out)
