"""Bounded cochain complexes of finite-dimensional rational vector spaces.

Conventions (fixed once, used everywhere):

* cohomological indexing, ``d^n : X^n -> X^{n+1}``;
* shift: ``X[k]^n = X^{n+k}`` with ``d_{X[k]} = (-1)^k d_X``;
* cone of ``f : X -> Y``: ``C^n = X^{n+1} (+) Y^n`` with
  ``d = [[-d_X, 0], [f, d_Y]]``;
* tensor total complex: degree ``n`` is ``(+)_{p+q=n} K^p (x) X^q`` ordered
  by ascending ``p``; inside a block the basis is ``k_a (x) x_b`` with index
  ``a * dim X^q + b``; ``d(k (x) x) = dk (x) x + (-1)^p k (x) dx``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionError, ValidationError
from .ratlin import (RatMatrix, assemble, kernel_from_rref, kron, kron_entries, rank, rref,
                     select_columns, select_rows, sparse_matrix)


class BoundedComplex:
    """Cochain complex with finitely many nonzero terms.

    ``dims`` maps degree to dimension (zeros dropped).  ``diffs`` maps
    degree ``n`` to ``d^n`` of shape ``dims(n+1) x dims(n)``; missing
    differentials are zero.  ``sector`` is an optional bookkeeping label
    (which category the object lives in) and takes no part in equality.

    The constructor only checks shapes; use :func:`validate` for d^2 = 0.
    """

    __slots__ = ("_dims", "_diffs", "sector")

    def __init__(self, dims: Mapping[int, int], diffs: Mapping[int, RatMatrix] | None = None,
                 sector: str | None = None):
        clean = {}
        for n, d in dims.items():
            n, d = int(n), int(d)
            if d < 0:
                raise DimensionError(f"negative dimension {d} in degree {n}")
            if d:
                clean[n] = d
        self._dims = dict(sorted(clean.items()))
        full = {}
        for n, m in (diffs or {}).items():
            n = int(n)
            want = (clean.get(n + 1, 0), clean.get(n, 0))
            if m.shape != want:
                raise DimensionError(
                    f"d^{n} has shape {m.rows}x{m.cols}, expected {want[0]}x{want[1]}")
            if want[0] and want[1]:
                full[n] = m
        for n in self._dims:
            if n + 1 in self._dims and n not in full:
                full[n] = RatMatrix.zeros(self._dims[n + 1], self._dims[n])
        self._diffs = dict(sorted(full.items()))
        self.sector = sector

    # construction helpers
    @classmethod
    def zero(cls, sector=None) -> "BoundedComplex":
        return cls({}, sector=sector)

    @classmethod
    def point(cls, dim: int = 1, degree: int = 0, sector=None) -> "BoundedComplex":
        """``Q^dim`` concentrated in a single degree."""
        return cls({degree: dim}, sector=sector)

    @classmethod
    def from_sequence(cls, start: int, matrices, sector=None) -> "BoundedComplex":
        """Complex ``X^start -> X^{start+1} -> ...`` from consecutive differentials."""
        matrices = list(matrices)
        if not matrices:
            raise DimensionError("need at least one differential")
        dims = {start: matrices[0].cols}
        for k, m in enumerate(matrices):
            if m.cols != dims[start + k]:
                raise DimensionError(f"differential {k} does not compose")
            dims[start + k + 1] = m.rows
        return cls(dims, {start + k: m for k, m in enumerate(matrices)}, sector=sector)

    # accessors
    @property
    def dims(self) -> dict[int, int]:
        return dict(self._dims)

    @property
    def diffs(self) -> dict[int, RatMatrix]:
        return dict(self._diffs)

    def dim(self, n: int) -> int:
        return self._dims.get(n, 0)

    def d(self, n: int) -> RatMatrix:
        m = self._diffs.get(n)
        if m is None:
            return RatMatrix.zeros(self.dim(n + 1), self.dim(n))
        return m

    @property
    def degrees(self) -> list[int]:
        return list(self._dims)

    def span(self) -> tuple[int, int] | None:
        if not self._dims:
            return None
        return min(self._dims), max(self._dims)

    def total_dim(self) -> int:
        return sum(self._dims.values())

    def is_zero(self) -> bool:
        return not self._dims

    def with_sector(self, sector) -> "BoundedComplex":
        return BoundedComplex(self._dims, self._diffs, sector=sector)

    def __eq__(self, other):
        if not isinstance(other, BoundedComplex):
            return NotImplemented
        return self._dims == other._dims and self._diffs == other._diffs

    def __hash__(self):
        return hash((tuple(self._dims.items()), tuple(self._diffs.items())))

    def __repr__(self):
        tag = f", sector={self.sector!r}" if self.sector is not None else ""
        return f"BoundedComplex(dims={self._dims}{tag})"


class ChainMap:
    """Degree-zero map of complexes given by components ``f^n``."""

    __slots__ = ("source", "target", "_comps")

    def __init__(self, source: BoundedComplex, target: BoundedComplex,
                 comps: Mapping[int, RatMatrix] | None = None):
        self.source = source
        self.target = target
        full = {}
        for n, m in (comps or {}).items():
            n = int(n)
            want = (target.dim(n), source.dim(n))
            if m.shape != want:
                raise DimensionError(
                    f"f^{n} has shape {m.rows}x{m.cols}, expected {want[0]}x{want[1]}")
            if want[0] and want[1]:
                full[n] = m
        self._comps = dict(sorted(full.items()))

    @classmethod
    def identity(cls, X: BoundedComplex) -> "ChainMap":
        return cls(X, X, {n: RatMatrix.identity(d) for n, d in X.dims.items()})

    @classmethod
    def zero(cls, X: BoundedComplex, Y: BoundedComplex) -> "ChainMap":
        return cls(X, Y)

    @property
    def comps(self) -> dict[int, RatMatrix]:
        return dict(self._comps)

    def comp(self, n: int) -> RatMatrix:
        m = self._comps.get(n)
        if m is None:
            return RatMatrix.zeros(self.target.dim(n), self.source.dim(n))
        return m

    def degrees(self) -> list[int]:
        return sorted(set(self.source.degrees) | set(self.target.degrees))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return compose_maps(self, other)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise DimensionError("adding maps with different endpoints")
        return ChainMap(self.source, self.target,
                        {n: self.comp(n) + other.comp(n) for n in self.degrees()})

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {n: m.scale(c) for n, m in self._comps.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._comps.values())

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(self.comp(n) == other.comp(n) for n in self.degrees())

    def __hash__(self):
        return hash((self.source, self.target))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def compose_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g o f``."""
    if f.target != g.source:
        raise DimensionError("composing maps whose endpoints do not match")
    return ChainMap(f.source, g.target,
                    {n: g.comp(n) @ f.comp(n) for n in f.source.degrees})


@dataclass(frozen=True)
class Violation:
    degree: int
    message: str
    shapes: tuple = ()

    def __str__(self):
        return f"degree {self.degree}: {self.message}"


def validate(X: BoundedComplex) -> Violation | None:
    """Return the first degree where ``d^{n+1} d^n != 0``, or None if X is a complex."""
    for n in X.degrees:
        if X.dim(n + 1) == 0:
            continue
        d0, d1 = X.d(n), X.d(n + 1)
        if d0.shape != (X.dim(n + 1), X.dim(n)) or d1.cols != X.dim(n + 1):
            return Violation(n, "differential shapes inconsistent", (d0.shape, d1.shape))
        if not (d1 @ d0).is_zero():
            return Violation(n, "d^{n+1} o d^n is not zero", (d1.shape, d0.shape))
    return None


def validate_map(f: ChainMap) -> Violation | None:
    """First degree where ``d_Y f^n != f^{n+1} d_X`` fails, or None."""
    for n in sorted(set(f.degrees()) | {k - 1 for k in f.degrees()}):
        lhs = f.target.d(n) @ f.comp(n)
        rhs = f.comp(n + 1) @ f.source.d(n)
        if lhs != rhs:
            return Violation(n, "chain map equation fails", (lhs.shape, rhs.shape))
    return None


def require_valid(X: BoundedComplex, what: str = "complex") -> BoundedComplex:
    v = validate(X)
    if v is not None:
        raise ValidationError(f"{what}: {v}", where=v.degree)
    return X


def shift(X: BoundedComplex, k: int) -> BoundedComplex:
    sign = -1 if k % 2 else 1
    return BoundedComplex({n - k: d for n, d in X.dims.items()},
                          {n - k: (m if sign == 1 else -m) for n, m in X.diffs.items()},
                          sector=X.sector)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    """``f[k]`` with components ``f[k]^n = f^{n+k}`` (no sign)."""
    return ChainMap(shift(f.source, k), shift(f.target, k),
                    {n - k: m for n, m in f.comps.items()})


def direct_sum(X: BoundedComplex, Y: BoundedComplex) -> BoundedComplex:
    degs = sorted(set(X.degrees) | set(Y.degrees))
    dims = {n: X.dim(n) + Y.dim(n) for n in degs}
    diffs = {}
    for n in degs:
        r, c = dims.get(n + 1, 0), dims[n]
        diffs[n] = assemble(r, c, [(0, 0, X.d(n)), (X.dim(n + 1), X.dim(n), Y.d(n))])
    sector = X.sector if X.sector == Y.sector else None
    return BoundedComplex(dims, diffs, sector=sector)


def direct_sum_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    src, tgt = direct_sum(f.source, g.source), direct_sum(f.target, g.target)
    comps = {}
    for n in src.degrees:
        comps[n] = assemble(tgt.dim(n), src.dim(n),
                            [(0, 0, f.comp(n)), (f.target.dim(n), f.source.dim(n), g.comp(n))])
    return ChainMap(src, tgt, comps)


@dataclass
class Triangle:
    """``first -> second -> third -> first[1]``.

    Distinguished by construction: either ``third`` is literally the cone of
    ``map_a`` with the canonical inclusion/projection (``witness == "cone"``),
    or ``comparison`` holds an explicit quasi-isomorphism from ``third`` to
    that cone.
    """
    first: BoundedComplex
    second: BoundedComplex
    third: BoundedComplex
    map_a: ChainMap
    map_b: ChainMap
    map_c: ChainMap
    witness: str = "cone"
    comparison: ChainMap | None = None


def cone(f: ChainMap) -> tuple[BoundedComplex, Triangle]:
    X, Y = f.source, f.target
    degs = sorted(set(n - 1 for n in X.degrees) | set(Y.degrees))
    dims = {n: X.dim(n + 1) + Y.dim(n) for n in degs}
    diffs = {}
    for n in degs:
        xa, xb = X.dim(n + 1), X.dim(n + 2)
        diffs[n] = assemble(xb + Y.dim(n + 1), xa + Y.dim(n), [
            (0, 0, -X.d(n + 1)),
            (xb, 0, f.comp(n + 1)),
            (xb, xa, Y.d(n)),
        ])
    sector = Y.sector if Y.sector is not None else X.sector
    C = BoundedComplex(dims, diffs, sector=sector)
    incl = ChainMap(Y, C, {n: assemble(C.dim(n), Y.dim(n),
                                       [(X.dim(n + 1), 0, RatMatrix.identity(Y.dim(n)))])
                           for n in Y.degrees})
    X1 = shift(X, 1)
    proj = ChainMap(C, X1, {n: assemble(X1.dim(n), C.dim(n),
                                        [(0, 0, RatMatrix.identity(X.dim(n + 1)))])
                            for n in C.degrees})
    return C, Triangle(X, Y, C, f, incl, proj, witness="cone")


def cone_null_homotopy(tri: Triangle) -> dict[int, RatMatrix]:
    """Homotopy ``h^n : X^n -> C^{n-1}`` with ``b o a = d h + h d`` for a cone triangle."""
    X, C = tri.first, tri.third
    return {n: assemble(C.dim(n - 1), X.dim(n), [(0, 0, RatMatrix.identity(X.dim(n)))])
            for n in X.degrees}


def is_homotopy(f: ChainMap, h: Mapping[int, RatMatrix]) -> bool:
    """Check ``f^n = d_Y^{n-1} h^n + h^{n+1} d_X^n`` in every degree."""
    X, Y = f.source, f.target

    def hh(n):
        m = h.get(n)
        return m if m is not None else RatMatrix.zeros(Y.dim(n - 1), X.dim(n))

    for n in sorted(set(X.degrees) | set(Y.degrees)):
        if f.comp(n) != Y.d(n - 1) @ hh(n) + hh(n + 1) @ X.d(n):
            return False
    return True


def homology_dims(X: BoundedComplex) -> dict[int, int]:
    out = {}
    for n in X.degrees:
        h = X.dim(n) - rank(X.d(n)) - rank(X.d(n - 1))
        if h:
            out[n] = h
    return out


def euler_characteristic(X: BoundedComplex) -> int:
    return sum((-1) ** (n % 2) * h for n, h in homology_dims(X).items())


def is_acyclic(X: BoundedComplex) -> bool:
    return not homology_dims(X)


def tensor_layout(K: BoundedComplex, X: BoundedComplex) -> dict[int, list[tuple[int, int, int]]]:
    """For each total degree n, the blocks ``(p, q, offset)`` of ``(K (x) X)^n``."""
    layout: dict[int, list] = {}
    for p in K.degrees:
        for q in X.degrees:
            layout.setdefault(p + q, []).append((p, q))
    out = {}
    for n in sorted(layout):
        off, blocks = 0, []
        for p, q in sorted(layout[n]):
            blocks.append((p, q, off))
            off += K.dim(p) * X.dim(q)
        out[n] = blocks
    return out


def tensor_total(K: BoundedComplex, X: BoundedComplex) -> BoundedComplex:
    """Total complex of the bicomplex ``K (x) X`` (Koszul sign on the X-differential)."""
    layout = tensor_layout(K, X)
    dims = {n: sum(K.dim(p) * X.dim(q) for p, q, _ in blocks) for n, blocks in layout.items()}
    diffs = {}
    for n, blocks in layout.items():
        if n + 1 not in layout:
            continue
        tgt_off = {(p, q): off for p, q, off in layout[n + 1]}
        pieces = []
        for p, q, off in blocks:
            if (p + 1, q) in tgt_off:
                pieces.append(kron_entries(K.d(p), RatMatrix.identity(X.dim(q)),
                                           tgt_off[(p + 1, q)], off))
            if (p, q + 1) in tgt_off:
                pieces.append(kron_entries(RatMatrix.identity(K.dim(p)), X.d(q),
                                           tgt_off[(p, q + 1)], off, -1 if p % 2 else 1))
        diffs[n] = sparse_matrix(dims[n + 1], dims[n], pieces)
    return BoundedComplex(dims, diffs)


def tensor_map(K: BoundedComplex, f: ChainMap) -> ChainMap:
    """``id_K (x) f``."""
    src, tgt = tensor_total(K, f.source), tensor_total(K, f.target)
    ls, lt = tensor_layout(K, f.source), tensor_layout(K, f.target)
    comps = {}
    for n, blocks in ls.items():
        if n not in lt:
            continue
        toff = {(p, q): off for p, q, off in lt[n]}
        pieces = []
        for p, q, off in blocks:
            if (p, q) in toff:
                pieces.append(kron_entries(RatMatrix.identity(K.dim(p)), f.comp(q),
                                           toff[(p, q)], off))
        comps[n] = sparse_matrix(tgt.dim(n), src.dim(n), pieces)
    return ChainMap(src, tgt, comps)


class HomologyBasis:
    """Chosen cohomology representatives of a complex, degree by degree.

    Cycles in degree n are coordinatised by the free variables of the rref
    of ``d^n``.  In those coordinates the boundaries are just the free rows
    of ``d^{n-1}``; row-reducing their transpose splits the coordinates into
    pivot positions (spanned by boundaries modulo the rest) and the
    remaining positions, whose kernel vectors are the representatives.  The
    same reduction yields a projection ``X^n -> H^n`` that kills boundaries
    and is the identity on representatives.
    """

    def __init__(self, X: BoundedComplex):
        self.complex = X
        self.reps: dict[int, RatMatrix] = {}
        self._proj: dict[int, RatMatrix] = {}
        pivots: dict[int, list[int]] = {}
        for n in sorted(X.degrees):
            R, piv = rref(X.d(n))
            pivots[n] = piv
            Z = kernel_from_rref(R, piv, X.dim(n))
            pset = set(piv)
            free = [j for j in range(X.dim(n)) if j not in pset]
            # the pivot columns of d^{n-1} already span its image
            prev = pivots[n - 1] if n - 1 in pivots else rref(X.d(n - 1))[1]
            B = select_rows(select_columns(X.d(n - 1), prev), free)
            R2, bpiv = rref(B.T)
            bset = set(bpiv)
            rest = [a for a in range(len(free)) if a not in bset]
            self.reps[n] = select_columns(Z, rest)
            self._proj[n] = _projection(R2, bpiv, rest, free, X.dim(n))

    def dim(self, n: int) -> int:
        r = self.reps.get(n)
        return r.cols if r is not None else 0

    def dims(self) -> dict[int, int]:
        return {n: r.cols for n, r in self.reps.items() if r.cols}

    def rep(self, n: int) -> RatMatrix:
        r = self.reps.get(n)
        return r if r is not None else RatMatrix.zeros(self.complex.dim(n), 0)

    def projection(self, n: int) -> RatMatrix:
        p = self._proj.get(n)
        return p if p is not None else RatMatrix.zeros(0, self.complex.dim(n))

    def coords(self, n: int, V: RatMatrix) -> RatMatrix:
        """Cohomology coordinates of the cycle columns of V (degree n)."""
        if n not in self._proj:
            return RatMatrix.zeros(0, V.cols)
        if not (self.complex.d(n) @ V).is_zero():
            raise ValidationError(f"vector in degree {n} is not a cycle", where=n)
        return self._proj[n] @ V


def _projection(R2: RatMatrix, bpiv, rest, free, dim) -> RatMatrix:
    """``c -> c[rest] - R2[:, rest]^T c[bpiv]`` precomposed with ``v -> v[free]``."""
    entries = []
    for a, col in enumerate(rest):
        entries.append((a, free[col], 1))
        for s, p in enumerate(bpiv):
            v = R2._m[s, col]
            if v:
                entries.append((a, free[p], -v))
    return RatMatrix.from_triplets(len(rest), dim, entries)


def induced_on_homology(f: ChainMap, hs: HomologyBasis | None = None,
                        ht: HomologyBasis | None = None) -> dict[int, RatMatrix]:
    """Matrices of ``H^n(f)`` in the chosen representative bases."""
    hs = hs or HomologyBasis(f.source)
    ht = ht or HomologyBasis(f.target)
    out = {}
    for n in sorted(set(hs.dims()) | set(ht.dims())):
        img = f.comp(n) @ hs.rep(n)
        out[n] = ht.coords(n, img) if ht.dim(n) else RatMatrix.zeros(0, hs.dim(n))
    return out


def is_quasi_iso(f: ChainMap) -> bool:
    hs, ht = HomologyBasis(f.source), HomologyBasis(f.target)
    if hs.dims() != ht.dims():
        return False
    for n, m in induced_on_homology(f, hs, ht).items():
        if rank(m) != m.rows:
            return False
    return True


def homology_complex(X: BoundedComplex) -> BoundedComplex:
    """The cohomology of X as a complex with zero differential."""
    return BoundedComplex(homology_dims(X), sector=X.sector)


def homology_retraction(X: BoundedComplex, hb: HomologyBasis | None = None):
    """Chain maps ``X -> H(X)`` and ``H(X) -> X``, both quasi-isomorphisms."""
    hb = hb or HomologyBasis(X)
    H = BoundedComplex(hb.dims(), sector=X.sector)
    incl = ChainMap(H, X, {n: hb.rep(n) for n in H.degrees})
    proj = {n: hb.projection(n) for n in H.degrees}
    return ChainMap(X, H, proj), incl


def comparison_map(X: BoundedComplex, Y: BoundedComplex) -> ChainMap | None:
    """An explicit quasi-isomorphism X -> Y, or None when the homologies differ."""
    if homology_dims(X) != homology_dims(Y):
        return None
    to_h, _ = homology_retraction(X)
    _, from_h = homology_retraction(Y)
    mid = ChainMap(to_h.target, from_h.source,
                   {n: RatMatrix.identity(d) for n, d in to_h.target.dims.items()})
    return compose_maps(from_h, compose_maps(mid, to_h))


def hom_classes_dim(X: BoundedComplex, Y: BoundedComplex) -> int:
    """Dimension of chain maps X -> Y modulo null-homotopic ones.

    Chain maps are the solutions of ``d_Y f^n - f^{n+1} d_X = 0``; the
    null-homotopic ones are the image of ``h -> d_Y h + h d_X``.  Both
    systems are written with column-major vectorisation of the components.
    """
    degs = sorted(set(X.degrees) | set(Y.degrees))
    # unknowns f^n in Hom(X^n, Y^n)
    foff, fsize = {}, 0
    for n in degs:
        foff[n] = fsize
        fsize += X.dim(n) * Y.dim(n)
    # homotopies h^n in Hom(X^n, Y^{n-1})
    hoff, hsize = {}, 0
    for n in degs:
        hoff[n] = hsize
        hsize += X.dim(n) * Y.dim(n - 1)
    # equations live in Hom(X^n, Y^{n+1})
    eoff, esize = {}, 0
    for n in degs:
        eoff[n] = esize
        esize += X.dim(n) * Y.dim(n + 1)

    eq_pieces = []
    for n in degs:
        # vec(A F) = (I (x) A) vec(F),  vec(F B) = (B^T (x) I) vec(F)
        eq_pieces.append((eoff[n], foff[n], kron(RatMatrix.identity(X.dim(n)), Y.d(n))))
        if n + 1 in foff:
            eq_pieces.append((eoff[n], foff[n + 1],
                              -kron(X.d(n).T, RatMatrix.identity(Y.dim(n + 1)))))
    E = assemble(esize, fsize, eq_pieces)

    nh_pieces = []
    for n in degs:
        nh_pieces.append((foff[n], hoff[n], kron(RatMatrix.identity(X.dim(n)), Y.d(n - 1))))
        if n + 1 in hoff:
            nh_pieces.append((foff[n], hoff[n + 1],
                              kron(X.d(n).T, RatMatrix.identity(Y.dim(n)))))
    N = assemble(fsize, hsize, nh_pieces)
    return fsize - rank(E) - rank(N)
