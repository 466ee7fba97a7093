"""Mediated transport data and the interaction package they produce.

Node indices in this module are 1-based, matching the channel labels
``(i, j)`` used in reports.  Channel ``(i, j)`` transports the source probe
``L_i`` through ``A_ij = Psi_j o Phi_i`` into sector j and pairs it with
``L_j``:  ``H_ij = RHom(A_ij(L_i), L_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cxcore import (BoundedComplex, ChainMap, HomologyBasis, comparison_map,
                     homology_dims, is_quasi_iso, validate)
from .errors import ValidationError, WiringError
from .homcx import (LaurentPoly, evaluate, hom_complex, postcompose_matrix,
                    precompose_matrix)
from .ratlin import RatMatrix
from .transport import TransportKernel, apply, apply_to_map, compose


@dataclass(frozen=True)
class StatePackage:
    """Nodewise state data: vertices, their basis labels, and the coefficient vector."""
    vertices: tuple[str, ...]
    basis_labels: tuple[str, ...]
    c_sigma: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        object.__setattr__(self, "c_sigma", tuple(Fraction(c) for c in self.c_sigma))
        if not (len(self.vertices) == len(self.basis_labels) == len(self.c_sigma)):
            raise ValidationError("state package: vertices, basis labels and c_sigma "
                                  "must have the same length", where="state")


@dataclass(frozen=True)
class Diagnostic:
    kind: str      # "validation" | "wiring" | "compatibility" | "parse"
    field: str
    message: str

    def __str__(self):
        return f"[{self.kind}] {self.field}: {self.message}"


@dataclass(eq=False)
class MTTDatum:
    nodes: tuple[str, ...]
    phi: tuple[TransportKernel, ...]
    psi: tuple[TransportKernel, ...]
    probes: tuple[BoundedComplex, ...]
    shadow_kernels: tuple[TransportKernel, ...]
    shadow_objects: tuple[BoundedComplex, ...]
    support: tuple[tuple[int, ...], ...]
    state: StatePackage
    bulk_sector: str = "bulk"
    local_sectors: tuple[str, ...] | None = None
    shadow_sector: str = "shadow"
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.nodes = tuple(self.nodes)
        if self.local_sectors is None:
            self.local_sectors = self.nodes
        self.local_sectors = tuple(self.local_sectors)
        self.phi, self.psi = tuple(self.phi), tuple(self.psi)
        self.shadow_kernels = tuple(self.shadow_kernels)
        self.support = tuple(tuple(int(b) for b in row) for row in self.support)
        self.probes = tuple(L.with_sector(s) for L, s in zip(self.probes, self.local_sectors))
        self.shadow_objects = tuple(Q.with_sector(self.shadow_sector)
                                    for Q in self.shadow_objects)

    @property
    def r(self) -> int:
        return len(self.nodes)

    def channels(self):
        return [(i, j) for i in range(1, self.r + 1) for j in range(1, self.r + 1)]

    def _idx(self, i: int) -> int:
        if not 1 <= i <= self.r:
            raise IndexError(f"node index {i} outside 1..{self.r}")
        return i - 1

    def probe(self, i: int) -> BoundedComplex:
        return self.probes[self._idx(i)]

    def sector(self, i: int) -> str:
        return self.local_sectors[self._idx(i)]


def datum_diagnostics(D: MTTDatum) -> list[Diagnostic]:
    """Every problem with D: shapes, d^2 = 0, wiring, and probe/shadow compatibility."""
    out: list[Diagnostic] = []
    r = D.r
    for name in ("phi", "psi", "probes", "shadow_kernels", "shadow_objects"):
        if len(getattr(D, name)) != r:
            out.append(Diagnostic("validation", name, f"expected {r} entries"))
    if len(D.local_sectors) != r:
        out.append(Diagnostic("validation", "local_sectors", f"expected {r} entries"))
    if len(D.support) != r or any(len(row) != r for row in D.support):
        out.append(Diagnostic("validation", "support", f"expected a {r}x{r} matrix"))
    elif any(b not in (0, 1) for row in D.support for b in row):
        out.append(Diagnostic("validation", "support", "entries must be 0 or 1"))
    if len(D.state.vertices) != r:
        out.append(Diagnostic("validation", "state", f"expected {r} vertices"))
    if out:
        return out

    def check_cx(X, where):
        v = validate(X)
        if v is not None:
            out.append(Diagnostic("validation", where, str(v)))
            return False
        return True

    kernels_ok = True
    for k in range(r):
        node, sec = D.nodes[k], D.local_sectors[k]
        wants = [
            (f"phi[{node}]", D.phi[k], sec, D.bulk_sector),
            (f"psi[{node}]", D.psi[k], D.bulk_sector, sec),
            (f"shadow_kernels[{node}]", D.shadow_kernels[k], sec, D.shadow_sector),
        ]
        for where, K, src, tgt in wants:
            kernels_ok &= check_cx(K.kernel, where)
            if (K.source, K.target) != (src, tgt):
                out.append(Diagnostic(
                    "wiring", where,
                    f"kernel maps {K.source!r} -> {K.target!r}, expected {src!r} -> {tgt!r}"))
                kernels_ok = False
    objects_ok = True
    for k in range(r):
        objects_ok &= check_cx(D.probes[k], f"probes[{D.nodes[k]}]")
        objects_ok &= check_cx(D.shadow_objects[k], f"shadow_objects[{D.nodes[k]}]")
    if kernels_ok and objects_ok:
        for k in range(r):
            shadow = apply(D.shadow_kernels[k], D.probes[k])
            f = comparison_map(shadow, D.shadow_objects[k])
            if f is None or not is_quasi_iso(f):
                out.append(Diagnostic(
                    "compatibility", f"shadow_objects[{D.nodes[k]}]",
                    f"probe of node {D.nodes[k]!r} is not compatible with its shadow object: "
                    f"H(Sh(L)) = {homology_dims(shadow)} but H(Q) = "
                    f"{homology_dims(D.shadow_objects[k])}"))
    return out


def check_datum(D: MTTDatum) -> MTTDatum:
    """Raise on the first class of problem found; all diagnostics are attached."""
    diags = datum_diagnostics(D)
    if diags:
        first = diags[0]
        cls = WiringError if first.kind == "wiring" else ValidationError
        raise cls("; ".join(str(d) for d in diags), where=first.field, diagnostics=diags)
    return D


def channel_kernel(D: MTTDatum, i: int, j: int) -> TransportKernel:
    """``A_ij = Psi_j o Phi_i`` as a single kernel."""
    key = ("kernel", i, j)
    if key not in D._cache:
        D._cache[key] = compose(D.psi[D._idx(j)], D.phi[D._idx(i)])
    return D._cache[key]


def transported_probe(D: MTTDatum, i: int, j: int) -> BoundedComplex:
    key = ("probe", i, j)
    if key not in D._cache:
        D._cache[key] = apply(channel_kernel(D, i, j), D.probe(i))
    return D._cache[key]


def interaction_complex(D: MTTDatum, i: int, j: int) -> BoundedComplex:
    return hom_complex(transported_probe(D, i, j), D.probe(j))


def interaction_polynomial(D: MTTDatum, i: int, j: int) -> LaurentPoly:
    key = ("P", i, j)
    if key not in D._cache:
        D._cache[key] = LaurentPoly(homology_dims(interaction_complex(D, i, j)))
    return D._cache[key]


@dataclass(frozen=True)
class GradedInteractionMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.entries[i - 1][j - 1]

    def nonvanishing(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(not P.is_zero()) for P in row) for row in self.entries)

    def specializations(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        return tuple(tuple((evaluate(P, 1), evaluate(P, -1)) for P in row)
                     for row in self.entries)

    def asymmetric_pairs(self) -> list[tuple[int, int]]:
        n = self.size
        return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
                if self.entry(i, j) != self.entry(j, i)]


def graded_matrix(D: MTTDatum) -> GradedInteractionMatrix:
    return GradedInteractionMatrix(tuple(
        tuple(interaction_polynomial(D, i, j) for j in range(1, D.r + 1))
        for i in range(1, D.r + 1)))


@dataclass(frozen=True)
class InheritedPackage:
    """``(state, support, graded matrix)`` plus the q = +1 / q = -1 specialisations."""
    state: StatePackage
    support: tuple[tuple[int, ...], ...]
    graded: GradedInteractionMatrix
    specializations: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def assemble(cls, state, support, graded):
        return cls(state, tuple(tuple(row) for row in support), graded,
                   graded.specializations())

    def nonvanishing(self):
        return self.graded.nonvanishing()


def inherited_package(D: MTTDatum) -> InheritedPackage:
    return InheritedPackage.assemble(D.state, D.support, graded_matrix(D))


@dataclass
class ProfunctorMaps:
    """Degreewise matrices of the maps induced on interaction cohomology.

    ``contravariant[m] : H^m T(X, Y) -> H^m T(X', Y)`` from ``f : X' -> X``;
    ``covariant[m] : H^m T(X, Y) -> H^m T(X, Y')`` from ``g : Y -> Y'``.
    """
    contravariant: dict[int, RatMatrix]
    covariant: dict[int, RatMatrix]


def _induced(pre_or_post, src_cx, tgt_cx, hs=None, ht=None):
    hs = hs or HomologyBasis(src_cx)
    ht = ht or HomologyBasis(tgt_cx)
    out = {}
    for m in sorted(set(hs.dims()) | set(ht.dims())):
        img = pre_or_post(m) @ hs.rep(m)
        out[m] = ht.coords(m, img)
    return out


def induced_profunctor_maps(D: MTTDatum, i: int, j: int,
                            f: ChainMap | None = None,
                            g: ChainMap | None = None) -> ProfunctorMaps:
    """Functoriality of ``T_ij(X, Y) = RHom(A_ij X, Y)`` in both variables.

    ``f : X' -> X`` lives in sector i and ``g : Y -> Y'`` in sector j; either
    defaults to the identity of the corresponding probe.  The pair at which
    both maps start is ``(X, Y) = (f.target, g.source)``.
    """
    si, sj = D.sector(i), D.sector(j)
    f = f if f is not None else ChainMap.identity(D.probe(i))
    g = g if g is not None else ChainMap.identity(D.probe(j))
    for obj, sec in ((f.source, si), (f.target, si), (g.source, sj), (g.target, sj)):
        if obj.sector is not None and obj.sector != sec:
            raise WiringError(f"map endpoint lives in {obj.sector!r}, expected {sec!r}")
    K = channel_kernel(D, i, j)
    Af = apply_to_map(K, ChainMap(f.source.with_sector(si), f.target.with_sector(si), f.comps))
    AX, AX1 = Af.target, Af.source
    Y, Y1 = g.source, g.target
    base = hom_complex(AX, Y)
    hb = HomologyBasis(base)
    contra = _induced(lambda m: precompose_matrix(Af, Y, m), base, hom_complex(AX1, Y), hs=hb)
    co = _induced(lambda m: postcompose_matrix(g, AX, m), base, hom_complex(AX, Y1), hs=hb)
    return ProfunctorMaps(contra, co)
