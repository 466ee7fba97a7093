"""Verifiers for long exact sequences, triangle visibility and the bridge verdict."""

from __future__ import annotations

from dataclasses import dataclass

from .cxcore import (BoundedComplex, ChainMap, HomologyBasis, Triangle,
                     compose_maps, cone, hom_classes_dim, is_quasi_iso, shift)
from .errors import ValidationError, WiringError
from .homcx import (LaurentPoly, cochain_to_map, evaluate, hom_complex,
                    map_to_cochain, poincare, precompose_matrix, rhom_nonzero)
from .mtt import (MTTDatum, channel_kernel, interaction_polynomial,
                  transported_probe)
from .ratlin import RatMatrix, rank
from .transport import (ExactnessCertificate, apply, apply_to_map,
                        certify_exactness, shift_comparison)

LABELS = ("X''", "X", "X'")


@dataclass
class LESRecord:
    """The long exact sequence ``H^m T(X'',Y) -> H^m T(X,Y) -> H^m T(X',Y) -> H^{m+1} T(X'',Y)``.

    ``spaces[k] = (degree, label, dim)``; ``maps[k]`` goes from
    ``spaces[k]`` to ``spaces[k+1]``; ``exact_at[k]`` is the verdict at
    ``spaces[k]`` (including the zero maps at both ends).
    """
    channel: tuple[int, int]
    triangle: Triangle
    target: BoundedComplex
    spaces: list[tuple[int, str, int]]
    maps: list[RatMatrix]
    exact_at: list[bool]
    certificate: ExactnessCertificate | None = None

    @property
    def ok(self) -> bool:
        return all(self.exact_at) and (self.certificate is None or self.certificate.ok)

    def first_inexact(self) -> tuple[int, str] | None:
        for k, good in enumerate(self.exact_at):
            if not good:
                deg, lab, _ = self.spaces[k]
                return deg, lab
        return None


def _canonical_cone_triangle(T: Triangle) -> Triangle:
    """The cone triangle on ``T.map_a``, after checking T is (quasi-)equal to it."""
    C, tri = cone(T.map_a)
    if T.witness == "cone":
        if T.third != C or T.map_b != tri.map_b or T.map_c != tri.map_c:
            raise ValidationError("triangle claims to be a cone triangle but is not")
        return tri
    if T.comparison is None or T.comparison.target != C or not is_quasi_iso(T.comparison):
        raise ValidationError("triangle carries no valid comparison with the cone")
    return tri


def _in_sector(X: BoundedComplex, sector: str, what: str):
    if X.sector is not None and X.sector != sector:
        raise WiringError(f"{what} lives in {X.sector!r}, expected {sector!r}")
    return X.with_sector(sector)


def les_from_maps(H2: BoundedComplex, H1: BoundedComplex, H0: BoundedComplex,
                  alpha, beta, gamma):
    """Assemble the cohomology sequence of three Hom complexes.

    ``alpha(m)``, ``beta(m)``, ``gamma(m)`` give chain-level matrices
    ``H2^m -> H1^m``, ``H1^m -> H0^m`` and ``H0^m -> H2^{m+1}``.
    """
    bases = [HomologyBasis(H2), HomologyBasis(H1), HomologyBasis(H0)]
    degs = set()
    for hb in bases:
        degs |= set(hb.dims())
    spaces, maps = [], []
    if not degs:
        return spaces, maps
    lo, hi = min(degs), max(degs)
    for m in range(lo, hi + 1):
        for k, lab in enumerate(LABELS):
            spaces.append((m, lab, bases[k].dim(m)))
        maps.append(bases[1].coords(m, alpha(m) @ bases[0].rep(m)))
        maps.append(bases[2].coords(m, beta(m) @ bases[1].rep(m)))
        if m < hi:
            maps.append(bases[0].coords(m + 1, gamma(m) @ bases[2].rep(m)))
    return spaces, maps


def exactness_flags(spaces, maps) -> list[bool]:
    flags = []
    for k, (_, _, dim) in enumerate(spaces):
        incoming = maps[k - 1] if k > 0 else RatMatrix.zeros(dim, 0)
        outgoing = maps[k] if k < len(maps) else RatMatrix.zeros(0, dim)
        good = (outgoing @ incoming).is_zero() and rank(incoming) + rank(outgoing) == dim
        flags.append(good)
    return flags


def build_and_verify_les(D: MTTDatum, i: int, j: int, T: Triangle,
                         Y: BoundedComplex) -> LESRecord:
    """Transport T through ``A_ij``, apply ``Hom(-, Y)`` and check exactness everywhere."""
    si, sj = D.sector(i), D.sector(j)
    Y = _in_sector(Y, sj, "target object")
    for obj, what in ((T.first, "X'"), (T.second, "X"), (T.third, "X''")):
        _in_sector(obj, si, what)
    tri = _canonical_cone_triangle(T)
    a = ChainMap(tri.first.with_sector(si), tri.second.with_sector(si), tri.map_a.comps)
    K = channel_kernel(D, i, j)
    cert = certify_exactness(K, a)

    Ka = apply_to_map(K, a)
    Kb = apply_to_map(K, ChainMap(a.target, tri.third.with_sector(si), tri.map_b.comps))
    Kc = apply_to_map(K, ChainMap(tri.third.with_sector(si),
                                  shift(tri.first, 1).with_sector(si), tri.map_c.comps))
    sigma = shift_comparison(K.kernel, tri.first)
    conn = compose_maps(sigma, Kc)     # A(X'') -> A(X')[1]

    AX1, AX, AX2 = Ka.source, Ka.target, Kb.target
    H2, H1, H0 = hom_complex(AX2, Y), hom_complex(AX, Y), hom_complex(AX1, Y)
    spaces, maps = les_from_maps(
        H2, H1, H0,
        lambda m: precompose_matrix(Kb, Y, m),
        lambda m: precompose_matrix(Ka, Y, m),
        lambda m: precompose_matrix(conn, Y, m + 1))
    return LESRecord((i, j), T, Y, spaces, maps, exactness_flags(spaces, maps), cert)


def euler_additivity_check(D: MTTDatum, i: int, j: int, T: Triangle, Y: BoundedComplex) -> bool:
    """``chi T(X, Y) = chi T(X', Y) + chi T(X'', Y)`` with ``chi = P(-1)``."""
    K = channel_kernel(D, i, j)
    si, sj = D.sector(i), D.sector(j)
    Y = _in_sector(Y, sj, "target object")
    _canonical_cone_triangle(T)

    def chi(Z):
        return evaluate(poincare(apply(K, Z.with_sector(si)), Y), -1)

    return chi(T.second) == chi(T.first) + chi(T.third)


@dataclass
class VisibilityWitness:
    """A nonzero morphism between an object and a probe, sitting in a cone triangle.

    Right: ``u : X -> L`` with ``B -> X -> L -> B[1]``, ``B = cone(u)[-1]``.
    Left: ``v : L -> X`` with ``L -> X -> C -> L[1]``, ``C = cone(v)``.
    ``class_coords`` are the coordinates of the map's homotopy class in a
    basis of ``H^0 Hom``; a nonzero entry certifies the map is not
    null-homotopic.
    """
    kind: str
    obj: BoundedComplex
    probe: BoundedComplex
    map: ChainMap
    complement: BoundedComplex
    triangle: Triangle
    hom_dim: int
    class_coords: tuple
    probe_shift: int = 0

    @property
    def nonzero_certificate(self) -> str:
        return (f"homotopy class has coordinates {list(map(str, self.class_coords))} "
                f"in a basis of the {self.hom_dim}-dimensional H^0 Hom")


def _nonzero_class(A: BoundedComplex, B: BoundedComplex):
    """A chain map A -> B with nonzero homotopy class, its class coordinates, and dim H^0."""
    Hc = hom_complex(A, B)
    hb = HomologyBasis(Hc)
    if hb.dim(0) == 0:
        return None
    rep = hb.rep(0)
    f = cochain_to_map(A, B, rep.column(0))
    coords = hb.coords(0, map_to_cochain(f)).column(0)
    return f, coords, hb.dim(0)


def find_right_visibility(X: BoundedComplex, L: BoundedComplex,
                          shifts=(0,)) -> VisibilityWitness | None:
    """Search for ``u : X -> L[k]`` not null-homotopic, k over ``shifts`` in order."""
    for k in shifts:
        Lk = shift(L, k)
        if hom_classes_dim(X, Lk) == 0:
            continue
        found = _nonzero_class(X, Lk)
        if found is None:
            continue
        u, coords, hdim = found
        C, tri = cone(u)
        return VisibilityWitness("right", X, Lk, u, shift(C, -1), tri, hdim, coords, k)
    return None


def find_left_visibility(L: BoundedComplex, X: BoundedComplex,
                         shifts=(0,)) -> VisibilityWitness | None:
    """Search for ``v : L[k] -> X`` not null-homotopic.

    A left witness certifies ``RHom(L, X) != 0`` only; it says nothing about
    ``RHom(X, L)``.
    """
    for k in shifts:
        Lk = shift(L, k)
        if hom_classes_dim(Lk, X) == 0:
            continue
        found = _nonzero_class(Lk, X)
        if found is None:
            continue
        v, coords, hdim = found
        C, tri = cone(v)
        return VisibilityWitness("left", X, Lk, v, C, tri, hdim, coords, k)
    return None


def shadow_image(D: MTTDatum, i: int, j: int) -> BoundedComplex:
    return apply(D.shadow_kernels[j - 1], transported_probe(D, i, j))


def content_check(D: MTTDatum, i: int, j: int) -> tuple[int, int]:
    """``([RHom(Sh A_ij L_i, Q_j) != 0], [RHom(Q_j, Sh A_ij L_i) != 0])``."""
    S = shadow_image(D, i, j)
    Q = D.shadow_objects[j - 1]
    return int(rhom_nonzero(S, Q)), int(rhom_nonzero(Q, S))


def detector_check(D: MTTDatum, i: int, j: int) -> int:
    """``[RHom(A_ij(L_i), L_j) != 0]`` at the transported probe.

    The transported probe is rebuilt here by applying ``Phi_i`` and then
    ``Psi_j`` one after the other, rather than through the composed kernel
    used for ``P_ij``, so agreement with ``P_ij != 0`` is a real cross-check.
    """
    A = apply(D.psi[j - 1], apply(D.phi[i - 1], D.probe(i)))
    return int(rhom_nonzero(A, D.probe(j)))


@dataclass
class ChannelReport:
    channel: tuple[int, int]
    supported: int
    content_left_nonzero: int
    content_right_nonzero: int
    detector_holds_at_probe: int
    H_nonzero: int
    P: LaurentPoly
    bridge_consistent: int

    @property
    def content(self) -> int:
        return int(self.content_left_nonzero or self.content_right_nonzero)

    @property
    def w_tot(self) -> int:
        return evaluate(self.P, 1)

    @property
    def w_chi(self) -> int:
        return evaluate(self.P, -1)


def channel_report(D: MTTDatum, i: int, j: int) -> ChannelReport:
    P = interaction_polynomial(D, i, j)
    supported = D.support[i - 1][j - 1]
    cl, cr = content_check(D, i, j)
    det = detector_check(D, i, j)
    h = int(not P.is_zero())
    consistent = int((not supported) or not ((cl or cr) and det) or h)
    return ChannelReport((i, j), supported, cl, cr, det, h, P, consistent)


def bridge_verdict(D: MTTDatum) -> list[ChannelReport]:
    return [channel_report(D, i, j) for i, j in D.channels()]
