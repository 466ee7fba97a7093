"""Transport functors realised as tensor kernels.

A kernel K acts by ``X -> Tot(K (x) X)`` (kernel on the left).  Tensoring
with a bounded complex over a field is exact, and the isomorphisms that make
this visible (cone commutation, associativity, shift commutation) are built
here as explicit signed permutation matrices so they can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cxcore import (BoundedComplex, ChainMap, compose_maps, cone, shift,
                     tensor_layout, tensor_map, tensor_total, validate,
                     validate_map)
from .errors import WiringError
from .ratlin import RatMatrix, rank


@dataclass(frozen=True)
class TransportKernel:
    kernel: BoundedComplex
    label: str
    source: str
    target: str

    @classmethod
    def unit(cls, label: str, source: str, target: str) -> "TransportKernel":
        return cls(BoundedComplex.point(1, 0), label, source, target)

    @classmethod
    def shifting(cls, k: int, label: str, source: str, target: str, mult: int = 1):
        """Kernel ``Q^mult`` in degree ``-k``; acts as ``X -> X[k]^{(+) mult}``."""
        return cls(BoundedComplex.point(mult, -k), label, source, target)


def _check_sector(K: TransportKernel, X: BoundedComplex, what="object"):
    if X.sector is not None and X.sector != K.source:
        raise WiringError(
            f"{K.label} expects an {what} in sector {K.source!r}, got {X.sector!r}")


def apply(K: TransportKernel, X: BoundedComplex) -> BoundedComplex:
    _check_sector(K, X)
    return tensor_total(K.kernel, X).with_sector(K.target)


def apply_to_map(K: TransportKernel, f: ChainMap) -> ChainMap:
    _check_sector(K, f.source, "map")
    _check_sector(K, f.target, "map")
    g = tensor_map(K.kernel, f)
    return ChainMap(g.source.with_sector(K.target), g.target.with_sector(K.target), g.comps)


def compose(K2: TransportKernel, K1: TransportKernel) -> TransportKernel:
    """``K2 o K1`` (apply K1 first)."""
    if K1.target != K2.source:
        raise WiringError(
            f"cannot compose {K2.label} (from {K2.source!r}) after {K1.label} (into {K1.target!r})")
    return TransportKernel(tensor_total(K2.kernel, K1.kernel), f"{K2.label}.{K1.label}",
                           K1.source, K2.target)


def _signed_perm(rows: int, cols: int, entries) -> RatMatrix:
    return RatMatrix.from_triplets(rows, cols, entries)


def associator(K2: TransportKernel, K1: TransportKernel, X: BoundedComplex) -> ChainMap:
    """Chain isomorphism ``(K2 (x) K1) (x) X -> K2 (x) (K1 (x) X)``.

    The Koszul signs agree on both sides, so this is a plain permutation
    ``(k2 (x) k1) (x) x -> k2 (x) (k1 (x) x)``.
    """
    A, B, C = K2.kernel, K1.kernel, X
    AB = tensor_total(A, B)
    BC = tensor_total(B, C)
    left = tensor_total(AB, C)
    right = tensor_total(A, BC)
    lab = {(p, q): off for n, bl in tensor_layout(A, B).items() for p, q, off in bl}
    lbc = {(p, q): off for n, bl in tensor_layout(B, C).items() for p, q, off in bl}
    lleft = {(p, q): off for n, bl in tensor_layout(AB, C).items() for p, q, off in bl}
    lright = {(p, q): off for n, bl in tensor_layout(A, BC).items() for p, q, off in bl}
    comps = {}
    for n in left.degrees:
        ents = []
        for a in A.degrees:
            for b in B.degrees:
                c = n - a - b
                if C.dim(c) == 0:
                    continue
                da, db, dc = A.dim(a), B.dim(b), C.dim(c)
                dbc = BC.dim(b + c)
                for ia in range(da):
                    for ib in range(db):
                        lrow = lab[(a, b)] + ia * db + ib
                        rinner = lbc[(b, c)] + ib * dc
                        for ic in range(dc):
                            src = lleft[(a + b, c)] + lrow * dc + ic
                            tgt = lright[(a, b + c)] + ia * dbc + rinner + ic
                            ents.append((tgt, src, 1))
        comps[n] = _signed_perm(right.dim(n), left.dim(n), ents)
    src = left.with_sector(K2.target)
    return ChainMap(src, right.with_sector(K2.target), comps)


def shift_comparison(K: BoundedComplex, X: BoundedComplex) -> ChainMap:
    """Chain isomorphism ``K (x) (X[1]) -> (K (x) X)[1]``: sign ``(-1)^p`` on ``K^p`` blocks."""
    X1 = shift(X, 1)
    src = tensor_total(K, X1)
    tgt = shift(tensor_total(K, X), 1)
    comps = {}
    for n, blocks in tensor_layout(K, X1).items():
        ents = []
        for p, q, off in blocks:
            s = -1 if p % 2 else 1
            for k in range(K.dim(p) * X1.dim(q)):
                ents.append((off + k, off + k, s))
        comps[n] = _signed_perm(tgt.dim(n), src.dim(n), ents)
    return ChainMap(src, tgt, comps)


@dataclass
class ExactnessCertificate:
    """Outcome of checking ``cone(K f) ~= K (x) cone(f)`` for one kernel and map."""
    ok: bool
    kernel_span: tuple | None
    map_span: tuple | None
    cone_span: tuple | None
    iso: ChainMap | None = None
    first_failure: int | None = None
    reason: str = ""
    triangle_compatible: bool = False


def cone_comparison(K: BoundedComplex, f: ChainMap) -> ChainMap:
    """Candidate isomorphism ``cone(id_K (x) f) -> K (x) cone(f)``.

    ``K^p (x) X`` blocks pick up the sign ``(-1)^p``; ``K^p (x) Y`` blocks map
    identically.
    """
    X, Y = f.source, f.target
    Kf = tensor_map(K, f)
    src, _ = cone(Kf)
    C, _ = cone(f)
    tgt = tensor_total(K, C)
    lx = {(p, q): off for bl in tensor_layout(K, X).values() for p, q, off in bl}
    ly = {(p, q): off for bl in tensor_layout(K, Y).values() for p, q, off in bl}
    lc = {(p, q): off for bl in tensor_layout(K, C).values() for p, q, off in bl}
    comps = {}
    for n in src.degrees:
        ents = []
        kx_dim = Kf.source.dim(n + 1)
        for p in K.degrees:
            q = n - p
            if (p, q) not in lc:
                continue
            dc = C.dim(q)
            s = -1 if p % 2 else 1
            dx, dy = X.dim(q + 1), Y.dim(q)
            for a in range(K.dim(p)):
                for b in range(dx):
                    ents.append((lc[(p, q)] + a * dc + b, lx[(p, q + 1)] + a * dx + b, s))
                for b in range(dy):
                    ents.append((lc[(p, q)] + a * dc + dx + b, kx_dim + ly[(p, q)] + a * dy + b, 1))
        comps[n] = _signed_perm(tgt.dim(n), src.dim(n), ents)
    return ChainMap(src, tgt, comps)


def certify_exactness(K: TransportKernel, f: ChainMap) -> ExactnessCertificate:
    """Exhibit and check the isomorphism ``cone(K f) -> K (x) cone(f)``.

    Besides the chain-map and invertibility checks, the isomorphism must
    identify the two triangles: it commutes with the inclusions of ``K Y``
    and, after ``K (x) X[1] ~= (K (x) X)[1]``, with the projections.
    """
    _check_sector(K, f.source, "map")
    Kf = tensor_map(K.kernel, f)
    src, tri_src = cone(Kf)
    C, tri = cone(f)
    theta = cone_comparison(K.kernel, f)
    cert = ExactnessCertificate(False, K.kernel.span(), f.source.span() or f.target.span(),
                                C.span(), iso=theta)
    if validate(src) is not None or validate(theta.target) is not None:
        cert.reason = "cone is not a complex"
        return cert
    bad = validate_map(theta)
    if bad is not None:
        cert.first_failure = bad.degree
        cert.reason = "comparison is not a chain map (sign convention mismatch)"
        return cert
    for n in sorted(set(src.degrees) | set(theta.target.degrees)):
        m = theta.comp(n)
        if m.rows != m.cols or rank(m) != m.rows:
            cert.first_failure = n
            cert.reason = "comparison is not invertible"
            return cert
    K_incl = tensor_map(K.kernel, tri.map_b)
    K_proj = tensor_map(K.kernel, tri.map_c)
    sigma = shift_comparison(K.kernel, f.source)
    left = compose_maps(theta, tri_src.map_b)
    right_proj = compose_maps(sigma, compose_maps(K_proj, theta))
    incl_degs = set(K_incl.degrees()) | set(left.degrees())
    proj_degs = set(right_proj.degrees()) | set(tri_src.map_c.degrees())
    cert.triangle_compatible = (
        all(left.comp(n) == K_incl.comp(n) for n in incl_degs)
        and all(right_proj.comp(n) == tri_src.map_c.comp(n) for n in proj_degs))
    if not cert.triangle_compatible:
        cert.reason = "comparison does not identify the triangles"
        return cert
    cert.ok = True
    return cert
