"""Toy-model generators, seeded random instances, and the semisimple oracle.

Every named generator checks its advertised interaction polynomial by
running the main pipeline before returning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cxcore import (BoundedComplex, ChainMap, cone, direct_sum, homology_dims,
                     validate)
from .errors import ValidationError
from .homcx import LaurentPoly, cochain_to_map, hom_complex, semisimple_pairing
from .mtt import MTTDatum, StatePackage, check_datum, interaction_polynomial
from .ratlin import RatMatrix, inverse, kernel_matrix
from .transport import TransportKernel, apply

BULK, SHADOW = "bulk", "shadow"


@dataclass(frozen=True)
class GeneratorSpec:
    name: str = "random"
    seed: int = 0
    max_dim: int = 3
    lo: int = -2
    hi: int = 2
    nodes: int = 2
    kernel_max_dim: int = 1
    kernel_lo: int = -1
    kernel_hi: int = 1

    def __post_init__(self):
        if self.max_dim < 1 or self.nodes < 1 or self.kernel_max_dim < 1:
            raise ValueError("generator caps must be positive")
        if self.lo > self.hi or self.kernel_lo > self.kernel_hi:
            raise ValueError("empty degree window")


# ---------------------------------------------------------------- random pieces

def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> RatMatrix:
    """Integer matrix with determinant +-1 (so its inverse is integral too)."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return RatMatrix.zeros(0, 0)
    rng.shuffle(rows)
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        a, b = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        rows[a] = [x + c * y for x, y in zip(rows[a], rows[b])]
    if rng.random() < 0.5:
        rows[0] = [-x for x in rows[0]]
    return RatMatrix.from_rows(rows, n)


def complex_from_ranks(rng: random.Random, hdims: dict[int, int], ranks: dict[int, int],
                       conjugate: bool = True, sector=None) -> BoundedComplex:
    """Complex with prescribed homology and differential ranks.

    In normal form ``X^n = B^n (+) H^n (+) C^n`` with ``d^n`` mapping ``C^n``
    identically onto ``B^{n+1}``; then each degree is conjugated by a random
    unimodular matrix.  d^2 = 0 holds by construction.
    """
    degs = set(hdims) | set(ranks) | {n + 1 for n in ranks}
    dims = {n: ranks.get(n - 1, 0) + hdims.get(n, 0) + ranks.get(n, 0) for n in degs}
    diffs = {}
    for n in sorted(degs):
        r = ranks.get(n, 0)
        if not r:
            continue
        rows, cols = dims[n + 1], dims[n]
        flat = [0] * (rows * cols)
        for k in range(r):
            flat[k * cols + (cols - r + k)] = 1
        diffs[n] = RatMatrix(rows, cols, flat)
    if conjugate:
        g = {n: random_unimodular(rng, d) for n, d in dims.items()}
        ginv = {n: inverse(m) for n, m in g.items()}
        diffs = {n: g[n + 1] @ m @ ginv[n] for n, m in diffs.items()}
    X = BoundedComplex(dims, diffs, sector=sector)
    assert validate(X) is None
    return X


def random_complex(rng: random.Random, max_dim: int, lo: int, hi: int,
                   sector=None, conjugate: bool = True) -> BoundedComplex:
    """Random complex with every ``dim X^n <= max_dim`` supported in ``[lo, hi]``."""
    dims = {n: rng.randint(0, max_dim) for n in range(lo, hi + 1)}
    ranks, prev = {}, 0
    for n in range(lo, hi):
        cap = min(dims[n] - prev, dims[n + 1])
        r = rng.randint(0, cap) if cap > 0 else 0
        if r:
            ranks[n] = r
        prev = r
    hd = {n: dims[n] - ranks.get(n - 1, 0) - ranks.get(n, 0) for n in dims}
    return complex_from_ranks(rng, {n: h for n, h in hd.items() if h}, ranks,
                              conjugate=conjugate, sector=sector)


def random_complex_with_homology(rng: random.Random, hdims: dict[int, int],
                                 extra: int = 1, sector=None) -> BoundedComplex:
    """Random complex with the given homology plus up to ``extra`` contractible pieces per degree."""
    degs = set(hdims)
    if not degs:
        degs = {0}
    lo, hi = min(degs) - 1, max(degs) + 1
    ranks = {}
    for n in range(lo, hi):
        r = rng.randint(0, extra)
        if r:
            ranks[n] = r
    return complex_from_ranks(rng, dict(hdims), ranks, sector=sector)


def random_chain_map(rng: random.Random, X: BoundedComplex, Y: BoundedComplex,
                     coeff: int = 2) -> ChainMap:
    """Random integer combination of a basis of all chain maps ``X -> Y``."""
    Hc = hom_complex(X, Y)
    Z = kernel_matrix(Hc.d(0)) if Hc.dim(0) else RatMatrix.zeros(0, 0)
    v = [Fraction(0)] * Z.rows
    for col in Z.columns():
        c = rng.randint(-coeff, coeff)
        if c:
            v = [a + c * b for a, b in zip(v, col)]
    return cochain_to_map(X, Y, v)


def random_kernel(rng: random.Random, spec: GeneratorSpec, label: str,
                  source: str, target: str) -> TransportKernel:
    K = random_complex(rng, spec.kernel_max_dim, spec.kernel_lo, spec.kernel_hi)
    if K.is_zero():
        K = BoundedComplex.point(1, rng.randint(spec.kernel_lo, spec.kernel_hi))
    return TransportKernel(K, label, source, target)


def random_state(rng: random.Random, nodes) -> StatePackage:
    c = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in nodes]
    return StatePackage(tuple(nodes), tuple(f"e{k + 1}" for k in range(len(nodes))), tuple(c))


def gen_random(spec: GeneratorSpec) -> MTTDatum:
    """Seeded random datum honouring the caps in ``spec``; always valid."""
    rng = random.Random(spec.seed)
    nodes = tuple(f"p{k + 1}" for k in range(spec.nodes))
    probes = [random_complex(rng, spec.max_dim, spec.lo, spec.hi, sector=n) for n in nodes]
    phi = [random_kernel(rng, spec, f"Phi_{k + 1}", n, BULK) for k, n in enumerate(nodes)]
    psi = [random_kernel(rng, spec, f"Psi_{k + 1}", BULK, n) for k, n in enumerate(nodes)]
    sh = [random_kernel(rng, spec, f"Sh_{k + 1}", n, SHADOW) for k, n in enumerate(nodes)]
    shadow_objects = []
    for K, L in zip(sh, probes):
        h = homology_dims(apply(K, L))
        shadow_objects.append(random_complex_with_homology(rng, h, extra=1, sector=SHADOW))
    support = tuple(tuple(rng.randint(0, 1) for _ in nodes) for _ in nodes)
    D = MTTDatum(nodes, phi, psi, probes, sh, shadow_objects, support,
                 random_state(rng, nodes))
    return check_datum(D)


def random_triangle(rng: random.Random, max_dim: int, lo: int, hi: int, sector=None):
    """Cone triangle on a random chain map between two random complexes."""
    X1 = random_complex(rng, max_dim, lo, hi, sector=sector)
    X = random_complex(rng, max_dim, lo, hi, sector=sector)
    f = random_chain_map(rng, X1, X)
    _, tri = cone(f)
    return tri


# ---------------------------------------------------------------- named toy models

def _plain_datum(probes, phi_k, psi_k, support=None, sh_k=None, names=None):
    """Datum on ``len(probes)`` nodes whose kernels are given as complexes.

    Shadow objects are the homology of ``Sh_j(L_j)`` with zero differential,
    so probe/shadow compatibility holds by construction.
    """
    r = len(probes)
    nodes = tuple(names or (f"p{k + 1}" for k in range(r)))
    unit = BoundedComplex.point(1, 0)
    sh_k = sh_k or [unit] * r
    phi = [TransportKernel(K, f"Phi_{k + 1}", nodes[k], BULK) for k, K in enumerate(phi_k)]
    psi = [TransportKernel(K, f"Psi_{k + 1}", BULK, nodes[k]) for k, K in enumerate(psi_k)]
    sh = [TransportKernel(K, f"Sh_{k + 1}", nodes[k], SHADOW) for k, K in enumerate(sh_k)]
    shadow_objects = [BoundedComplex(homology_dims(apply(K, L.with_sector(n))))
                      for K, L, n in zip(sh, probes, nodes)]
    support = support or tuple(tuple(1 for _ in range(r)) for _ in range(r))
    state = StatePackage(nodes, tuple(f"e{k + 1}" for k in range(r)),
                         tuple(Fraction(1) for _ in range(r)))
    return check_datum(MTTDatum(nodes, phi, psi, probes, sh, shadow_objects, support, state))


def _contractible(degree: int) -> BoundedComplex:
    """``Q --id--> Q`` in degrees ``degree, degree+1``."""
    return BoundedComplex.from_sequence(degree, [RatMatrix.identity(1)])


def _expect(D: MTTDatum, i: int, j: int, P: LaurentPoly):
    got = interaction_polynomial(D, i, j)
    if got != P:
        raise ValidationError(f"generator post-condition failed: P_{i}{j} = {got}, expected {P}")


def gen_single_degree(d: int, m0: int) -> MTTDatum:
    """Two nodes whose channel (1, 2) has ``P_12 = d q^m0``.

    ``L_1 = Q^d`` in degree 0 and ``L_2 = Q`` in degree ``m0`` (plus a
    contractible summand), unit kernels.
    """
    if d < 1:
        raise ValueError("d must be positive")
    L1 = BoundedComplex.point(d, 0)
    L2 = direct_sum(BoundedComplex.point(1, m0), _contractible(m0 - 1))
    unit = BoundedComplex.point(1, 0)
    D = _plain_datum([L1, L2], [unit, unit], [unit, unit])
    _expect(D, 1, 2, LaurentPoly({m0: d}))
    return D


def gen_two_degree(a: int, b: int, m: int) -> MTTDatum:
    """Two nodes with ``P_12 = a q^m + b q^{m+1}``."""
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError("need a, b >= 0 and a + b >= 1")
    L1 = BoundedComplex.point(1, 0)
    L2 = direct_sum(BoundedComplex({m: a, m + 1: b}), _contractible(m))
    unit = BoundedComplex.point(1, 0)
    D = _plain_datum([L1, L2], [unit, unit], [unit, unit])
    _expect(D, 1, 2, LaurentPoly({m: a, m + 1: b}))
    return D


def gen_directedness_witness(swap: bool = False) -> MTTDatum:
    """Two nodes with ``P_12 = q * P_21``: only ``Psi_2`` shifts degrees.

    ``swap=True`` puts the shift on ``Psi_1`` instead, exchanging the two
    off-diagonal entries.
    """
    unit = BoundedComplex.point(1, 0)
    shifted = BoundedComplex.point(1, -1)     # X -> X[1]
    L = BoundedComplex.point(1, 0)
    psi = [shifted, unit] if swap else [unit, shifted]
    D = _plain_datum([L, L], [unit, unit], psi)
    q, one = LaurentPoly({1: 1}), LaurentPoly({0: 1})
    _expect(D, 1, 2, one if swap else q)
    _expect(D, 2, 1, q if swap else one)
    return D


def gen_obstruction_demo() -> tuple[MTTDatum, MTTDatum]:
    """Two data with the same nodewise and state data but different ``P_12``.

    Probes, shadow kernels, shadow objects, support and state coincide; only
    the bulk kernel ``Phi_1`` differs (degree 0 versus degree 1).  ``Psi_1``
    is contractible so the diagonal and ``(2, 1)`` entries vanish in both.
    """
    unit = BoundedComplex.point(1, 0)
    L = BoundedComplex.point(1, 0)
    psi = [_contractible(0), unit]
    support = ((0, 1), (0, 1))
    first = _plain_datum([L, L], [unit, unit], psi, support=support)
    second = _plain_datum([L, L], [BoundedComplex.point(1, 1), unit], psi, support=support)
    _expect(first, 1, 2, LaurentPoly({0: 1}))
    _expect(second, 1, 2, LaurentPoly({-1: 1}))
    return first, second


def gen_visibility_right() -> MTTDatum:
    """Channel (1, 2) whose transported probe maps onto ``L_2`` non-trivially.

    ``A_12(L_1) = Q^2`` in degree 0 maps onto ``L_2 = Q`` in degree 0, so a
    right witness exists and ``P_12 = 2``.
    """
    unit = BoundedComplex.point(1, 0)
    L1 = BoundedComplex.point(2, 0)
    L2 = direct_sum_contractible(BoundedComplex.point(1, 0), 1)
    D = _plain_datum([L1, L2], [unit, unit], [unit, unit])
    _expect(D, 1, 2, LaurentPoly({0: 2}))
    return D


def gen_visibility_left() -> MTTDatum:
    """Channel (1, 2) where ``L_2`` maps non-trivially into the transported probe.

    ``A_12(L_1) = Q (+) Q[-1]`` and ``L_2 = Q``, so ``RHom(L_2, A) = 1 + q``
    while the primary polynomial is ``P_12 = 1 + q^-1``.  The left witness is
    reported next to ``P_12``; neither is derived from the other.
    """
    unit = BoundedComplex.point(1, 0)
    L1 = BoundedComplex({0: 1, 1: 1})
    L2 = BoundedComplex.point(1, 0)
    D = _plain_datum([L1, L2], [unit, unit], [unit, unit], support=((1, 0), (0, 1)))
    _expect(D, 1, 2, LaurentPoly({-1: 1, 0: 1}))
    return D


def gen_bridge() -> MTTDatum:
    """Three nodes, mixed shifts and multiplicities, partial support.

    Every supported channel passes both the content and the detector checks,
    so the bridge predicts ``P_ij != 0`` there.
    """
    unit = BoundedComplex.point(1, 0)
    L1 = direct_sum_contractible(BoundedComplex.point(1, 0), -1)
    L2 = direct_sum(BoundedComplex.point(1, 0), BoundedComplex.point(1, 1))
    L3 = BoundedComplex.point(2, -1)
    phi = [unit, BoundedComplex.point(1, -1), BoundedComplex({0: 1, 1: 1})]
    psi = [unit, unit, BoundedComplex.point(2, 1)]
    sh = [unit, BoundedComplex.point(1, -1), unit]
    support = ((1, 1, 0), (0, 1, 1), (1, 0, 1))
    D = _plain_datum([L1, L2, L3], phi, psi, support=support, sh_k=sh)
    for i, j in D.channels():
        if D.support[i - 1][j - 1] and interaction_polynomial(D, i, j).is_zero():
            raise ValidationError(f"bridge demo: supported channel ({i}, {j}) vanishes")
    return D


def direct_sum_contractible(X: BoundedComplex, degree: int) -> BoundedComplex:
    return direct_sum(X, _contractible(degree))


DEMOS = {
    "single-degree": gen_single_degree,
    "two-degree": gen_two_degree,
    "directedness": gen_directedness_witness,
    "obstruction": gen_obstruction_demo,
    "visibility-right": gen_visibility_right,
    "visibility-left": gen_visibility_left,
    "bridge": gen_bridge,
}


# ---------------------------------------------------------------- oracle

def kunneth(h1: dict[int, int], h2: dict[int, int]) -> dict[int, int]:
    """Homology dimensions of a tensor product over a field."""
    out: dict[int, int] = {}
    for p, a in h1.items():
        for q, b in h2.items():
            out[p + q] = out.get(p + q, 0) + a * b
    return {n: c for n, c in out.items() if c}


def semisimple_oracle(D: MTTDatum, i: int, j: int) -> LaurentPoly:
    """``P_ij`` from homology dimensions and Kunneth products only."""
    h_psi = homology_dims(D.psi[j - 1].kernel)
    h_phi = homology_dims(D.phi[i - 1].kernel)
    h_src = homology_dims(D.probe(i))
    h_tgt = homology_dims(D.probe(j))
    hA = kunneth(h_psi, kunneth(h_phi, h_src))
    return semisimple_pairing(hA, h_tgt)
