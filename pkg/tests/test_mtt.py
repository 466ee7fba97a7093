import random
import pytest

from helpers import contractible, pt
from mttlab.cxcore import BoundedComplex, ChainMap, homology_dims
from mttlab.errors import ValidationError, WiringError
from mttlab.homcx import LaurentPoly
from mttlab.models import (GeneratorSpec, _plain_datum, gen_directedness_witness, gen_random,
                           random_chain_map, random_complex, semisimple_oracle)
from mttlab.mtt import (MTTDatum, StatePackage, check_datum, datum_diagnostics, graded_matrix,
                        induced_profunctor_maps, inherited_package, interaction_complex,
                        interaction_polynomial, transported_probe)
from mttlab.ratlin import RatMatrix
from mttlab.transport import TransportKernel


def unit_datum(probes, support=None):
    return _plain_datum(probes, [pt()] * len(probes), [pt()] * len(probes), support=support)


def test_unit_kernels_transport_probe_unchanged():
    L1 = random_complex(random.Random(1), 3, -2, 2)
    D = unit_datum([L1, pt()])
    assert transported_probe(D, 1, 2) == L1.with_sector("p2")


def test_shifting_psi_moves_transported_homology():
    L1 = BoundedComplex({0: 2, 1: 1})
    D = _plain_datum([L1, pt()], [pt(), pt()], [pt(), pt(1, -1)])
    h = homology_dims(transported_probe(D, 1, 2))
    assert h == {n - 1: d for n, d in homology_dims(L1).items()}


def test_interaction_complex_examples():
    D = unit_datum([pt(), pt()])
    assert homology_dims(interaction_complex(D, 1, 2)) == {0: 1}
    A = unit_datum([contractible(), pt()])
    assert homology_dims(interaction_complex(A, 1, 2)) == {}
    assert interaction_polynomial(A, 1, 2).is_zero()


def test_single_node_unit_matrix():
    D = unit_datum([pt()])
    assert graded_matrix(D).entries == ((LaurentPoly({0: 1}),),)


def test_index_errors():
    D = unit_datum([pt(), pt()])
    with pytest.raises(IndexError):
        interaction_polynomial(D, 0, 1)
    with pytest.raises(IndexError):
        transported_probe(D, 1, 3)


def test_directedness_and_relabeling():
    D = gen_directedness_witness()
    G = graded_matrix(D)
    assert G.entry(1, 2) != G.entry(2, 1)
    assert G.asymmetric_pairs() == [(1, 2)]
    S = graded_matrix(gen_directedness_witness(swap=True))
    assert S.entry(2, 1) == G.entry(1, 2) and S.entry(1, 2) == G.entry(2, 1)


def test_graded_matrix_matches_oracle_on_random_data():
    for seed in range(15):
        D = gen_random(GeneratorSpec(seed=seed))
        for i, j in D.channels():
            assert interaction_polynomial(D, i, j) == semisimple_oracle(D, i, j)


def test_inherited_package_shapes_and_inequality():
    D = gen_random(GeneratorSpec(seed=3, nodes=3))
    pkg = inherited_package(D)
    assert pkg.graded.size == 3 and len(pkg.support) == 3
    for i in range(3):
        for j in range(3):
            t, c = pkg.specializations[i][j]
            assert t >= abs(c)
            assert (t, c) == (pkg.graded.entries[i][j](1), pkg.graded.entries[i][j](-1))
    assert pkg.nonvanishing() == tuple(tuple(int(bool(P)) for P in row)
                                       for row in pkg.graded.entries)


def test_state_package_lengths():
    with pytest.raises(ValidationError):
        StatePackage(("a", "b"), ("e1",), (1, 2))


# ---------------------------------------------------------------- validation

def base():
    return unit_datum([BoundedComplex({0: 1, 1: 1}), pt()])


def test_valid_datum_has_no_diagnostics():
    assert datum_diagnostics(base()) == []


def test_bad_differential_named():
    D = base()
    bad = BoundedComplex({0: 1, 1: 1, 2: 1}, {0: RatMatrix.identity(1),
                                              1: RatMatrix.identity(1)})
    E = MTTDatum(D.nodes, D.phi, D.psi, (bad, D.probes[1]), D.shadow_kernels,
                 D.shadow_objects, D.support, D.state)
    diags = datum_diagnostics(E)
    assert diags and diags[0].field == "probes[p1]" and "degree 0" in diags[0].message
    with pytest.raises(ValidationError):
        check_datum(E)


def test_wiring_error_named():
    D = base()
    wrong = TransportKernel(pt(), "Phi_1", "p2", "bulk")
    E = MTTDatum(D.nodes, (wrong, D.phi[1]), D.psi, D.probes, D.shadow_kernels,
                 D.shadow_objects, D.support, D.state)
    with pytest.raises(WiringError) as err:
        check_datum(E)
    assert err.value.diagnostics[0].field == "phi[p1]"


def test_shadow_incompatibility_named():
    D = base()
    E = MTTDatum(D.nodes, D.phi, D.psi, D.probes, D.shadow_kernels,
                 (D.shadow_objects[0], pt(2)), D.support, D.state)
    diags = datum_diagnostics(E)
    assert [d.kind for d in diags] == ["compatibility"]
    assert "p2" in diags[0].message


def test_bad_support_and_counts():
    D = base()
    E = MTTDatum(D.nodes, D.phi, D.psi, D.probes, D.shadow_kernels, D.shadow_objects,
                 ((1, 2), (0, 1)), D.state)
    assert datum_diagnostics(E)[0].field == "support"
    F = MTTDatum(D.nodes, D.phi[:1], D.psi, D.probes, D.shadow_kernels, D.shadow_objects,
                 D.support, D.state)
    assert datum_diagnostics(F)[0].field == "phi"


def test_datum_cache_does_not_affect_equality_of_results():
    D = gen_random(GeneratorSpec(seed=9))
    first = graded_matrix(D)
    D._cache.clear()
    assert graded_matrix(D) == first


# ---------------------------------------------------------------- profunctor maps

def _channel_objects(seed):
    rng = random.Random(seed)
    D = gen_random(GeneratorSpec(seed=seed))
    return rng, D


def test_identities_induce_identities():
    _, D = _channel_objects(21)
    maps = induced_profunctor_maps(D, 1, 2)
    for m in list(maps.contravariant.values()) + list(maps.covariant.values()):
        assert m == RatMatrix.identity(m.rows)


def test_zero_map_induces_zero():
    _, D = _channel_objects(22)
    L = D.probe(1)
    maps = induced_profunctor_maps(D, 1, 2, f=ChainMap.zero(L, L))
    assert all(m.is_zero() for m in maps.contravariant.values())


def _assert_factorises(whole, outer, inner):
    """``whole = outer o inner`` degreewise; a degree missing from a factor is a zero space."""
    for m, W in whole.items():
        if m in outer and m in inner:
            assert W == outer[m] @ inner[m]
        else:
            assert W.is_zero()


def test_contravariant_functoriality():
    for seed in range(23, 28):
        rng, D = _channel_objects(seed)
        s = D.sector(1)
        X = D.probe(1)
        X1 = random_complex(rng, 2, -1, 1, sector=s)
        X2 = random_complex(rng, 2, -1, 1, sector=s)
        f1, f2 = random_chain_map(rng, X1, X), random_chain_map(rng, X2, X1)
        whole = induced_profunctor_maps(D, 1, 2, f=f1 @ f2).contravariant
        first = induced_profunctor_maps(D, 1, 2, f=f1).contravariant
        second = induced_profunctor_maps(replace_probe(D, 1, X1), 1, 2, f=f2).contravariant
        # (f1 o f2)^* = f2^* o f1^*
        _assert_factorises(whole, second, first)


def test_covariant_functoriality():
    for seed in range(28, 32):
        rng, D = _channel_objects(seed)
        s = D.sector(2)
        Y = D.probe(2)
        Y1 = random_complex(rng, 2, -1, 1, sector=s)
        Y2 = random_complex(rng, 2, -1, 1, sector=s)
        g1, g2 = random_chain_map(rng, Y, Y1), random_chain_map(rng, Y1, Y2)
        whole = induced_profunctor_maps(D, 1, 2, g=g2 @ g1).covariant
        first = induced_profunctor_maps(D, 1, 2, g=g1).covariant
        second = induced_profunctor_maps(replace_probe(D, 2, Y1), 1, 2, g=g2).covariant
        _assert_factorises(whole, second, first)


def test_sector_mismatch_rejected():
    _, D = _channel_objects(33)
    L = D.probe(2)
    with pytest.raises(WiringError):
        induced_profunctor_maps(D, 1, 2, f=ChainMap.identity(L))


def replace_probe(D, i, X):
    """Same kernels, probe i replaced (shadow data left alone; only used for maps)."""
    probes = list(D.probes)
    probes[i - 1] = X
    return MTTDatum(D.nodes, D.phi, D.psi, probes, D.shadow_kernels, D.shadow_objects,
                    D.support, D.state)
