import random

import pytest

from mttlab.checks import bridge_verdict
from mttlab.cxcore import homology_dims, validate
from mttlab.homcx import LaurentPoly, evaluate
from mttlab.models import (DEMOS, GeneratorSpec, complex_from_ranks, gen_bridge,
                           gen_directedness_witness, gen_obstruction_demo, gen_random,
                           gen_single_degree, gen_two_degree, gen_visibility_left,
                           gen_visibility_right, kunneth, random_complex,
                           random_complex_with_homology, random_unimodular,
                           semisimple_oracle)
from mttlab.mtt import graded_matrix, interaction_polynomial
from mttlab.ratlin import inverse
from mttlab.serialize import datum_to_json


# ---------------------------------------------------------------- random pieces

def test_unimodular_has_integral_inverse():
    rng = random.Random(1)
    for n in range(1, 6):
        U = random_unimodular(rng, n)
        assert all(x.denominator == 1 for x in inverse(U).entries)


def test_complex_from_ranks_has_requested_homology():
    rng = random.Random(2)
    X = complex_from_ranks(rng, {0: 2, 2: 1}, {0: 1, 1: 2})
    assert validate(X) is None
    assert homology_dims(X) == {0: 2, 2: 1}


def test_random_complex_caps():
    rng = random.Random(3)
    for _ in range(30):
        X = random_complex(rng, 3, -2, 2)
        assert all(-2 <= n <= 2 and 1 <= d <= 3 for n, d in X.dims.items())
        assert validate(X) is None


def test_random_complex_with_homology():
    rng = random.Random(4)
    X = random_complex_with_homology(rng, {-1: 2, 1: 1})
    assert homology_dims(X) == {-1: 2, 1: 1}


def test_gen_random_deterministic_and_within_caps():
    spec = GeneratorSpec(seed=11, max_dim=3, lo=-2, hi=2, nodes=2)
    a, b = gen_random(spec), gen_random(spec)
    assert datum_to_json(a) == datum_to_json(b)
    for L in a.probes:
        assert all(-2 <= n <= 2 and d <= 3 for n, d in L.dims.items())
    assert gen_random(GeneratorSpec(seed=12)) is not None


def test_generator_spec_rejects_bad_caps():
    with pytest.raises(ValueError):
        GeneratorSpec(max_dim=0)
    with pytest.raises(ValueError):
        GeneratorSpec(lo=2, hi=1)


def test_many_random_data_are_valid_and_oracle_consistent():
    for seed in range(30):
        D = gen_random(GeneratorSpec(seed=seed))
        for i, j in D.channels():
            assert interaction_polynomial(D, i, j) == semisimple_oracle(D, i, j)


def test_kunneth():
    assert kunneth({0: 2, 1: 1}, {-1: 3}) == {-1: 6, 0: 3}
    assert kunneth({}, {0: 1}) == {}


# ---------------------------------------------------------------- closed forms

@pytest.mark.parametrize("d,m0", [(1, 0), (3, 2), (2, -1)])
def test_single_degree(d, m0):
    D = gen_single_degree(d, m0)
    P = interaction_polynomial(D, 1, 2)
    assert P == LaurentPoly.monomial(d, m0)
    assert evaluate(P, 1) == d and evaluate(P, -1) == (-1) ** (m0 % 2) * d
    assert semisimple_oracle(D, 1, 2) == P


@pytest.mark.parametrize("a,b,m", [(1, 1, 0), (1, 2, -1), (2, 0, 1), (0, 3, 2)])
def test_two_degree(a, b, m):
    D = gen_two_degree(a, b, m)
    P = interaction_polynomial(D, 1, 2)
    assert P == LaurentPoly({m: a, m + 1: b})
    assert evaluate(P, 1) == a + b
    assert evaluate(P, -1) == (-1) ** (m % 2) * (a - b)


def test_two_degree_reduces_to_single_degree():
    assert interaction_polynomial(gen_two_degree(2, 0, 1), 1, 2) == \
        interaction_polynomial(gen_single_degree(2, 1), 1, 2)


def test_bad_generator_arguments():
    with pytest.raises(ValueError):
        gen_single_degree(0, 0)
    with pytest.raises(ValueError):
        gen_two_degree(0, 0, 0)


# ---------------------------------------------------------------- named demos

def test_directedness():
    D = gen_directedness_witness()
    P12, P21 = interaction_polynomial(D, 1, 2), interaction_polynomial(D, 2, 1)
    assert P12 != P21 and P12 and P21
    assert P12 == P21.shift(1)


def test_obstruction_pair():
    A, B = gen_obstruction_demo()
    ja, jb = datum_to_json(A), datum_to_json(B)
    for key in ("nodes", "probes", "shadow_kernels", "shadow_objects", "support", "state"):
        assert ja[key] == jb[key], key
    assert ja["phi"] != jb["phi"] or ja["psi"] != jb["psi"]
    assert interaction_polynomial(A, 1, 2) != interaction_polynomial(B, 1, 2)
    for D in (A, B):
        assert all(r.bridge_consistent for r in bridge_verdict(D))


def test_visibility_demos():
    R = gen_visibility_right()
    assert interaction_polynomial(R, 1, 2) == LaurentPoly({0: 2})
    L = gen_visibility_left()
    assert interaction_polynomial(L, 1, 2) == LaurentPoly({-1: 1, 0: 1})


def test_bridge_demo_support_and_nonvanishing():
    D = gen_bridge()
    G = graded_matrix(D)
    for i, j in D.channels():
        if D.support[i - 1][j - 1]:
            assert not G.entry(i, j).is_zero()


def test_every_demo_generates():
    for name, gen in DEMOS.items():
        out = gen(1, 0) if name == "single-degree" else gen(1, 1, 0) if name == "two-degree" \
            else gen()
        for D in out if isinstance(out, tuple) else (out,):
            assert graded_matrix(D).size == D.r
