import random

import pytest

from helpers import contractible, pt
from mttlab.checks import (build_and_verify_les, bridge_verdict, channel_report,
                           content_check, detector_check, euler_additivity_check,
                           exactness_flags, find_left_visibility, find_right_visibility)
from mttlab.cxcore import (BoundedComplex, ChainMap, Triangle, cone, hom_classes_dim, shift,
                           validate)
from mttlab.errors import ValidationError, WiringError
from mttlab.homcx import poincare
from mttlab.models import (GeneratorSpec, _plain_datum, gen_bridge, gen_random,
                           gen_visibility_left, gen_visibility_right, random_complex,
                           random_triangle)
from mttlab.mtt import interaction_polynomial, transported_probe
from mttlab.ratlin import RatMatrix


def small_datum(seed=0):
    return gen_random(GeneratorSpec(seed=seed))


# ---------------------------------------------------------------- long exact sequences

def test_identity_triangle_is_exact():
    D = small_datum(1)
    X = random_complex(random.Random(1), 3, -2, 2, sector=D.sector(1))
    _, T = cone(ChainMap.identity(X))
    rec = build_and_verify_les(D, 1, 2, T, D.probe(2))
    assert rec.ok and rec.certificate.ok
    # the cone term is acyclic, so every X'' space vanishes
    assert all(dim == 0 for _, lab, dim in rec.spaces if lab == "X''")


def test_split_triangle_is_exact():
    D = small_datum(2)
    rng = random.Random(2)
    s = D.sector(2)
    X1, X = random_complex(rng, 3, -2, 2, sector=s), random_complex(rng, 3, -2, 2, sector=s)
    _, T = cone(ChainMap.zero(X1, X))
    rec = build_and_verify_les(D, 2, 1, T, D.probe(1))
    assert rec.ok and rec.first_inexact() is None


def test_random_triangles_are_exact():
    rng = random.Random(3)
    for seed in range(12):
        D = small_datum(seed)
        i, j = rng.randint(1, 2), rng.randint(1, 2)
        T = random_triangle(rng, 4, -2, 2, sector=D.sector(i))
        rec = build_and_verify_les(D, i, j, T, D.probe(j))
        assert rec.ok, rec.first_inexact()
        for a, b in zip(rec.maps, rec.maps[1:]):
            if a.cols and b.rows:
                assert (b @ a).is_zero()


def test_exactness_flags_catch_a_broken_sequence():
    spaces = [(0, "X''", 1), (0, "X", 1), (0, "X'", 1)]
    good = [RatMatrix.identity(1), RatMatrix.zeros(1, 1)]
    assert exactness_flags(spaces, good) == [True, True, False]
    bad = [RatMatrix.identity(1), RatMatrix.identity(1)]
    flags = exactness_flags(spaces, bad)
    assert flags[1] is False


def test_triangle_that_is_not_a_cone_is_rejected():
    D = small_datum(4)
    s = D.sector(1)
    X = pt(sector=s)
    C, T = cone(ChainMap.identity(X))
    fake = Triangle(T.first, T.second, pt(sector=s), T.map_a,
                    ChainMap.zero(T.second, pt(sector=s)), ChainMap.zero(pt(sector=s), shift(X, 1)))
    with pytest.raises(ValidationError):
        build_and_verify_les(D, 1, 2, fake, D.probe(2))


def test_sector_mismatch_in_les():
    D = small_datum(5)
    X = pt(sector="elsewhere")
    _, T = cone(ChainMap.identity(X))
    with pytest.raises(WiringError):
        build_and_verify_les(D, 1, 2, T, D.probe(2))


def test_euler_additivity():
    rng = random.Random(6)
    D = small_datum(6)
    for _ in range(10):
        T = random_triangle(rng, 3, -2, 2, sector=D.sector(1))
        assert euler_additivity_check(D, 1, 2, T, D.probe(2))
    X = random_complex(rng, 3, -2, 2, sector=D.sector(1))
    _, T = cone(ChainMap.identity(X))
    assert euler_additivity_check(D, 1, 1, T, D.probe(1))


# ---------------------------------------------------------------- visibility

def test_right_visibility_identity():
    X = BoundedComplex({0: 2, 1: 1})
    w = find_right_visibility(X, X)
    assert w is not None and w.kind == "right"
    assert any(w.class_coords)
    assert validate(w.complement) is None
    assert not poincare(X, X).is_zero()


def test_right_visibility_none_for_contractible():
    assert find_right_visibility(contractible(), pt()) is None


def test_right_visibility_soundness_and_completeness():
    rng = random.Random(7)
    for _ in range(40):
        X, L = random_complex(rng, 3, -2, 2), random_complex(rng, 3, -2, 2)
        P = poincare(X, L)
        w = find_right_visibility(X, L)
        if w is not None:
            assert not P.is_zero()
            assert hom_classes_dim(X, L) > 0
            assert w.triangle.map_a == w.map
        if P.coeff(0):
            assert w is not None


def test_right_visibility_with_shifts():
    X, L = pt(1, 0), pt(1, 2)
    assert find_right_visibility(X, L) is None
    w = find_right_visibility(X, L, shifts=(0, 1, 2))
    assert w is not None and w.probe_shift == 2


def test_visibility_demo_right():
    D = gen_visibility_right()
    X = transported_probe(D, 1, 2)
    w = find_right_visibility(X, D.probe(2))
    assert w is not None
    assert not interaction_polynomial(D, 1, 2).is_zero()
    assert "homotopy class" in w.nonzero_certificate


def test_left_visibility():
    X = BoundedComplex({0: 1, 1: 1})
    v = find_left_visibility(X, X)
    assert v is not None and v.kind == "left"
    assert find_left_visibility(pt(1, 3), pt()) is None


def test_visibility_demo_left_reports_both_sides_independently():
    D = gen_visibility_left()
    X = transported_probe(D, 1, 2)
    L = D.probe(2)
    v = find_left_visibility(L, X)
    assert v is not None
    assert not poincare(L, X).is_zero()
    # the right-variance polynomial is just computed, not inferred
    assert interaction_polynomial(D, 1, 2) == poincare(X, L)


# ---------------------------------------------------------------- content, detector, bridge

def test_all_unit_datum_is_consistent_with_p_equal_one():
    D = _plain_datum([pt(), pt()], [pt(), pt()], [pt(), pt()])
    for rep in bridge_verdict(D):
        assert rep.bridge_consistent and rep.P == interaction_polynomial(D, 1, 1)
        assert rep.P.coeffs == {0: 1}
        assert (rep.content_left_nonzero, rep.content_right_nonzero) == (1, 1)
        assert rep.detector_holds_at_probe == 1


def test_acyclic_transported_probe_is_vacuously_consistent():
    D = _plain_datum([contractible(), pt()], [pt(), pt()], [pt(), pt()])
    rep = channel_report(D, 1, 2)
    assert rep.supported == 1
    assert content_check(D, 1, 2) == (0, 0)
    assert detector_check(D, 1, 2) == 0
    assert rep.H_nonzero == 0 and rep.bridge_consistent == 1


def test_bridge_demo():
    D = gen_bridge()
    reports = bridge_verdict(D)
    assert [r.channel for r in reports] == sorted(r.channel for r in reports)
    for rep in reports:
        assert rep.bridge_consistent
        if rep.supported:
            assert rep.content and rep.detector_holds_at_probe and rep.H_nonzero
            assert not rep.P.is_zero()


def test_report_specialisations():
    D = small_datum(8)
    for rep in bridge_verdict(D):
        assert rep.w_tot == rep.P(1) and rep.w_chi == rep.P(-1)
        assert rep.H_nonzero == int(not rep.P.is_zero())
        assert rep.detector_holds_at_probe == rep.H_nonzero


def test_random_data_are_bridge_consistent():
    for seed in range(10):
        assert all(r.bridge_consistent for r in bridge_verdict(small_datum(seed)))
