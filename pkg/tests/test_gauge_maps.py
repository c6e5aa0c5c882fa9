"""Gauge map specs, their verifiers, and the linearization probe."""

import math

import numpy as np
import pytest

from symcone import (
    Compose,
    ComponentwisePower,
    Inversion,
    LinearConjugate,
    Lorentz,
    NotInteriorError,
    NotLinearizableError,
    Orthant,
    SymPSD,
    apply,
    apply_inverse,
    builtin_algebra,
    cone_contains,
    conjugated_inversion,
    identity_map,
    linearize_gauge_preserving,
    make_space,
    map_from_json,
    map_to_json,
    order_unit_norm,
    random_cone_automorphism,
    verify_gauge_preserving,
    verify_gauge_reversing,
)
from symcone.cones import sample_interior_rng, sample_positive_rng


def test_inversion_examples():
    o2 = make_space(Orthant(2))
    inv = Inversion(builtin_algebra(o2))
    np.testing.assert_allclose(apply(inv, [2.0, 4.0]), [0.5, 0.25])
    np.testing.assert_allclose(apply(inv, o2.unit), o2.unit)
    np.testing.assert_allclose(apply_inverse(inv, [0.5, 0.25]), [2.0, 4.0])
    with pytest.raises(NotInteriorError):
        apply(inv, [1.0, 0.0])


def test_linear_conjugate_example():
    o2 = make_space(Orthant(2))
    inner = Inversion(builtin_algebra(o2))
    mp = LinearConjugate(np.diag([2.0, 1.0]), inner, np.eye(2))
    np.testing.assert_allclose(apply(mp, [1.0, 1.0]), [0.5, 1.0])
    np.testing.assert_allclose(apply_inverse(mp, apply(mp, [3.0, 0.5])), [3.0, 0.5],
                               atol=1e-14)


def test_compose_empty_is_identity():
    ident = identity_map()
    x = np.array([0.3, 1.7])
    np.testing.assert_allclose(apply(ident, x), x)
    np.testing.assert_allclose(apply_inverse(ident, x), x)
    assert ident.parts == ()


def test_inversion_is_involution():
    rng = np.random.default_rng(0)
    for cone in (Orthant(4), Lorentz(4), SymPSD(2)):
        space = make_space(cone)
        inv = Inversion(builtin_algebra(space))
        for _ in range(100):
            x = sample_interior_rng(space, rng, 1.0)
            assert order_unit_norm(space, apply(inv, apply(inv, x)) - x) <= 1e-9


def test_first_order_bound_at_unit():
    rng = np.random.default_rng(1)
    for cone in (Orthant(3), Lorentz(4), SymPSD(2)):
        space = make_space(cone)
        inv = Inversion(builtin_algebra(space))
        unit = np.asarray(space.unit)
        for _ in range(60):
            y = sample_positive_rng(space, rng, rng.uniform(0.02, 0.5))
            gap = order_unit_norm(space, apply(inv, unit + y) - unit + y)
            assert gap <= order_unit_norm(space, y) ** 2 + 1e-9


def test_bi_lipschitz_on_metric_ball():
    rng = np.random.default_rng(2)
    radius = math.log(2.0)  # points in [v/2, 2v]
    for cone in (Orthant(3), SymPSD(2)):
        space = make_space(cone)
        inv = Inversion(builtin_algebra(space))
        for _ in range(40):
            x = sample_interior_rng(space, rng, radius)
            y = sample_interior_rng(space, rng, radius)
            fwd = order_unit_norm(space, apply(inv, x) - apply(inv, y))
            assert fwd <= 4.0 * order_unit_norm(space, x - y) + 1e-9


def test_reversing_checker_accepts_inversions():
    o3 = make_space(Orthant(3))
    report = verify_gauge_reversing(Inversion(builtin_algebra(o3)), o3, o3,
                                    trials=200, seed=3, tol=1e-9)
    assert report.passed, [p.name for p in report.failing()]
    p2 = make_space(SymPSD(2))
    report = verify_gauge_reversing(Inversion(builtin_algebra(p2)), p2, p2,
                                    trials=100, seed=3, tol=1e-7)
    assert report.passed, [p.name for p in report.failing()]


def test_identity_fails_reversing_checker():
    o3 = make_space(Orthant(3))
    report = verify_gauge_reversing(identity_map(), o3, o3, trials=50, seed=3, tol=1e-3)
    assert not report.passed
    failing = {p.name for p in report.failing()}
    assert "gauge_reversal" in failing


def test_preserving_checker():
    o2 = make_space(Orthant(2))
    alg = builtin_algebra(o2)
    scaling = LinearConjugate(np.diag([4.0, 1.0]), identity_map(), np.eye(2))
    report = verify_gauge_preserving(scaling, o2, o2, trials=60, seed=3, tol=1e-9)
    assert report.passed
    report = verify_gauge_preserving(Inversion(alg), o2, o2, trials=40, seed=3, tol=1e-3)
    assert not report.passed
    double_inv = Compose((Inversion(alg), Inversion(alg)))
    report = verify_gauge_preserving(double_inv, o2, o2, trials=60, seed=3, tol=1e-9)
    assert report.passed


def test_linearize_examples():
    o2 = make_space(Orthant(2))
    # quadratic representation of (2, 1) acts as the diagonal (4, 1)
    scaled = LinearConjugate(np.diag([4.0, 1.0]), identity_map(), np.eye(2))
    np.testing.assert_allclose(linearize_gauge_preserving(scaled, o2, 5),
                               np.diag([4.0, 1.0]), atol=1e-10)
    np.testing.assert_allclose(linearize_gauge_preserving(identity_map(), o2, 5),
                               np.eye(2), atol=1e-12)
    with pytest.raises(NotLinearizableError):
        linearize_gauge_preserving(Inversion(builtin_algebra(o2)), o2, 5)


def test_conjugated_inversion_moves_unit_and_reverses():
    for cone in (Orthant(4), Lorentz(4), SymPSD(2)):
        space = make_space(cone)
        mp = conjugated_inversion(space, 11)
        assert order_unit_norm(space, apply(mp, space.unit) - space.unit) > 1e-3
        report = verify_gauge_reversing(mp, space, space, trials=80, seed=3, tol=1e-9)
        assert report.passed, (cone, [p.name for p in report.failing()])


def test_automorphisms_preserve_cone():
    rng = np.random.default_rng(4)
    for cone in (Orthant(4), Lorentz(4), SymPSD(3)):
        space = make_space(cone)
        for seed in range(5):
            mat = random_cone_automorphism(cone, seed)
            inv_mat = np.linalg.inv(mat)
            for _ in range(20):
                x = sample_interior_rng(space, rng, 1.2)
                assert cone_contains(cone, mat @ x, 0.0)
                assert cone_contains(cone, inv_mat @ x, 0.0)


def test_power_map_is_order_reversing_but_wrong_degree():
    o3 = make_space(Orthant(3))
    pw = ComponentwisePower(-3.0)
    report = verify_gauge_reversing(pw, o3, o3, trials=50, seed=3, tol=1e-3)
    assert not report.passed
    failing = {p.name for p in report.failing()}
    assert "homogeneity_deg_minus_one" in failing
    assert "order_reversal" not in failing  # it does reverse order


def test_map_json_roundtrip():
    o2 = make_space(Orthant(2))
    alg = builtin_algebra(o2)
    mp = LinearConjugate(np.diag([2.0, 1.0]), Inversion(alg), np.eye(2))
    specs = [Inversion(alg), mp, Compose((Inversion(alg), Inversion(alg))),
             identity_map(), ComponentwisePower(-3.0)]
    x = np.array([0.8, 1.3])
    for spec in specs:
        back = map_from_json(map_to_json(spec))
        np.testing.assert_allclose(apply(back, x), apply(spec, x), atol=1e-14)
