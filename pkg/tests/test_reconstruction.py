"""The derivative/symmetry/quadratic-representation recovery pipeline."""

import numpy as np
import pytest

from symcone import (
    ComponentwisePower,
    DerivativeDomainError,
    DimensionMismatchError,
    Inversion,
    Lorentz,
    Orthant,
    SymPSD,
    apply,
    assemble_derivative,
    builtin_algebra,
    cone_contains,
    conjugated_inversion,
    cross_validate,
    extract_product,
    hua_directional_derivative,
    inversion_j,
    make_space,
    order_unit_norm,
    quad_rep_full,
    quad_rep_interior,
    symmetry_at,
    verify_reconstruction,
)
from symcone.cones import sample_interior_rng, sample_positive_rng
from symcone.reconstruction import QuadraticRep


def scalar_setup():
    space = make_space(Orthant(1))
    return space, Inversion(builtin_algebra(space))


def test_directional_derivative_scalar_example():
    space, inv = scalar_setup()
    # reciprocal map at 2 along 1/2: intermediate images 3/2 -> 2/3 -> 3/8
    out = hua_directional_derivative(inv, space, [2.0], [0.5])
    np.testing.assert_allclose(out, [-0.125])


def test_directional_derivative_orthant_example():
    o2 = make_space(Orthant(2))
    inv = Inversion(builtin_algebra(o2))
    out = hua_directional_derivative(inv, o2, [2.0, 2.0], [0.5, 0.25])
    np.testing.assert_allclose(out, [-1.0 / 8.0, -1.0 / 16.0], atol=1e-14)


def test_directional_derivative_scaling():
    o3 = make_space(Orthant(3))
    inv = Inversion(builtin_algebra(o3))
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = sample_interior_rng(o3, rng, 0.8)
        out = hua_directional_derivative(inv, o3, x, x / 4.0)
        np.testing.assert_allclose(out, -apply(inv, x) / 4.0, atol=1e-13)


def test_directional_derivative_preconditions():
    o2 = make_space(Orthant(2))
    inv = Inversion(builtin_algebra(o2))
    with pytest.raises(DerivativeDomainError):
        hua_directional_derivative(inv, o2, [1.0, 1.0], [1.0, 1.0])


def test_assembled_derivative_examples():
    o3 = make_space(Orthant(3))
    inv = Inversion(builtin_algebra(o3))
    d = assemble_derivative(inv, o3, o3.unit)
    np.testing.assert_allclose(d.matrix, -np.eye(3), atol=1e-12)

    space, sinv = scalar_setup()
    d = assemble_derivative(sinv, space, [3.0])
    np.testing.assert_allclose(d.matrix, [[-1.0 / 9.0]], atol=1e-13)

    p2 = make_space(SymPSD(2))
    pinv = Inversion(builtin_algebra(p2))
    from symcone import svec
    x = svec(np.diag([2.0, 1.0]))
    d = assemble_derivative(pinv, p2, x)
    e11 = svec(np.diag([1.0, 0.0]))
    np.testing.assert_allclose(d.matrix @ e11, -e11 / 4.0, atol=1e-12)


def test_assembled_derivative_invariants():
    rng = np.random.default_rng(1)
    for cone in (Orthant(3), Lorentz(4), SymPSD(2)):
        space = make_space(cone)
        inv = Inversion(builtin_algebra(space))
        for _ in range(5):
            x = sample_interior_rng(space, rng, 0.7)
            d = assemble_derivative(inv, space, x)
            fx = apply(inv, x)
            assert order_unit_norm(space, d.matrix @ x + fx) <= 1e-9 * (1 + order_unit_norm(space, fx))
            for _ in range(10):
                y = sample_positive_rng(space, rng, 1.0)
                assert cone_contains(space.cone, -(d.matrix @ y), -1e-10)


def test_assembled_derivative_matches_central_differences():
    # independent oracle: symmetric difference quotient of the map itself
    o2 = make_space(Orthant(2))
    inv = Inversion(builtin_algebra(o2))
    rng = np.random.default_rng(2)
    h = 1e-6
    for _ in range(10):
        x = sample_interior_rng(o2, rng, 0.5)
        d = assemble_derivative(inv, o2, x).matrix
        for j in range(2):
            e = np.zeros(2)
            e[j] = 1.0
            fd = (apply(inv, x + h * e) - apply(inv, x - h * e)) / (2.0 * h)
            assert np.abs(fd - d[:, j]).max() <= 1e-7


def test_symmetry_scalar_example():
    space, inv = scalar_setup()
    s2 = symmetry_at(inv, space, [2.0])
    np.testing.assert_allclose(apply(s2, [2.0]), [2.0], atol=1e-13)
    np.testing.assert_allclose(apply(s2, [1.0]), [4.0], atol=1e-13)
    np.testing.assert_allclose(apply(s2, [8.0]), [0.5], atol=1e-13)


def test_symmetry_at_unit_is_inversion_itself():
    o3 = make_space(Orthant(3))
    inv = Inversion(builtin_algebra(o3))
    s = symmetry_at(inv, o3, o3.unit)
    rng = np.random.default_rng(3)
    for _ in range(20):
        x = sample_interior_rng(o3, rng, 1.0)
        np.testing.assert_allclose(apply(s, x), apply(inv, x), atol=1e-12)


def test_normalization_strips_linear_wrapping():
    # j of a conjugated inversion is the plain inversion again
    for cone in (Orthant(3), Lorentz(4), SymPSD(2)):
        space = make_space(cone)
        inv = Inversion(builtin_algebra(space))
        mp = conjugated_inversion(space, 7)
        j = inversion_j(mp, space)
        rng = np.random.default_rng(4)
        for _ in range(50):
            x = sample_interior_rng(space, rng, 1.0)
            assert order_unit_norm(space, apply(j, x) - apply(inv, x)) <= 1e-9


def test_inversion_j_is_involution_fixing_unit():
    o3 = make_space(Orthant(3))
    j = inversion_j(conjugated_inversion(o3, 9), o3)
    np.testing.assert_allclose(apply(j, o3.unit), o3.unit, atol=1e-12)
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = sample_interior_rng(o3, rng, 1.0)
        assert order_unit_norm(o3, apply(j, apply(j, x)) - x) <= 1e-9


def test_quad_rep_interior_examples():
    space, sinv = scalar_setup()
    j1 = inversion_j(sinv, space)
    # at 2, probing with 1: j(1/2 - 1/3) - 2 = 6 - 2 = 4
    np.testing.assert_allclose(quad_rep_interior(j1, space, [2.0]), [[4.0]], atol=1e-12)

    o2 = make_space(Orthant(2))
    j2 = inversion_j(Inversion(builtin_algebra(o2)), o2)
    np.testing.assert_allclose(quad_rep_interior(j2, o2, o2.unit), np.eye(2), atol=1e-12)
    np.testing.assert_allclose(quad_rep_interior(j2, o2, [2.0, 3.0]),
                               np.diag([4.0, 9.0]), atol=1e-11)


def test_quad_rep_full_examples():
    o2 = make_space(Orthant(2))
    j2 = inversion_j(Inversion(builtin_algebra(o2)), o2)
    np.testing.assert_allclose(quad_rep_full(j2, o2, [0.0, 0.0]), np.zeros((2, 2)),
                               atol=1e-11)
    np.testing.assert_allclose(quad_rep_full(j2, o2, [-1.0, -1.0]), np.eye(2),
                               atol=1e-11)
    np.testing.assert_allclose(quad_rep_full(j2, o2, [1.0, -2.0]),
                               np.diag([1.0, 4.0]), atol=1e-11)


def test_quad_rep_full_matches_builtin_on_ambient_points():
    rng = np.random.default_rng(6)
    for cone in (Orthant(3), Lorentz(4), SymPSD(2)):
        space = make_space(cone)
        alg = builtin_algebra(space)
        prep = QuadraticRep(inversion_j(Inversion(alg), space), space)
        from symcone import quad_rep
        for _ in range(6):
            x = rng.standard_normal(space.dim)
            np.testing.assert_allclose(prep(x), quad_rep(alg, x), atol=1e-9)


def test_extraction_matches_ground_truth():
    for cone, tol in ((Orthant(3), 1e-10), (SymPSD(2), 1e-9), (Lorentz(4), 1e-9)):
        space = make_space(cone)
        alg = builtin_algebra(space)
        j = inversion_j(Inversion(alg), space)
        tensor = extract_product(j, space)
        assert cross_validate(tensor, alg.product) <= tol


def test_extraction_largest_psd_order():
    # d=4 is the largest matrix order exercised routinely; tolerance relaxed
    # to 1e-6 for eigensolver accumulation, with ample measured margin
    space = make_space(SymPSD(4))
    alg = builtin_algebra(space)
    tensor = extract_product(inversion_j(Inversion(alg), space), space)
    assert cross_validate(tensor, alg.product) <= 1e-6


def test_extraction_on_direct_sum_is_blockwise():
    from symcone import DirectSum
    space = make_space(DirectSum((Orthant(2), Lorentz(3))))
    alg = builtin_algebra(space)
    tensor = extract_product(inversion_j(Inversion(alg), space), space)
    assert cross_validate(tensor, alg.product) <= 1e-9
    # off-block entries of the recovered table vanish
    assert np.abs(tensor.table[:2, 2:, :]).max() <= 1e-10
    assert np.abs(tensor.table[2:, :2, :]).max() <= 1e-10


def test_cross_validate_contracts():
    o3 = make_space(Orthant(3))
    truth = builtin_algebra(o3).product
    assert cross_validate(truth, truth) == 0.0
    with pytest.raises(DimensionMismatchError):
        cross_validate(truth, builtin_algebra(make_space(Orthant(4))).product)
    with pytest.raises(DimensionMismatchError):
        # spin product lives at a different unit vector
        cross_validate(truth, builtin_algebra(make_space(Lorentz(3))).product)
    # a structurally different product at the same unit deviates by O(1)
    doubled = type(truth)(truth.n, truth.unit.copy(), 2.0 * truth.table)
    assert cross_validate(truth, doubled) > 0.1


def test_reconstruction_suite_passes_on_inversion():
    o4 = make_space(Orthant(4))
    report = verify_reconstruction(Inversion(builtin_algebra(o4)), o4,
                                   trials=40, seed=3, tol=1e-7)
    assert report.passed, [(p.name, p.max_residual) for p in report.failing()]


def test_wrong_degree_map_fails_hua_and_homogeneity():
    o3 = make_space(Orthant(3))
    pw = ComponentwisePower(-3.0)
    report = verify_reconstruction(pw, o3, trials=15, seed=3, tol=1e-3)
    assert not report.passed
    failing = {p.name for p in report.failing()}
    assert "hua_identity" in failing
    assert "derivative_formula" in failing or "derivative_first_order_bound" in failing


def test_quadratic_rep_caches_values():
    o2 = make_space(Orthant(2))
    prep = QuadraticRep(inversion_j(Inversion(builtin_algebra(o2)), o2), o2)
    x = np.array([0.5, -1.5])
    first = prep(x)
    assert prep(x) is first


def test_suite_reports_are_deterministic():
    o3 = make_space(Orthant(3))
    inv = Inversion(builtin_algebra(o3))
    a = verify_reconstruction(inv, o3, trials=10, seed=5, tol=1e-7)
    b = verify_reconstruction(inv, o3, trials=10, seed=5, tol=1e-7)
    assert a.to_canonical_json() == b.to_canonical_json()
