"""Composable bijections of open cones with exact forward and inverse routes.

A map spec is any object exposing apply / apply_inverse.  The concrete specs
here are: algebra inversion, linear pre/post conjugation of an inner map,
composition, inversion of a recovered product tensor, and a componentwise
power map kept as a deliberately-wrong control for the checkers.  An empty
composition acts as the identity map.

The two checkers sample interior points and measure, property by property,
whether a map reverses or preserves gauges: gauge transformation law,
homogeneity degree, order behaviour on comparable pairs, Thompson-metric
isometry, and for the reversing case convexity and the local Lipschitz
bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cones import (
    ConeSpec,
    DirectSum,
    Lorentz,
    Orthant,
    OrderUnitSpace,
    SymPSD,
    as_vector,
    block_slices,
    cone_dim,
    cone_from_json,
    cone_label,
    cone_to_json,
    gauge_M,
    make_space,
    membership_slack,
    order_unit_norm,
    sample_interior_rng,
    sample_positive_rng,
    smat,
    svec,
    thompson_distance,
)
from .errors import (
    NotInteriorError,
    NotLinearizableError,
    SymconeError,
    UnsupportedConeError,
)
from .jordan import AlgebraHandle, ProductTensor, builtin_algebra, tensor_inverse
from .linalg import mat_inverse
from .report import PropertyResult, VerificationReport


# --------------------------------------------------------------------------
# map specs
# --------------------------------------------------------------------------

@dataclass(eq=False)
class Inversion:
    """Jordan inversion of a builtin algebra; an involution fixing the unit."""

    algebra: AlgebraHandle

    def apply(self, x) -> np.ndarray:
        x = as_vector(x, self.algebra.space.dim)
        if membership_slack(self.algebra.space.cone, x) <= 0.0:
            raise NotInteriorError("inversion needs a strictly interior point")
        return tensor_inverse(self.algebra.product, x)

    def apply_inverse(self, y) -> np.ndarray:
        return self.apply(y)


@dataclass(eq=False)
class Recovered:
    """Inversion in a reconstructed product tensor.

    Treated as involutive; if the tensor is not a genuine Jordan product the
    round-trip residual check in the verifiers exposes it.
    """

    product: ProductTensor

    def apply(self, x) -> np.ndarray:
        return tensor_inverse(self.product, x)

    def apply_inverse(self, y) -> np.ndarray:
        return self.apply(y)


@dataclass(eq=False)
class LinearConjugate:
    """post o inner o pre with linear cone isomorphisms on both sides."""

    pre: np.ndarray
    inner: object
    post: np.ndarray
    _pre_inv: np.ndarray = field(init=False, repr=False)
    _post_inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.pre = np.asarray(self.pre, dtype=float)
        self.post = np.asarray(self.post, dtype=float)
        self._pre_inv = mat_inverse(self.pre)
        self._post_inv = mat_inverse(self.post)

    def apply(self, x) -> np.ndarray:
        return self.post @ self.inner.apply(self.pre @ np.asarray(x, dtype=float))

    def apply_inverse(self, y) -> np.ndarray:
        return self._pre_inv @ self.inner.apply_inverse(
            self._post_inv @ np.asarray(y, dtype=float))


@dataclass(eq=False)
class Compose:
    """Left-to-right composition; empty composition is the identity map."""

    parts: tuple

    def __post_init__(self):
        self.parts = tuple(self.parts)

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        for part in self.parts:
            x = part.apply(x)
        return x

    def apply_inverse(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        for part in reversed(self.parts):
            y = part.apply_inverse(y)
        return y


@dataclass(eq=False)
class ComponentwisePower:
    """x -> x**p on the open orthant.

    Order-reversing for negative p but homogeneous of degree p, so for
    p != -1 it fails the reversing checker; kept as a negative control.
    """

    power: float

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0.0):
            raise NotInteriorError("power map needs strictly positive coordinates")
        return x ** self.power

    def apply_inverse(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if np.any(y <= 0.0):
            raise NotInteriorError("power map needs strictly positive coordinates")
        return y ** (1.0 / self.power)


def identity_map() -> Compose:
    return Compose(())


def apply(map_spec, x) -> np.ndarray:
    """Forward evaluation of a map spec."""
    return map_spec.apply(x)


def apply_inverse(map_spec, y) -> np.ndarray:
    """Inverse evaluation of a map spec."""
    return map_spec.apply_inverse(y)


# --------------------------------------------------------------------------
# seeded cone automorphisms, used to wrap inversions so they move the unit
# --------------------------------------------------------------------------

def random_cone_automorphism(cone: ConeSpec, seed: int) -> np.ndarray:
    """A deterministic linear bijection of the cone onto itself."""
    rng = np.random.default_rng(seed)
    if isinstance(cone, Orthant):
        n = cone.n
        perm = rng.permutation(n)
        diag = rng.uniform(0.5, 2.0, size=n)
        mat = np.zeros((n, n))
        mat[np.arange(n), perm] = diag
        return mat
    if isinstance(cone, Lorentz):
        n = cone.n
        u = rng.standard_normal(n - 1)
        u /= np.linalg.norm(u)
        alpha = rng.uniform(-0.8, 0.8)
        boost = np.eye(n)
        boost[0, 0] = math.cosh(alpha)
        boost[0, 1:] = math.sinh(alpha) * u
        boost[1:, 0] = math.sinh(alpha) * u
        boost[1:, 1:] = np.eye(n - 1) + (math.cosh(alpha) - 1.0) * np.outer(u, u)
        q, _ = np.linalg.qr(rng.standard_normal((n - 1, n - 1)))
        rot = np.eye(n)
        rot[1:, 1:] = q
        return rng.uniform(0.5, 2.0) * rot @ boost
    if isinstance(cone, SymPSD):
        d = cone.d
        g = rng.standard_normal((d, d)) * 0.4 + np.eye(d)
        n = cone_dim(cone)
        mat = np.empty((n, n))
        eye = np.eye(n)
        for k in range(n):
            mat[:, k] = svec(g.T @ smat(eye[:, k]) @ g)
        return mat
    if isinstance(cone, DirectSum):
        n = cone_dim(cone)
        mat = np.zeros((n, n))
        for i, (part, sl) in enumerate(zip(cone.parts, block_slices(cone))):
            mat[sl, sl] = random_cone_automorphism(part, seed + 17 * (i + 1))
        return mat
    raise UnsupportedConeError(f"unknown cone kind {type(cone)!r}")


def conjugated_inversion(space: OrderUnitSpace, seed: int) -> LinearConjugate:
    """Inversion wrapped in automorphisms, so it no longer fixes the unit."""
    pre = random_cone_automorphism(space.cone, seed)
    post = random_cone_automorphism(space.cone, seed + 1)
    return LinearConjugate(pre, Inversion(builtin_algebra(space)), post)


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------

_HOMOGENEITY_SCALES = (0.5, 2.0, 7.0)


def _guarded_max(current: float, fn) -> float:
    """Fold a property evaluation into a running max; failures become inf."""
    if math.isinf(current):
        return current
    try:
        return max(current, fn())
    except SymconeError:
        return math.inf


def verify_gauge_reversing(map_spec, space_src: OrderUnitSpace,
                           space_dst: OrderUnitSpace, trials: int = 200,
                           seed: int = 42, tol: float = 1e-9) -> VerificationReport:
    """Property suite certifying a map as a gauge-reversing bijection.

    Checks on sampled interior pairs: the inverse really inverts, the upper
    gauge transforms with swapped arguments, homogeneity of degree -1, order
    reversal on comparable pairs, Thompson-metric isometry, convexity, and
    the square-Lipschitz bound on a metric ball.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    radius = 0.6
    lam = math.exp(radius)
    # maps that move the unit push the image ball up by this gauge factor
    try:
        kappa = gauge_M(space_dst, map_spec.apply(np.asarray(space_src.unit)),
                        np.asarray(space_dst.unit))
    except SymconeError:
        kappa = math.inf

    r_round = r_gauge = r_homog = r_order = r_isom = r_convex = r_lip = 0.0
    for _ in range(trials):
        x = sample_interior_rng(space_src, rng, radius)
        y = sample_interior_rng(space_src, rng, radius)
        try:
            fx = map_spec.apply(x)
            fy = map_spec.apply(y)
        except SymconeError:
            r_round = r_gauge = r_homog = r_order = r_isom = math.inf
            r_convex = r_lip = math.inf
            break

        def _round():
            return order_unit_norm(space_src, map_spec.apply_inverse(fx) - x)

        def _gauge():
            m_ref = gauge_M(space_src, y, x)
            return abs(gauge_M(space_dst, fx, fy) - m_ref) / m_ref

        def _homog():
            worst = 0.0
            for lam_s in _HOMOGENEITY_SCALES:
                dev = order_unit_norm(space_dst, map_spec.apply(lam_s * x) - fx / lam_s)
                worst = max(worst, dev / (1.0 + order_unit_norm(space_dst, fx) / lam_s))
            return worst

        def _order():
            p = sample_positive_rng(space_src, rng, rng.uniform(0.1, 0.8))
            slack = membership_slack(space_dst.cone, fx - map_spec.apply(x + p))
            return max(0.0, -slack)

        def _isom():
            return abs(thompson_distance(space_dst, fx, fy)
                       - thompson_distance(space_src, x, y))

        def _convex():
            t = rng.uniform(0.0, 1.0)
            mix = map_spec.apply((1.0 - t) * x + t * y)
            slack = membership_slack(space_dst.cone, (1.0 - t) * fx + t * fy - mix)
            return max(0.0, -slack)

        def _lip():
            # sampling radius keeps x, y >= lam^{-1} * unit
            return order_unit_norm(space_dst, fx - fy) \
                - kappa * lam * lam * order_unit_norm(space_src, x - y)

        r_round = _guarded_max(r_round, _round)
        r_gauge = _guarded_max(r_gauge, _gauge)
        r_homog = _guarded_max(r_homog, _homog)
        r_order = _guarded_max(r_order, _order)
        r_isom = _guarded_max(r_isom, _isom)
        r_convex = _guarded_max(r_convex, _convex)
        r_lip = _guarded_max(r_lip, _lip)

    props = [
        PropertyResult.from_residual("round_trip", trials, r_round, tol),
        PropertyResult.from_residual("gauge_reversal", trials, r_gauge, tol),
        PropertyResult.from_residual("homogeneity_deg_minus_one", trials, r_homog, tol),
        PropertyResult.from_residual("order_reversal", trials, r_order, tol),
        PropertyResult.from_residual("thompson_isometry", trials, r_isom, tol),
        PropertyResult.from_residual("convexity", trials, r_convex, tol),
        PropertyResult.from_residual("metric_ball_lipschitz", trials, r_lip, tol),
    ]
    return VerificationReport.from_properties(
        f"gauge_reversing:{cone_label(space_src.cone)}", seed, props)


def verify_gauge_preserving(map_spec, space_src: OrderUnitSpace,
                            space_dst: OrderUnitSpace, trials: int = 200,
                            seed: int = 42, tol: float = 1e-9) -> VerificationReport:
    """Mirror of the reversing suite: same-argument gauge law, degree +1
    homogeneity, and order preservation."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    radius = 0.6

    r_round = r_gauge = r_homog = r_order = r_isom = 0.0
    for _ in range(trials):
        x = sample_interior_rng(space_src, rng, radius)
        y = sample_interior_rng(space_src, rng, radius)
        try:
            fx = map_spec.apply(x)
            fy = map_spec.apply(y)
        except SymconeError:
            r_round = r_gauge = r_homog = r_order = r_isom = math.inf
            break

        def _round():
            return order_unit_norm(space_src, map_spec.apply_inverse(fx) - x)

        def _gauge():
            m_ref = gauge_M(space_src, x, y)
            return abs(gauge_M(space_dst, fx, fy) - m_ref) / m_ref

        def _homog():
            worst = 0.0
            for lam_s in _HOMOGENEITY_SCALES:
                dev = order_unit_norm(space_dst, map_spec.apply(lam_s * x) - lam_s * fx)
                worst = max(worst, dev / (1.0 + lam_s * order_unit_norm(space_dst, fx)))
            return worst

        def _order():
            p = sample_positive_rng(space_src, rng, rng.uniform(0.1, 0.8))
            slack = membership_slack(space_dst.cone, map_spec.apply(x + p) - fx)
            return max(0.0, -slack)

        def _isom():
            return abs(thompson_distance(space_dst, fx, fy)
                       - thompson_distance(space_src, x, y))

        r_round = _guarded_max(r_round, _round)
        r_gauge = _guarded_max(r_gauge, _gauge)
        r_homog = _guarded_max(r_homog, _homog)
        r_order = _guarded_max(r_order, _order)
        r_isom = _guarded_max(r_isom, _isom)

    props = [
        PropertyResult.from_residual("round_trip", trials, r_round, tol),
        PropertyResult.from_residual("gauge_preservation", trials, r_gauge, tol),
        PropertyResult.from_residual("homogeneity_deg_plus_one", trials, r_homog, tol),
        PropertyResult.from_residual("order_preservation", trials, r_order, tol),
        PropertyResult.from_residual("thompson_isometry", trials, r_isom, tol),
    ]
    return VerificationReport.from_properties(
        f"gauge_preserving:{cone_label(space_src.cone)}", seed, props)


def linearize_gauge_preserving(map_spec, space: OrderUnitSpace,
                               seed: int = 42) -> np.ndarray:
    """Matrix acting like the map on the cone.

    A gauge-preserving bijection is the restriction of a linear isomorphism,
    so probing the unit and unit-plus-basis directions determines it.  The
    result is validated on sampled interior points; disagreement above 1e-6
    means the map was not gauge-preserving.
    """
    n = space.dim
    unit = np.asarray(space.unit)
    f_unit = map_spec.apply(unit)
    cols = np.empty((n, n))
    eye = np.eye(n)
    for j in range(n):
        t = 1.0
        for _ in range(80):
            if membership_slack(space.cone, unit + t * eye[:, j]) > 0.0 and \
                    membership_slack(space.cone, unit - t * eye[:, j]) > 0.0:
                break
            t *= 0.5
        else:
            raise NotLinearizableError("could not probe the cone near the unit")
        cols[:, j] = (map_spec.apply(unit + t * eye[:, j]) - f_unit) / t

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(25):
        x = sample_interior_rng(space, rng, 1.0)
        fx = map_spec.apply(x)
        worst = max(worst, float(np.abs(cols @ x - fx).max())
                    / (1.0 + float(np.abs(fx).max())))
        if membership_slack(space.cone, cols @ x) < -1e-9:
            raise NotLinearizableError("probe matrix does not preserve the cone")
    if worst > 1e-6:
        raise NotLinearizableError(
            f"map deviates from its linear probe by {worst:.3e}")
    return cols


# --------------------------------------------------------------------------
# JSON codec
# --------------------------------------------------------------------------

def map_to_json(map_spec) -> dict:
    if isinstance(map_spec, Inversion):
        return {"kind": "inversion", "cone": cone_to_json(map_spec.algebra.space.cone)}
    if isinstance(map_spec, Recovered):
        return {"kind": "recovered", "product": map_spec.product.to_json()}
    if isinstance(map_spec, LinearConjugate):
        return {
            "kind": "conjugate",
            "pre": map_spec.pre.tolist(),
            "inner": map_to_json(map_spec.inner),
            "post": map_spec.post.tolist(),
        }
    if isinstance(map_spec, Compose):
        return {"kind": "compose", "parts": [map_to_json(p) for p in map_spec.parts]}
    if isinstance(map_spec, ComponentwisePower):
        return {"kind": "cwpower", "power": map_spec.power}
    raise TypeError(f"cannot serialize map {type(map_spec)!r}")


def map_from_json(data: dict):
    kind = data.get("kind")
    if kind == "inversion":
        return Inversion(builtin_algebra(make_space(cone_from_json(data["cone"]))))
    if kind == "recovered":
        return Recovered(ProductTensor.from_json(data["product"]))
    if kind == "conjugate":
        return LinearConjugate(np.asarray(data["pre"], dtype=float),
                               map_from_json(data["inner"]),
                               np.asarray(data["post"], dtype=float))
    if kind == "compose":
        return Compose(tuple(map_from_json(p) for p in data["parts"]))
    if kind == "cwpower":
        return ComponentwisePower(float(data["power"]))
    raise UnsupportedConeError(f"unknown map kind {kind!r}")
