"""Pure states, extreme rays, and their interplay with gauge maps.

For each supported cone family the pure states have an explicit
parametrization (coordinate functionals, boundary directions of the Lorentz
cone, rank-one quadratic forms), and each pure state pairs with a normalized
generator of an extreme ray.  The checkers in this module test, on sampled
points, the identities binding gauges at extremal vectors to state values of
the inverted point, the atomic decomposition of interior points, and the
total ordering of order intervals below an extremal vector.
"""

from __future__ import annotations

from dataclasses import dataclass

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
    cone_label,
    gauge_M,
    membership_slack,
    order_unit_norm,
    sample_interior_rng,
    smat,
    svec,
)
from .errors import NotInteriorError, UnsupportedConeError
from .linalg import sym_eig
from .report import PropertyResult, VerificationReport


@dataclass(eq=False)
class PureState:
    """Extreme normalized positive functional, acting by Euclidean pairing."""

    covector: np.ndarray
    label: str

    def __call__(self, x) -> float:
        return float(self.covector @ np.asarray(x, dtype=float))


@dataclass(eq=False)
class ExtremalVector:
    """Generator of an extreme ray, normalized against the order unit."""

    point: np.ndarray
    label: str


def pure_states(space: OrderUnitSpace, count: int, seed: int = 42) -> list[PureState]:
    """Deterministic family of pure states, each normalized at the unit.

    Orthant states are the coordinate functionals; Lorentz states come from
    unit boundary directions; PSD states are rank-one quadratic forms from
    sampled unit vectors.  Direct sums embed the states of their parts.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    return _pure_states(space.cone, count, rng)


def _pure_states(cone: ConeSpec, count: int, rng: np.random.Generator) -> list[PureState]:
    n = cone_dim(cone)
    if isinstance(cone, Orthant):
        eye = np.eye(n)
        return [PureState(eye[i], f"coord:{i}") for i in range(min(count, n))]
    if isinstance(cone, Lorentz):
        out = []
        for k in range(count):
            omega = rng.standard_normal(n - 1)
            norm = np.linalg.norm(omega)
            if norm == 0.0:
                omega = np.eye(n - 1)[0]
            else:
                omega /= norm
            cov = np.concatenate(([1.0], omega))
            out.append(PureState(cov, f"boundary:{k}"))
        return out
    if isinstance(cone, SymPSD):
        out = []
        for k in range(count):
            u = rng.standard_normal(cone.d)
            u /= np.linalg.norm(u)
            out.append(PureState(svec(np.outer(u, u)), f"rank_one:{k}"))
        return out
    if isinstance(cone, DirectSum):
        out = []
        slices = block_slices(cone)
        for i, (part, sl) in enumerate(zip(cone.parts, slices)):
            for st in _pure_states(part, count, rng):
                cov = np.zeros(n)
                cov[sl] = st.covector
                out.append(PureState(cov, f"block{i}:{st.label}"))
        return out[:max(count, len(cone.parts))]
    raise UnsupportedConeError(f"no pure-state parametrization for {type(cone)!r}")


def extremal_for_state(space: OrderUnitSpace, state: PureState) -> ExtremalVector:
    """The normalized extreme-ray generator paired with a pure state.

    The pairing uses the same parameter that generated the state, and the
    result always satisfies gauge_M(p, unit) = 1.
    """
    cone = space.cone
    return _extremal_for_state(cone, state)


def _extremal_for_state(cone: ConeSpec, state: PureState) -> ExtremalVector:
    if isinstance(cone, Orthant):
        idx = int(np.argmax(state.covector))
        p = np.zeros(cone.n)
        p[idx] = 1.0
        return ExtremalVector(p, state.label)
    if isinstance(cone, Lorentz):
        omega = state.covector[1:]
        p = 0.5 * np.concatenate(([1.0], omega))
        return ExtremalVector(p, state.label)
    if isinstance(cone, SymPSD):
        return ExtremalVector(state.covector.copy(), state.label)
    if isinstance(cone, DirectSum):
        slices = block_slices(cone)
        for i, (part, sl) in enumerate(zip(cone.parts, slices)):
            sub = state.covector[sl]
            if np.any(sub != 0.0):
                inner = _extremal_for_state(part, PureState(sub, state.label))
                p = np.zeros(cone_dim(cone))
                p[sl] = inner.point
                return ExtremalVector(p, state.label)
    raise UnsupportedConeError(f"no extremal parametrization for state {state.label!r}")


def state_extremal_pairs(space: OrderUnitSpace, count: int,
                         seed: int = 42) -> list[tuple[PureState, ExtremalVector]]:
    states = pure_states(space, count, seed)
    return [(s, extremal_for_state(space, s)) for s in states]


# --------------------------------------------------------------------------
# checkers
# --------------------------------------------------------------------------

def check_state_gauge_identity(map_spec, space: OrderUnitSpace, trials: int = 50,
                               seed: int = 42, tol: float = 1e-8,
                               state_count: int = 16) -> VerificationReport:
    """Gauge of an extremal vector against the state value of the image.

    For each sampled interior g and each generated state/extremal pair the
    upper gauge of the extremal relative to g must equal the state evaluated
    at the image of g.  The map must fix the order unit (use the recovered
    inversion for maps that do not).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    unit = np.asarray(space.unit)
    fixed = order_unit_norm(space, map_spec.apply(unit) - unit)
    pairs = state_extremal_pairs(space, state_count, seed)

    worst_norm = 0.0
    worst_ident = 0.0
    for state, extremal in pairs:
        worst_norm = max(worst_norm, abs(gauge_M(space, extremal.point, unit) - 1.0))
    for _ in range(trials):
        g = sample_interior_rng(space, rng, 1.0)
        fg = map_spec.apply(g)
        for state, extremal in pairs:
            lhs = gauge_M(space, extremal.point, g)
            rhs = state(fg)
            worst_ident = max(worst_ident, abs(lhs - rhs) / (1.0 + abs(rhs)))

    props = [
        PropertyResult.from_residual("map_fixes_unit", 1, fixed, 1e-9),
        PropertyResult.from_residual("extremal_normalization", len(pairs), worst_norm, 1e-10),
        PropertyResult.from_residual("state_gauge_identity", trials * len(pairs),
                                     worst_ident, tol),
    ]
    return VerificationReport.from_properties(
        f"state_gauge:{cone_label(space.cone)}", seed, props)


def _atomicity_maximizer(space: OrderUnitSpace, state: PureState,
                         g: np.ndarray) -> ExtremalVector:
    """Extremal vector attaining the atomic-decomposition supremum at a state.

    Orthant and PSD maximizers are in closed form; the Lorentz maximizer is
    the fixed point of the stationarity condition on the boundary sphere,
    found by a deterministic iteration.
    """
    cone = space.cone
    if isinstance(cone, Orthant):
        return _extremal_for_state(cone, state)
    if isinstance(cone, SymPSD):
        w = _state_direction_psd(cone, state)
        u = smat(g) @ w
        u /= np.linalg.norm(u)
        return ExtremalVector(svec(np.outer(u, u)), f"maximizer:{state.label}")
    if isinstance(cone, Lorentz):
        omega = state.covector[1:]
        gbar = np.asarray(g[1:], dtype=float)
        g0 = float(g[0])
        theta = omega.copy()
        for _ in range(500):
            new = (g0 - gbar @ theta) * omega + (1.0 + omega @ theta) * gbar
            norm = np.linalg.norm(new)
            if norm == 0.0:
                break
            new /= norm
            if np.linalg.norm(new - theta) < 1e-15:
                theta = new
                break
            theta = new
        return ExtremalVector(0.5 * np.concatenate(([1.0], theta)),
                              f"maximizer:{state.label}")
    raise UnsupportedConeError(f"no atomicity maximizer for {type(cone)!r}")


def _state_direction_psd(cone: SymPSD, state: PureState) -> np.ndarray:
    w, v = sym_eig(smat(state.covector))
    return v[:, -1]


def check_strong_atomicity(space: OrderUnitSpace, map_spec, g, trials: int = 64,
                           seed: int = 42, tol: float = 1e-7) -> VerificationReport:
    """Atomic reconstruction of an interior point from the extremals below it.

    At each sampled pure state, multiples of sampled extremal vectors never
    exceed the point's state value, and the known maximizing extremal attains
    it.  The supplied map, when it fixes the unit, supplies an independent
    route to the gauge values, which is cross-checked as well.
    """
    if isinstance(space.cone, DirectSum):
        raise UnsupportedConeError("atomicity checks run per summand")
    g = as_vector(g, space.dim)
    if membership_slack(space.cone, g) <= 0.0:
        raise NotInteriorError("atomicity check needs an interior point")
    unit = np.asarray(space.unit)

    pairs = state_extremal_pairs(space, min(trials, 16), seed)
    sampled = [ext for _, ext in state_extremal_pairs(space, trials, seed + 1)]

    worst_upper = 0.0   # sampled extremals must stay below the state value
    worst_attain = 0.0  # the maximizer must reach it
    worst_cross = 0.0   # map-based route agrees with the gauge route
    map_fixes_unit = order_unit_norm(space, map_spec.apply(unit) - unit) <= 1e-9
    fg = map_spec.apply(g) if map_fixes_unit else None

    for state, paired_ext in pairs:
        target = state(g)
        for ext in sampled:
            val = state(ext.point) / gauge_M(space, ext.point, g)
            worst_upper = max(worst_upper, (val - target) / (1.0 + abs(target)))
        best = _atomicity_maximizer(space, state, g)
        attained = state(best.point) / gauge_M(space, best.point, g)
        worst_attain = max(worst_attain, abs(attained - target) / (1.0 + abs(target)))
        if map_fixes_unit:
            worst_cross = max(worst_cross,
                              abs(gauge_M(space, paired_ext.point, g) - state(fg))
                              / (1.0 + abs(state(fg))))

    props = [
        PropertyResult.from_residual("sampled_inequality", len(pairs) * len(sampled),
                                     worst_upper, 1e-9),
        PropertyResult.from_residual("maximizer_attains", len(pairs), worst_attain, tol),
    ]
    if map_fixes_unit:
        props.append(PropertyResult.from_residual(
            "gauge_vs_map_route", len(pairs), worst_cross, max(tol, 1e-8)))
    return VerificationReport.from_properties(
        f"strong_atomicity:{cone_label(space.cone)}", seed, props)


def check_order_interval_segment(space: OrderUnitSpace, x, p: ExtremalVector,
                                 trials: int = 100, seed: int = 42,
                                 tol: float = 1e-8) -> VerificationReport:
    """The order interval from x to x plus an extremal vector is a segment.

    Points are drawn by perturbing segment points and projecting back into
    the interval with a membership bisection; every projected point must be
    within tolerance of the segment through x with direction p.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    x = as_vector(x, space.dim)
    if membership_slack(space.cone, x) <= 0.0:
        raise NotInteriorError("interval base point must be interior")
    rng = np.random.default_rng(seed)
    direction = np.asarray(p.point, dtype=float)
    top = x + direction
    norm_p2 = float(direction @ direction)

    def in_interval(z: np.ndarray) -> bool:
        eps = -1e-12 * (1.0 + _scale)
        return membership_slack(space.cone, z - x) >= eps and \
            membership_slack(space.cone, top - z) >= eps

    _scale = float(np.abs(x).max() + np.abs(direction).max())
    worst = 0.0
    for _ in range(trials):
        t = rng.uniform(0.0, 1.0)
        base = x + t * direction
        noise = rng.standard_normal(space.dim)
        noise *= 0.2 / max(order_unit_norm(space, noise), 1e-300)
        lo, hi = 0.0, 1.0
        if in_interval(base + noise):
            lo = 1.0
        else:
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if in_interval(base + mid * noise):
                    lo = mid
                else:
                    hi = mid
        z = base + lo * noise
        t_fit = float((z - x) @ direction) / norm_p2
        worst = max(worst, float(np.linalg.norm(z - (x + t_fit * direction))))

    props = [PropertyResult.from_residual("interval_is_segment", trials, worst, tol)]
    return VerificationReport.from_properties(
        f"order_interval:{cone_label(space.cone)}", seed, props)
