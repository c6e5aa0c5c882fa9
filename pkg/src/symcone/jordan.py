"""Builtin Jordan algebra structures on the supported cones, plus checkers.

A product is stored as a dense symmetric tensor: entry [i, j] holds the
coordinates of the product of the i-th and j-th ambient basis vectors.  The
orthant carries the componentwise product, the Lorentz cone the spin-factor
product, and PSD matrices the symmetrized matrix product; direct sums act
blockwise.

The checkers sample points from the unit ball of the order-unit norm and
report worst-case residuals of the quadratic-representation axioms and of
the norm compatibility laws, each scaled by a degree-matched factor so that
tolerances stay meaningful across dimensions.
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
    default_unit,
    membership_slack,
    order_unit_norm,
    sample_positive_rng,
    smat,
    svec,
)
from .errors import (
    DimensionMismatchError,
    NotInvertibleError,
    SingularMatrixError,
    UnsupportedConeError,
)
from .linalg import solve_linear
from .report import PropertyResult, VerificationReport

MAX_DIM = 64


@dataclass(eq=False)
class ProductTensor:
    """Dense symmetric bilinear product with a unit element."""

    n: int
    unit: np.ndarray
    table: np.ndarray  # shape (n, n, n); [i, j] = coordinates of b_i * b_j

    def __post_init__(self):
        if self.n > MAX_DIM:
            raise DimensionMismatchError(f"product tensors are capped at n={MAX_DIM}")
        self.unit = as_vector(self.unit, self.n)
        table = np.asarray(self.table, dtype=float)
        if table.shape != (self.n, self.n, self.n):
            raise DimensionMismatchError(f"table shape {table.shape} != {(self.n,) * 3}")
        self.table = 0.5 * (table + table.transpose(1, 0, 2))

    def multiply(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return (x @ self.table.reshape(self.n, -1)).reshape(self.n, self.n).T @ y

    def square(self, x) -> np.ndarray:
        return self.multiply(x, x)

    def power(self, x, k: int) -> np.ndarray:
        """k-th power with the convention that the 0-th power is the unit."""
        if k < 0:
            raise ValueError("power must be >= 0")
        out = self.unit.copy()
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def left_mult_matrix(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x @ self.table.reshape(self.n, -1)).reshape(self.n, self.n).T

    def unit_law_residual(self) -> float:
        t_unit = self.left_mult_matrix(self.unit)
        return float(np.abs(t_unit - np.eye(self.n)).max())

    def to_json(self) -> dict:
        return {"n": self.n, "unit": self.unit.tolist(), "table": self.table.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "ProductTensor":
        return cls(int(data["n"]), np.asarray(data["unit"], dtype=float),
                   np.asarray(data["table"], dtype=float))


@dataclass(eq=False)
class AlgebraHandle:
    """A product tensor tied to the order unit space it lives on."""

    space: OrderUnitSpace
    product: ProductTensor


def _orthant_table(n: int) -> np.ndarray:
    table = np.zeros((n, n, n))
    for i in range(n):
        table[i, i, i] = 1.0
    return table


def _lorentz_table(n: int) -> np.ndarray:
    table = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            prod = np.zeros(n)
            prod[0] = 1.0 if i == j else 0.0
            if i == 0 and j > 0:
                prod[j] = 1.0
            elif j == 0 and i > 0:
                prod[i] = 1.0
            table[i, j] = prod
    return table


def _psd_table(d: int) -> np.ndarray:
    n = d * (d + 1) // 2
    basis = [smat(row) for row in np.eye(n)]
    table = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            table[i, j] = svec(0.5 * (basis[i] @ basis[j] + basis[j] @ basis[i]))
    return table


def _builtin_table(cone: ConeSpec) -> np.ndarray:
    if isinstance(cone, Orthant):
        return _orthant_table(cone.n)
    if isinstance(cone, Lorentz):
        return _lorentz_table(cone.n)
    if isinstance(cone, SymPSD):
        return _psd_table(cone.d)
    if isinstance(cone, DirectSum):
        n = cone_dim(cone)
        table = np.zeros((n, n, n))
        for part, sl in zip(cone.parts, block_slices(cone)):
            table[sl, sl, sl] = _builtin_table(part)
        return table
    raise UnsupportedConeError(f"no builtin product for {type(cone)!r}")


def builtin_algebra(space: OrderUnitSpace) -> AlgebraHandle:
    """Standard Jordan structure whose cone of squares is the space's cone.

    Requires the space to carry its default order unit, which is the algebra
    unit in every supported family.
    """
    if not np.array_equal(space.unit, default_unit(space.cone)):
        raise UnsupportedConeError("builtin products assume the default order unit")
    tensor = ProductTensor(space.dim, space.unit.copy(), _builtin_table(space.cone))
    if tensor.unit_law_residual() > 1e-10:
        raise ArithmeticError("builtin product failed the unit law")
    return AlgebraHandle(space, tensor)


# --------------------------------------------------------------------------
# representations and inversion
# --------------------------------------------------------------------------

def lin_rep(alg: AlgebraHandle, x) -> np.ndarray:
    """Matrix of left multiplication by x."""
    return alg.product.left_mult_matrix(x)


def quad_rep(alg: AlgebraHandle, x) -> np.ndarray:
    """Quadratic representation 2*T(x)^2 - T(x*x)."""
    return tensor_quad_rep(alg.product, x)


def tensor_quad_rep(tensor: ProductTensor, x) -> np.ndarray:
    t = tensor.left_mult_matrix(x)
    return 2.0 * (t @ t) - tensor.left_mult_matrix(tensor.square(x))


def inverse(alg: AlgebraHandle, x) -> np.ndarray:
    """Algebra inverse obtained by solving the quadratic representation."""
    return tensor_inverse(alg.product, x)


def tensor_inverse(tensor: ProductTensor, x) -> np.ndarray:
    x = as_vector(x, tensor.n)
    try:
        return solve_linear(tensor_quad_rep(tensor, x), x)
    except SingularMatrixError as exc:
        raise NotInvertibleError(f"element is not invertible: {exc}") from exc


# --------------------------------------------------------------------------
# axiom checkers
# --------------------------------------------------------------------------

def _sample_ball(space: OrderUnitSpace, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(space.dim)
    norm = order_unit_norm(space, z)
    if norm == 0.0:
        return z
    return z * (rng.uniform(0.05, 1.0) / norm)


def quad_rep_bilinear(tensor: ProductTensor, x, y) -> np.ndarray:
    """Polarization of the quadratic representation."""
    return 0.5 * (tensor_quad_rep(tensor, np.asarray(x) + np.asarray(y))
                  - tensor_quad_rep(tensor, x) - tensor_quad_rep(tensor, y))


def check_qj_axioms(alg: AlgebraHandle, trials: int = 100, seed: int = 42,
                    tol: float = 1e-8) -> VerificationReport:
    """Sampled residuals of the three quadratic-representation axioms.

    Residuals are divided by a degree-matched scale: the unit axiom is
    checked once exactly, the triple-evaluation axiom is cubic in x, and the
    composition axiom is quartic in x and quadratic in y.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    tensor = alg.product
    space = alg.space

    r1 = float(np.abs(tensor_quad_rep(tensor, space.unit) - np.eye(tensor.n)).max())
    r2 = r3 = 0.0
    for _ in range(trials):
        x = _sample_ball(space, rng)
        y = _sample_ball(space, rng)
        z = _sample_ball(space, rng)
        nx = order_unit_norm(space, x)
        ny = order_unit_norm(space, y)
        nz = order_unit_norm(space, z)

        ux = tensor_quad_rep(tensor, x)
        lhs = ux @ (quad_rep_bilinear(tensor, y, z) @ x)
        rhs = quad_rep_bilinear(tensor, ux @ y, x) @ z
        scale2 = (1.0 + nx) ** 3 * (1.0 + ny) * (1.0 + nz)
        r2 = max(r2, float(np.abs(lhs - rhs).max()) / scale2)

        op_lhs = tensor_quad_rep(tensor, ux @ y)
        op_rhs = ux @ tensor_quad_rep(tensor, y) @ ux
        scale3 = (1.0 + nx) ** 4 * (1.0 + ny) ** 2
        r3 = max(r3, float(np.abs(op_lhs - op_rhs).max()) / scale3)

    props = [
        PropertyResult.from_residual("qj1_unit", 1, r1, tol),
        PropertyResult.from_residual("qj2_triple", trials, r2, tol),
        PropertyResult.from_residual("qj3_composition", trials, r3, tol),
    ]
    return VerificationReport.from_properties(
        f"qj_axioms:{cone_label(space.cone)}", seed, props)


def check_jb_norm_conditions(alg: AlgebraHandle, trials: int = 100, seed: int = 42,
                             tol: float = 1e-9) -> VerificationReport:
    """Sampled residuals of the norm compatibility laws.

    Checks submultiplicativity, the square-norm identity, monotonicity of
    squares under addition, the operator-norm identity for the quadratic
    representation at the unit, and positivity of the quadratic
    representation on sampled cone elements.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    tensor = alg.product
    space = alg.space

    r_sub = r_sq = r_mono = r_unorm = r_upos = 0.0
    for _ in range(trials):
        x = _sample_ball(space, rng)
        y = _sample_ball(space, rng)
        nx = order_unit_norm(space, x)
        ny = order_unit_norm(space, y)

        r_sub = max(r_sub, (order_unit_norm(space, tensor.multiply(x, y)) - nx * ny)
                    / (1.0 + nx * ny))
        xsq = tensor.square(x)
        r_sq = max(r_sq, abs(order_unit_norm(space, xsq) - nx * nx) / (1.0 + nx * nx))
        r_mono = max(r_mono, (order_unit_norm(space, xsq)
                              - order_unit_norm(space, xsq + tensor.square(y)))
                     / (1.0 + nx * nx))

        ux = tensor_quad_rep(tensor, x)
        r_unorm = max(r_unorm, abs(order_unit_norm(space, ux @ space.unit) - nx * nx)
                      / (1.0 + nx * nx))

        pos = sample_positive_rng(space, rng, rng.uniform(0.1, 1.0))
        slack = membership_slack(space.cone, ux @ pos)
        r_upos = max(r_upos, max(0.0, -slack) / (1.0 + nx * nx))

    props = [
        PropertyResult.from_residual("nc1_submultiplicative", trials, r_sub, tol),
        PropertyResult.from_residual("nc2_square_norm", trials, r_sq, tol),
        PropertyResult.from_residual("nc3_square_monotone", trials, r_mono, tol),
        PropertyResult.from_residual("quad_rep_norm", trials, r_unorm, tol),
        PropertyResult.from_residual("quad_rep_positive", trials, r_upos, tol),
    ]
    return VerificationReport.from_properties(
        f"jb_norm_conditions:{cone_label(space.cone)}", seed, props)
