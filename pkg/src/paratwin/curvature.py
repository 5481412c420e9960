"""Curvature of invariant metric connections.

In an invariant frame the connection coefficients are constants, so the
curvature is assembled purely from Gamma and the structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .connection import Connection, curvature_operator
from .errors import ConsistencyError, ValidationError
from .manifold import LieAlgebraModel, WManifold
from .scalar import ZERO
from .tensor import (DOWN, TensorDense, contract, lower_index, raise_index,
                     tensor_equal, transpose)


@dataclass(frozen=True)
class CurvaturePack:
    R_vec: TensorDense   # (1,3), [l, i, j, k]: R(X_i,X_j)X_k = R^l_{ijk} X_l
    R: TensorDense       # (0,4), R_{ijkl} = g(R(X_i,X_j)X_k, X_l)
    ricci: TensorDense   # (0,2)
    tau: Fraction


def check_curvature_like(R: TensorDense):
    """Both antisymmetries and the first Bianchi identity, exactly."""
    if not tensor_equal(R, -transpose(R, (1, 0, 2, 3))):
        raise ConsistencyError("curvature tensor is not antisymmetric in (x, y)")
    if not tensor_equal(R, -transpose(R, (0, 1, 3, 2))):
        raise ConsistencyError("curvature tensor is not antisymmetric in (z, w)")
    bianchi = R + transpose(R, (2, 0, 1, 3)) + transpose(R, (1, 2, 0, 3))
    if not bianchi.is_zero():
        raise ConsistencyError("first Bianchi identity fails")


def riemann(conn: Connection, alg: LieAlgebraModel,
            lowering_metric: TensorDense, metric_inv: TensorDense) -> CurvaturePack:
    """Curvature pack of a torsion-free invariant metric connection.

    The (0,4) form is lowered with lowering_metric; the Ricci trace
    rho(y,z) = g^{ij} R(e_i, y, z, e_j) and tau use its inverse.
    """
    if lowering_metric.variance != (DOWN, DOWN):
        raise ValidationError("lowering metric must be a (0,2) tensor")
    R_vec = curvature_operator(conn, alg)
    # R_{ijkl} = g_{lm} R^m_{ijk}
    R = transpose(lower_index(R_vec, 0, lowering_metric), (1, 2, 3, 0))
    check_curvature_like(R)

    # rho(y,z) = g^{ij} R_{iyzj}
    raised = raise_index(R, 0, metric_inv)
    ricci = contract(raised, 0, 3)
    traced = raise_index(ricci, 0, metric_inv)
    tau = contract(traced, 0, 1).item()
    return CurvaturePack(R_vec=R_vec, R=R, ricci=ricci, tau=tau)


def riemann_metric(m: WManifold, conn: Connection) -> CurvaturePack:
    """Curvature of the Levi-Civita connection of g, lowered and traced with g."""
    return riemann(conn, m.algebra, m.g, m.g_inv)


def riemann_twin(m: WManifold, conn_twin: Connection) -> CurvaturePack:
    """Curvature of the Levi-Civita connection of g~, lowered and traced with g~."""
    return riemann(conn_twin, m.algebra, m.g_twin, m.g_twin_inv)


def is_scalar_flat(tau: Fraction) -> bool:
    return tau == ZERO
