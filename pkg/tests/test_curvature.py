"""Curvature packs: symmetries, traces, spot values, flat references."""

import pytest

from paratwin.curvature import (check_curvature_like, is_scalar_flat,
                                riemann_metric, riemann_twin)
from paratwin.connection import koszul
from paratwin.errors import ConsistencyError
from paratwin.family import FamilyParams, family_pack
from paratwin.manifold import abelian_manifold
from paratwin.scalar import Q, ZERO
from paratwin.tensor import tensor_equal, transpose


def test_curvature_like_symmetries(family121):
    _, tp = family121
    check_curvature_like(tp.curv.R)
    check_curvature_like(tp.curv_twin.R)
    # pair symmetry R(x,y,z,w) = R(z,w,x,y) holds as well for both metrics
    assert tensor_equal(tp.curv.R, transpose(tp.curv.R, (2, 3, 0, 1)))
    assert tensor_equal(tp.curv_twin.R, transpose(tp.curv_twin.R, (2, 3, 0, 1)))


def test_perturbed_tensor_is_rejected(family121):
    _, tp = family121
    from paratwin.tensor import TensorDense
    data = list(tp.curv.R.data)
    data[tp.curv.R.flat((0, 1, 1, 0))] += Q(1)
    broken = TensorDense(4, tp.curv.R.variance, data)
    with pytest.raises(ConsistencyError):
        check_curvature_like(broken)


def test_spot_values_at_reference_point(family121):
    _, tp = family121
    assert tp.curv.tau == Q(-144)
    assert tp.curv.R[0, 1, 1, 0] == Q(-32)
    assert tp.curv_twin.tau == Q(144)


def test_ricci_is_symmetric(family121):
    _, tp = family121
    assert tensor_equal(tp.curv.ricci, transpose(tp.curv.ricci, (1, 0)))
    assert tensor_equal(tp.curv_twin.ricci, transpose(tp.curv_twin.ricci, (1, 0)))


def test_ricci_trace_gives_tau(family121):
    m, tp = family121
    n = m.dim
    ginv = m.g_inv.matrix()
    rho = tp.curv.ricci
    total = sum(ginv[i][j] * rho[i, j] for i in range(n) for j in range(n))
    assert total == tp.curv.tau


def test_scalar_flat_locus():
    _, tp = family_pack(FamilyParams(Q(2), Q(-2), Q(-1)))
    assert is_scalar_flat(tp.curv.tau) and is_scalar_flat(tp.curv_twin.tau)
    _, tp = family_pack(FamilyParams(Q(2), Q(1), Q(-1)))
    assert not is_scalar_flat(tp.curv.tau)


def test_abelian_is_flat():
    m = abelian_manifold(4)
    conn = koszul(m.algebra, m.g, m.g_inv)
    pack = riemann_metric(m, conn)
    assert pack.R.is_zero() and pack.ricci.is_zero() and pack.tau == ZERO
    conn_twin = koszul(m.algebra, m.g_twin, m.g_twin_inv)
    assert riemann_twin(m, conn_twin).R.is_zero()
