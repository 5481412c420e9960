"""Structure tensors: F, Phi, Lee forms, Nijenhuis tensors, square norm."""

from paratwin.connection import koszul
from paratwin.scalar import Q, ZERO
from paratwin.structure import build_structure_pack
from paratwin.tensor import apply_endo, tensor_equal, transpose


def test_F_symmetries(family121):
    m, tp = family121
    F = tp.sp.F
    assert tensor_equal(F, transpose(F, (0, 2, 1)))
    assert tensor_equal(F, -apply_endo(apply_endo(F, 1, m.P), 2, m.P))


def test_spot_values_at_reference_point(family121):
    _, tp = family121
    sp = tp.sp
    assert tuple(sp.theta.data) == (Q(16), Q(-16), Q(8), Q(-8))
    assert tuple(sp.f.data) == (Q(-16), Q(16), Q(-8), Q(8))
    assert tuple(sp.f_sharp.data) == (Q(-16), Q(16), Q(8), Q(-8))
    assert sp.snorm == Q(384)


def test_one_form_relations(family121):
    m, tp = family121
    sp = tp.sp
    assert tensor_equal(sp.theta_star, -apply_endo(sp.theta, 0, m.P))
    assert tensor_equal(sp.f, -sp.theta_star)
    assert tensor_equal(sp.f_star, -sp.theta)


def test_f_sharp_is_metric_dual(family121):
    m, tp = family121
    sp = tp.sp
    n = m.dim
    gm = m.g.matrix()
    for i in range(n):
        assert sp.f[i] == sum(gm[i][j] * sp.f_sharp[j] for j in range(n))


def test_nijenhuis_vanishes_on_the_family(family121):
    _, tp = family121
    assert tp.sp.N_vec.is_zero()
    assert tensor_equal(tp.sp.Nhat_vec, tp.sp.Phi_vec.scale(Q(-4)))


def test_phi_reconstructs_F(family121):
    m, tp = family121
    sp = tp.sp
    rebuilt = (apply_endo(sp.Phi, 2, m.P)
               + transpose(apply_endo(sp.Phi, 2, m.P), (0, 2, 1)))
    assert tensor_equal(rebuilt, sp.F)


def test_everything_vanishes_on_abelian(abelian4):
    conn = koszul(abelian4.algebra, abelian4.g, abelian4.g_inv)
    sp = build_structure_pack(abelian4, conn)
    assert sp.F.is_zero() and sp.Phi.is_zero()
    assert sp.theta.is_zero() and sp.f.is_zero()
    assert sp.N_vec.is_zero() and sp.Nhat_vec.is_zero()
    assert sp.snorm == ZERO


def test_isotropic_point_has_nonzero_nabla_P():
    """At l1 = l2 the square norm vanishes while nabla P does not."""
    from paratwin.family import FamilyParams, family_pack
    _, tp = family_pack(FamilyParams(Q(1), Q(1), Q(1)))
    assert tp.sp.snorm == ZERO
    assert not tp.sp.F.is_zero()
