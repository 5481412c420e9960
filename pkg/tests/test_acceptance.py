"""Acceptance gate: seven criteria, each printed as one pass/fail line.

Every comparison is exact rational equality with zero tolerance.  Criteria
that compare against the bundled reference tables fail where those tables
are internally inconsistent with the connection components they derive
from; the mismatches are documented in the project notes and the criteria
are left to fail honestly rather than weakened.
"""

import sys

import pytest

from paratwin.classify import classify
from paratwin.errors import ValidationError
from paratwin.family import (FamilyParams, build_family, family_pack,
                             grid_points, grid_verification)
from paratwin.manifold import (LieAlgebraModel, abelian_manifold,
                               build_manifold, direct_sum)
from paratwin.scalar import Q
from paratwin.tensor import DOWN, UP, TensorDense, tensor_equal
from paratwin.twin import build_twin_pack, invariance_suite


def announce(capfd, number: int, title: str, ok: bool, reason: str = "") -> None:
    """One line per criterion, written past pytest's output capture."""
    verdict = "PASS" if ok else "FAIL"
    line = f"criterion {number} [{verdict}]: {title}"
    if reason and not ok:
        line += f" -- {reason}"
    with capfd.disabled():
        sys.stdout.write(line + "\n")
        sys.stdout.flush()


@pytest.fixture(scope="module")
def full_grid_report():
    return grid_verification()


@pytest.fixture(scope="module")
def corpus():
    """Family grid + Abelian dim 4 + two dim-8 direct sums, with packs."""
    members = [(p.label(),) + family_pack(p) for p in grid_points()]
    flat = abelian_manifold(4)
    members.append(("abelian dim 4", flat, build_twin_pack(flat)))
    d1 = direct_sum(family_pack(FamilyParams(Q(1), Q(2), Q(1)))[0],
                    family_pack(FamilyParams(Q(-1), Q(1, 2), Q(-1)))[0])
    d2 = direct_sum(family_pack(FamilyParams(Q(0), Q(3), Q(-1)))[0],
                    abelian_manifold(4))
    members.append(("direct sum dim 8 (a)", d1, build_twin_pack(d1)))
    members.append(("direct sum dim 8 (b)", d2, build_twin_pack(d2)))
    return members


def test_criterion_1_family_tables(full_grid_report, capfd):
    title = "component tables verified symbolically over the parameter grid"
    failed = [c for c in full_grid_report.failures() if c.name.startswith("table:")]
    reason = "; ".join(f"{c.name}: {c.detail}" for c in failed)
    announce(capfd, 1, title, not failed, reason)
    assert not failed, reason


def test_criterion_2_spot_scalars(capfd):
    title = "spot scalars at (1, 2, 1)"
    _, tp = family_pack(FamilyParams(Q(1), Q(2), Q(1)))
    sp = tp.sp
    expected = [
        ("tau = -144", tp.curv.tau, Q(-144)),
        ("twin tau = 48", tp.curv_twin.tau, Q(48)),
        ("|nabla P|^2 = 384", sp.snorm, Q(384)),
        ("R_1221 = -32", tp.curv.R[0, 1, 1, 0], Q(-32)),
        ("theta_1 = 16", sp.theta[0], Q(16)),
        ("f_1 = -16", sp.f[0], Q(-16)),
    ]
    failed = [f"{label}: got {got}" for label, got, want in expected if got != want]
    announce(capfd, 2, title, not failed, "; ".join(failed))
    assert not failed, "; ".join(failed)


def test_criterion_3_theorem_claims(full_grid_report, capfd):
    title = "all five structural theorem claims over the parameter grid"
    failed = [c for c in full_grid_report.checks
              if c.name.startswith("claim:") and not c.passed]
    reason = "; ".join(f"{c.name}: {c.detail}" for c in failed)
    announce(capfd, 3, title, not failed, reason)
    assert not failed, reason


def test_criterion_4_invariance_suite(corpus, capfd):
    title = "twin-interchange invariance suite on the full corpus"
    failed = []
    for name, m, tp in corpus:
        report = invariance_suite(m, tp)
        failed += [f"{name}: {c.name}" for c in report.failures()]
    announce(capfd, 4, title, not failed, "; ".join(failed[:4]))
    assert not failed, failed


def test_criterion_5_structural_cross_checks(corpus, capfd):
    title = "independent-route cross-checks on the full corpus"
    # build_twin_pack computes every object twice (twin connection vs
    # Koszul of g~, Phi as connection difference vs its F expression,
    # F reconstruction, K as curvature of D vs R + Q/2 - B/4, K = A - B/4,
    # R~ = R + Q) and raises ConsistencyError on any disagreement, so
    # having a pack is the certificate; classification agreement remains.
    failed = []
    for name, m, tp in corpus:
        if not classify(m, tp.sp).agreement:
            failed.append(f"{name}: classify_f != classify_phi")
        if not tensor_equal(tp.curv_twin.R_vec, tp.curv.R_vec + tp.Q_vec):
            failed.append(f"{name}: R~ != R + Q")
        if not tensor_equal(tp.K_vec, tp.A_vec - tp.B_vec.scale(Q(1, 4))):
            failed.append(f"{name}: K != A - B/4")
    announce(capfd, 5, title, not failed, "; ".join(failed[:4]))
    assert not failed, failed


def test_criterion_6_family_identities(full_grid_report, capfd):
    title = "family-specific identities over the parameter grid"
    failed = [f"{c.name}: {c.detail}" for c in full_grid_report.checks
              if c.name.startswith("identity:") and not c.passed]
    # R~_ijkl = eps R_ijkl componentwise (not part of theorem_checks)
    bad = sum(1 for p in grid_points()
              if not tensor_equal(family_pack(p)[1].curv_twin.R,
                                  family_pack(p)[1].curv.R.scale(p.epsilon)))
    if bad:
        failed.append(f"twin R = eps R (0,4): fails at {bad} grid points")
    announce(capfd, 6, title, not failed, "; ".join(failed))
    assert not failed, failed


def test_criterion_7_negative_controls(capfd):
    title = "negative controls are detected"
    failed = []

    # (a) Jacobi-violating structure constants are rejected
    shape = TensorDense.zeros(4, (UP, DOWN, DOWN))
    data = [Q(0)] * 64
    data[shape.flat((2, 0, 1))], data[shape.flat((2, 1, 0))] = Q(1), Q(-1)
    data[shape.flat((0, 0, 2))], data[shape.flat((0, 2, 0))] = Q(1), Q(-1)
    alg = LieAlgebraModel(4, ("X1", "X2", "X3", "X4"),
                          TensorDense(4, (UP, DOWN, DOWN), data))
    good = build_family(FamilyParams(Q(1), Q(2), Q(1)))
    try:
        build_manifold(alg, good.P, good.g)
        failed.append("Jacobi violation accepted")
    except ValidationError:
        pass

    # (b) a deliberately perturbed expectation table is detected
    report = grid_verification([FamilyParams(Q(1), Q(2), Q(1))],
                               perturb_curvature=True)
    if not any(c.name == "table: curvature" for c in report.failures()):
        failed.append("perturbed curvature expectation went unnoticed")

    # (c) a non-compatible metric is rejected at construction
    bad_g = TensorDense.from_matrix([[1, 0, 0, 0], [0, 2, 0, 0],
                                     [0, 0, -1, 0], [0, 0, 0, -1]], (DOWN, DOWN))
    try:
        build_manifold(good.algebra, good.P, bad_g)
        failed.append("incompatible metric accepted")
    except ValidationError:
        pass

    announce(capfd, 7, title, not failed, "; ".join(failed))
    assert not failed, failed
