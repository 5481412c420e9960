"""Staikova-Gribachev classification of W-manifolds.

Each of the eight classes is a defining identity on F (equivalently on the
potential Phi).  For invariant tensors the identities are decided exactly
by evaluating them on all basis triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ConsistencyError, ValidationError
from .manifold import LieAlgebraModel, WManifold
from .scalar import ZERO, Q
from .structure import StructurePack
from .tensor import TensorDense, apply_endo, tensor_equal, transpose


class ClassLabel(str, Enum):
    W0 = "W0"
    W1 = "W1"
    W2 = "W2"
    W3 = "W3"
    W12 = "W1+W2"
    W13 = "W1+W3"
    W23 = "W2+W3"
    FULL = "W1+W2+W3"

    def __str__(self):
        return self.value


#: strict containments of the class lattice (lower is smaller)
_LATTICE_BELOW: dict[ClassLabel, frozenset[ClassLabel]] = {
    ClassLabel.W0: frozenset(),
    ClassLabel.W1: frozenset({ClassLabel.W0}),
    ClassLabel.W2: frozenset({ClassLabel.W0}),
    ClassLabel.W3: frozenset({ClassLabel.W0}),
    ClassLabel.W12: frozenset({ClassLabel.W0, ClassLabel.W1, ClassLabel.W2}),
    ClassLabel.W13: frozenset({ClassLabel.W0, ClassLabel.W1, ClassLabel.W3}),
    ClassLabel.W23: frozenset({ClassLabel.W0, ClassLabel.W2, ClassLabel.W3}),
    ClassLabel.FULL: frozenset(set(ClassLabel) - {ClassLabel.FULL}),
}


def lattice_leq(a: ClassLabel, b: ClassLabel) -> bool:
    return a == b or a in _LATTICE_BELOW[b]


def is_upward_closed(labels: set[ClassLabel]) -> bool:
    return all(b in labels
               for a in labels for b in ClassLabel if lattice_leq(a, b))


@dataclass(frozen=True)
class ClassificationResult:
    satisfied: frozenset[ClassLabel]
    minimal: ClassLabel
    agreement: bool


def _gw(metric: TensorDense, form: TensorDense) -> TensorDense:
    """g(x,y) w(z) as a (0,3) tensor with slot order (x, y, z)."""
    n = metric.dim
    return TensorDense.from_function(
        n, ("d", "d", "d"),
        lambda i, j, k: metric[i, j] * form[k])


def classify_phi(m: WManifold, sp: StructurePack) -> set[ClassLabel]:
    """Label set from the Phi-based class identities."""
    n2 = Q(m.dim)          # 2n
    Phi, f, f_star = sp.Phi, sp.f, sp.f_star
    PhiPP = apply_endo(apply_endo(Phi, 0, m.P), 1, m.P)    # Phi(Px,Py,z)
    f_zero = f.is_zero()

    labels: set[ClassLabel] = {ClassLabel.FULL}
    if Phi.is_zero():
        labels.add(ClassLabel.W0)
    w1_rhs = (_gw(m.g, f) + _gw(m.g_twin, f_star)).scale(1 / n2)
    if tensor_equal(Phi, w1_rhs):
        labels.add(ClassLabel.W1)
    if tensor_equal(Phi, PhiPP):
        labels.add(ClassLabel.W12)
        if f_zero:
            labels.add(ClassLabel.W2)
    if tensor_equal(Phi, -PhiPP):
        labels.add(ClassLabel.W3)
    w13_rhs = (_gw(m.g, f) + _gw(m.g_twin, f_star)).scale(2 / n2)
    if tensor_equal(Phi + PhiPP, w13_rhs):
        labels.add(ClassLabel.W13)
    if f_zero:
        labels.add(ClassLabel.W23)
    return labels


def classify_f(m: WManifold, sp: StructurePack) -> set[ClassLabel]:
    """Label set from the F-based class identities.

    Must coincide with classify_phi on every input; a disagreement raises
    ConsistencyError.
    """
    n2 = Q(m.dim)
    F, theta, theta_star = sp.F, sp.theta, sp.theta_star
    theta_zero = theta.is_zero()

    def cyc(t: TensorDense) -> TensorDense:
        return t + transpose(t, (2, 0, 1)) + transpose(t, (1, 2, 0))

    labels: set[ClassLabel] = {ClassLabel.FULL}
    if F.is_zero():
        labels.add(ClassLabel.W0)

    w1_rhs = (_gw(m.g, theta) + _gw(m.g_twin, theta_star)
              + transpose(_gw(m.g, theta), (0, 2, 1))
              + transpose(_gw(m.g_twin, theta_star), (0, 2, 1))).scale(1 / n2)
    if tensor_equal(F, w1_rhs):
        labels.add(ClassLabel.W1)

    cyc_P = cyc(apply_endo(F, 2, m.P))      # F(x,y,Pz) + cyclic
    if cyc_P.is_zero():
        labels.add(ClassLabel.W12)
        if theta_zero:
            labels.add(ClassLabel.W2)

    cyc_F = cyc(F)
    if cyc_F.is_zero():
        labels.add(ClassLabel.W3)

    w13_rhs = (cyc(_gw(m.g, theta)) + cyc(_gw(m.g_twin, theta_star))).scale(2 / n2)
    if tensor_equal(cyc_F, w13_rhs):
        labels.add(ClassLabel.W13)

    if theta_zero:
        labels.add(ClassLabel.W23)

    if labels != classify_phi(m, sp):
        raise ConsistencyError("F-based and Phi-based classifications disagree")
    return labels


def minimal_class(satisfied: set[ClassLabel]) -> ClassLabel:
    """Least element of an upward-closed nonempty label set."""
    if not satisfied:
        raise ValidationError("empty label set")
    if not is_upward_closed(satisfied):
        raise ValidationError(f"label set is not upward-closed: {sorted(l.value for l in satisfied)}")
    minimals = [a for a in satisfied
                if not any(b != a and lattice_leq(b, a) for b in satisfied)]
    if len(minimals) != 1:
        raise ValidationError(
            f"no unique minimal class among {sorted(l.value for l in minimals)}")
    return minimals[0]


def classify(m: WManifold, sp: StructurePack) -> ClassificationResult:
    by_phi = classify_phi(m, sp)
    by_f = classify_f(m, sp)    # raises on disagreement
    return ClassificationResult(satisfied=frozenset(by_phi),
                                minimal=minimal_class(by_phi),
                                agreement=by_phi == by_f)


def is_isotropic_w0(snorm: Fraction) -> bool:
    """||nabla P|| = 0: an isotropic W0-manifold (nabla P itself may be nonzero)."""
    return snorm == ZERO


def lee_forms_closed(alg: LieAlgebraModel, theta: TensorDense,
                     theta_star: TensorDense) -> bool:
    """d(theta) = d(theta*) = 0 for invariant 1-forms.

    For constant components the exterior derivative reduces to
    d(w)(X_i, X_j) = -w([X_i, X_j]).
    """
    n = alg.dim
    for w in (theta, theta_star):
        for i in range(n):
            for j in range(i + 1, n):
                b = alg.bracket(i, j)
                if sum((w[k] * b[k] for k in range(n) if b[k]), ZERO):
                    return False
    return True
