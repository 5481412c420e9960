"""Affine connections on a Lie algebra with invariant metrics.

For left-invariant vector fields every scalar derivative term vanishes, so
the Koszul formula collapses to the three bracket terms:

    2 g(nabla_{X_i} X_j, X_k) = g([X_i,X_j],X_k) + g([X_k,X_i],X_j) + g([X_k,X_j],X_i)

and connection coefficients are constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ConsistencyError, ValidationError
from .manifold import LieAlgebraModel
from .scalar import ZERO, Q
from .tensor import DOWN, UP, TensorDense


@dataclass(frozen=True)
class Connection:
    """Connection coefficients: nabla_{X_i} X_j = Gamma^k_{ij} X_k.

    gamma is a (1,2) tensor indexed [k, i, j].
    """
    dim: int
    gamma: TensorDense

    def __post_init__(self):
        if self.gamma.dim != self.dim or self.gamma.variance != (UP, DOWN, DOWN):
            raise ValidationError("connection coefficients must form a (1,2) tensor")

    def derive(self, i: int, j: int) -> list[Fraction]:
        """Components of nabla_{X_i} X_j."""
        return [self.gamma[k, i, j] for k in range(self.dim)]

    def derive_vector(self, i: int, y: list[Fraction]) -> list[Fraction]:
        """nabla_{X_i} y for a constant coefficient vector y."""
        n = self.dim
        out = [ZERO] * n
        for j in range(n):
            if not y[j]:
                continue
            for k in range(n):
                v = self.gamma[k, i, j]
                if v:
                    out[k] += y[j] * v
        return out

    def average(self, other: "Connection") -> "Connection":
        return Connection(self.dim, (self.gamma + other.gamma).scale(Q(1, 2)))


def koszul(alg: LieAlgebraModel, metric: TensorDense, metric_inv: TensorDense) -> Connection:
    """Levi-Civita connection of an invariant metric via the Koszul formula.

    Post-checks zero torsion and nabla(metric) = 0 exactly; a failure here
    means the inputs are inconsistent and raises ConsistencyError.
    """
    n = alg.dim
    gm = metric.matrix()
    ginv = metric_inv.matrix()

    def pair(x: list[Fraction], k: int) -> Fraction:
        return sum((x[a] * gm[a][k] for a in range(n) if x[a]), ZERO)

    data = [ZERO] * n ** 3
    gamma = TensorDense.zeros(n, (UP, DOWN, DOWN))
    flat = gamma.flat
    for i, j in product(range(n), repeat=2):
        rhs = []
        b_ij = alg.bracket(i, j)
        for k in range(n):
            b_ki = alg.bracket(k, i)
            b_kj = alg.bracket(k, j)
            rhs.append((pair(b_ij, k) + pair(b_ki, j) + pair(b_kj, i)) / 2)
        for l in range(n):
            v = sum((ginv[l][k] * rhs[k] for k in range(n) if rhs[k]), ZERO)
            data[flat((l, i, j))] = v
    conn = Connection(n, TensorDense(n, (UP, DOWN, DOWN), data))

    if not torsion(conn, alg).is_zero():
        raise ConsistencyError("Koszul output has torsion")
    if not covariant_derivative(conn, metric).is_zero():
        raise ConsistencyError("Koszul output is not metric-compatible")
    return conn


def torsion(conn: Connection, alg: LieAlgebraModel) -> TensorDense:
    """T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji} - c^k_{ij}."""
    if conn.dim != alg.dim:
        raise ValidationError("connection and algebra dimensions differ")
    n = conn.dim
    return TensorDense.from_function(
        n, (UP, DOWN, DOWN),
        lambda k, i, j: conn.gamma[k, i, j] - conn.gamma[k, j, i] - alg.c[k, i, j])


def covariant_derivative(conn: Connection, t: TensorDense) -> TensorDense:
    """Covariant derivative of an invariant tensor; differentiation slot last.

    On left-invariant components the scalar derivative term is zero, so
    only the connection action on each slot remains.
    """
    if t.nslots == 0:
        raise ValidationError("covariant derivative of a scalar is not defined here")
    if t.dim != conn.dim:
        raise ValidationError("connection and tensor dimensions differ")
    n = t.dim
    out = [ZERO] * n ** (t.nslots + 1)
    gdata = conn.gamma.data
    n2 = n * n
    nslots = t.nslots
    strides = [n ** (nslots - k) for k in range(nslots)]    # in the output layout
    for idx in t.indices():
        v = t.data[t.flat(idx)]
        if not v:
            continue
        base = sum(s * a for s, a in zip(strides, idx))
        for slot, (var, a) in enumerate(zip(t.variance, idx)):
            stride = strides[slot]
            root = base - stride * a
            for b in range(n):
                pos = root + stride * b
                for i in range(n):
                    if var == UP:
                        w = gdata[b * n2 + i * n + a]        # Gamma^b_{ia} t^{..a..}
                        if w:
                            out[pos + i] += w * v
                    else:
                        w = gdata[a * n2 + i * n + b]        # -Gamma^a_{ib} t_{..b..}
                        if w:
                            out[pos + i] -= w * v
    return TensorDense(n, tuple(t.variance) + (DOWN,), out)


def curvature_operator(conn: Connection, alg: LieAlgebraModel) -> TensorDense:
    """(1,3) curvature of an invariant connection, indexed [l, i, j, k]:

        R(X_i, X_j) X_k = R^l_{ijk} X_l
                        = nabla_i nabla_j X_k - nabla_j nabla_i X_k - nabla_{[X_i,X_j]} X_k.
    """
    n = conn.dim
    out = [ZERO] * n ** 4
    shape = TensorDense.zeros(n, (UP, DOWN, DOWN, DOWN))
    flat = shape.flat
    for i, j, k in product(range(n), repeat=3):
        if i == j:
            continue
        acc = [ZERO] * n
        for m in range(n):
            gjk = conn.gamma[m, j, k]
            if gjk:
                for l in range(n):
                    v = conn.gamma[l, i, m]
                    if v:
                        acc[l] += gjk * v
            gik = conn.gamma[m, i, k]
            if gik:
                for l in range(n):
                    v = conn.gamma[l, j, m]
                    if v:
                        acc[l] -= gik * v
            cij = alg.c[m, i, j]
            if cij:
                for l in range(n):
                    v = conn.gamma[l, m, k]
                    if v:
                        acc[l] -= cij * v
        for l in range(n):
            if acc[l]:
                out[flat((l, i, j, k))] = acc[l]
    return TensorDense(n, (UP, DOWN, DOWN, DOWN), out)
