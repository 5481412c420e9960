"""Reference component tables for the two-parameter family.

Every function returns the reference closed-form components of one family
quantity as exact rationals in (lambda1, lambda2, epsilon).  The engine's
verification report compares its own output against these tables entry by
entry; each entry is polynomial of degree at most two per parameter, so
agreement on a seven-point grid per parameter proves the identity.

Indices here are 0-based; the docstring component names use the 1-based
basis labels X1..X4.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConsistencyError
from .family import FamilyParams
from .scalar import ZERO, Q

Vec = tuple[Fraction, Fraction, Fraction, Fraction]


def _vec(*components) -> Vec:
    return tuple(Q(c) for c in components)


def _scale(c: Fraction, v: Vec) -> Vec:
    return tuple(c * t for t in v)


def connection_tables(p: FamilyParams) -> tuple[dict, dict]:
    """Nonzero components of both Levi-Civita connections.

    Returns ({(i, j): vector of nabla_{X_i} X_j}, same for the twin side).
    """
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    v1 = _vec(0, -2 * l2, -e * l1, l1)
    v2 = _vec(2 * l2, 0, -l1, e * l1)
    v3 = _vec(-e * l1, -l1, 0, 0)
    v4 = _vec(0, 0, -e * l2, -l2)
    v5 = _vec(-e * l2, l2, 0, -2 * l1)
    v6 = _vec(-l2, e * l2, 2 * l1, 0)
    shared = {
        (0, 2): v3, (0, 3): _scale(-e, v3), (1, 2): _scale(e, v3), (1, 3): _scale(-1, v3),
        (2, 0): v4, (2, 1): _scale(-e, v4), (3, 0): _scale(e, v4), (3, 1): _scale(-1, v4),
    }
    nabla = dict(shared)
    nabla.update({
        (0, 0): v1, (1, 0): _scale(e, v1),
        (0, 1): v2, (1, 1): _scale(e, v2),
        (2, 2): v5, (3, 2): _scale(e, v5),
        (2, 3): v6, (3, 3): _scale(e, v6),
    })
    nabla_twin = dict(shared)
    nabla_twin.update({
        (0, 1): _scale(-e, v1), (1, 1): _scale(-1, v1),
        (0, 0): _scale(-e, v2), (1, 0): _scale(-1, v2),
        (2, 3): _scale(-e, v5), (3, 3): _scale(-1, v5),
        (2, 2): _scale(-e, v6), (3, 2): _scale(-1, v6),
    })
    return nabla, nabla_twin


def average_connection_table(p: FamilyParams) -> dict:
    """Nonzero components of the invariant connection D."""
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    w1 = _vec(-e * l2, -l2, 0, 0)
    w2 = _vec(-e * l1, -l1, 0, 0)
    w3 = _vec(0, 0, -e * l2, -l2)
    w4 = _vec(0, 0, -e * l1, -l1)
    out = {}
    for base, w in (((0, 0), w1), ((0, 2), w2), ((2, 0), w3), ((2, 2), w4)):
        i, j = base
        out[(i, j)] = w
        out[(i, j + 1)] = _scale(-e, w)
        out[(i + 1, j)] = _scale(e, w)
        out[(i + 1, j + 1)] = _scale(-1, w)
    return out


def potential_table(p: FamilyParams) -> tuple[dict, Vec, Vec, Vec]:
    """Nonzero Phi(X_i, X_j) vectors plus the 1-forms f, f* and f#."""
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    quarter = _vec(-2 * e * l2, 2 * l2, 2 * e * l1, -2 * l1)
    f_sharp = _scale(Q(4), quarter)
    phi = {
        (0, 0): quarter, (0, 1): _scale(e, quarter),
        (1, 0): _scale(e, quarter), (1, 1): quarter,
        (2, 2): _scale(-1, quarter), (2, 3): _scale(-e, quarter),
        (3, 2): _scale(-e, quarter), (3, 3): _scale(-1, quarter),
    }
    f = _vec(-8 * e * l2, 8 * l2, -8 * e * l1, 8 * l1)
    f_star = _vec(-8 * l2, 8 * e * l2, -8 * l1, 8 * e * l1)
    return phi, f, f_star, f_sharp


def lee_form_table(p: FamilyParams) -> tuple[Vec, Vec]:
    """Components of the Lee forms theta and theta* (twin sides coincide)."""
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    theta = _vec(8 * l2, -8 * e * l2, 8 * l1, -8 * e * l1)
    theta_star = _vec(8 * e * l2, -8 * l2, 8 * e * l1, -8 * l1)
    return theta, theta_star


def fundamental_table(p: FamilyParams) -> dict:
    """Nonzero components F(X_i, X_j, X_k); the twin side is epsilon times these."""
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    a, b = 2 * l1, 2 * l2
    table = {
        (1, 1, 3): a, (1, 2, 4): -a, (1, 3, 1): a, (1, 4, 2): -a,
        (1, 1, 4): -e * a, (1, 2, 3): e * a, (1, 3, 2): e * a, (1, 4, 1): -e * a,
        (2, 1, 3): e * a, (2, 2, 4): -e * a, (2, 3, 1): e * a, (2, 4, 2): -e * a,
        (2, 1, 4): -a, (2, 2, 3): a, (2, 3, 2): a, (2, 4, 1): -a,
        (3, 3, 3): -2 * a, (3, 4, 4): 2 * a, (4, 3, 3): -2 * e * a, (4, 4, 4): 2 * e * a,
        (3, 1, 3): -b, (3, 2, 4): b, (3, 3, 1): -b, (3, 4, 2): b,
        (3, 1, 4): -e * b, (3, 2, 3): e * b, (3, 3, 2): e * b, (3, 4, 1): -e * b,
        (4, 1, 3): -e * b, (4, 2, 4): e * b, (4, 3, 1): -e * b, (4, 4, 2): e * b,
        (4, 1, 4): -b, (4, 2, 3): b, (4, 3, 2): b, (4, 4, 1): -b,
        (1, 1, 1): 2 * b, (1, 2, 2): -2 * b, (2, 1, 1): 2 * e * b, (2, 2, 2): -2 * e * b,
    }
    return {(i - 1, j - 1, k - 1): v for (i, j, k), v in table.items() if v}


def square_norm_table(p: FamilyParams) -> tuple[Fraction, Fraction]:
    """Square norms of nabla P and of its twin counterpart."""
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    snorm = -128 * (l1 * l1 - l2 * l2)
    return snorm, -e * snorm


def _close_curvature(generators: dict) -> dict:
    """Close a set of R_{ijkl} generators under both antisymmetries and
    the pair-interchange symmetry; conflicting assignments raise."""
    out: dict = {}

    def put(idx, val):
        if not val:
            return
        old = out.get(idx)
        if old is None:
            out[idx] = val
        elif old != val:
            raise ConsistencyError(f"inconsistent curvature table at {idx}")

    for (i, j, k, l), v in generators.items():
        for (a, b, c, d), w in (((i, j, k, l), v), ((k, l, i, j), v)):
            put((a, b, c, d), w)
            put((b, a, c, d), -w)
            put((a, b, d, c), -w)
            put((b, a, d, c), w)
    return out


def curvature_table(p: FamilyParams) -> dict:
    """Nonzero components R_{ijkl}, closed under the curvature symmetries."""
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    gen = {
        (1, 2, 2, 1): -8 * l2 ** 2,
        (1, 3, 4, 1): 4 * e * l2 ** 2, (2, 3, 4, 2): 4 * e * l2 ** 2,
        (1, 3, 3, 1): 4 * (l2 ** 2 - l1 ** 2), (1, 4, 4, 1): 4 * (l2 ** 2 - l1 ** 2),
        (2, 3, 3, 2): 4 * (l2 ** 2 - l1 ** 2), (2, 4, 4, 2): 4 * (l2 ** 2 - l1 ** 2),
        (3, 4, 4, 3): 8 * l1 ** 2,
        (3, 1, 2, 3): -4 * e * l1 ** 2, (4, 1, 2, 4): -4 * e * l1 ** 2,
        (1, 2, 4, 1): -4 * l1 * l2, (2, 1, 3, 2): -4 * l1 * l2,
        (3, 2, 4, 3): 4 * l1 * l2, (4, 1, 3, 4): 4 * l1 * l2,
        (1, 2, 3, 1): 4 * e * l1 * l2, (2, 1, 4, 2): 4 * e * l1 * l2,
        (3, 1, 4, 3): -4 * e * l1 * l2, (4, 2, 3, 4): -4 * e * l1 * l2,
    }
    closed = _close_curvature({k: v for k, v in gen.items() if v})
    return {tuple(t - 1 for t in idx): v for idx, v in closed.items()}


def twin_curvature_table(p: FamilyParams) -> dict:
    """The reference twin-curvature components: epsilon times curvature_table."""
    e = p.epsilon
    return {idx: e * v for idx, v in curvature_table(p).items()}


def ricci_table(p: FamilyParams):
    """Ricci matrices and scalar curvatures (rho, tau, rho_twin, tau_twin)."""
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    z = ZERO
    mixed = -8 * l1 * l2
    mixed_e = 8 * e * l1 * l2
    d1 = 8 * (l1 ** 2 - 2 * l2 ** 2)
    d2 = 8 * (l2 ** 2 - 2 * l1 ** 2)
    rho = (
        (d1, z, mixed, mixed_e),
        (z, d1, mixed_e, mixed),
        (mixed, mixed_e, d2, z),
        (mixed_e, mixed, z, d2),
    )
    t1 = -8 * l2 ** 2
    t1e = 8 * e * l2 ** 2
    t2 = -8 * l1 ** 2
    t2e = 8 * e * l1 ** 2
    rho_twin = (
        (t1, t1e, mixed, mixed_e),
        (t1e, t1, mixed_e, mixed),
        (mixed, mixed_e, t2, t2e),
        (mixed_e, mixed, t2e, t2),
    )
    tau = 48 * (l1 ** 2 - l2 ** 2)
    tau_twin = 16 * e * (l2 ** 2 - l1 ** 2)
    return rho, tau, rho_twin, tau_twin


def q_table(p: FamilyParams) -> dict:
    """Nonzero vectors Q(X_i, X_j)X_k, all proportional to f#.

    Closed under the antisymmetry Q(x,y)z = -Q(y,x)z.
    """
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    f_sharp = potential_table(p)[3]
    half = Q(1, 2)
    coef = {
        (1, 3, 1): half * e * l1, (1, 4, 2): -half * e * l1,
        (2, 3, 2): half * e * l1, (2, 4, 1): -half * e * l1, (3, 4, 4): e * l1,
        (1, 3, 2): half * l1, (1, 4, 1): -half * l1,
        (2, 3, 1): half * l1, (2, 4, 2): -half * l1, (3, 4, 3): l1,
        (1, 3, 3): half * e * l2, (1, 4, 4): half * e * l2,
        (2, 3, 4): -half * e * l2, (2, 4, 3): -half * e * l2, (1, 2, 2): -e * l2,
        (1, 3, 4): half * l2, (1, 4, 3): half * l2,
        (2, 3, 3): -half * l2, (2, 4, 4): -half * l2, (1, 2, 1): -l2,
    }
    out = {}
    for (i, j, k), c in coef.items():
        if not c:
            continue
        vec = _scale(c, f_sharp)
        out[(i - 1, j - 1, k - 1)] = vec
        out[(j - 1, i - 1, k - 1)] = _scale(Q(-1), vec)
    return out


def a_table(p: FamilyParams) -> dict:
    """Nonzero components A_{ijkl} of the g-lowered average curvature.

    Closed under the antisymmetry A_{ijkl} = -A_{jikl}.
    """
    l1, l2, e = p.lambda1, p.lambda2, p.epsilon
    q1, q2, mm = 2 * l1 ** 2, 2 * l2 ** 2, 2 * l1 * l2
    m13, m24 = 2 * l1 ** 2 - 4 * l2 ** 2, 2 * l2 ** 2 - 4 * l1 ** 2
    base = {
        (1, 3, 2, 4): q1, (1, 4, 2, 3): q1, (2, 3, 1, 4): q1, (2, 4, 1, 3): q1,
        (3, 4, 3, 4): -2 * q1, (3, 4, 4, 3): 2 * q1,
        (1, 3, 2, 3): e * q1, (1, 4, 2, 4): e * q1, (2, 3, 1, 3): e * q1,
        (2, 4, 1, 4): e * q1, (3, 4, 3, 3): -2 * e * q1, (3, 4, 4, 4): 2 * e * q1,
        (1, 3, 4, 2): q2, (1, 4, 3, 2): q2, (2, 3, 4, 1): q2, (2, 4, 3, 1): q2,
        (1, 2, 1, 2): 2 * q2, (1, 2, 2, 1): -2 * q2,
        (1, 3, 4, 1): e * q2, (1, 4, 3, 1): e * q2, (2, 3, 4, 2): e * q2,
        (2, 4, 3, 2): e * q2, (1, 2, 1, 1): 2 * e * q2, (1, 2, 2, 2): -2 * e * q2,
        (1, 2, 3, 2): 2 * mm, (1, 2, 4, 1): -2 * mm,
        (3, 4, 1, 4): -2 * mm, (3, 4, 2, 3): 2 * mm,
        (1, 3, 1, 1): -mm, (1, 3, 2, 2): mm, (1, 3, 3, 3): -mm, (1, 3, 4, 4): mm,
        (1, 4, 1, 2): mm, (1, 4, 2, 1): -mm, (1, 4, 3, 4): -mm, (1, 4, 4, 3): mm,
        (2, 3, 1, 2): -mm, (2, 3, 2, 1): mm, (2, 3, 3, 4): mm, (2, 3, 4, 3): -mm,
        (2, 4, 1, 1): mm, (2, 4, 2, 2): -mm, (2, 4, 3, 3): mm, (2, 4, 4, 4): -mm,
        (1, 2, 3, 1): 2 * e * mm, (1, 2, 4, 2): -2 * e * mm,
        (3, 4, 1, 3): -2 * e * mm, (3, 4, 2, 4): 2 * e * mm,
        (1, 3, 1, 2): -e * mm, (1, 3, 2, 1): e * mm,
        (1, 3, 3, 4): -e * mm, (1, 3, 4, 3): e * mm,
        (1, 4, 1, 1): e * mm, (1, 4, 2, 2): -e * mm,
        (1, 4, 3, 3): -e * mm, (1, 4, 4, 4): e * mm,
        (2, 3, 1, 1): -e * mm, (2, 3, 2, 2): e * mm,
        (2, 3, 3, 3): e * mm, (2, 3, 4, 4): -e * mm,
        (2, 4, 1, 2): e * mm, (2, 4, 2, 1): -e * mm,
        (2, 4, 3, 4): e * mm, (2, 4, 4, 3): -e * mm,
        (1, 3, 1, 3): m13, (1, 4, 1, 4): m13, (2, 3, 2, 3): m13, (2, 4, 2, 4): m13,
        (1, 3, 1, 4): e * m13, (1, 4, 1, 3): e * m13,
        (2, 3, 2, 4): e * m13, (2, 4, 2, 3): e * m13,
        (1, 3, 3, 1): m24, (1, 4, 4, 1): m24, (2, 3, 3, 2): m24, (2, 4, 4, 2): m24,
        (1, 3, 3, 2): e * m24, (1, 4, 4, 2): e * m24,
        (2, 3, 3, 1): e * m24, (2, 4, 4, 1): e * m24,
    }
    out = {}
    for (i, j, k, l), v in base.items():
        if not v:
            continue
        out[(i - 1, j - 1, k - 1, l - 1)] = v
        out[(j - 1, i - 1, k - 1, l - 1)] = -v
    return out
