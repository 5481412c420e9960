"""Dense tensors with exact rational components.

A tensor is stored as a flat tuple of rationals, row-major over its index
tuple.  Each slot carries a variance flag, "u" (contravariant) or "d"
(covariant); tensors are built with all contravariant slots first, and
raising or lowering flips the flag of a slot in place, so a raise followed
by a lower of the same slot is the exact identity.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import ValidationError
from .scalar import ZERO, Q, rational

UP = "u"
DOWN = "d"


class TensorDense:
    """Dense type-(r,s) tensor over a fixed basis of an even-dimensional space."""

    __slots__ = ("dim", "variance", "data")

    def __init__(self, dim: int, variance: Sequence[str], data: Iterable[Fraction]):
        if dim <= 0 or dim % 2 != 0:
            raise ValidationError(f"tensor dimension must be a positive even integer, got {dim}")
        variance = tuple(variance)
        if any(v not in (UP, DOWN) for v in variance):
            raise ValidationError(f"bad variance mask {variance!r}")
        data = tuple(data)
        if len(data) != dim ** len(variance):
            raise ValidationError(
                f"component count {len(data)} != {dim}^{len(variance)}"
            )
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "variance", variance)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("TensorDense is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def nslots(self) -> int:
        return len(self.variance)

    @property
    def contra_rank(self) -> int:
        return sum(1 for v in self.variance if v == UP)

    @property
    def cov_rank(self) -> int:
        return sum(1 for v in self.variance if v == DOWN)

    def flat(self, idx: Sequence[int]) -> int:
        pos = 0
        for i in idx:
            pos = pos * self.dim + i
        return pos

    def __getitem__(self, idx) -> Fraction:
        if isinstance(idx, int):
            idx = (idx,)
        return self.data[self.flat(idx)]

    def indices(self):
        return product(range(self.dim), repeat=self.nslots)

    def item(self) -> Fraction:
        """The single component of a rank-(0,0) tensor."""
        if self.nslots != 0:
            raise ValidationError("item() requires a rank-(0,0) tensor")
        return self.data[0]

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, dim: int, variance: Sequence[str]) -> "TensorDense":
        return cls(dim, variance, [ZERO] * (dim ** len(variance)))

    @classmethod
    def from_function(cls, dim: int, variance: Sequence[str],
                      fn: Callable[..., Fraction]) -> "TensorDense":
        return cls(dim, variance,
                   [rational(fn(*idx)) for idx in product(range(dim), repeat=len(variance))])

    @classmethod
    def identity(cls, dim: int) -> "TensorDense":
        """Kronecker delta as a (1,1) tensor."""
        return cls.from_function(dim, (UP, DOWN), lambda i, j: Q(i == j))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence], variance: Sequence[str]) -> "TensorDense":
        dim = len(rows)
        if len(variance) != 2 or any(len(r) != dim for r in rows):
            raise ValidationError("from_matrix needs a square matrix and two slots")
        return cls(dim, variance, [rational(x) for row in rows for x in row])

    def matrix(self) -> list[list[Fraction]]:
        """Two-slot tensor as a nested list, first slot indexing rows."""
        if self.nslots != 2:
            raise ValidationError("matrix() requires exactly two slots")
        n = self.dim
        return [list(self.data[i * n:(i + 1) * n]) for i in range(n)]

    # -- algebra -----------------------------------------------------------

    def _check_same_shape(self, other: "TensorDense"):
        if self.dim != other.dim or self.variance != other.variance:
            raise ValidationError(
                f"shape mismatch: dim {self.dim} {self.variance} vs dim {other.dim} {other.variance}")

    def __add__(self, other: "TensorDense") -> "TensorDense":
        self._check_same_shape(other)
        return TensorDense(self.dim, self.variance,
                           [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "TensorDense") -> "TensorDense":
        self._check_same_shape(other)
        return TensorDense(self.dim, self.variance,
                           [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "TensorDense":
        return TensorDense(self.dim, self.variance, [-a for a in self.data])

    def scale(self, s) -> "TensorDense":
        s = rational(s)
        return TensorDense(self.dim, self.variance, [s * a for a in self.data])

    def is_zero(self) -> bool:
        return all(not a for a in self.data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorDense):
            return NotImplemented
        return (self.dim == other.dim and self.variance == other.variance
                and self.data == other.data)

    def __hash__(self):
        return hash((self.dim, self.variance, self.data))

    def __repr__(self):
        return f"TensorDense(dim={self.dim}, variance={''.join(self.variance)})"


def tensor_equal(a: TensorDense, b: TensorDense) -> bool:
    """Exact componentwise equality; rank or dimension mismatch is False."""
    if a.dim != b.dim or a.variance != b.variance:
        return False
    return a.data == b.data


def contract(t: TensorDense, slot_a: int, slot_b: int) -> TensorDense:
    """Einstein summation over a contravariant/covariant slot pair.

    slot_a must be contravariant and slot_b covariant; pairing two slots of
    the same variance has no basis-independent meaning and is rejected.
    """
    n = t.nslots
    if not (0 <= slot_a < n and 0 <= slot_b < n):
        raise ValidationError(f"contraction slots ({slot_a}, {slot_b}) out of range for {n} slots")
    if slot_a == slot_b:
        raise ValidationError("contraction slots must be distinct")
    if t.variance[slot_a] != UP or t.variance[slot_b] != DOWN:
        raise ValidationError(
            "contract pairs one contravariant and one covariant slot "
            f"(got {t.variance[slot_a]!r} at {slot_a}, {t.variance[slot_b]!r} at {slot_b})")
    keep = [k for k in range(n) if k not in (slot_a, slot_b)]
    variance = tuple(t.variance[k] for k in keep)
    dim = t.dim
    out = []
    for idx in product(range(dim), repeat=len(keep)):
        full = [0] * n
        for k, i in zip(keep, idx):
            full[k] = i
        total = ZERO
        for m in range(dim):
            full[slot_a] = m
            full[slot_b] = m
            v = t.data[t.flat(full)]
            if v:
                total += v
        out.append(total)
    return TensorDense(dim, variance, out)


def _metric_apply(t: TensorDense, slot: int, mat: TensorDense, want: str) -> TensorDense:
    if not (0 <= slot < t.nslots):
        raise ValidationError(f"slot {slot} out of range")
    if mat.dim != t.dim or mat.nslots != 2:
        raise ValidationError("metric tensor must be a two-slot tensor of matching dimension")
    dim = t.dim
    rows = mat.matrix()
    out = [ZERO] * len(t.data)
    for idx in t.indices():
        v = t.data[t.flat(idx)]
        if not v:
            continue
        j = idx[slot]
        new = list(idx)
        for i in range(dim):
            w = rows[i][j]
            if w:
                new[slot] = i
                out[t.flat(new)] += w * v
    variance = list(t.variance)
    variance[slot] = want
    return TensorDense(dim, variance, out)


def raise_index(t: TensorDense, slot: int, inverse_metric: TensorDense) -> TensorDense:
    """Raise a covariant slot with the inverse metric; the slot keeps its position."""
    if t.variance[slot] != DOWN:
        raise ValidationError(f"slot {slot} is not covariant")
    return _metric_apply(t, slot, inverse_metric, UP)


def lower_index(t: TensorDense, slot: int, metric: TensorDense) -> TensorDense:
    """Lower a contravariant slot with the metric; the slot keeps its position."""
    if t.variance[slot] != UP:
        raise ValidationError(f"slot {slot} is not contravariant")
    return _metric_apply(t, slot, metric, DOWN)


_TRANSPOSE_MAPS: dict[tuple, tuple] = {}


def _transpose_map(dim: int, nslots: int, perm: tuple) -> tuple:
    """Flat source position for each flat target position, cached."""
    key = (dim, nslots, perm)
    cached = _TRANSPOSE_MAPS.get(key)
    if cached is None:
        strides = [dim ** (nslots - 1 - k) for k in range(nslots)]
        cached = tuple(
            sum(strides[p] * i for p, i in zip(perm, idx))
            for idx in product(range(dim), repeat=nslots))
        _TRANSPOSE_MAPS[key] = cached
    return cached


def transpose(t: TensorDense, perm: Sequence[int]) -> TensorDense:
    """Reorder slots by perm: new slot k reads old slot perm[k]."""
    perm = tuple(perm)
    if sorted(perm) != list(range(t.nslots)):
        raise ValidationError(f"{perm!r} is not a permutation of the slots")
    variance = tuple(t.variance[p] for p in perm)
    data = t.data
    out = [data[i] for i in _transpose_map(t.dim, t.nslots, perm)]
    return TensorDense(t.dim, variance, out)


def apply_endo(t: TensorDense, slot: int, endo: TensorDense) -> TensorDense:
    """Plug an endomorphism into one slot of a tensor.

    For a covariant slot this substitutes the argument, t'(.., x, ..) =
    t(.., Ex, ..); for a contravariant slot it post-composes the output
    with E.  Variance is unchanged.
    """
    if not (0 <= slot < t.nslots):
        raise ValidationError(f"slot {slot} out of range")
    if endo.dim != t.dim or endo.variance != (UP, DOWN):
        raise ValidationError("endomorphism must be a (1,1) tensor of matching dimension")
    n = t.dim
    em = endo.matrix()
    out = [ZERO] * len(t.data)
    cov = t.variance[slot] == DOWN
    for idx in t.indices():
        v = t.data[t.flat(idx)]
        if not v:
            continue
        m = idx[slot]
        new = list(idx)
        for i in range(n):
            w = em[m][i] if cov else em[i][m]
            if w:
                new[slot] = i
                out[t.flat(new)] += w * v
    return TensorDense(n, t.variance, out)


# -- exact matrix helpers --------------------------------------------------

def matrix_inverse(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Gauss-Jordan inverse over the rationals; None if singular."""
    n = len(rows)
    a = [list(r) for r in rows]
    inv = [[Q(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def matrix_determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = Q(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        p = a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def symmetric_signature(rows: Sequence[Sequence[Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix.

    Symmetric Gaussian diagonalization: congruence transformations only, so
    the pivot signs give the signature exactly (Sylvester's law).
    """
    n = len(rows)
    a = [list(r) for r in rows]
    pos = neg = zero = 0
    for k in range(n):
        if not a[k][k]:
            # find a nonzero diagonal below, else create one from an
            # off-diagonal entry by a congruence row+column addition
            swap = next((r for r in range(k + 1, n) if a[r][r]), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j]), None)
                if j is None:
                    zero += 1
                    continue
                for col in range(n):
                    a[k][col] += a[j][col]
                for row in a:
                    row[k] += row[j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            if a[r][k]:
                f = a[r][k] / p
                for col in range(n):
                    a[r][col] -= f * a[k][col]
                for i in range(n):
                    a[i][r] -= f * a[i][k]
    return pos, neg, zero
