"""Max-times matrix arithmetic over the nonnegative reals.

The algebra is ``(R+, max, *)``: addition is the maximum and multiplication is
the ordinary product, so the zero element is 0 and the unit is 1.  Matrices are
small and dense; every value here is immutable once constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "MaxMatrix",
    "Tolerance",
    "Permutation",
    "DEFAULT_TOLERANCE",
    "identity",
    "zeros",
    "oplus",
    "otimes",
    "power",
    "conjugate",
    "approx_eq",
    "is_upper_triangular",
]


class MaxMatrix:
    """Square matrix with finite nonnegative float64 entries.

    The backing array is copied on construction and flagged read-only.
    Entries are indexed from 0.
    """

    __slots__ = ("_a",)

    def __init__(self, entries: Iterable[Iterable[float]] | np.ndarray):
        a = np.array(entries, dtype=np.float64, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 1:
            raise ValueError("matrix order must be at least 1")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if np.any(a < 0):
            raise ValueError("matrix entries must be nonnegative")
        # -0.0 would survive the check above and break bit-exact round trips
        a[a == 0] = 0.0
        a.flags.writeable = False
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "MaxMatrix":
        # internal fast path for arrays already known to be valid
        obj = cls.__new__(cls)
        a = np.ascontiguousarray(a, dtype=np.float64)
        a.flags.writeable = False
        obj._a = a
        return obj

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    def __getitem__(self, key):
        return self._a[key]

    def tolist(self) -> list[list[float]]:
        return self._a.tolist()

    def diagonal(self) -> np.ndarray:
        return self._a.diagonal()

    def is_zero(self) -> bool:
        return not np.any(self._a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.n, self._a.tobytes()))

    def __or__(self, other: "MaxMatrix") -> "MaxMatrix":
        return oplus(self, other)

    def __matmul__(self, other: "MaxMatrix") -> "MaxMatrix":
        return otimes(self, other)

    def __mul__(self, scalar: float) -> "MaxMatrix":
        if scalar < 0:
            raise ValueError("scalar must be nonnegative")
        return MaxMatrix._wrap(self._a * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"MaxMatrix({self._a.tolist()!r})"


@dataclass(frozen=True)
class Tolerance:
    """Comparison policy for *derived* values such as products of entries.

    Two numbers x, y are close when
    ``|x - y| <= max(abs_eps, rel_eps * max(x, y))``.
    """

    rel_eps: float = 1e-9
    abs_eps: float = 1e-12

    def __post_init__(self):
        if not (self.rel_eps >= 0 and self.abs_eps >= 0):
            raise ValueError("tolerances must be nonnegative")

    def close(self, x: float, y: float) -> bool:
        return abs(x - y) <= max(self.abs_eps, self.rel_eps * max(abs(x), abs(y)))

    def close_arrays(self, x: np.ndarray, y: np.ndarray) -> bool:
        bound = np.maximum(self.abs_eps, self.rel_eps * np.maximum(np.abs(x), np.abs(y)))
        return bool(np.all(np.abs(x - y) <= bound))


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class Permutation:
    """Vertex relabeling ``i -> images[i]`` on ``{0, ..., n-1}``.

    ``images[i]`` is the new position of vertex ``i``, so ``order`` (the
    vertices sorted by position) is the inverse map.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Permutation":
        """Build the permutation that puts ``order[k]`` at position ``k``."""
        images = [0] * len(order)
        for pos, v in enumerate(order):
            images[v] = pos
        return cls(tuple(images))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Permutation":
        return cls(tuple(v - 1 for v in images))

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def order(self) -> tuple[int, ...]:
        return self.inverse().images

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, p in enumerate(self.images):
            inv[p] = i
        return Permutation(tuple(inv))

    def one_based(self) -> list[int]:
        return [p + 1 for p in self.images]

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return self.n


def _check_same_order(*ms: MaxMatrix) -> int:
    n = ms[0].n
    for m in ms[1:]:
        if m.n != n:
            raise DimensionMismatch(f"orders differ: {n} vs {m.n}")
    return n


def identity(n: int) -> MaxMatrix:
    return MaxMatrix._wrap(np.eye(n))


def zeros(n: int) -> MaxMatrix:
    return MaxMatrix._wrap(np.zeros((n, n)))


def oplus(A: MaxMatrix, B: MaxMatrix) -> MaxMatrix:
    _check_same_order(A, B)
    return MaxMatrix._wrap(np.maximum(A.array, B.array))


def otimes(A: MaxMatrix, B: MaxMatrix) -> MaxMatrix:
    """Max-times product: ``[AB]_ij = max_k a_ik * b_kj``."""
    _check_same_order(A, B)
    return MaxMatrix._wrap((A.array[:, :, None] * B.array[None, :, :]).max(axis=1))


def power(A: MaxMatrix, k: int) -> MaxMatrix:
    if k < 0:
        raise ValueError("negative powers are undefined")
    result = identity(A.n)
    for _ in range(k):
        result = otimes(result, A)
    return result


def conjugate(A: MaxMatrix, P: Permutation) -> MaxMatrix:
    """Permutation similarity: ``result[P(i)][P(j)] = a_ij``."""
    if P.n != A.n:
        raise DimensionMismatch(f"permutation acts on {P.n} points, matrix has order {A.n}")
    p = np.asarray(P.images)
    out = np.empty_like(A.array)
    out[np.ix_(p, p)] = A.array
    return MaxMatrix._wrap(out)


def approx_eq(A: MaxMatrix, B: MaxMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    if A.n != B.n:
        return False
    return tol.close_arrays(A.array, B.array)


def is_upper_triangular(A: MaxMatrix) -> bool:
    # exact zero test: zero patterns are structural
    return not np.any(np.tril(A.array, -1))
