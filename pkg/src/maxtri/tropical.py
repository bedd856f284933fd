"""Tropical determinants and the characteristic polynomial of a matrix pair.

``tdet(A) = max over permutations s of prod_i a[i, s(i)]`` is the optimum of
an assignment problem.  For a pair (A, B) the pencil
``M(z) = I max z1*A max z2*B`` has tropical determinant ``P(z1, z2)``, a
bivariate max-times polynomial.  Polynomial equality throughout is functional:
two polynomials are equal when they agree as functions on the nonnegative
quadrant, checked on an evaluation grid.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import (
    DEFAULT_TOLERANCE,
    MaxMatrix,
    Permutation,
    Tolerance,
    conjugate,
    oplus,
)
from .errors import (
    DimensionMismatch,
    NotFactorable,
    PreconditionFailed,
    TheoremViolation,
    TooLarge,
)
from .triangularize import triangularize

__all__ = [
    "TdetResult",
    "TropicalPoly2",
    "LinearFactorization",
    "BRUTEFORCE_LIMIT",
    "CHARPOLY_LIMIT",
    "DIAGDOM_LIMIT",
    "default_grid",
    "tdet_bruteforce",
    "tdet",
    "build_pencil",
    "char_poly",
    "eval_poly",
    "identity_dominance",
    "functional_poly_eq",
    "factor_char_poly",
    "find_linear_factorization",
    "is_diagonally_dominant_pair",
]

BRUTEFORCE_LIMIT = 10
CHARPOLY_LIMIT = 10
DIAGDOM_LIMIT = 8
GRID_SEED = 20240611
GRID_POINTS = 32

_CHUNK = 40320


@dataclass(frozen=True)
class TdetResult:
    """Value of the tropical determinant and a permutation attaining it.

    ``argmax.images[i]`` is the column matched to row ``i``.
    """

    value: float
    argmax: Permutation


@dataclass(frozen=True, eq=False)
class TropicalPoly2:
    """``max over (l, m) of c * z1**l * z2**m`` with every stored c > 0."""

    monomials: Mapping[tuple[int, int], float]

    def __post_init__(self):
        terms = {}
        for (l, m), c in self.monomials.items():
            if l < 0 or m < 0:
                raise ValueError(f"negative exponent in monomial ({l}, {m})")
            if c < 0 or not math.isfinite(c):
                raise ValueError(f"invalid coefficient {c}")
            if c > 0:
                terms[(int(l), int(m))] = float(c)
        object.__setattr__(self, "monomials", MappingProxyType(dict(sorted(terms.items()))))

    def __call__(self, z1: float, z2: float) -> float:
        return eval_poly(self, z1, z2)

    def __eq__(self, other) -> bool:
        # formal equality; use functional_poly_eq for functional comparisons
        if not isinstance(other, TropicalPoly2):
            return NotImplemented
        return dict(self.monomials) == dict(other.monomials)

    def coefficient(self, l: int, m: int) -> float:
        return self.monomials.get((l, m), 0.0)

    def terms(self) -> list[tuple[int, int, float]]:
        return [(l, m, c) for (l, m), c in self.monomials.items()]

    def __repr__(self) -> str:
        return f"TropicalPoly2({dict(self.monomials)!r})"


@dataclass(frozen=True)
class LinearFactorization:
    """The function ``prod_i max(1, alpha_i * z1, beta_i * z2)``."""

    factors: tuple[tuple[float, float], ...]

    def __post_init__(self):
        factors = tuple((float(a), float(b)) for a, b in self.factors)
        if any(a < 0 or b < 0 for a, b in factors):
            raise ValueError("factor coefficients must be nonnegative")
        object.__setattr__(self, "factors", factors)

    def __call__(self, z1: float, z2: float) -> float:
        out = 1.0
        for a, b in self.factors:
            out *= max(1.0, a * z1, b * z2)
        return out

    def expand(self) -> TropicalPoly2:
        poly = {(0, 0): 1.0}
        for a, b in self.factors:
            step = {(0, 0): 1.0, (1, 0): a, (0, 1): b}
            nxt: dict[tuple[int, int], float] = {}
            for (l, m), c in poly.items():
                for (dl, dm), w in step.items():
                    if w > 0:
                        key = (l + dl, m + dm)
                        nxt[key] = max(nxt.get(key, 0.0), c * w)
            poly = nxt
        return TropicalPoly2(poly)


def default_grid(points: int = GRID_POINTS, seed: int = GRID_SEED) -> list[tuple[float, float]]:
    """Fixed points ``{0, 1/2, 1, 2, 10}^2`` plus log-uniform points in ``[1e-2, 1e2]^2``."""
    base = (0.0, 0.5, 1.0, 2.0, 10.0)
    grid = [(x, y) for x in base for y in base]
    rng = np.random.default_rng(seed)
    extra = 10.0 ** rng.uniform(-2.0, 2.0, size=(points, 2))
    grid.extend((float(x), float(y)) for x, y in extra)
    return grid


def _row_product(a: np.ndarray, cols: Sequence[int]) -> float:
    out = 1.0
    for i, j in enumerate(cols):
        out *= float(a[i, j])
    return out


@lru_cache(maxsize=None)
def _permutation_chunks(n: int) -> tuple[np.ndarray, ...]:
    perms = itertools.permutations(range(n))
    chunks = []
    while True:
        block = list(itertools.islice(perms, _CHUNK))
        if not block:
            break
        chunks.append(np.array(block, dtype=np.intp))
    return tuple(chunks)


def tdet_bruteforce(A: MaxMatrix) -> TdetResult:
    """Enumerate all n! permutations; ties go to the lexicographically smallest."""
    n = A.n
    if n > BRUTEFORCE_LIMIT:
        raise TooLarge(n, BRUTEFORCE_LIMIT)
    a = A.array
    rows = np.arange(n)
    best_value, best_perm = -1.0, None
    for chunk in _permutation_chunks(n):
        picked = a[rows, chunk]
        values = picked[:, 0].copy()
        for i in range(1, n):
            values *= picked[:, i]
        k = int(np.argmax(values))
        if values[k] > best_value:
            best_value, best_perm = float(values[k]), chunk[k]
    return TdetResult(best_value, Permutation(tuple(int(j) for j in best_perm)))


def tdet(A: MaxMatrix) -> TdetResult:
    """Tropical determinant through a maximum-weight assignment on log weights.

    Zero entries get a cost no all-positive assignment can reach, so the
    value is 0 exactly when every permutation meets a zero.
    """
    a = A.array
    n = A.n
    positive = a > 0
    if not positive.any():
        return TdetResult(0.0, Permutation.identity(n))
    logs = np.zeros_like(a)
    logs[positive] = -np.log(a[positive])
    logs[positive] -= logs[positive].min()
    spread = float(logs[positive].max())
    logs[~positive] = n * spread + 1.0
    _, cols = linear_sum_assignment(logs)
    cols = [int(j) for j in cols]
    return TdetResult(_row_product(a, cols), Permutation(tuple(cols)))


def _check_pair(A: MaxMatrix, B: MaxMatrix) -> int:
    if A.n != B.n:
        raise DimensionMismatch(f"orders differ: {A.n} vs {B.n}")
    return A.n


def build_pencil(A: MaxMatrix, B: MaxMatrix, z1: float, z2: float) -> MaxMatrix:
    """``I max z1*A max z2*B`` evaluated at a point of the nonnegative quadrant."""
    n = _check_pair(A, B)
    if z1 < 0 or z2 < 0:
        raise ValueError("pencil parameters must be nonnegative")
    return MaxMatrix._wrap(np.maximum.reduce([np.eye(n), z1 * A.array, z2 * B.array]))


def char_poly(A: MaxMatrix, B: MaxMatrix) -> TropicalPoly2:
    """Symbolic tropical determinant of the pencil.

    Rows are expanded in order over column subsets; each row contributes
    ``1`` (diagonal only), ``z1*a_ij`` or ``z2*b_ij``.  Because max-times
    sums are maxima, keeping for every (used columns, exponent) state only
    its best coefficient is exact.
    """
    n = _check_pair(A, B)
    if n > CHARPOLY_LIMIT:
        raise TooLarge(n, CHARPOLY_LIMIT)
    a, b = A.array, B.array
    layer: dict[int, dict[tuple[int, int], float]] = {0: {(0, 0): 1.0}}
    for i in range(n):
        choices = []
        for j in range(n):
            opts = []
            if i == j:
                opts.append((0, 0, 1.0))
            if a[i, j] > 0:
                opts.append((1, 0, float(a[i, j])))
            if b[i, j] > 0:
                opts.append((0, 1, float(b[i, j])))
            choices.append(opts)
        nxt: dict[int, dict[tuple[int, int], float]] = {}
        for mask, poly in layer.items():
            for j in range(n):
                if mask >> j & 1 or not choices[j]:
                    continue
                target = nxt.setdefault(mask | 1 << j, {})
                for (l, m), c in poly.items():
                    for dl, dm, w in choices[j]:
                        key = (l + dl, m + dm)
                        val = c * w
                        if val > target.get(key, 0.0):
                            target[key] = val
        layer = nxt
    return TropicalPoly2(layer.get((1 << n) - 1, {}))


def eval_poly(p: TropicalPoly2, z1: float, z2: float) -> float:
    best = 0.0
    for (l, m), c in p.monomials.items():
        best = max(best, c * z1**l * z2**m)
    return best


def identity_dominance(A: MaxMatrix, B: MaxMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Whether the identity permutation attains ``tdet(A max B)``."""
    _check_pair(A, B)
    S = oplus(A, B)
    diag = _row_product(S.array, range(S.n))
    return tol.close(tdet(S).value, diag)


def _grid_arrays(grid) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(list(default_grid() if grid is None else grid), dtype=np.float64).reshape(-1, 2)
    return pts[:, 0], pts[:, 1]


def _eval_poly_on(p: TropicalPoly2, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z1)
    for (l, m), c in p.monomials.items():
        np.maximum(out, c * z1**l * z2**m, out=out)
    return out


def _eval_factors_on(f: LinearFactorization, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    out = np.ones_like(z1)
    for a, b in f.factors:
        out *= np.maximum(np.maximum(1.0, a * z1), b * z2)
    return out


def functional_poly_eq(
    p: TropicalPoly2,
    f: LinearFactorization,
    grid: Iterable[tuple[float, float]] | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> bool:
    """Whether ``p`` and the product ``f`` agree on every grid point within ``tol``."""
    z1, z2 = _grid_arrays(grid)
    return tol.close_arrays(_eval_poly_on(p, z1, z2), _eval_factors_on(f, z1, z2))


def _require_triangularizable(A: MaxMatrix, B: MaxMatrix) -> None:
    failed = [f"{name} is not triangularizable" for name, M in (("A", A), ("B", B)) if not triangularize(M)]
    if failed:
        raise PreconditionFailed(failed)


def factor_char_poly(
    A: MaxMatrix,
    B: MaxMatrix,
    tol: Tolerance = DEFAULT_TOLERANCE,
    grid: Sequence[tuple[float, float]] | None = None,
) -> LinearFactorization:
    """Factor the pencil polynomial as ``prod_i max(1, a_ii*z1, b_ii*z2)``.

    The factors are accepted only when the identity permutation attains
    ``tdet(A max B)``; the product is then verified against the symbolic
    polynomial on the grid.

    Raises:
        PreconditionFailed: A or B is not triangularizable.
        NotFactorable: the identity permutation does not attain the maximum.
        TheoremViolation: dominance holds but the product differs from the
            polynomial somewhere on the grid.
    """
    _check_pair(A, B)
    _require_triangularizable(A, B)
    if not identity_dominance(A, B, tol):
        raise NotFactorable("tdet(A max B) is not attained by the identity permutation")
    f = LinearFactorization(tuple(zip(A.diagonal().tolist(), B.diagonal().tolist())))
    p = char_poly(A, B)
    grid = default_grid() if grid is None else grid
    for z1, z2 in grid:
        if not tol.close(eval_poly(p, z1, z2), f(z1, z2)):
            raise TheoremViolation(
                f"identity dominance holds but P({z1!r}, {z2!r}) = {eval_poly(p, z1, z2)!r} "
                f"differs from the diagonal product {f(z1, z2)!r}"
            )
    return f


def find_linear_factorization(
    A: MaxMatrix,
    B: MaxMatrix,
    tol: Tolerance = DEFAULT_TOLERANCE,
    grid: Sequence[tuple[float, float]] | None = None,
) -> LinearFactorization | None:
    """Search every possible linear factorization of the pencil polynomial.

    For triangularizable A the restriction ``P(z1, 0)`` equals
    ``prod_i max(1, a_ii*z1)``, which fixes the multiset of z1-coefficients
    of any factorization; likewise for B and z2.  Only the pairing between
    the two multisets is free, so all pairings are tried.
    """
    n = _check_pair(A, B)
    if n > DIAGDOM_LIMIT:
        raise TooLarge(n, DIAGDOM_LIMIT)
    _require_triangularizable(A, B)
    z1, z2 = _grid_arrays(grid)
    target = _eval_poly_on(char_poly(A, B), z1, z2)
    alphas = A.diagonal().tolist()
    betas = B.diagonal().tolist()
    seen = set()
    for tau in itertools.permutations(range(n)):
        pairs = tuple((alphas[i], betas[tau[i]]) for i in range(n))
        key = tuple(sorted(pairs))
        if key in seen:
            continue
        seen.add(key)
        f = LinearFactorization(pairs)
        if tol.close_arrays(target, _eval_factors_on(f, z1, z2)):
            return f
    return None


def is_diagonally_dominant_pair(A: MaxMatrix, B: MaxMatrix) -> Permutation | None:
    """First permutation (lexicographic) making both conjugates row diagonally dominant.

    Row i is dominant when ``max(a'_ij, b'_ij) <= max(a'_ii, b'_ii)`` for all j.
    """
    n = _check_pair(A, B)
    if n > DIAGDOM_LIMIT:
        raise TooLarge(n, DIAGDOM_LIMIT)
    _require_triangularizable(A, B)
    S = oplus(A, B)
    for images in itertools.permutations(range(n)):
        P = Permutation(images)
        s = conjugate(S, P).array
        if np.all(s <= s.diagonal()[:, None]):
            return P
    return None
