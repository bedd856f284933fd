"""Seeded random instances with known structure.

Used by the test suite and by the ``check-theorems`` neighbourhood sampler.
All functions take a :class:`numpy.random.Generator`; entries are drawn
log-uniformly so that products spread over several orders of magnitude.
"""

from __future__ import annotations

import numpy as np

from .core import MaxMatrix, Permutation, conjugate, identity, oplus, otimes, zeros

LOW, HIGH = 0.1, 10.0


def entries(rng: np.random.Generator, shape, low: float = LOW, high: float = HIGH) -> np.ndarray:
    return np.exp(rng.uniform(np.log(low), np.log(high), size=shape))


def _sparsify(rng, a: np.ndarray, zero_density: float) -> np.ndarray:
    return np.where(rng.random(a.shape) < zero_density, 0.0, a)


def random_permutation(rng: np.random.Generator, n: int) -> Permutation:
    return Permutation(tuple(int(v) for v in rng.permutation(n)))


def random_matrix(rng: np.random.Generator, n: int, zero_density: float = 0.3) -> MaxMatrix:
    return MaxMatrix(_sparsify(rng, entries(rng, (n, n)), zero_density))


def random_upper(
    rng: np.random.Generator, n: int, zero_density: float = 0.3, strict: bool = False
) -> MaxMatrix:
    a = np.triu(_sparsify(rng, entries(rng, (n, n)), zero_density), 1 if strict else 0)
    return MaxMatrix(a)


def random_triangularizable(rng: np.random.Generator, n: int, zero_density: float = 0.3) -> MaxMatrix:
    """Upper triangular matrix hidden behind a random relabeling."""
    return conjugate(random_upper(rng, n, zero_density), random_permutation(rng, n))


def random_nilpotent(rng: np.random.Generator, n: int, zero_density: float = 0.3) -> MaxMatrix:
    return conjugate(random_upper(rng, n, zero_density, strict=True), random_permutation(rng, n))


def kleene_star(M: MaxMatrix) -> MaxMatrix:
    """``I max M max M^2 max ... max M^(n-1)``; idempotent when M has no cycle of product > 1."""
    S, term = identity(M.n), identity(M.n)
    for _ in range(M.n - 1):
        term = otimes(term, M)
        S = oplus(S, term)
    return S


def random_projector(rng: np.random.Generator, n: int, kind: str | None = None) -> MaxMatrix:
    """Triangularizable idempotent.

    ``star``: principal restriction of the Kleene star of an acyclic matrix.
    ``rank_one``: ``u v^T`` whose supports meet in exactly one index k, scaled
    so ``u_k v_k = 1``.
    """
    if kind is None:
        kind = rng.choice(["star", "rank_one", "star", "rank_one", "zero"])
    if kind == "zero":
        return zeros(n)
    if kind == "star":
        S = kleene_star(random_upper(rng, n, zero_density=rng.uniform(0.3, 0.9), strict=True)).array
        keep = rng.random(n) < 0.7
        S = S * np.outer(keep, keep)
        return conjugate(MaxMatrix(S), random_permutation(rng, n))
    if kind == "rank_one":
        k = int(rng.integers(n))
        side = rng.random(n)
        u_supp = side < 1 / 3
        v_supp = (side >= 1 / 3) & (side < 2 / 3)
        u_supp[k] = v_supp[k] = True
        u = np.where(u_supp, entries(rng, n), 0.0)
        v = np.where(v_supp, entries(rng, n), 0.0)
        v[k] = 1.0 / u[k]
        return MaxMatrix(np.outer(u, v))
    raise ValueError(f"unknown projector kind {kind!r}")


def random_unicellular(rng: np.random.Generator, n: int, zero_density: float = 0.5) -> MaxMatrix:
    """Triangularizable matrix whose digraph contains a Hamiltonian path."""
    U = random_upper(rng, n, zero_density).array.copy()
    idx = np.arange(n - 1)
    U[idx, idx + 1] = entries(rng, n - 1)
    P = random_permutation(rng, n)
    return conjugate(MaxMatrix(U), P.inverse())


def max_polynomial(rng: np.random.Generator, A: MaxMatrix, degree: int = 3) -> MaxMatrix:
    """``max_k c_k A^k`` for k <= degree with random (possibly zero) coefficients."""
    coeffs = _sparsify(rng, entries(rng, degree + 1), 0.3)
    out, term = zeros(A.n), identity(A.n)
    for k, c in enumerate(coeffs):
        if k:
            term = otimes(term, A)
        if c > 0:
            out = oplus(out, term * float(c))
    return out


def jitter(rng: np.random.Generator, A: MaxMatrix, scale: float = 0.1) -> MaxMatrix:
    """Multiply positive entries by factors in ``[1 - scale, 1 + scale]``; zeros stay zero."""
    factors = rng.uniform(1.0 - scale, 1.0 + scale, size=A.array.shape)
    return MaxMatrix(A.array * factors)
