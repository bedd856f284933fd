"""Run every applicable theorem check on a pair and on a seeded neighbourhood of it.

Each check reports one of three statuses:

* ``pass``: hypotheses hold and the conclusion was verified;
* ``precondition``: some hypothesis fails, so the theorem says nothing;
* ``violation``: hypotheses hold but the conclusion failed.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from . import generate
from .commutator import (
    annihilation_rows,
    check_commutant_theorem,
    check_commutator_closure,
    check_nilpotent_annihilator_theorem,
    check_projector_theorem,
    corner_entry,
    in_commutant,
    max_commutator,
)
from .core import DEFAULT_TOLERANCE, MaxMatrix, Tolerance, conjugate, identity, oplus, otimes
from .errors import NotFactorable, PreconditionFailed, TheoremViolation, TooLarge
from .graph import digraph_of, find_multivertex_cycle
from .triangularize import (
    check_subgraph_criterion,
    is_nilpotent,
    simultaneously_triangularize,
    triangularize,
)
from .tropical import (
    LinearFactorization,
    char_poly,
    default_grid,
    factor_char_poly,
    find_linear_factorization,
    functional_poly_eq,
    identity_dominance,
    is_diagonally_dominant_pair,
)

PASS, PRECONDITION, VIOLATION = "pass", "precondition", "violation"

Outcome = tuple[str, str]


def _simtri(A, B, tol, grid) -> Outcome:
    res = simultaneously_triangularize([A, B])
    if res:
        return PASS, f"triangularized by order {[v + 1 for v in res.witness.order]}"
    return PASS, f"not simultaneously triangularizable, cycle {[v + 1 for v in res.obstruction]}"


def _subgraph(A, B, tol, grid) -> Outcome:
    if not (triangularize(A) and triangularize(B)):
        raise PreconditionFailed(["A or B is not triangularizable"])
    if not check_subgraph_criterion(A, B):
        raise PreconditionFailed(["neither digraph contains the other"])
    return PASS, "nested digraphs, pair simultaneously triangularizable"


def _closure(A, B, tol, grid) -> Outcome:
    check_commutator_closure(A, B)
    return PASS, "{A, B, [A,B]} simultaneously triangularizable"


def _row_annihilation(A, B, tol, grid) -> Outcome:
    rows = annihilation_rows(A, B, max_commutator(A, B))
    return PASS, f"rows {sorted(r + 1 for r in rows)} of [A,B] vanish"


def _corner(A, B, tol, grid) -> Outcome:
    failed = [f"{n} is not nilpotent" for n, M in (("A", A), ("B", B)) if not is_nilpotent(M)]
    cycle = find_multivertex_cycle(digraph_of(oplus(A, B)))
    if cycle is None:
        failed.append("union digraph is acyclic")
    if failed:
        raise PreconditionFailed(failed)
    u, w = corner_entry(A, B, cycle)
    if not max_commutator(A, B).array[u, w] > 0:
        raise TheoremViolation(f"[A,B] vanishes at the corner ({u + 1}, {w + 1})")
    return PASS, f"[A,B] positive at ({u + 1}, {w + 1})"


def _nilpotent_annihilator(A, B, tol, grid) -> Outcome:
    check_nilpotent_annihilator_theorem(A, B)
    return PASS, "nilpotent annihilator pair simultaneously triangularizable"


def _projector(A, B, tol, grid) -> Outcome:
    check_projector_theorem(A, B, tol)
    return PASS, "projector pair with nilpotent commutator simultaneously triangularizable"


def commutant_candidates(A: MaxMatrix, B: MaxMatrix) -> list[MaxMatrix]:
    A2, B2, AB, BA = otimes(A, A), otimes(B, B), otimes(A, B), otimes(B, A)
    return [identity(A.n), A, B, A2, B2, AB, BA, oplus(A, B), oplus(identity(A.n), A)]


def _commutant(A, B, tol, grid) -> Outcome:
    witnesses = [X for X in commutant_candidates(A, B) if in_commutant(X, [A, B], tol)]
    check_commutant_theorem(A, B, witnesses, tol)
    return PASS, f"{len(witnesses)} commuting witnesses triangularized"


def _simtri_factors(A, B, tol, grid) -> Outcome:
    res = simultaneously_triangularize([A, B])
    if not res:
        raise PreconditionFailed(["A and B are not simultaneously triangularizable"])
    f = LinearFactorization(tuple(zip(A.diagonal().tolist(), B.diagonal().tolist())))
    if not functional_poly_eq(char_poly(A, B), f, grid, tol):
        raise TheoremViolation("simultaneously triangularizable pair without diagonal factorization")
    return PASS, "characteristic polynomial is the diagonal product"


def _equivalence(A, B, tol, grid) -> Outcome:
    dominant = identity_dominance(A, B, tol)
    found = find_linear_factorization(A, B, tol, grid)
    if dominant:
        try:
            factor_char_poly(A, B, tol, grid)
        except TheoremViolation as exc:
            raise TheoremViolation(f"dominance without factorization: {exc}") from None
    if dominant != (found is not None):
        raise TheoremViolation(
            f"identity dominance is {dominant} but a linear factorization "
            f"{'exists' if found is not None else 'does not exist'}"
        )
    return PASS, f"dominance and factorability agree ({dominant})"


def _diagdom(A, B, tol, grid) -> Outcome:
    P = is_diagonally_dominant_pair(A, B)
    if P is None:
        raise PreconditionFailed(["pair is not diagonally dominant"])
    if find_linear_factorization(A, B, tol, grid) is None:
        raise TheoremViolation("diagonally dominant pair whose polynomial has no linear factorization")
    return PASS, "diagonally dominant pair factors linearly"


CHECKS: dict[str, Callable[..., Outcome]] = {
    "simtri-certificate": _simtri,
    "subgraph-corollary": _subgraph,
    "commutator-closure": _closure,
    "row-annihilation": _row_annihilation,
    "corner-lemma": _corner,
    "nilpotent-annihilator": _nilpotent_annihilator,
    "projector-theorem": _projector,
    "commutant-theorem": _commutant,
    "simtri-factorization": _simtri_factors,
    "factorization-equivalence": _equivalence,
    "diagonal-dominance": _diagdom,
}


def run_check(name: str, A: MaxMatrix, B: MaxMatrix, tol: Tolerance, grid) -> Outcome:
    try:
        return CHECKS[name](A, B, tol, grid)
    except PreconditionFailed as exc:
        return PRECONDITION, "; ".join(exc.failed)
    except (TooLarge, NotFactorable) as exc:
        return PRECONDITION, str(exc)
    except TheoremViolation as exc:
        return VIOLATION, str(exc)


def neighbourhood(rng: np.random.Generator, A: MaxMatrix, B: MaxMatrix, size: int, scale: float = 0.1):
    """Alternate pure relabelings with relabeled entrywise jitters of the pair."""
    out = []
    for k in range(size):
        P = generate.random_permutation(rng, A.n)
        if k % 2:
            A2, B2 = generate.jitter(rng, A, scale), generate.jitter(rng, B, scale)
        else:
            A2, B2 = A, B
        out.append((conjugate(A2, P), conjugate(B2, P)))
    return out


def check_theorems(
    A: MaxMatrix,
    B: MaxMatrix,
    seed: int = 0,
    samples: int = 8,
    tol: Tolerance = DEFAULT_TOLERANCE,
    grid: Sequence[tuple[float, float]] | None = None,
) -> dict:
    """Per-theorem statuses for the pair and status counts over its neighbourhood."""
    grid = default_grid() if grid is None else list(grid)
    pair = {}
    for name in CHECKS:
        status, detail = run_check(name, A, B, tol, grid)
        pair[name] = {"status": status, "detail": detail}
    rng = np.random.default_rng(seed)
    counts = {name: {PASS: 0, PRECONDITION: 0, VIOLATION: 0} for name in CHECKS}
    for A2, B2 in neighbourhood(rng, A, B, samples):
        for name in CHECKS:
            status, _ = run_check(name, A2, B2, tol, grid)
            counts[name][status] += 1
    violations = sum(v["status"] == VIOLATION for v in pair.values())
    violations += sum(c[VIOLATION] for c in counts.values())
    return {
        "pair": pair,
        "neighbourhood": {"samples": samples, "seed": seed, "counts": counts},
        "violations": violations,
    }
