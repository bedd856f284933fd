"""Max commutators, commutants and the theorem checks built on them.

Every ``check_*`` function follows one convention: hypotheses that fail raise
:class:`PreconditionFailed` naming each failing hypothesis, and a conclusion
that fails while the hypotheses hold raises :class:`TheoremViolation`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOLERANCE,
    MaxMatrix,
    Tolerance,
    approx_eq,
    conjugate,
    is_upper_triangular,
    oplus,
    otimes,
)
from .errors import DimensionMismatch, NotInCommutant, PreconditionFailed, TheoremViolation
from .graph import digraph_of, is_topological_order_unique, topological_order
from .triangularize import (
    TriangularizationResult,
    is_nilpotent,
    simultaneously_triangularize,
    triangularize,
)

__all__ = [
    "CommutatorReport",
    "max_commutator",
    "commutator_report",
    "check_commutator_closure",
    "annihilation_rows",
    "corner_entry",
    "check_nilpotent_annihilator_theorem",
    "is_projector",
    "check_projector_theorem",
    "is_unicellular",
    "in_commutant",
    "check_commutant_theorem",
]


def max_commutator(A: MaxMatrix, B: MaxMatrix) -> MaxMatrix:
    """``AB max BA`` under max-times products."""
    return oplus(otimes(A, B), otimes(B, A))


@dataclass(frozen=True)
class CommutatorReport:
    C: MaxMatrix
    nilpotent_C: bool
    AC_zero: bool
    BC_zero: bool


def commutator_report(A: MaxMatrix, B: MaxMatrix) -> CommutatorReport:
    C = max_commutator(A, B)
    return CommutatorReport(
        C=C,
        nilpotent_C=is_nilpotent(C),
        AC_zero=otimes(A, C).is_zero(),
        BC_zero=otimes(B, C).is_zero(),
    )


def check_commutator_closure(A: MaxMatrix, B: MaxMatrix) -> bool:
    """Confirm that adjoining the commutator keeps the pair simultaneously triangularizable."""
    if not simultaneously_triangularize([A, B]):
        raise PreconditionFailed(["A and B are not simultaneously triangularizable"])
    C = max_commutator(A, B)
    if not simultaneously_triangularize([A, B, C]):
        raise TheoremViolation("{A, B, [A,B]} is not simultaneously triangularizable")
    return True


def annihilation_rows(A: MaxMatrix, B: MaxMatrix, C: MaxMatrix) -> set[int]:
    """Rows of C forced to vanish by ``AC = BC = 0``.

    These are the indices t where column t of A or of B has a positive entry.
    Each returned row is checked to be identically zero.
    """
    failed = []
    if not otimes(A, C).is_zero():
        failed.append("AC != 0")
    if not otimes(B, C).is_zero():
        failed.append("BC != 0")
    if failed:
        raise PreconditionFailed(failed)
    cols = np.any(A.array > 0, axis=0) | np.any(B.array > 0, axis=0)
    rows = {int(t) for t in np.nonzero(cols)[0]}
    for t in rows:
        if np.any(C.array[t] > 0):
            raise TheoremViolation(f"row {t} of C is nonzero although AC = BC = 0")
    return rows


def corner_entry(A: MaxMatrix, B: MaxMatrix, cycle: Sequence[int]) -> tuple[int, int]:
    """Locate ``u -A-> v -B-> w`` on a cycle of the union digraph.

    For nilpotent A and B some edge of the cycle comes from A and the next one
    from B, which makes ``(AB)_uw`` and hence ``C_uw`` positive.
    """
    a, b = A.array, B.array
    k = len(cycle)
    for t in range(k):
        u, v, w = cycle[t], cycle[(t + 1) % k], cycle[(t + 2) % k]
        if a[u, v] > 0 and b[v, w] > 0:
            return u, w
    raise TheoremViolation(f"no A-edge followed by a B-edge on cycle {list(cycle)}")


def check_nilpotent_annihilator_theorem(A: MaxMatrix, B: MaxMatrix) -> TriangularizationResult:
    """Nilpotent A, B with ``AC = BC = 0`` must be simultaneously triangularizable."""
    C = max_commutator(A, B)
    failed = []
    if not is_nilpotent(A):
        failed.append("A is not nilpotent")
    if not is_nilpotent(B):
        failed.append("B is not nilpotent")
    if not otimes(A, C).is_zero():
        failed.append("AC != 0")
    if not otimes(B, C).is_zero():
        failed.append("BC != 0")
    if failed:
        raise PreconditionFailed(failed)
    result = simultaneously_triangularize([A, B])
    if not result:
        raise TheoremViolation(f"nilpotent annihilator pair has union cycle {result.obstruction}")
    return result


def is_projector(A: MaxMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    return approx_eq(otimes(A, A), A, tol)


def check_projector_theorem(
    A: MaxMatrix, B: MaxMatrix, tol: Tolerance = DEFAULT_TOLERANCE
) -> TriangularizationResult:
    """Triangularizable projectors with nilpotent commutator are simultaneously triangularizable."""
    failed = []
    if not is_projector(A, tol):
        failed.append("A is not a projector")
    if not is_projector(B, tol):
        failed.append("B is not a projector")
    if not triangularize(A):
        failed.append("A is not triangularizable")
    if not triangularize(B):
        failed.append("B is not triangularizable")
    if not is_nilpotent(max_commutator(A, B)):
        failed.append("[A,B] is not nilpotent")
    if failed:
        raise PreconditionFailed(failed)
    result = simultaneously_triangularize([A, B])
    if not result:
        raise TheoremViolation(f"projector pair has union cycle {result.obstruction}")
    return result


def is_unicellular(A: MaxMatrix) -> bool:
    if not triangularize(A):
        return False
    return is_topological_order_unique(digraph_of(A))


def in_commutant(X: MaxMatrix, family: Sequence[MaxMatrix], tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    for M in family:
        if M.n != X.n:
            raise DimensionMismatch(f"orders differ: {X.n} vs {M.n}")
    return all(approx_eq(otimes(M, X), otimes(X, M), tol) for M in family)


def check_commutant_theorem(
    A: MaxMatrix,
    B: MaxMatrix,
    witnesses: Sequence[MaxMatrix] = (),
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> TriangularizationResult:
    """Triangularize A, B and commuting witnesses with the unicellular member's order.

    The single candidate permutation is the unique topological order of the
    unicellular member (A is preferred when both qualify).

    Raises:
        PreconditionFailed: pair not simultaneously triangularizable or
            neither member unicellular.
        NotInCommutant: a witness fails to commute with A or B.
        TheoremViolation: the order leaves some member or witness with a
            positive entry below the diagonal.
    """
    failed = []
    if not simultaneously_triangularize([A, B]):
        failed.append("A and B are not simultaneously triangularizable")
    uni = next((M for M in (A, B) if is_unicellular(M)), None)
    if uni is None:
        failed.append("neither A nor B is unicellular")
    if failed:
        raise PreconditionFailed(failed)
    for k, X in enumerate(witnesses):
        if not in_commutant(X, [A, B], tol):
            raise NotInCommutant(k)
    P = topological_order(digraph_of(uni))
    for name, M in [("A", A), ("B", B)] + [(f"witness #{k}", X) for k, X in enumerate(witnesses)]:
        if not is_upper_triangular(conjugate(M, P)):
            raise TheoremViolation(f"{name} is not upper triangular in the unicellular order {list(P.order)}")
    return TriangularizationResult(True, witness=P)
