"""Triangularization decisions for single matrices and finite families.

A nonnegative matrix is permutation-similar to an upper triangular one exactly
when its digraph has no cycle through two or more vertices.  A family is
handled through the max of its members, whose digraph is the union of theirs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .core import MaxMatrix, Permutation, conjugate, is_upper_triangular, oplus
from .errors import CyclicGraph, EmptyFamily, NotTriangularizable, TheoremViolation
from .graph import (
    digraph_of,
    has_cycle,
    is_cycle_in,
    topological_order,
)

__all__ = [
    "TriangularizationResult",
    "triangularize",
    "simultaneously_triangularize",
    "family_sum",
    "check_subgraph_criterion",
    "is_nilpotent",
    "nilpotency_index",
]


@dataclass(frozen=True)
class TriangularizationResult:
    """Verdict plus a certificate.

    Exactly one of ``witness`` (a triangularizing permutation) and
    ``obstruction`` (0-based vertices of a multi-vertex cycle) is set.
    """

    verdict: bool
    witness: Permutation | None = None
    obstruction: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.verdict != (self.witness is not None) or self.verdict == (self.obstruction is not None):
            raise ValueError("exactly one of witness/obstruction must accompany the verdict")
        if self.obstruction is not None:
            object.__setattr__(self, "obstruction", tuple(self.obstruction))

    def __bool__(self) -> bool:
        return self.verdict


def family_sum(family: Sequence[MaxMatrix]) -> MaxMatrix:
    if not family:
        raise EmptyFamily("family must contain at least one matrix")
    return reduce(oplus, family)


def simultaneously_triangularize(family: Sequence[MaxMatrix]) -> TriangularizationResult:
    """Decide whether one permutation puts every member in upper triangular form."""
    family = list(family)
    G = digraph_of(family_sum(family))
    try:
        P = topological_order(G)
    except CyclicGraph as exc:
        cycle = exc.cycle
        if not is_cycle_in(G, cycle):
            raise TheoremViolation(f"reported obstruction {cycle} is not a cycle of the union")
        return TriangularizationResult(False, obstruction=tuple(cycle))
    for k, M in enumerate(family):
        if not is_upper_triangular(conjugate(M, P)):
            raise TheoremViolation(f"topological order fails to triangularize member #{k}")
    return TriangularizationResult(True, witness=P)


def triangularize(A: MaxMatrix) -> TriangularizationResult:
    return simultaneously_triangularize([A])


def check_subgraph_criterion(A: MaxMatrix, B: MaxMatrix) -> bool:
    """Whether one digraph's edge set contains the other's.

    A True answer guarantees the pair is simultaneously triangularizable; a
    False answer says nothing.

    Raises:
        NotTriangularizable: if A or B is not triangularizable on its own.
    """
    for name, M in (("A", A), ("B", B)):
        if not triangularize(M):
            raise NotTriangularizable(f"{name} is not triangularizable")
    ea, eb = digraph_of(A).edge_set(), digraph_of(B).edge_set()
    holds = ea <= eb or eb <= ea
    if holds and not simultaneously_triangularize([A, B]):
        raise TheoremViolation("nested digraphs but the pair is not simultaneously triangularizable")
    return holds


def nilpotency_index(A: MaxMatrix) -> int | None:
    """Smallest k <= n with A^k = 0 computed by repeated products, else None."""
    M = A
    for k in range(1, A.n + 1):
        if M.is_zero():
            return k
        M = M @ A
    return None


def is_nilpotent(A: MaxMatrix) -> bool:
    # Structural test; nilpotency_index is the power-based cross-check.
    # Powers can underflow to zero for tiny entries, the digraph cannot.
    return not has_cycle(digraph_of(A))
