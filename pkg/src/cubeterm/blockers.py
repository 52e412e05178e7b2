"""Cube-term blockers: certificate checking and search.

A blocker is a pair of subuniverses {} != C < D such that every basic
operation has an "absorbing" coordinate j: plugging any element of C into
position j and elements of D elsewhere always lands back in C.  An
idempotent algebra has a cube term exactly when it has no blocker, so a
blocker is a finite certificate that no cube term of any dimension exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .algebra import (
    FiniteAlgebra,
    OperationTable,
    _as_mask,
    enumerate_subuniverses,
    full_mask,
    is_idempotent,
    is_subuniverse,
    mask_elements,
    mask_of,
    sg,
)
from .errors import InputError


@dataclass(frozen=True)
class Blocker:
    """Certificate pair (C, D) of element bitmasks."""

    C: int
    D: int

    def to_json(self) -> dict:
        return {"C": mask_elements(self.C), "D": mask_elements(self.D)}

    @classmethod
    def from_json(cls, obj) -> "Blocker":
        if not isinstance(obj, dict) or "C" not in obj or "D" not in obj:
            raise InputError("blocker JSON must be an object with C and D lists")
        return cls(mask_of(obj["C"]), mask_of(obj["D"]))


def _require_idempotent(algebra: FiniteAlgebra) -> None:
    if not is_idempotent(algebra):
        raise ValueError("blocker machinery only applies to idempotent algebras")


def _op_absorbing_coordinates(op: OperationTable, n: int,
                              c_set: set[int], d_elems: list[int]) -> int:
    """Bitmask of coordinates j with f(D,..,D,C@j,D,..,D) inside C.

    One pass over the D**m part of the table: a tuple with value outside C
    rules out every coordinate where it holds a C element.
    """
    alive = (1 << op.arity) - 1
    table = op.table
    for args in product(d_elems, repeat=op.arity):
        idx = 0
        hit = 0
        for j, a in enumerate(args):
            idx = idx * n + a
            if a in c_set:
                hit |= 1 << j
        if hit & alive and table[idx] not in c_set:
            alive &= ~hit
            if not alive:
                break
    return alive


def verify_blocker(algebra: FiniteAlgebra, C, D) -> bool:
    """Is (C, D) a cube term blocker for the (idempotent) algebra?

    Checks {} != C < D, that both are subuniverses, and then the absorbing
    coordinate condition for every basic operation in a single table pass
    each.  Invalid pairs yield False; a non-idempotent algebra is an error.
    """
    _require_idempotent(algebra)
    c_mask, d_mask = _as_mask(C), _as_mask(D)
    universe = full_mask(algebra.size)
    if c_mask == 0 or c_mask == d_mask or c_mask & ~d_mask or d_mask & ~universe:
        return False
    if not is_subuniverse(algebra, c_mask) or not is_subuniverse(algebra, d_mask):
        return False
    c_set = set(mask_elements(c_mask))
    d_elems = mask_elements(d_mask)
    return all(
        _op_absorbing_coordinates(op, algebra.size, c_set, d_elems) != 0
        for op in algebra.operations
    )


def find_blocker(algebra: FiniteAlgebra) -> Optional[Blocker]:
    """Polynomial-time blocker search.

    For each start element c, grow a set S from {c} as slowly as possible:
    repeatedly pick d outside S with Sg({c, d}) inclusion-minimal and test
    (S intersect Sg(c,d), Sg(c,d)); on failure fold Sg(c,d) into S.  If the
    algebra has any blocker, some iteration tests a genuine one, so "none
    found" proves a cube term exists.

    Among incomparable inclusion-minimal choices of Sg(c, d) the smallest d
    wins, making runs reproducible; the for-loop returns the blocker found
    at the smallest c.
    """
    _require_idempotent(algebra)
    n = algebra.size
    universe = full_mask(n)
    for c in range(n):
        s_mask = 1 << c
        while s_mask != universe:
            candidates = [
                (d, sg(algebra, (1 << c) | (1 << d)))
                for d in range(n) if not s_mask >> d & 1
            ]
            minimal: Optional[tuple[int, int]] = None
            for d, gen in candidates:
                if any(g != gen and g & ~gen == 0 for _, g in candidates):
                    continue
                if minimal is None:
                    minimal = (d, gen)
            d, d_mask = minimal
            c_mask = s_mask & d_mask
            if verify_blocker(algebra, c_mask, d_mask):
                return Blocker(c_mask, d_mask)
            s_mask |= d_mask
    return None


def exhaustive_blocker_search(algebra: FiniteAlgebra,
                              max_subsets: int = 1 << 20) -> Optional[Blocker]:
    """Oracle: scan every pair of subuniverses C < D for a blocker.

    Exponential in the universe size; used to cross-validate find_blocker.
    Scan order is lexicographic by the (D, C) bitmask pair.
    """
    _require_idempotent(algebra)
    subs = enumerate_subuniverses(algebra, max_subsets)
    for d_mask in subs:
        for c_mask in subs:
            if c_mask != d_mask and c_mask & ~d_mask == 0:
                if verify_blocker(algebra, c_mask, d_mask):
                    return Blocker(c_mask, d_mask)
    return None
