"""Finite algebras presented by flat operation tables.

Elements of an algebra of size n are the integers 0..n-1.  An operation
table of arity m is a flat list of n**m values indexed big-endian: the
value of f(a1, ..., am) sits at position a1*n**(m-1) + a2*n**(m-2) + ... + am.
Subsets of the universe are passed around as integer bitmasks (bit i set
means element i is in the set).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .errors import BudgetExceededError, InputError


# ---------------------------------------------------------------------------
# element-set bitmask helpers
# ---------------------------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a collection of elements."""
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def mask_elements(mask: int) -> list[int]:
    """Sorted list of elements in a bitmask."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_size(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def _as_mask(elements) -> int:
    if isinstance(elements, int):
        return elements
    return mask_of(elements)


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperationTable:
    """A basic operation given by its value table."""

    name: str
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))

    def index(self, args: tuple[int, ...], n: int) -> int:
        """Big-endian position of an argument tuple in the flat table."""
        idx = 0
        for a in args:
            idx = idx * n + a
        return idx


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite algebra: universe {0..size-1} plus operation tables.

    The operation list may be empty (the algebra then has only
    projections as term operations).
    """

    size: int
    operations: tuple[OperationTable, ...] = ()
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "operations", tuple(self.operations))

    @property
    def max_arity(self) -> int:
        return max((op.arity for op in self.operations), default=0)

    @property
    def arities(self) -> list[int]:
        return [op.arity for op in self.operations]

    def to_json(self) -> dict:
        obj: dict = {
            "size": self.size,
            "operations": [
                {"name": op.name, "arity": op.arity, "table": list(op.table)}
                for op in self.operations
            ],
        }
        if self.name is not None:
            obj["name"] = self.name
        return obj

    @classmethod
    def from_json(cls, obj) -> "FiniteAlgebra":
        """Build an algebra from its canonical JSON form.

        Raises InputError listing every violation if the data is malformed.
        """
        if not isinstance(obj, dict):
            raise InputError("algebra JSON must be an object")
        problems = []
        name = obj.get("name")
        if name is not None and not isinstance(name, str):
            problems.append("name: must be a string when present")
        size = obj.get("size")
        if not isinstance(size, int) or isinstance(size, bool):
            problems.append("size: missing or not an integer")
            size = 1
        ops_json = obj.get("operations", [])
        if not isinstance(ops_json, list):
            problems.append("operations: must be a list")
            ops_json = []
        ops = []
        for i, oj in enumerate(ops_json):
            if not isinstance(oj, dict):
                problems.append(f"operations[{i}]: must be an object")
                continue
            op_name = oj.get("name", f"f{i}")
            arity = oj.get("arity")
            table = oj.get("table")
            if not isinstance(op_name, str):
                problems.append(f"operations[{i}]: name must be a string")
                op_name = f"f{i}"
            if not isinstance(arity, int) or isinstance(arity, bool):
                problems.append(f"operations[{i}] '{op_name}': arity missing or not an integer")
                arity = 1
            if not isinstance(table, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in table
            ):
                problems.append(f"operations[{i}] '{op_name}': table missing or not a list of integers")
                table = []
            ops.append(OperationTable(op_name, arity, tuple(table)))
        alg = cls(size=size, operations=tuple(ops), name=name if isinstance(name, str) else None)
        problems.extend(validate(alg))
        if problems:
            raise InputError("; ".join(problems))
        return alg


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def validate(algebra: FiniteAlgebra) -> list[str]:
    """Every invariant violation in the algebra, with its location.

    An empty list means the algebra is well formed.  Violations are data,
    not exceptions: a validator that throws on the first problem cannot
    report them all.
    """
    n = algebra.size
    problems = []
    if n < 1:
        problems.append(f"size: must be at least 1, got {n}")
        return problems
    for i, op in enumerate(algebra.operations):
        where = f"operations[{i}] '{op.name}'"
        if op.arity < 1:
            problems.append(f"{where}: arity must be at least 1, got {op.arity}")
            continue
        expected = n ** op.arity
        if len(op.table) != expected:
            problems.append(
                f"{where}: table has {len(op.table)} entries, expected {expected}"
            )
            continue
        for j, v in enumerate(op.table):
            if not 0 <= v < n:
                problems.append(f"{where}: entry {v} at index {j} is outside 0..{n - 1}")
    return problems


def apply(op: OperationTable, args: tuple[int, ...], n: int) -> int:
    """Value of the operation on an argument tuple."""
    if len(args) != op.arity:
        raise ValueError(f"'{op.name}' expects {op.arity} arguments, got {len(args)}")
    idx = 0
    for a in args:
        if not 0 <= a < n:
            raise ValueError(f"argument {a} is outside 0..{n - 1}")
        idx = idx * n + a
    return op.table[idx]


def is_idempotent(algebra: FiniteAlgebra) -> bool:
    """True iff every basic operation satisfies f(a, ..., a) = a.

    Checking the basic operations suffices: compositions of idempotent
    operations are idempotent.
    """
    n = algebra.size
    for op in algebra.operations:
        # index of (a, ..., a) is a * (n^m - 1) / (n - 1); walk it instead
        step = sum(n ** j for j in range(op.arity))
        for a in range(n):
            if op.table[a * step] != a:
                return False
    return True


def sg(algebra: FiniteAlgebra, seed) -> int:
    """Subuniverse generated by a seed set, as a bitmask.

    Grows the set in rounds; each round applies every basic operation to
    the argument tuples that touch at least one element added in the
    previous round, so no tuple is processed twice.  sg of the empty set
    is empty (there are no nullary operations).
    """
    n = algebra.size
    current = set(mask_elements(_as_mask(seed)))
    if any(e >= n or e < 0 for e in current):
        raise ValueError("seed contains elements outside the universe")
    prev: set[int] = set()
    while True:
        elems = sorted(current)
        new: set[int] = set()
        for op in algebra.operations:
            for args in product(elems, repeat=op.arity):
                if all(a in prev for a in args):
                    continue
                idx = 0
                for a in args:
                    idx = idx * n + a
                v = op.table[idx]
                if v not in current:
                    new.add(v)
        if not new:
            return mask_of(current)
        prev = set(current)
        current |= new


def is_subuniverse(algebra: FiniteAlgebra, candidate) -> bool:
    """True iff the set is closed under every basic operation."""
    n = algebra.size
    elems = mask_elements(_as_mask(candidate))
    member = set(elems)
    for op in algebra.operations:
        for args in product(elems, repeat=op.arity):
            idx = 0
            for a in args:
                idx = idx * n + a
            if op.table[idx] not in member:
                return False
    return True


def enumerate_subuniverses(algebra: FiniteAlgebra, max_subsets: int = 1 << 20) -> list[int]:
    """All nonempty subuniverses, as bitmasks in increasing numeric order.

    Scans all 2**n subsets, so it refuses universes where that exceeds
    the budget.
    """
    n = algebra.size
    if (1 << n) > max_subsets:
        raise BudgetExceededError(
            f"subset scan over 2^{n} subsets exceeds the budget of {max_subsets}"
        )
    out = []
    for mask in range(1, 1 << n):
        if is_subuniverse(algebra, mask):
            out.append(mask)
    return out
