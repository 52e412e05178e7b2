"""Finitary relations over the universe, and the tuple combinators behind
cube-term checks.

A k-tuple over a universe of size n has a canonical integer code, big-endian
like operation tables: code(t) = t[0]*n**(k-1) + ... + t[k-1].  Relations
store member codes either in a dense bitset (when the code space n**k is
small enough) or in a hash set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .algebra import FiniteAlgebra, mask_elements, mask_of
from .errors import BudgetExceededError, InputError

#: Largest code space held as a dense bitset (2**26 bits = 8 MiB).
DENSE_CODE_LIMIT = 1 << 26


def tuple_code(entries: Sequence[int], n: int) -> int:
    """Canonical integer code of a tuple (first entry most significant)."""
    c = 0
    for e in entries:
        c = c * n + e
    return c


def code_tuple(code: int, arity: int, n: int) -> tuple[int, ...]:
    """Inverse of tuple_code."""
    out = [0] * arity
    for i in range(arity - 1, -1, -1):
        code, out[i] = divmod(code, n)
    return tuple(out)


# ---------------------------------------------------------------------------
# Relation
# ---------------------------------------------------------------------------

class Relation:
    """An arity-k set of k-tuples over {0..n-1}.

    Immutable once built.  Membership, iteration and JSON round-tripping
    work the same whichever backend holds the codes.
    """

    def __init__(self, n: int, arity: int, codes: Iterable[int] = (),
                 dense_limit: int = DENSE_CODE_LIMIT):
        if n < 1 or arity < 1:
            raise ValueError("need n >= 1 and arity >= 1")
        self.n = n
        self.arity = arity
        self._space = n ** arity
        self._dense: Optional[np.ndarray] = None
        self._set: Optional[set[int]] = None
        if self._space <= dense_limit:
            self._dense = np.zeros(self._space, dtype=bool)
            for c in codes:
                self._dense[c] = True
            self._size = int(self._dense.sum())
        else:
            self._set = set(codes)
            self._size = len(self._set)

    @classmethod
    def from_tuples(cls, n: int, arity: int, tuples: Iterable[Sequence[int]],
                    dense_limit: int = DENSE_CODE_LIMIT) -> "Relation":
        return cls(n, arity, (tuple_code(t, n) for t in tuples), dense_limit)

    def has_code(self, code: int) -> bool:
        if not 0 <= code < self._space:
            return False
        if self._dense is not None:
            return bool(self._dense[code])
        return code in self._set

    def __contains__(self, entries: Sequence[int]) -> bool:
        if len(entries) != self.arity:
            return False
        return self.has_code(tuple_code(entries, self.n))

    def __len__(self) -> int:
        return self._size

    def codes(self) -> Iterator[int]:
        """Member codes in increasing order."""
        if self._dense is not None:
            return iter(int(c) for c in np.flatnonzero(self._dense))
        return iter(sorted(self._set))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return (code_tuple(c, self.arity, self.n) for c in self.codes())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return (self.n == other.n and self.arity == other.arity
                and list(self.codes()) == list(other.codes()))

    def __repr__(self) -> str:
        return f"Relation(n={self.n}, arity={self.arity}, size={self._size})"

    def project(self, coords: Sequence[int]) -> "Relation":
        """Projection onto a subsequence of coordinates."""
        coords = list(coords)
        if any(not 0 <= c < self.arity for c in coords):
            raise ValueError("projection coordinate out of range")
        tuples = {tuple(t[c] for c in coords) for t in self}
        return Relation.from_tuples(self.n, len(coords), tuples)

    def to_json(self) -> dict:
        return {"arity": self.arity, "tuples": [list(t) for t in self]}

    @classmethod
    def from_json(cls, obj, n: int) -> "Relation":
        if not isinstance(obj, dict):
            raise InputError("relation JSON must be an object")
        arity = obj.get("arity")
        tuples = obj.get("tuples")
        if not isinstance(arity, int) or arity < 1:
            raise InputError("arity: missing or not a positive integer")
        if not isinstance(tuples, list):
            raise InputError("tuples: must be a list")
        for i, t in enumerate(tuples):
            if (not isinstance(t, list) or len(t) != arity
                    or not all(isinstance(v, int) and 0 <= v < n for v in t)):
                raise InputError(f"tuples[{i}]: not a list of {arity} elements of 0..{n - 1}")
        return cls.from_tuples(n, arity, tuples)


# ---------------------------------------------------------------------------
# the coordinate-overwrite combinator and its family
# ---------------------------------------------------------------------------

def mix(a: Sequence[int], b: Sequence[int], coords: Iterable[int]) -> tuple[int, ...]:
    """The tuple equal to b on the given (0-based) coordinates and a elsewhere."""
    if len(a) != len(b):
        raise ValueError("tuples must have the same arity")
    out = list(a)
    for i in coords:
        out[i] = b[i]
    return tuple(out)


def _spread_submasks(width_bits: list[int]) -> Iterator[int]:
    # all nonzero masks supported on the given bit positions, increasing
    for j in range(1, 1 << len(width_bits)):
        m = 0
        for t, pos in enumerate(width_bits):
            if j >> t & 1:
                m |= 1 << pos
        yield m


def mix_family(a: Sequence[int], b: Sequence[int],
               prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """Deduplicated stream of prefix + mix(a, b, I) over all nonempty I.

    There are 2**k - 1 subsets, so the family is streamed rather than
    materialized.  Duplicates arise exactly from coordinates where a and b
    agree; the stream enumerates only the distinct results, in the order
    of their first appearance when I runs through the nonzero bitmasks in
    increasing order (bit i = coordinate i).
    """
    if len(a) != len(b):
        raise ValueError("tuples must have the same arity")
    k = len(a)
    prefix = tuple(prefix)
    a = tuple(a)
    diff = [i for i in range(k) if a[i] != b[i]]
    # first mask whose mix equals a itself: lowest coordinate where a == b
    same_first = next((i for i in range(k) if a[i] == b[i]), None)
    a_mask = None if same_first is None else 1 << same_first
    a_done = a_mask is None
    for m in _spread_submasks(diff):
        if not a_done and a_mask < m:
            yield prefix + a
            a_done = True
        yield prefix + mix(a, b, (i for i in range(k) if m >> i & 1))
    if not a_done:
        yield prefix + a


def mix_family_size(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of distinct tuples mix_family will yield."""
    k = len(a)
    d = sum(1 for i in range(k) if a[i] != b[i])
    return (1 << d) - 1 + (1 if d < k else 0)


# ---------------------------------------------------------------------------
# compatibility and elusiveness
# ---------------------------------------------------------------------------

def is_compatible(algebra: FiniteAlgebra, relation: Relation,
                  max_checks: int = 10 ** 7) -> bool:
    """True iff every basic operation maps the relation into itself.

    Scans all |R|**m argument tuples per operation of arity m, stopping at
    the first violation; refuses when the scan would exceed the budget.
    """
    if algebra.size != relation.n:
        raise ValueError("relation and algebra live on different universes")
    n = algebra.size
    members = list(relation)
    for op in algebra.operations:
        if len(members) ** op.arity > max_checks:
            raise BudgetExceededError(
                f"compatibility scan |R|^{op.arity} = {len(members) ** op.arity} "
                f"exceeds budget {max_checks}"
            )
        table = op.table
        for rows in product(members, repeat=op.arity):
            code = 0
            for c in range(relation.arity):
                idx = 0
                for r in rows:
                    idx = idx * n + r[c]
                code = code * n + table[idx]
            if not relation.has_code(code):
                return False
    return True


def is_elusive_witness(relation: Relation, a: Sequence[int], b: Sequence[int],
                       max_family: int = 1 << 22) -> bool:
    """True iff (a, b) witnesses that the relation is elusive.

    That means every proper overwrite mix(a, b, I), I nonempty, lies in the
    relation while a itself does not.
    """
    k = relation.arity
    if len(a) != k or len(b) != k:
        raise ValueError("witness tuples must match the relation arity")
    if (1 << k) > max_family:
        raise BudgetExceededError(f"2^{k} overwrite family exceeds budget {max_family}")
    if a in relation:
        return False
    return all(t in relation for t in mix_family(a, b))


# ---------------------------------------------------------------------------
# chipped cubes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChippedCubeSpec:
    """Blocks (C, D, multiplicity) describing a product with one corner removed.

    The relation is prod_i D_i^{n_i} minus prod_i (D_i \\ C_i)^{n_i}; sets
    are element bitmasks and each block needs {} != C < D.
    """

    blocks: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        for c_mask, d_mask, mult in self.blocks:
            if c_mask == 0 or c_mask & ~d_mask or c_mask == d_mask:
                raise ValueError("each block needs nonempty C strictly below D")
            if mult < 1:
                raise ValueError("block multiplicity must be at least 1")

    @property
    def arity(self) -> int:
        return sum(m for _, _, m in self.blocks)

    def to_json(self) -> dict:
        return {
            "blocks": [
                {"C": mask_elements(c), "D": mask_elements(d), "mult": m}
                for c, d, m in self.blocks
            ]
        }

    @classmethod
    def from_json(cls, obj) -> "ChippedCubeSpec":
        if not isinstance(obj, dict) or not isinstance(obj.get("blocks"), list):
            raise InputError("chipped-cube JSON must be an object with a blocks list")
        blocks = []
        for i, bj in enumerate(obj["blocks"]):
            try:
                blocks.append((mask_of(bj["C"]), mask_of(bj["D"]), int(bj["mult"])))
            except (KeyError, TypeError) as exc:
                raise InputError(f"blocks[{i}]: {exc}") from exc
        return cls(tuple(blocks))


def chipped_cube(spec: ChippedCubeSpec, n: int,
                 max_tuples: int = 10 ** 7) -> Relation:
    """Materialize a chipped cube as a relation over {0..n-1}."""
    domains: list[list[int]] = []
    corner: list[set[int]] = []
    for c_mask, d_mask, mult in spec.blocks:
        if d_mask & ~((1 << n) - 1):
            raise ValueError("block D reaches outside the universe")
        d_elems = mask_elements(d_mask)
        gap = set(mask_elements(d_mask & ~c_mask))
        for _ in range(mult):
            domains.append(d_elems)
            corner.append(gap)
    total = 1
    for dom in domains:
        total *= len(dom)
    if total > max_tuples:
        raise BudgetExceededError(f"chipped cube of {total} tuples exceeds budget {max_tuples}")
    tuples = [
        t for t in product(*domains)
        if not all(v in corner[i] for i, v in enumerate(t))
    ]
    return Relation.from_tuples(n, len(domains), tuples)
