"""Closure of tuple sets inside finite powers of an algebra.

This is the workhorse behind every term-existence check: generate the
subuniverse of A**K spanned by a (possibly streamed) family of generator
tuples, optionally watching for one target tuple and stopping the moment
it appears.

The closure runs breadth-first with a frontier: each round applies every
basic operation only to argument tuples touching at least one member added
since the previous round, so no argument tuple is evaluated twice.
Generators are folded in chunk by chunk between rounds, which lets a
membership query succeed long before a large generator family (2**d - 1
tuples for the cube checks) has even been enumerated.

Three dedup backends, picked from the code-space size n**K:

* dense bitset over all codes (n**K small),
* hash set of int64 codes,
* hash set of raw digit-row bytes (code space past 2**62).

For two-element universes the operations additionally compile to bitwise
formulas on the integer codes, which avoids materializing digit matrices
entirely.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from itertools import islice, product
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .algebra import FiniteAlgebra
from .relations import DENSE_CODE_LIMIT, Relation, tuple_code

_INT64_CODE_LIMIT = 1 << 62


@dataclass
class Budget:
    """Resource caps for one closure run.

    max_members caps how many tuples the closure may hold; max_seconds is
    wall-clock.  Hitting either stops the run with truncated=True rather
    than returning a wrong answer.  dense_limit is the largest code space
    kept as a dense bitset; cell_budget sizes the numpy work chunks.
    """

    max_members: int = 10 ** 8
    max_seconds: Optional[float] = None
    dense_limit: int = DENSE_CODE_LIMIT
    cell_budget: int = 1 << 22
    generator_chunk: int = 4096


def default_budget() -> Budget:
    """Budget honoring the CUBETERM_BUDGET_BYTES environment override."""
    b = Budget()
    env = os.environ.get("CUBETERM_BUDGET_BYTES")
    if env:
        try:
            b.dense_limit = max(8, int(env)) * 8
        except ValueError:
            pass
    return b


@dataclass
class MembershipAnswer:
    """Outcome of a generate/membership run.

    witness_depth is the breadth-first round at which the target appeared
    (0 = it was a generator).  found implies the run was not truncated
    before the find.
    """

    found: bool
    closure_size: int
    witness_depth: Optional[int] = None
    truncated: bool = False


# ---------------------------------------------------------------------------
# operation compilation
# ---------------------------------------------------------------------------

def _compile_bitwise(table: Sequence[int], arity: int, mask: int) -> Callable:
    """Turn a {0,1}-operation table into a bitwise formula on K-bit codes."""
    ones = [v for v in range(1 << arity) if table[v] == 1]
    complement = len(ones) > (1 << arity) // 2
    terms = [v for v in range(1 << arity) if table[v] == 0] if complement else ones

    def apply(args: list[np.ndarray]) -> np.ndarray:
        acc = None
        for v in terms:
            term = None
            for j in range(arity):
                x = args[j]
                lit = x if (v >> (arity - 1 - j)) & 1 else ~x & mask
                term = lit if term is None else term & lit
            acc = term if acc is None else acc | term
        if acc is None:
            # constant table: still honor the broadcast shape of the args
            acc = np.zeros(np.broadcast_shapes(*(np.shape(a) for a in args)),
                           dtype=np.result_type(*args))
        if complement:
            acc = ~acc & mask
        return acc

    return apply


def _is_projection(table: Sequence[int], arity: int, n: int) -> bool:
    for j in range(arity):
        stride = n ** (arity - 1 - j)
        if all(table[idx] == (idx // stride) % n for idx in range(len(table))):
            return True
    return False


class _Op:
    def __init__(self, table: Sequence[int], arity: int, n: int, bit_mask: Optional[int]):
        self.arity = arity
        self.table = np.asarray(table, dtype=np.uint8)
        self.bitwise = _compile_bitwise(table, arity, bit_mask) if bit_mask is not None else None
        self.n = n
        # fully symmetric binary tables admit an unordered-pair sweep
        self.symmetric = arity == 2 and all(
            table[x * n + y] == table[y * n + x] for x in range(n) for y in range(x)
        )


# ---------------------------------------------------------------------------
# the engine
# ---------------------------------------------------------------------------

class _Engine:
    def __init__(self, algebra: FiniteAlgebra, arity: int, target, budget: Budget):
        n = algebra.size
        self.n = n
        self.K = arity
        self.budget = budget
        self.space = n ** arity
        self.use_bits = n == 2 and arity <= 62
        self.use_dense = self.space <= budget.dense_limit
        self.use_int64 = self.space < _INT64_CODE_LIMIT
        self.code_dtype = np.int32 if self.space < (1 << 31) else np.int64

        # projections return one of their argument rows and duplicate tables
        # repeat work, so neither can enlarge a closure; drop both
        self.ops = []
        seen_tables = set()
        for op in algebra.operations:
            key = (op.arity, tuple(op.table))
            if key in seen_tables or _is_projection(op.table, op.arity, n):
                continue
            seen_tables.add(key)
            self.ops.append(
                _Op(op.table, op.arity, n, (1 << arity) - 1 if self.use_bits else None)
            )

        cap = 1024
        self.count = 0
        if self.use_bits:
            self.codes = np.empty(cap, dtype=self.code_dtype)
            self.rows = None
        else:
            self.rows = np.empty((cap, arity), dtype=np.uint8)
            self.codes = np.empty(cap, dtype=self.code_dtype) if self.use_int64 else None

        if self.use_dense:
            self.known_bits: Optional[np.ndarray] = np.zeros(self.space, dtype=bool)
            self.known_set: Optional[set] = None
        else:
            self.known_bits = None
            self.known_set = set()

        self.target_code: Optional[int] = None
        self.target_row: Optional[np.ndarray] = None
        self.target_bytes: Optional[bytes] = None
        if target is not None:
            if len(target) != arity:
                raise ValueError("target arity does not match the generators")
            if any(not 0 <= v < n for v in target):
                raise ValueError("target entry outside the universe")
            if self.use_int64:
                self.target_code = tuple_code(target, n)
            row = np.asarray(target, dtype=np.uint8)
            self.target_row = row
            self.target_bytes = row.tobytes()

        self.found = False
        self.found_depth: Optional[int] = None
        self.truncated = False
        self.t0 = time.monotonic()
        # flush the candidate buffer once it holds about cell_budget cells
        per_row = 1 if self.use_bits else max(1, arity)
        self.flush_at = max(4096, budget.cell_budget // per_row)
        self._buf: list[np.ndarray] = []
        self._buf_len = 0

    # -- capacity ----------------------------------------------------------

    def _reserve(self, extra: int) -> None:
        need = self.count + extra
        if self.use_bits:
            if need > self.codes.shape[0]:
                cap = max(need, 2 * self.codes.shape[0])
                self.codes = np.resize(self.codes, cap)
            return
        if need > self.rows.shape[0]:
            cap = max(need, 2 * self.rows.shape[0])
            grown = np.empty((cap, self.K), dtype=np.uint8)
            grown[: self.count] = self.rows[: self.count]
            self.rows = grown
            if self.codes is not None:
                self.codes = np.resize(self.codes, cap)

    # -- budget ------------------------------------------------------------

    def _over_budget(self) -> bool:
        if self.count > self.budget.max_members:
            self.truncated = True
            return True
        if self.budget.max_seconds is not None and \
                time.monotonic() - self.t0 > self.budget.max_seconds:
            self.truncated = True
            return True
        return False

    # -- dedup + append ----------------------------------------------------

    def _encode_rows(self, rows: np.ndarray) -> np.ndarray:
        code = rows[:, 0].astype(self.code_dtype)
        for c in range(1, self.K):
            code = code * self.n + rows[:, c]
        return code

    def _absorb_codes(self, codes: np.ndarray, rows: Optional[np.ndarray], depth: int) -> None:
        """Add the new codes among `codes` to the closure (bits/dense/int64 paths)."""
        if self.use_dense:
            seen = self.known_bits[codes]
            if seen.all():
                return
            fresh = ~seen
            codes = codes[fresh]
            if rows is not None:
                rows = rows[fresh]
            uniq, first = np.unique(codes, return_index=True)
            order = np.argsort(first, kind="stable")
            uniq = uniq[order]
            self.known_bits[uniq] = True
            picked = first[order]
        else:
            uniq_all, first_all = np.unique(codes, return_index=True)
            order = np.argsort(first_all, kind="stable")
            keep = [
                i for i in order.tolist()
                if int(uniq_all[i]) not in self.known_set
            ]
            if not keep:
                return
            uniq = uniq_all[keep]
            self.known_set.update(int(c) for c in uniq)
            picked = first_all[keep]
        k = uniq.shape[0]
        self._reserve(k)
        if self.use_bits:
            self.codes[self.count: self.count + k] = uniq
        else:
            self.rows[self.count: self.count + k] = rows[picked]
            if self.codes is not None:
                self.codes[self.count: self.count + k] = uniq
        self.count += k
        if self.target_code is not None and not self.found:
            if self.use_dense:
                if self.known_bits[self.target_code]:
                    self.found = True
                    self.found_depth = depth
            elif self.target_code in self.known_set:
                self.found = True
                self.found_depth = depth

    def _absorb_rows_bytes(self, rows: np.ndarray, depth: int) -> None:
        """Dedup by raw row bytes (code space too large for int64)."""
        uniq, first = np.unique(rows, axis=0, return_index=True)
        order = np.argsort(first, kind="stable")
        fresh_rows = []
        for i in order.tolist():
            key = uniq[i].tobytes()
            if key not in self.known_set:
                self.known_set.add(key)
                fresh_rows.append(uniq[i])
                if key == self.target_bytes and not self.found:
                    self.found = True
                    self.found_depth = depth
        if not fresh_rows:
            return
        k = len(fresh_rows)
        self._reserve(k)
        self.rows[self.count: self.count + k] = np.stack(fresh_rows)
        self.count += k

    def absorb(self, rows: Optional[np.ndarray], codes: Optional[np.ndarray], depth: int) -> None:
        if self.use_bits or self.use_int64:
            if codes is None:
                codes = self._encode_rows(rows)
            self._absorb_codes(codes, rows, depth)
        else:
            self._absorb_rows_bytes(rows, depth)

    def insert_tuples(self, tuples: list, depth: int = 0) -> None:
        if not tuples:
            return
        arr = np.asarray(tuples, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[1] != self.K:
            raise ValueError("generator arity does not match")
        if arr.size and int(arr.max()) >= self.n:
            raise ValueError("generator entry outside the universe")
        if self.use_bits:
            codes = self._encode_rows(arr)
            self._absorb_codes(codes, None, depth)
        else:
            self.absorb(arr, None, depth)

    # -- candidate buffering -------------------------------------------------

    def _push(self, out: np.ndarray, depth: int) -> None:
        self._buf.append(out)
        self._buf_len += out.shape[0]
        if self._buf_len >= self.flush_at:
            self._flush(depth)

    def _flush(self, depth: int) -> None:
        if not self._buf:
            return
        batch = self._buf[0] if len(self._buf) == 1 else np.concatenate(self._buf)
        self._buf = []
        self._buf_len = 0
        if self.use_bits:
            self._absorb_codes(batch, None, depth)
        else:
            self.absorb(batch, None, depth)

    # -- one frontier round --------------------------------------------------

    def close_round(self, f_lo: int, f_hi: int, depth: int) -> None:
        for op in self.ops:
            if op.symmetric:
                self._eval_sym2(op, f_lo, f_hi, depth)
                if self.found or self.truncated:
                    return
                continue
            m = op.arity
            for j in range(m):
                # first frontier position at j: earlier args old, later args any
                ranges = [(0, f_lo)] * j + [(f_lo, f_hi)] + [(0, f_hi)] * (m - 1 - j)
                if any(hi <= lo for lo, hi in ranges):
                    continue
                self._eval_block(op, ranges, depth)
                if self.found or self.truncated:
                    return
        self._flush(depth)

    def _eval_sym2(self, op: _Op, f_lo: int, f_hi: int, depth: int) -> None:
        # symmetric binary op: unordered pairs {i, j} with max(i, j) in the
        # frontier cover everything once
        store = self.codes if self.use_bits else self.rows
        for i in range(f_lo, f_hi):
            args = [store[i], store[: i + 1]]
            if self.use_bits:
                self._push(op.bitwise(args), depth)
            else:
                lin = np.asarray(args[0], dtype=np.int32) * self.n + args[1]
                self._push(op.table[lin], depth)
            if self.found or self.truncated:
                return
            if (i - f_lo) % 1024 == 1023 and self._over_budget():
                return
        self._flush(depth)

    def _eval_block(self, op: _Op, ranges: list[tuple[int, int]], depth: int) -> None:
        """Apply op to every argument combination drawn from the index ranges.

        The widest range becomes the vectorized axis (a contiguous member
        slice); the remaining positions are walked in a plain loop.  Member
        storage may be reallocated while absorbing, so slices are captured
        up front; indices here never reach the appended part.
        """
        m = op.arity
        store = self.codes if self.use_bits else self.rows
        vec = max(range(m), key=lambda p: ranges[p][1] - ranges[p][0])
        vec_slice = store[ranges[vec][0]: ranges[vec][1]]
        lead = [p for p in range(m) if p != vec]
        args: list = [None] * m
        args[vec] = vec_slice
        ticks = 0
        for combo in product(*(range(*ranges[p]) for p in lead)):
            for p, i in zip(lead, combo):
                args[p] = store[i]
            if self.use_bits:
                self._push(op.bitwise(args), depth)
            else:
                lin = np.asarray(args[0], dtype=np.int32)
                for t in range(1, m):
                    lin = lin * self.n + args[t]
                self._push(op.table[lin], depth)
            if self.found or self.truncated:
                return
            ticks += 1
            if ticks % 1024 == 0 and self._over_budget():
                return
        self._flush(depth)

    # -- main loop -----------------------------------------------------------

    def run(self, gens: Iterator) -> None:
        f_lo = 0
        exhausted = False
        depth = 0
        while True:
            if not exhausted and not self.found:
                chunk = list(islice(gens, self.budget.generator_chunk))
                if chunk:
                    self.insert_tuples(chunk, depth=0)
                else:
                    exhausted = True
            if self.found or self._over_budget():
                return
            f_hi = self.count
            if f_hi == f_lo:
                if exhausted:
                    return
                continue
            depth += 1
            self.close_round(f_lo, f_hi, depth)
            f_lo = f_hi
            if self.found or self.truncated:
                return

    # -- output ----------------------------------------------------------------

    def member_codes(self) -> Iterator[int]:
        if self.use_bits or self.use_int64:
            return (int(c) for c in self.codes[: self.count])
        n = self.n

        def gen():
            for i in range(self.count):
                c = 0
                for v in self.rows[i]:
                    c = c * n + int(v)
                yield c

        return gen()

    def answer(self) -> MembershipAnswer:
        return MembershipAnswer(
            found=self.found,
            closure_size=self.count,
            witness_depth=self.found_depth,
            truncated=self.truncated,
        )


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def _infer_arity(generators, target, arity):
    if arity is not None:
        return arity, iter(generators)
    if target is not None:
        return len(target), iter(generators)
    it = iter(generators)
    try:
        first = next(it)
    except StopIteration:
        raise ValueError("cannot infer arity from an empty generator family") from None

    def chained():
        yield first
        yield from it

    return len(first), chained()


def generate(algebra: FiniteAlgebra, generators: Iterable, *,
             target: Optional[Sequence[int]] = None,
             arity: Optional[int] = None,
             budget: Optional[Budget] = None) -> tuple[Relation, MembershipAnswer]:
    """Close a generator family under all basic operations, row-wise.

    Returns the closure as a Relation (partial if the budget was hit) and
    the membership answer for the optional target.  The run stops as soon
    as the target turns up; the resulting relation is then just the part
    of the closure built so far.
    """
    budget = budget or default_budget()
    k, gens = _infer_arity(generators, target, arity)
    eng = _Engine(algebra, k, target, budget)
    eng.run(gens)
    rel = Relation(algebra.size, k, eng.member_codes(), dense_limit=budget.dense_limit)
    return rel, eng.answer()


def membership(algebra: FiniteAlgebra, generators: Iterable,
               target: Sequence[int], *,
               budget: Optional[Budget] = None) -> MembershipAnswer:
    """Does the target lie in the subpower generated by the family?"""
    budget = budget or default_budget()
    k, gens = _infer_arity(generators, target, None)
    eng = _Engine(algebra, k, target, budget)
    eng.run(gens)
    return eng.answer()
