"""Shared helpers: seeded random algebras and brute-force mini-oracles."""

import random
from itertools import product

from cubeterm import FiniteAlgebra, OperationTable


def random_idempotent_algebra(rng: random.Random, n: int,
                              arities: list[int]) -> FiniteAlgebra:
    """Random operation tables with the diagonal pinned to f(a,..,a) = a."""
    ops = []
    for i, m in enumerate(arities):
        table = [rng.randrange(n) for _ in range(n ** m)]
        step = sum(n ** j for j in range(m))
        for a in range(n):
            table[a * step] = a
        ops.append(OperationTable(f"f{i}", m, tuple(table)))
    return FiniteAlgebra(n, tuple(ops))


def brute_force_closure(algebra: FiniteAlgebra, seed: set[int]) -> set[int]:
    """Reference implementation of subuniverse generation: iterate to a fixed point."""
    current = set(seed)
    while True:
        new = set()
        for op in algebra.operations:
            for args in product(sorted(current), repeat=op.arity):
                idx = 0
                for a in args:
                    idx = idx * algebra.size + a
                new.add(op.table[idx])
        if new <= current:
            return current
        current |= new


def brute_force_subpower(algebra: FiniteAlgebra, gens: list[tuple]) -> set[tuple]:
    """Reference row-wise closure of tuples, no frontier tricks."""
    n = algebra.size
    current = set(gens)
    while True:
        new = set()
        for op in algebra.operations:
            for rows in product(sorted(current), repeat=op.arity):
                out = []
                for c in range(len(rows[0])):
                    idx = 0
                    for r in rows:
                        idx = idx * n + r[c]
                    out.append(op.table[idx])
                new.add(tuple(out))
        if new <= current:
            return current
        current |= new
