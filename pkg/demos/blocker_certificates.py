"""Blockers as finite certificates that no cube term exists.

A pair of subuniverses {} != C < D blocks cube terms of every dimension
when each basic operation has a coordinate that absorbs C against D.  For
an idempotent algebra the polynomial search either produces such a pair or
proves a cube term exists; here we watch it work and cross-check it with
the exhaustive scan over all subuniverse pairs.
"""

import random

from cubeterm import (
    exhaustive_blocker_search,
    find_blocker,
    fixture,
    idempotent_quasigroup,
    mask_elements,
    verify_blocker,
)
from cubeterm.algebra import FiniteAlgebra, OperationTable


def show(name, algebra):
    b = find_blocker(algebra)
    if b is None:
        print(f"  {name}: no blocker, so a cube term exists")
    else:
        print(f"  {name}: blocker C={mask_elements(b.C)} D={mask_elements(b.D)}"
              f"  (verifies: {verify_blocker(algebra, b.C, b.D)})")


print("Named algebras:")
show("semilattice2", fixture("semilattice2"))
show("lattice2", fixture("lattice2"))
show("quasigroup3", idempotent_quasigroup(3))
show("no_ops2", fixture("no_ops2"))

print("\nRandom idempotent algebras on 3 elements, fast search vs exhaustive scan:")
rng = random.Random(1)
agreements = 0
for i in range(20):
    table = [rng.randrange(3) for _ in range(9)]
    for a in range(3):
        table[a * 4] = a
    alg = FiniteAlgebra(3, (OperationTable("f", 2, tuple(table)),))
    fast = find_blocker(alg)
    slow = exhaustive_blocker_search(alg)
    agreements += (fast is None) == (slow is None)
print(f"  verdicts agree on {agreements}/20 samples")
