"""Cross-validating the fast decision paths with brute-force oracles.

Three independent routes to the same facts:
  * clone-part enumeration materializes every k-ary term table and scans
    for near-unanimity / Maltsev shapes,
  * the exhaustive chipped-cube search looks for the obstruction relation
    directly,
  * the subpower membership checks decide the dimension question.
All three must tell one story.
"""

from cubeterm import (
    TightExampleParams,
    check_cube_dim,
    check_nu,
    clone_part,
    exhaustive_chipped_cube_search,
    fixture,
    idempotent_quasigroup,
    scan_clone_for,
    tight_example,
)

print("Clone parts on two elements (each member is a full term table):")
for name in ("lattice2", "semilattice2", "nand2"):
    alg = fixture(name)
    clone3 = clone_part(alg, 3)
    print(f"  {name}: {len(clone3)} ternary terms;"
          f" NU scan {scan_clone_for('nu', clone3)}"
          f" vs direct check {check_nu(alg, 3)}")

print("\nMaltsev via clone scan vs dimension-2 membership:")
q3 = idempotent_quasigroup(3)
print("  quasigroup3:", scan_clone_for("maltsev", clone_part(q3, 3)),
      "vs", check_cube_dim(q3, 2))

print("\nChipped-cube obstruction against the dimension checks:")
for name in ("lattice2", "semilattice2"):
    alg = fixture(name)
    for d in (2, 3):
        cc = exhaustive_chipped_cube_search(alg, d)
        print(f"  {name} d={d}: obstruction {'found' if cc else 'absent'},"
              f" cube term {check_cube_dim(alg, d)}")

print("\nTight example (n=3, one ternary operation): minimal dimension is N=3:")
params = TightExampleParams(3, (3,))
alg = tight_example(params)
print(f"  cube({params.N - 1}) = {check_cube_dim(alg, params.N - 1)},"
      f" cube({params.N}) = {check_cube_dim(alg, params.N)}")
