"""Walk through the dimension profile of the two-element lattice.

The lattice ({0,1}, meet, join) is the classic algebra whose smallest cube
term has dimension 3: the binary relation {(0,0),(0,1),(1,1)} is closed
under meet and join but misses (1,0) even though every proper overwrite of
(1,0) by (0,1) is present, so no dimension-2 cube term can exist.  The
majority term (x^y)v(y^z)v(x^z) settles dimension 3.
"""

from cubeterm import (
    Relation,
    check_cube_dim,
    check_edge_dim,
    check_nu,
    decide_nu,
    fixture,
    is_compatible,
    is_elusive_witness,
    minimal_cube_dimension,
)

lat = fixture("lattice2")

print("The witness relation {(0,0),(0,1),(1,1)}:")
rel = Relation.from_tuples(2, 2, [(0, 0), (0, 1), (1, 1)])
print("  compatible with the lattice:", is_compatible(lat, rel))
print("  elusive with witness a=(1,0), b=(0,1):",
      is_elusive_witness(rel, (1, 0), (0, 1)))

print("\nDimension checks:")
for d in (2, 3, 4):
    print(f"  cube dimension {d}: {check_cube_dim(lat, d)}"
          f"   edge dimension {d}: {check_edge_dim(lat, d)}")

print("\nminimal cube dimension:", minimal_cube_dimension(lat, cap=8))
print("ternary near-unanimity term:", check_nu(lat, 3))
print("full NU decision:", decide_nu(lat))
