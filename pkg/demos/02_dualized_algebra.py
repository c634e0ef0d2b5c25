"""The dualized coset algebra of the split A2 coset and its Lie certificate.

The five generators of the solvable algebra are doubled by an abelian copy.
The structure matrices g~ and f~ are printed, then the full Jacobi scan and
the matrix identity suites are run in exact arithmetic.
"""

from cosetdual import build
from cosetdual.adjoint import verify_homomorphism
from cosetdual.dualized import check_all_ee, check_all_hh, check_all_R, check_ideal, check_lie_certificate, ftilde, gtilde

d = build("A2")
print("basis:", " ".join(d.basis_labels))

for j in range(d.r):
    print(f"\ng~[{j + 1}] diagonal:", [str(x) for x in gtilde(d, j).entries.diagonal()])
for g in d.ncp:
    print(f"\nf~[{g}]")
    for row in ftilde(d, g).entries:
        print("  " + " ".join(f"{str(x):>5s}" for x in row))

print()
for rep in (check_lie_certificate(d), check_all_hh(d), check_all_ee(d), check_all_R(d), check_ideal(d), verify_homomorphism(d)):
    print(rep.summary())

# A coset with fewer roots: only the roots containing a1, with H1 kept.
small = build("A3", ncp=[(1, 0, 0), (1, 1, 0), (1, 1, 1)], cartan_indices=[0])
print(f"\nA3 with ncp = {[str(a) for a in small.ncp]} and H1 only: dim {small.dim}")
print(check_lie_certificate(small).summary())
