"""Root systems and the structure constants of the Cartan-Weyl basis.

Builds G2 from its Cartan matrix, lists the positive roots with their
components on the Cartan generators, and checks the two classical identities
satisfied by the N table.
"""

from cosetdual import build_root_system, compute_structure_constants
from cosetdual.chevalley import verify_cycle_identity, verify_quadruple_identity, verify_table

rs = build_root_system("G2")
print(f"{rs.name}: Cartan matrix {rs.cartan_matrix}")
for a in rs.positive_roots:
    print(f"  {str(a):10s} height {a.height}  |a|^2 = {rs.norm2(a)}  components {[str(c) for c in a.components]}")

sc = compute_structure_constants(rs)
print("\nBrackets of positive root generators:")
for a in rs.positive_roots:
    for b in rs.positive_roots:
        if rs.position(a) < rs.position(b) and sc.N(a, b):
            print(f"  [E_{a}, E_{b}] = {sc.N(a, b)} E_{rs.root_sum(a, b)}")

# Negative-root generators are rescaled by |a|^2 / |short|^2 relative to the
# Chevalley basis, so that N_ab = N_bc = N_ca whenever a + b + c = 0.
for rep in (verify_table(sc), verify_cycle_identity(sc), verify_quadruple_identity(sc)):
    print(rep.summary())
