"""From the first-order equations to the second-order ones, for B2.

1. Build the coset matrix nu for a random field configuration.
2. Compare the Cartan form d nu nu^-1 with a high-precision central difference.
3. Expand d(*Psi) = G ^ *Psi and compare with the dilaton and axion equations,
   once with floats and once exactly with rational fields.
"""

from fractions import Fraction

import numpy as np

from cosetdual import build
from cosetdual import field_equations as fe
from cosetdual.adjoint import FieldConfiguration, coset_matrix

d = build("B2")
rng = np.random.default_rng(7)
fc = FieldConfiguration.random(d, rng)
print("phi =", np.round(fc.phi, 4), " chi =", np.round(fc.chi, 4))

np.set_printoptions(precision=4, suppress=True)
print("nu =\n", coset_matrix(d, fc))

direction = FieldConfiguration.random(d, rng)
for step in (1e-3, 5e-4, 2.5e-4):
    print(f"step {step:g}: |FD - G| = {fe.fd_check_cartan_form(d, fc, direction, step):.3e}")

om = fe.omega_capital(d, fc.chi)
print(f"\nomega becomes zero at power {om.nilpotency_index}")
print(fe.check_omega_series(d, fc.chi, tol=1e-14).summary())

first = fe.first_order_system(d, fc, D=4)
print("\nfirst-order system (D = 4):")
for eq in first.equations(d.base.basis_labels, digits=4):
    print(" ", eq)

res = fe.expand_second_order(d, fc)
print("\nfloat fields:", res.report.summary(), "|", res.vanishing.summary())

exact = FieldConfiguration((Fraction(1, 3), Fraction(-1, 2)), (Fraction(1, 4), Fraction(2, 5), Fraction(-1, 3), Fraction(1, 7)))
res = fe.expand_second_order(d, exact)
print("exact fields:", res.report.summary(), "|", res.vanishing.summary())
print("\naxion equation for E[1,1], exact coefficients:")
print(" ", res.primitive[d.r + 2].render())
