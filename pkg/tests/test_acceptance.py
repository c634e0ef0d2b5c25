"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even under
capture) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cosetdual import build_dualized, build_root_system, build_solvable, compute_structure_constants
from cosetdual import field_equations as fe
from cosetdual._exact import nilpotent_powers
from cosetdual.adjoint import FieldConfiguration, verify_homomorphism
from cosetdual.chevalley import StructureConstants, verify_cycle_identity, verify_quadruple_identity
from cosetdual.dualized import check_all_ee, check_all_hh, check_all_R, check_ideal, check_jacobi
from cosetdual.report import combine
from conftest import algebra
from test_coset import decompose_upper, sl3_basis

ALGEBRAS = ["A1", "A2", "A3", "B2", "G2"]
FIELD_ALGEBRAS = ["A1", "A2", "B2", "G2"]
FD_SAMPLES = 20
FD_STEP = 1e-5
FD_TOL = 1e-6


def criterion_1():
    reps = [check_jacobi(algebra(n)[2]) for n in ALGEBRAS]
    ok = all(r.passed and r.checked == algebra(n)[2].dim ** 3 for n, r in zip(ALGEBRAS, reps))
    return ok, "; ".join(f"{n}: {len(r.violations)}/{r.checked} triples" for n, r in zip(ALGEBRAS, reps))


def criterion_2():
    parts, ok = [], True
    for n in ALGEBRAS:
        d = algebra(n)[2]
        rs = d.base.root_system
        hh, ee = check_all_hh(d), check_all_ee(d)
        degenerate = sum(rs.root_sum(g, l) is None for g in d.ncp for l in d.ncp)
        ok &= hh.passed and ee.passed and hh.checked == d.r * len(d.ncp) * (1 + d.r) and ee.checked == len(d.ncp) ** 2
        parts.append(f"{n}: {hh.checked} HE/HH + {ee.checked} EE ({degenerate} degenerate), {len(hh.violations) + len(ee.violations)} violations")
    return ok, "; ".join(parts)


def criterion_3():
    reps = {n: check_all_R(algebra(n)[2]) for n in ALGEBRAS}
    return all(r.passed for r in reps.values()), "; ".join(f"{n}: {len(r.violations)}/{r.checked} clauses" for n, r in reps.items())


def criterion_4():
    parts, ok = [], True
    for n in ["A2", "B2", "G2"]:
        rs, sc, _ = algebra(n)
        cyc, quad = verify_cycle_identity(sc), verify_quadruple_identity(sc)
        raw = StructureConstants(rs, sc.chevalley, sc.chevalley, sc.extraspecial)
        raw_cyc = verify_cycle_identity(raw)
        ok &= cyc.passed and quad.passed and cyc.checked > 0
        parts.append(f"{n}: cycle {len(cyc.violations)}/{cyc.checked}, quadruple {len(quad.violations)}/{quad.checked}"
                     f" [unrescaled Chevalley table: cycle {len(raw_cyc.violations)}/{raw_cyc.checked}]")
    return ok, "; ".join(parts)


def criterion_5():
    reps = {n: verify_homomorphism(algebra(n)[2]) for n in ALGEBRAS}
    ok = all(r.passed and r.checked == algebra(n)[2].S ** 2 for n, r in reps.items())
    return ok, "; ".join(f"{n}: {len(r.violations)}/{r.checked} pairs" for n, r in reps.items())


def criterion_6():
    Z = algebra("A2")[2].base.Z()
    basis = sl3_basis()
    mismatches, checked = 0, 0
    for l, X in enumerate(basis):
        for n, Y in enumerate(basis):
            coords = decompose_upper(X @ Y - Y @ X)
            for t in range(5):
                checked += 1
                mismatches += Z[t, l, n] != coords[t]
    return mismatches == 0, f"{mismatches} mismatches / {checked} tensor entries"


def criterion_7():
    parts, ok = [], True
    for n in ALGEBRAS:
        d = algebra(n)[2]
        rng = np.random.default_rng(2024)
        worst, ratios = 0.0, []
        for _ in range(FD_SAMPLES):
            fc = FieldConfiguration.random(d, rng)
            direction = FieldConfiguration.random(d, rng)
            a = fe.fd_check_cartan_form(d, fc, direction, FD_STEP)
            b = fe.fd_check_cartan_form(d, fc, direction, FD_STEP / 2)
            worst = max(worst, a)
            ratios.append(a / b)
        good = worst <= FD_TOL and all(3.5 <= q <= 4.5 for q in ratios)
        ok &= good
        parts.append(f"{n}: max dev {worst:.2e}, ratio [{min(ratios):.3f}, {max(ratios):.3f}] over {FD_SAMPLES}")
    return ok, "; ".join(parts)


def criterion_8():
    parts, ok = [], True
    for n in FIELD_ALGEBRAS:
        d = algebra(n)[2]
        rng = np.random.default_rng(8)
        comps = vanish = 0
        for _ in range(3):
            vals = [Fraction(int(k), 12) for k in rng.integers(-12, 13, d.S)]
            fc = FieldConfiguration(tuple(vals[: d.r]), tuple(vals[d.r :]))
            res = fe.expand_second_order(d, fc)
            ok &= res.exact and res.report.passed and res.vanishing.passed and res.report.checked == d.S
            comps += res.report.checked
            vanish += res.vanishing.checked
        parts.append(f"{n}: {comps} components, {vanish} vanishing coefficients")
    return ok, "exact; " + "; ".join(parts)


def criterion_9():
    ok = True
    parts = []
    try:
        nilpotent_powers(np.array([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]], dtype=object), 4)
        ok = False
    except ArithmeticError:
        pass
    for n in ALGEBRAS:
        d = algebra(n)[2]
        chi = [Fraction(2 * k - 3, 7) for k in range(len(d.ncp))]
        om = fe.omega_capital(d, chi)
        heights = [a.height for a in d.ncp]
        rep = fe.check_omega_series(d, chi)
        ok &= rep.passed and om.nilpotency_index == 1 + max(heights) - min(heights)
        parts.append(f"{n}: index {om.nilpotency_index}, {len(rep.violations)}/{rep.checked} entries")
    return ok, "non-nilpotent input rejected; " + "; ".join(parts)


def criterion_10():
    instances = [algebra(n)[2] for n in ALGEBRAS]
    for name, ncp, cartan in [("A3", [(1, 0, 0), (1, 1, 0), (1, 1, 1)], [0, 2]), ("G2", [(1, 1), (2, 1), (3, 1), (3, 2)], [1]),
                              ("B2", [(0, 1), (1, 1), (1, 2)], None)]:
        rs = build_root_system(name)
        instances.append(build_dualized(build_solvable(rs, compute_structure_constants(rs), ncp, cartan)))
    rep = combine("ideal", [check_ideal(d) for d in instances])
    ok = rep.passed and all(d.dim == 2 * d.base.dim for d in instances)
    return ok, f"{len(instances)} instances, {len(rep.violations)}/{rep.checked} checks"


CRITERIA = {
    1: ("Jacobi of the dualized algebra (exact, full scan)", criterion_1),
    2: ("HE/HH and EE matrix identities", criterion_2),
    3: ("R_gamma structural facts", criterion_3),
    4: ("cycle and quadruple identities", criterion_4),
    5: ("representation homomorphism", criterion_5),
    6: ("A2 bracket tensor vs sl(3) matrices", criterion_6),
    7: (f"Cartan form finite difference (step {FD_STEP:g}, tol {FD_TOL:g}, ratio in [3.5, 4.5])", criterion_7),
    8: ("first-order => second-order, exact", criterion_8),
    9: ("Omega series and nilpotency", criterion_9),
    10: ("dimension doubling and abelian dual ideal", criterion_10),
}


def line(k: int, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {CRITERIA[k][0]} -- {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k][1]()
    with capsys.disabled():
        print("\n" + line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k][1]()
        results.append(ok)
        print(line(k, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
