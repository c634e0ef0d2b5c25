from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cosetdual import ClosureError, build_root_system, build_solvable, compute_structure_constants, validate_closure
from conftest import algebra


def sl3_basis():
    def e(i, j):
        m = np.zeros((3, 3), dtype=object)
        m.fill(Fraction(0))
        m[i, j] = Fraction(1)
        return m

    return [e(0, 0) - e(1, 1), e(1, 1) - e(2, 2), e(0, 1), e(1, 2), e(0, 2)]


def decompose_upper(m):
    """Coordinates of an upper-triangular traceless 3x3 matrix on ``sl3_basis``."""
    h1 = m[0, 0]
    h2 = m[0, 0] + m[1, 1]
    return [h1, h2, m[0, 1], m[1, 2], m[0, 2]]


def test_a2_bracket_tensor_matches_matrices():
    rs, sc, d = algebra("A2")
    Z = d.base.Z()
    basis = sl3_basis()
    for l, X in enumerate(basis):
        for n, Y in enumerate(basis):
            coords = decompose_upper(X @ Y - Y @ X)
            assert [Z[t, l, n] for t in range(5)] == coords


def test_closure_violation_names_missing_sum():
    rs = build_root_system("A2")
    rep = validate_closure(rs, [(1, 0), (0, 1)])
    assert rep.violations == [{"alpha": [1, 0], "beta": [0, 1], "sum": [1, 1]}]
    with pytest.raises(ClosureError, match=r"a1\+a2"):
        build_solvable(rs, compute_structure_constants(rs), [(1, 0), (0, 1)])


@pytest.mark.parametrize("ncp", [[(1, 1)], [(1, 0), (1, 1)], [(0, 1), (1, 1)], [(1, 0)]])
def test_closed_subsets_accepted(ncp):
    rs = build_root_system("A2")
    s = build_solvable(rs, compute_structure_constants(rs), ncp)
    assert s.dim == 2 + len(ncp)
    assert s.check_jacobi().passed


def test_input_validation():
    rs = build_root_system("A2")
    sc = compute_structure_constants(rs)
    with pytest.raises(ValueError):
        build_solvable(rs, sc, [(-1, 0)])
    with pytest.raises(ValueError):
        build_solvable(rs, sc, [(1, 0), (1, 0)])
    with pytest.raises(ValueError):
        build_solvable(rs, sc, cartan_indices=[2])
    with pytest.raises(ValueError):
        build_solvable(rs, sc, cartan_indices=[])


def test_cartan_subset():
    rs = build_root_system("B2")
    s = build_solvable(rs, compute_structure_constants(rs), cartan_indices=[1])
    assert s.r == 1 and s.dim == 5
    assert s.basis_labels[0] == "H2"
    assert s.components((1, 0)) == (rs.root((1, 0)).components[1],)
    assert s.check_jacobi().passed


def test_split_case_labels():
    s = algebra("A2")[2].base
    assert s.basis_labels == ["H1", "H2", "E[1,0]", "E[0,1]", "E[1,1]"]
    assert s.S == 5


@pytest.mark.parametrize("name,series", [("A1", [2, 1, 0]), ("A2", [5, 3, 1, 0]), ("B2", [6, 4, 2, 0]), ("G2", [8, 6, 4, 1, 0])])
def test_derived_series_terminates(name, series):
    assert algebra(name)[2].base.derived_series() == series


def test_structural_checks(small):
    s = small[2].base
    assert s.check_antisymmetry().passed
    assert s.check_pattern().passed
    assert s.check_jacobi().passed


@st.composite
def random_subset(draw):
    name = draw(st.sampled_from(["A2", "A3", "B2", "G2", "C3"]))
    rs = build_root_system(name)
    mask = draw(st.lists(st.booleans(), min_size=len(rs.positive_roots), max_size=len(rs.positive_roots)))
    chosen = [a.coeffs for a, keep in zip(rs.positive_roots, mask) if keep]
    return rs, chosen


@settings(max_examples=60, deadline=None)
@given(random_subset())
def test_random_subsets_either_rejected_or_lie(case):
    rs, chosen = case
    if not chosen:
        return
    sc = compute_structure_constants(rs)
    closed = validate_closure(rs, chosen).passed
    if not closed:
        with pytest.raises(ClosureError):
            build_solvable(rs, sc, chosen)
        return
    s = build_solvable(rs, sc, chosen)
    assert s.check_jacobi().passed
    assert s.check_pattern().passed
