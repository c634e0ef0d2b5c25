import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cosetdual.roots import RootSystemError, build_root_system, cartan_matrix, normalize_type

COUNTS = {
    "A1": 1, "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "B4": 16, "C3": 9, "C4": 16,
    "D4": 12, "D5": 20, "G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120,
}

HIGHEST = {
    "A3": (1, 1, 1), "B3": (1, 2, 2), "C3": (2, 2, 1), "D4": (1, 2, 1, 1), "G2": (3, 2),
    "F4": (2, 3, 4, 2), "E6": (1, 2, 2, 3, 2, 1), "E8": (2, 3, 4, 6, 5, 4, 3, 2),
}


def euclidean(family, n):
    """Simple roots and positive roots in the standard coordinates."""
    e = np.eye(n + 1 if family == "A" else n)
    if family == "A":
        simple = [e[i] - e[i + 1] for i in range(n)]
        pos = [e[i] - e[j] for i in range(n + 1) for j in range(i + 1, n + 1)]
    else:
        simple = [e[i] - e[i + 1] for i in range(n - 1)]
        pos = [e[i] + s * e[j] for i in range(n) for j in range(i + 1, n) for s in (1, -1)]
        if family == "B":
            simple.append(e[n - 1])
            pos += [e[i] for i in range(n)]
        elif family == "C":
            simple.append(2 * e[n - 1])
            pos += [2 * e[i] for i in range(n)]
        else:
            simple.append(e[n - 2] + e[n - 1])
    return np.array(simple), {tuple(np.round(v, 9)) for v in pos}


@pytest.mark.parametrize("name,count", COUNTS.items())
def test_positive_root_count(name, count):
    assert len(build_root_system(name).positive_roots) == count


@pytest.mark.parametrize("name,top", HIGHEST.items())
def test_highest_root(name, top):
    assert build_root_system(name).highest_root.coeffs == top


@pytest.mark.parametrize("family,n", [("A", 1), ("A", 2), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("C", 4), ("D", 4), ("D", 5)])
def test_matches_euclidean_realization(family, n):
    rs = build_root_system(family, n)
    simple, expected = euclidean(family, n)
    got = {tuple(np.round(np.array(a.coeffs) @ simple, 9)) for a in rs.positive_roots}
    assert got == expected
    # the bilinear form is the Euclidean one up to one overall factor
    ratios = {rs.inner(a, b) / Fraction(float(np.array(a.coeffs) @ simple @ (np.array(b.coeffs) @ simple))).limit_denominator(100)
              for a, b in itertools.product(rs.positive_roots, repeat=2)
              if rs.inner(a, b) != 0}
    assert len(ratios) == 1


def test_g2_cartan_matrix_and_lengths():
    assert cartan_matrix("G", 2) == ((2, -3), (-1, 2))
    rs = build_root_system("G2")
    assert rs.norm2((0, 1)) == 3 * rs.norm2((1, 0))


def test_a2_components():
    rs = build_root_system("A2")
    assert rs.root((1, 0)).components == (2, -1)
    assert rs.root((0, 1)).components == (-1, 2)
    assert rs.root((1, 1)).components == (1, 1)


def test_canonical_order_is_height_then_descending_coefficients():
    rs = build_root_system("A3")
    assert [a.coeffs for a in rs.positive_roots] == [
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)]


def test_deterministic():
    assert build_root_system("F4").to_json() == build_root_system("F", 4).to_json()


def test_json_schema():
    data = json.loads(build_root_system("A1").to_json())
    assert data == {"family": "A", "rank": 1, "cartan_matrix": [[2]],
                    "positive_roots": [{"coeffs": [1], "height": 1, "components": ["2/1"]}]}


@pytest.mark.parametrize("bad", [("A", 0), ("B", 1), ("D", 2), ("E", 5), ("F", 3), ("G", 3), ("X", 2)])
def test_invalid_types(bad):
    with pytest.raises(RootSystemError):
        normalize_type(*bad)


def test_unknown_root():
    with pytest.raises(RootSystemError):
        build_root_system("A2").root((2, 1))


TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]


@st.composite
def root_pair(draw):
    rs = build_root_system(draw(st.sampled_from(TYPES)))
    roots = rs.roots
    return rs, draw(st.sampled_from(roots)), draw(st.sampled_from(roots))


@settings(max_examples=200, deadline=None)
@given(root_pair())
def test_reflection_closure(pair):
    rs, a, b = pair
    image = rs.reflect(a, b)
    assert image in rs
    assert rs.norm2(image) == rs.norm2(b)
    assert rs.reflect(a, image) == b


@settings(max_examples=200, deadline=None)
@given(root_pair())
def test_components_are_additive_and_match_form(pair):
    rs, a, b = pair
    for j in range(rs.rank):
        simple = rs.simple_roots[j]
        assert a.components[j] == 2 * rs.inner(a, simple) / rs.norm2(simple)
    s = rs.root_sum(a, b)
    if s is not None:
        assert s.components == tuple(x + y for x, y in zip(a.components, b.components))
    # a negative inner product between non-opposite roots forces a root sum
    if rs.inner(a, b) < 0 and a != rs.negate(b):
        assert s is not None
