"""The dualized coset algebra: ``s`` extended by an abelian copy ``{H~_i, E~_alpha}``.

Brackets involving dual generators::

    [H_j, H~_k] = [E_a, H~_k] = [H~, H~] = [H~, E~] = [E~, E~] = 0
    [H_j, E~_a] = -a_j E~_a
    [E_a, E~_a] = 1/4 sum_j a_j H~_j
    [E_a, E~_b] = N_{a,-b} E~_{b-a}     if b - a is in ncp, else 0

Basis indices ``0..S-1`` are the ``T`` generators of ``s``; ``S..2S-1`` are
their duals in the same order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._exact import frac_str, is_zero, matrix_to_strings, zeros
from .coset import SolvableAlgebra
from .lie import SparseBracket, action_matrix, check_antisymmetry, check_jacobi as _check_jacobi
from .report import Report
from .roots import Root, RootSystem

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class StructureMatrix:
    kind: str  # "gtilde" or "ftilde"
    index: str
    entries: np.ndarray

    def to_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index, "rows": matrix_to_strings(self.entries)}


@dataclass(frozen=True)
class DualizedAlgebra:
    base: SolvableAlgebra
    bracket: SparseBracket = field(repr=False)
    gtildes: tuple[np.ndarray, ...] = field(repr=False)
    ftildes: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def S(self) -> int:
        return self.base.dim

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def dim(self) -> int:
        return 2 * self.S

    @property
    def ncp(self) -> tuple[Root, ...]:
        return self.base.ncp

    @property
    def structure_constants(self):
        return self.base.structure_constants

    @property
    def basis_labels(self) -> list[str]:
        labels = self.base.basis_labels
        return labels + [lab[0] + "~" + lab[1:] for lab in labels]

    def U(self, l: int) -> np.ndarray:
        """Action matrix of ``T_l`` on the dual generators."""
        return self.gtildes[l] if l < self.r else self.ftildes[l - self.r]

    def C(self) -> np.ndarray:
        from .lie import dense_tensor

        return dense_tensor(self.dim, self.bracket)

    def root_position(self, gamma) -> int:
        """Position of ``gamma`` within ``ncp`` (0-based)."""
        return self.base.index_of(gamma) - self.r

    def to_json_tensor(self) -> list[list]:
        """Sparse ``[a, b, c, "p/q"]`` entries of ``C^c_ab``."""
        return [
            [a, b, c, frac_str(v)]
            for (a, b), coeffs in sorted(self.bracket.items())
            for c, v in sorted(coeffs.items())
        ]


def build_dualized(s: SolvableAlgebra, sc=None) -> DualizedAlgebra:
    sc = s.structure_constants if sc is None else sc
    S, r = s.dim, s.r
    br: SparseBracket = {k: dict(v) for k, v in s.bracket.items()}
    members = {a.coeffs: s.r + k for k, a in enumerate(s.ncp)}

    def put(x, y, coeffs):
        coeffs = {k: v for k, v in coeffs.items() if v != 0}
        if coeffs:
            br[x, y] = coeffs
            br[y, x] = {k: -v for k, v in coeffs.items()}

    for i in range(r):
        for a in s.ncp:
            m = members[a.coeffs]
            put(i, S + m, {S + m: -s.components(a)[i]})
    for a in s.ncp:
        l = members[a.coeffs]
        comps = s.components(a)
        put(l, S + l, {S + i: QUARTER * comps[i] for i in range(r)})
        for b in s.ncp:
            if b == a:
                continue
            diff = tuple(y - x for x, y in zip(a.coeffs, b.coeffs))
            if diff in members:
                neg_b = tuple(-y for y in b.coeffs)
                put(l, S + members[b.coeffs], {S + members[diff]: sc.N(a.coeffs, neg_b)})

    duals = list(range(S, 2 * S))
    gt = tuple(action_matrix(S, br, l, duals, duals) for l in range(r))
    ft = tuple(action_matrix(S, br, l, duals, duals) for l in range(r, S))
    return DualizedAlgebra(s, br, gt, ft)


def r_matrix(d: DualizedAlgebra, gamma) -> np.ndarray:
    """``(R_g)^a_b = N_{g,-b}`` when ``g - b = -a``, else 0 (rows a, columns b over ncp)."""
    sc = d.structure_constants
    g = RootSystem._key(gamma)
    n = len(d.ncp)
    out = zeros(n)
    for row, a in enumerate(d.ncp):
        for col, b in enumerate(d.ncp):
            if tuple(x - y for x, y in zip(g, b.coeffs)) == tuple(-z for z in a.coeffs):
                out[row, col] = sc.N(g, tuple(-y for y in b.coeffs))
    return out


def partitioned_ftilde(d: DualizedAlgebra, gamma) -> np.ndarray:
    """f~_g assembled block by block: the ``g_i/4`` column plus ``R_g``."""
    S, r = d.S, d.r
    s = d.base
    col = r + d.root_position(gamma)
    out = zeros(S)
    for i, c in enumerate(s.components(gamma)):
        out[i, col] = QUARTER * c
    out[r:, r:] = r_matrix(d, gamma)
    return out


def partitioned_gtilde(d: DualizedAlgebra, j: int) -> np.ndarray:
    """g~_j = -diag(0, ..., 0, a_j, b_j, ...)."""
    S, r = d.S, d.r
    out = zeros(S)
    for k, a in enumerate(d.ncp):
        out[r + k, r + k] = -d.base.components(a)[j]
    return out


def gtilde(d: DualizedAlgebra, j: int) -> StructureMatrix:
    """``g~_j`` for the ``j``-th retained Cartan generator (0-based position)."""
    if not 0 <= j < d.r:
        raise IndexError(f"Cartan position {j} out of range 0..{d.r - 1}")
    m = d.gtildes[j]
    expected = partitioned_gtilde(d, j)
    if not (m == expected).all():
        raise AssertionError(f"g~_{j} read back from the bracket table disagrees with its block form")
    return StructureMatrix("gtilde", d.base.basis_labels[j], m)


def ftilde(d: DualizedAlgebra, gamma) -> StructureMatrix:
    rs = d.base.root_system
    k = d.root_position(rs.root(gamma))
    m = d.ftildes[k]
    expected = partitioned_ftilde(d, gamma)
    if not (m == expected).all():
        raise AssertionError(f"f~_{gamma} read back from the bracket table disagrees with its block form")
    return StructureMatrix("ftilde", d.ncp[k].label(), m)


def check_jacobi(d: DualizedAlgebra, workers: int | None = None) -> Report:
    rep = _check_jacobi(d.dim, d.bracket, workers)
    rep.name = "dualized Jacobi"
    return rep


def check_lie_certificate(d: DualizedAlgebra, workers: int | None = None) -> Report:
    """Antisymmetry, alternativity and the full Jacobi scan together."""
    rep = check_antisymmetry(d.dim, d.bracket)
    rep.merge(check_jacobi(d, workers))
    rep.name = "Lie algebra certificate"
    rep.unit = "checks"
    return rep


def check_R_structure(d: DualizedAlgebra, gamma) -> Report:
    rs = d.base.root_system
    g = rs.root(gamma)
    R = r_matrix(d, g)
    n = R.shape[0]
    rep = Report(f"R[{g.label()}] structure", unit="clauses")
    rows_nz = [[c for c in range(n) if R[row, c] != 0] for row in range(n)]
    cols_nz = [[row for row in range(n) if R[row, c] != 0] for c in range(n)]

    rep.checked += 1
    if any(R[k, k] != 0 for k in range(n)):
        rep.add(clause="a", detail="nonzero diagonal")
    rep.checked += 1
    if any(len(x) > 1 for x in rows_nz) or any(len(x) > 1 for x in cols_nz):
        rep.add(clause="b", detail="more than one nonzero entry in a row or column")
    rep.checked += 1
    if sum(not x for x in rows_nz) != sum(not x for x in cols_nz):
        rep.add(clause="c", detail="zero-row count differs from zero-column count")
    for row, a in enumerate(d.ncp):
        rep.checked += 1
        summed = rs.root_sum(g, a)
        if (not rows_nz[row]) != (summed is None):
            rep.add(clause="d", row=a.label())
        for c in rows_nz[row]:
            rep.checked += 1
            kappa = d.ncp[c]
            want = summed is not None and summed.coeffs == kappa.coeffs
            value = d.structure_constants.N(g, rs.negate(kappa))
            if not want or R[row, c] != value:
                rep.add(clause="e", row=a.label(), column=kappa.label())
    return rep


def check_hh_identity(d: DualizedAlgebra, j: int, gamma) -> Report:
    """``g_j f~_g = [g~_j, f~_g]`` and ``[g~_j, g~_k] = 0`` for every ``k``."""
    rs = d.base.root_system
    g = rs.root(gamma)
    rep = Report(f"HE identity (j={j}, g={g.label()})", unit="matrix equalities")
    G = gtilde(d, j).entries
    F = ftilde(d, g).entries
    rep.checked += 1
    lhs = F * d.base.components(g)[j]
    diff = lhs - (G @ F - F @ G)
    if not is_zero(diff):
        rep.add(kind="HE", j=j, gamma=g.label(), residual=matrix_to_strings(diff))
    for k in range(d.r):
        rep.checked += 1
        K = gtilde(d, k).entries
        if not is_zero(G @ K - K @ G):
            rep.add(kind="HH", j=j, k=k)
    return rep


def check_ee_identity(d: DualizedAlgebra, gamma, lam) -> Report:
    """``N_{g,l} f~_{g+l} = [f~_g, f~_l]`` (left side zero if ``g+l`` is not a root)."""
    rs = d.base.root_system
    g, l = rs.root(gamma), rs.root(lam)
    rep = Report(f"EE identity (g={g.label()}, l={l.label()})", unit="matrix equalities")
    Fg = ftilde(d, g).entries
    Fl = ftilde(d, l).entries
    rhs = Fg @ Fl - Fl @ Fg
    total = rs.root_sum(g, l)
    lhs = zeros(d.S) if total is None else ftilde(d, total).entries * d.structure_constants.N(g, l)
    rep.checked += 1
    diff = lhs - rhs
    if not is_zero(diff):
        rep.add(gamma=g.label(), lam=l.label(), residual=matrix_to_strings(diff))
    return rep


def check_all_hh(d: DualizedAlgebra) -> Report:
    rep = Report("HE/HH identities", unit="matrix equalities")
    for j in range(d.r):
        for g in d.ncp:
            rep.merge(check_hh_identity(d, j, g))
    return rep


def check_all_ee(d: DualizedAlgebra) -> Report:
    rep = Report("EE identities", unit="matrix equalities")
    for g in d.ncp:
        for l in d.ncp:
            rep.merge(check_ee_identity(d, g, l))
    return rep


def check_all_R(d: DualizedAlgebra) -> Report:
    rep = Report("R structure", unit="clauses")
    for g in d.ncp:
        rep.merge(check_R_structure(d, g))
    return rep


def check_ideal(d: DualizedAlgebra) -> Report:
    """The dual span is an abelian ideal and the dimension is doubled."""
    S = d.S
    rep = Report("abelian dual ideal", unit="pairs")
    rep.checked += 1
    if d.dim != 2 * d.base.dim:
        rep.add(clause="dimension", dim=d.dim, base=d.base.dim)
    for a in range(d.dim):
        for b in range(S, 2 * S):
            rep.checked += 1
            out = d.bracket.get((a, b), {})
            if a >= S and out:
                rep.add(clause="abelian", pair=[a, b])
            elif any(c < S for c in out):
                rep.add(clause="ideal", pair=[a, b])
    return rep


def check_quotient(d: DualizedAlgebra) -> Report:
    """Dividing out the dual ideal gives back the bracket table of ``s``."""
    S = d.S
    rep = Report("quotient equals s", unit="pairs")
    for l in range(S):
        for n in range(S):
            rep.checked += 1
            reduced = {c: v for c, v in d.bracket.get((l, n), {}).items() if c < S}
            if reduced != d.base.bracket.get((l, n), {}):
                rep.add(pair=[l, n])
    return rep


def matrices_json(d: DualizedAlgebra) -> str:
    mats = [gtilde(d, j).to_dict() for j in range(d.r)] + [ftilde(d, g).to_dict() for g in d.ncp]
    return json.dumps(mats)
