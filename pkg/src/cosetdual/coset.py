"""The solvable coset algebra ``s = span{H_i (i in I), E_alpha (alpha in ncp)}``.

``ncp`` is the set of noncompact positive roots. It defaults to every positive
root, with every Cartan generator kept (the maximally split case).

Basis layout: ``T_0..T_{r-1}`` are the retained Cartan generators in the order
given, and ``T_r..T_{S-1}`` are the root generators in canonical root order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .chevalley import StructureConstants
from .lie import SparseBracket, check_antisymmetry, check_jacobi, dense_tensor, derived_series_dims
from .report import Report
from .roots import Root, RootSystem


class ClosureError(ValueError):
    """``ncp`` is not additively closed inside the root system."""

    def __init__(self, violations: list[tuple[Root, Root, Root]]):
        self.violations = violations
        a, b, s = violations[0]
        super().__init__(
            f"noncompact set not closed: [{a}] + [{b}] = [{s}] is a root but is missing"
            + (f" (and {len(violations) - 1} more)" if len(violations) > 1 else "")
        )


def _as_roots(rs: RootSystem, ncp: Iterable | None) -> tuple[Root, ...]:
    if ncp is None:
        return rs.positive_roots
    roots = [rs.root(a) for a in ncp]
    for a in roots:
        if not a.is_positive:
            raise ValueError(f"{a} is not a positive root")
    if len({a.coeffs for a in roots}) != len(roots):
        raise ValueError("duplicate roots in noncompact set")
    return tuple(sorted(roots, key=rs.position))


def validate_closure(rs: RootSystem, ncp: Iterable) -> Report:
    """Report every pair in ``ncp`` whose sum is a root outside ``ncp``."""
    roots = _as_roots(rs, ncp)
    members = {a.coeffs for a in roots}
    rep = Report("closure", unit="pairs")
    for i, a in enumerate(roots):
        for b in roots[i:]:
            rep.checked += 1
            s = rs.root_sum(a, b)
            if s is not None and s.coeffs not in members:
                rep.add(alpha=list(a.coeffs), beta=list(b.coeffs), sum=list(s.coeffs))
    return rep


@dataclass(frozen=True)
class SolvableAlgebra:
    root_system: RootSystem
    structure_constants: StructureConstants
    cartan_indices: tuple[int, ...]
    ncp: tuple[Root, ...]
    bracket: SparseBracket = field(repr=False)

    @property
    def r(self) -> int:
        return len(self.cartan_indices)

    @property
    def dim(self) -> int:
        return self.r + len(self.ncp)

    S = dim

    @property
    def basis_labels(self) -> list[str]:
        return [f"H{j + 1}" for j in self.cartan_indices] + [f"E[{a.label()}]" for a in self.ncp]

    def components(self, alpha) -> tuple[Fraction, ...]:
        """Components of a root on the retained Cartan generators only."""
        full = self.root_system.cartan_components(alpha)
        return tuple(full[j] for j in self.cartan_indices)

    def index_of(self, alpha) -> int:
        key = RootSystem._key(alpha)
        for k, a in enumerate(self.ncp):
            if a.coeffs == key:
                return self.r + k
        raise KeyError(f"{key} is not in the noncompact set")

    def root_at(self, index: int) -> Root | None:
        return self.ncp[index - self.r] if index >= self.r else None

    def Z(self) -> np.ndarray:
        """Dense structure tensor ``Z[t, l, n] = Z^t_{ln}``."""
        return dense_tensor(self.dim, self.bracket)

    def check_jacobi(self, workers: int | None = None) -> Report:
        rep = check_jacobi(self.dim, self.bracket, workers)
        rep.name = "solvable Jacobi"
        return rep

    def check_antisymmetry(self) -> Report:
        return check_antisymmetry(self.dim, self.bracket)

    def derived_series(self) -> list[int]:
        return derived_series_dims(self.dim, self.bracket)

    def check_pattern(self) -> Report:
        """Only the allowed nonzero patterns: [H,H]=0, [H,E_g]=g_j E_g, [E,E] in span E."""
        rep = Report("bracket pattern", unit="pairs")
        r = self.r
        for l in range(self.dim):
            for n in range(self.dim):
                rep.checked += 1
                out = self.bracket.get((l, n), {})
                if l < r and n < r and out:
                    rep.add(pair=[l, n], clause="[H,H] != 0")
                elif l < r <= n:
                    want = self.components(self.root_at(n))[l]
                    expect = {n: want} if want else {}
                    if out != expect:
                        rep.add(pair=[l, n], clause="[H,E] != g_j E_g")
                elif l >= r and n >= r and any(t < r for t in out):
                    rep.add(pair=[l, n], clause="[E,E] has a Cartan part")
        return rep


def build_solvable(
    rs: RootSystem,
    sc: StructureConstants,
    ncp: Iterable | None = None,
    cartan_indices: Sequence[int] | None = None,
) -> SolvableAlgebra:
    """Assemble ``s`` and its bracket table ``Z``.

    ``cartan_indices`` are 0-based indices into the simple coroots; default all.
    Raises :class:`ClosureError` if ``ncp`` is not closed.
    """
    roots = _as_roots(rs, ncp)
    if cartan_indices is None:
        cartan_indices = range(rs.rank)
    cartan_indices = tuple(int(j) for j in cartan_indices)
    if not cartan_indices:
        raise ValueError("at least one Cartan generator is required")
    if len(set(cartan_indices)) != len(cartan_indices) or not all(0 <= j < rs.rank for j in cartan_indices):
        raise ValueError(f"invalid Cartan indices {cartan_indices} for rank {rs.rank}")

    closure = validate_closure(rs, roots)
    if not closure.passed:
        raise ClosureError([(rs.root(v["alpha"]), rs.root(v["beta"]), rs.root(v["sum"])) for v in closure.violations])

    r = len(cartan_indices)
    pos = {a.coeffs: r + k for k, a in enumerate(roots)}
    br: SparseBracket = {}

    def put(x, y, coeffs):
        coeffs = {k: v for k, v in coeffs.items() if v != 0}
        if coeffs:
            br[x, y] = coeffs
            br[y, x] = {k: -v for k, v in coeffs.items()}

    for i, j in enumerate(cartan_indices):
        for a in roots:
            put(i, pos[a.coeffs], {pos[a.coeffs]: a.components[j]})
    for a in roots:
        for b in roots:
            if pos[a.coeffs] >= pos[b.coeffs]:
                continue
            s = rs.root_sum(a, b)
            if s is not None:
                # closure guarantees s is in the basis
                put(pos[a.coeffs], pos[b.coeffs], {pos[s.coeffs]: sc.N(a, b)})

    return SolvableAlgebra(rs, sc, cartan_indices, roots, br)
