"""The representation ``f(T_l) = U_l`` of ``s`` on the dual generators, and the
coset representative ``nu = exp(Gamma) exp(Lambda)`` built from it.

``Gamma = 1/2 phi^i g~_i`` is diagonal, so its exponential is taken entrywise.
``Lambda = chi^a f~_a`` is nilpotent, because each ``f~`` strictly lowers root
height on the dual generators. Its exponential is therefore a finite sum.
That sum is exact when ``chi`` is rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ._exact import factorial_series, is_zero, matrix_to_strings, nilpotent_powers, zeros
from .dualized import DualizedAlgebra
from .report import Report


@dataclass(frozen=True)
class FieldConfiguration:
    """Dilatons ``phi`` (one per retained Cartan generator) and axions ``chi`` (one per root)."""

    phi: tuple
    chi: tuple

    def __post_init__(self):
        for x in self.phi + self.chi:
            if isinstance(x, float) and not math.isfinite(x):
                raise ValueError(f"non-finite field value {x}")

    @classmethod
    def of(cls, phi: Sequence, chi: Sequence) -> "FieldConfiguration":
        return cls(tuple(phi), tuple(chi))

    @classmethod
    def zero(cls, d: DualizedAlgebra) -> "FieldConfiguration":
        return cls((Fraction(0),) * d.r, (Fraction(0),) * len(d.ncp))

    @classmethod
    def random(cls, d: DualizedAlgebra, rng: np.random.Generator, low=-1.0, high=1.0) -> "FieldConfiguration":
        vals = rng.uniform(low, high, d.S)
        return cls(tuple(float(v) for v in vals[: d.r]), tuple(float(v) for v in vals[d.r:]))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for x in self.phi + self.chi)

    def check(self, d: DualizedAlgebra) -> None:
        if len(self.phi) != d.r or len(self.chi) != len(d.ncp):
            raise ValueError(f"expected {d.r} dilatons and {len(d.ncp)} axions, got {len(self.phi)} and {len(self.chi)}")


def adjoint_of(d: DualizedAlgebra, M: Sequence) -> np.ndarray:
    """``f(M) = sum_l M^l U_l`` for coordinates ``M`` over the basis of ``s``."""
    if len(M) != d.S:
        raise ValueError(f"expected {d.S} coordinates, got {len(M)}")
    out = zeros(d.S)
    for l, x in enumerate(M):
        if x:
            out = out + d.U(l) * x
    return out


def verify_homomorphism(d: DualizedAlgebra) -> Report:
    """``f([T_l, T_n]) = [f(T_l), f(T_n)]`` for every ordered basis pair."""
    rep = Report("homomorphism", unit="basis pairs")
    S = d.S
    for l in range(S):
        for n in range(S):
            rep.checked += 1
            coords = [Fraction(0)] * S
            for t, v in d.base.bracket.get((l, n), {}).items():
                coords[t] = v
            lhs = adjoint_of(d, coords)
            Ul, Un = d.U(l), d.U(n)
            diff = lhs - (Ul @ Un - Un @ Ul)
            if not is_zero(diff):
                rep.add(pair=[l, n], residual=matrix_to_strings(diff))
    return rep


def max_height(d: DualizedAlgebra) -> int:
    return max(a.height for a in d.ncp)


def lambda_matrix(d: DualizedAlgebra, chi: Sequence) -> np.ndarray:
    out = zeros(d.S)
    for k, x in enumerate(chi):
        if x:
            out = out + d.ftildes[k] * x
    return out


def gamma_diagonal(d: DualizedAlgebra, phi: Sequence) -> list:
    """Diagonal of ``Gamma``: zero on Cartan rows, ``-1/2 a.phi`` on the row of root ``a``."""
    diag = [0 * (phi[0] if phi else 0)] * d.r
    for a in d.ncp:
        comps = d.base.components(a)
        diag.append(-sum(c * p for c, p in zip(comps, phi)) / 2)
    return diag


def exp_lambda(d: DualizedAlgebra, chi: Sequence, sign: int = 1) -> np.ndarray:
    """``exp(sign * Lambda)`` as a terminating series; nilpotency is asserted first."""
    lam = lambda_matrix(d, chi) * sign
    powers = nilpotent_powers(lam, max_height(d) + 1)
    return factorial_series(powers, lambda m: Fraction(1, math.factorial(m)))


def exp_gamma(d: DualizedAlgebra, phi: Sequence, exp: Callable = math.exp, sign: int = 1) -> np.ndarray:
    diag = gamma_diagonal(d, phi)
    out = zeros(d.S, fill=0.0 * exp(0))
    for k, g in enumerate(diag):
        out[k, k] = exp(sign * g)
    return out


def coset_matrix(d: DualizedAlgebra, fc: FieldConfiguration, exp: Callable = math.exp) -> np.ndarray:
    """``nu = exp(Gamma) exp(Lambda)``.

    With the default ``exp`` the result is a float array. Pass e.g. ``mpmath.exp``
    (together with ``mpf`` fields) for extended precision.
    """
    fc.check(d)
    nu = exp_gamma(d, fc.phi, exp) @ exp_lambda(d, fc.chi)
    if exp is math.exp:
        return nu.astype(float)
    return nu


def coset_matrix_inverse(d: DualizedAlgebra, fc: FieldConfiguration, exp: Callable = math.exp) -> np.ndarray:
    """``nu^-1 = exp(-Lambda) exp(-Gamma)``."""
    fc.check(d)
    inv = exp_lambda(d, fc.chi, sign=-1) @ exp_gamma(d, fc.phi, exp, sign=-1)
    if exp is math.exp:
        return inv.astype(float)
    return inv


def coset_matrix_json(d: DualizedAlgebra, fc: FieldConfiguration, precision: int = 12) -> dict:
    nu = coset_matrix(d, fc)
    return {"labels": d.base.basis_labels, "nu": [[round(float(x), precision) for x in row] for row in nu]}
