"""First-order sigma-model equations and their expansion into second-order ones.

Conventions:

* ``omega[g, b] = chi^a K^g_{ab}`` where ``K^g_{ab} = N_{a,b}`` if ``a+b = g`` is in
  ``ncp`` (the restriction of ``N`` to the coset algebra). Rows are the output root.
* ``Omega = sum_m omega^m / (m+1)!``. The sum is finite because ``omega`` raises
  root height, so the closed form ``(e^omega - 1)/omega`` is never used.
* The Cartan form ``G = 1/2 dphi^i g~_i + exp(1/2 b.phi) Omega[b, a] dchi^a f~_b``
  is stored as an ``(S, S, S)`` array. ``G[m, n, k]`` is the coefficient of the
  ``k``-th one-form, ordered ``dphi^1..dphi^r, dchi^1..dchi^{S-r}``.
* ``D`` (the base-manifold dimension) enters only through the sign ``(-1)^D``.

Second-order expansions are :class:`FormalExpansion` objects. Their keys are
pairs ``(one_form, star_form)``. Symbols are not solved for. They are wedge
products of free symbols, compared coefficient by coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import mpmath
import numpy as np
import sympy

from ._exact import factorial_series, identity, nilpotent_powers, zeros
from .adjoint import FieldConfiguration, coset_matrix, coset_matrix_inverse
from .dualized import DualizedAlgebra
from .report import Report

Symbol = tuple[str, int]


# ---------------------------------------------------------------------------
# scalar backends


def _sym(x):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return x


def _exact_exp(x):
    return sympy.exp(_sym(Fraction(x)))


def _backend(fc: FieldConfiguration, exact: bool | None):
    if exact is None:
        exact = fc.is_exact
    if exact:
        if not fc.is_exact:
            raise ValueError("exact expansion needs rational field values")
        return True, _exact_exp, _sym
    return False, math.exp, float


# ---------------------------------------------------------------------------
# omega and Omega


def omega_lowercase(d: DualizedAlgebra, chi: Sequence) -> np.ndarray:
    ncp = d.ncp
    if len(chi) != len(ncp):
        raise ValueError(f"expected {len(ncp)} axions, got {len(chi)}")
    sc = d.structure_constants
    pos = {a.coeffs: k for k, a in enumerate(ncp)}
    zero = 0 * chi[0] if len(chi) else Fraction(0)
    out = zeros(len(ncp), fill=zero)
    for ia, a in enumerate(ncp):
        if not chi[ia]:
            continue
        for ib, b in enumerate(ncp):
            g = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
            if g in pos:
                out[pos[g], ib] = out[pos[g], ib] + chi[ia] * sc.N(a, b)
    return out


@dataclass(frozen=True)
class OmegaMatrix:
    entries: np.ndarray
    chi: tuple
    nilpotency_index: int  # smallest k with omega**k == 0


def omega_nilpotency_bound(d: DualizedAlgebra) -> int:
    return max(a.height for a in d.ncp)


def omega_capital(d: DualizedAlgebra, chi: Sequence) -> OmegaMatrix:
    w = omega_lowercase(d, chi)
    powers = nilpotent_powers(w, omega_nilpotency_bound(d))
    entries = factorial_series(powers, lambda m: Fraction(1, math.factorial(m + 1)))
    return OmegaMatrix(entries, tuple(chi), len(powers))


def exp_omega(d: DualizedAlgebra, chi: Sequence) -> np.ndarray:
    w = omega_lowercase(d, chi)
    powers = nilpotent_powers(w, omega_nilpotency_bound(d))
    return factorial_series(powers, lambda m: Fraction(1, math.factorial(m)))


def check_omega_series(d: DualizedAlgebra, chi: Sequence, tol: float = 0.0) -> Report:
    """``exp(omega) = I + omega Omega`` entrywise (exact for rational ``chi``)."""
    rep = Report("exp(omega) = I + omega Omega", unit="entries")
    w = omega_lowercase(d, chi)
    lhs = exp_omega(d, chi)
    rhs = identity(len(d.ncp)) + w @ omega_capital(d, chi).entries
    for (i, j), x in np.ndenumerate(lhs - rhs):
        rep.checked += 1
        if abs(x) > tol:
            rep.add(entry=[i, j], residual=float(x))
    return rep


# ---------------------------------------------------------------------------
# Cartan form


def _prefactors(d: DualizedAlgebra, phi: Sequence, exp: Callable) -> list:
    """``exp(1/2 b.phi)`` for each root ``b`` in ``ncp``."""
    out = []
    for b in d.ncp:
        comps = d.base.components(b)
        out.append(exp(sum(c * p for c, p in zip(comps, phi)) / 2))
    return out


@dataclass(frozen=True)
class CartanForm:
    coeffs: np.ndarray  # (S, S, S): G[m, n, k]
    r: int

    def evaluate(self, dphi: Sequence, dchi: Sequence) -> np.ndarray:
        S = self.coeffs.shape[0]
        vals = list(dphi) + list(dchi)
        out = zeros(S, fill=0 * self.coeffs[0, 0, 0])
        for k, v in enumerate(vals):
            if v:
                out = out + self.coeffs[:, :, k] * v
        return out

    def entry(self, m: int, n: int) -> dict[Symbol, Any]:
        """Nonzero one-form coefficients of ``G[m, n]``."""
        out = {}
        for k in range(self.coeffs.shape[2]):
            v = self.coeffs[m, n, k]
            if v != 0:
                out[("dphi", k) if k < self.r else ("dchi", k - self.r)] = v
        return out


def cartan_form(d: DualizedAlgebra, fc: FieldConfiguration, exp: Callable = math.exp) -> CartanForm:
    fc.check(d)
    S, r = d.S, d.r
    Om = omega_capital(d, fc.chi).entries
    pref = _prefactors(d, fc.phi, exp)
    zero = 0 * pref[0] if pref else Fraction(0)
    G = np.empty((S, S, S), dtype=object)
    G.fill(zero)
    for i in range(r):
        G[:, :, i] = d.gtildes[i] * Fraction(1, 2)
    for a in range(len(d.ncp)):
        acc = zeros(S, fill=zero)
        for b in range(len(d.ncp)):
            w = Om[b, a]
            if w:
                acc = acc + d.ftildes[b] * (pref[b] * w)
        G[:, :, r + a] = acc
    return CartanForm(G, r)


def fd_check_cartan_form(
    d: DualizedAlgebra,
    fc: FieldConfiguration,
    direction: FieldConfiguration,
    step: float,
    dps: int = 50,
) -> float:
    """Max entrywise gap between a central difference of ``nu`` times ``nu^-1`` and ``G``.

    Evaluated with ``dps`` significant digits so that the difference quotient is
    limited by its own truncation error rather than float round-off.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    fc.check(d)
    direction.check(d)
    with mpmath.workdps(dps):
        mp = mpmath.mpf
        t = mp(step)
        base = [mp(x) if not isinstance(x, Fraction) else mp(x.numerator) / x.denominator for x in fc.phi + fc.chi]
        dirv = [mp(x) if not isinstance(x, Fraction) else mp(x.numerator) / x.denominator for x in direction.phi + direction.chi]
        r = d.r

        def config(sign):
            vals = [x + sign * t * y for x, y in zip(base, dirv)]
            return FieldConfiguration(tuple(vals[:r]), tuple(vals[r:]))

        here = FieldConfiguration(tuple(base[:r]), tuple(base[r:]))
        plus = coset_matrix(d, config(1), exp=mpmath.exp)
        minus = coset_matrix(d, config(-1), exp=mpmath.exp)
        inv = coset_matrix_inverse(d, here, exp=mpmath.exp)
        fd = ((plus - minus) / (2 * t)) @ inv
        G = cartan_form(d, here, exp=mpmath.exp).evaluate(dirv[:r], dirv[r:])
        dev = max((abs(x) for x in (fd - G).flat), default=mp(0))
        return float(dev)


# ---------------------------------------------------------------------------
# first-order system


def psi_coefficients(d: DualizedAlgebra, fc: FieldConfiguration, exp: Callable = math.exp) -> np.ndarray:
    """``P[n, k]``: coefficient of the ``k``-th one-form in ``Psi^n``.

    ``Psi^i = 1/2 dphi^i`` and ``Psi^{b+r} = exp(1/2 b.phi) Omega[b, g] dchi^g``.
    """
    S, r = d.S, d.r
    Om = omega_capital(d, fc.chi).entries
    pref = _prefactors(d, fc.phi, exp)
    zero = 0 * pref[0] if pref else Fraction(0)
    P = zeros(S, fill=zero)
    for i in range(r):
        P[i, i] = Fraction(1, 2) + zero
    for b in range(len(d.ncp)):
        for g in range(len(d.ncp)):
            P[r + b, r + g] = pref[b] * Om[b, g]
    return P


@dataclass(frozen=True)
class FirstOrderSystem:
    """``*Psi = (-1)^D nu A`` written out component by component.

    ``psi[n, k]`` expands ``Psi^n`` over ``dphi^i, dchi^a``. ``rhs[n, k]`` expands
    ``(-1)^D (nu A)^n`` over the dual potentials ``dphi~^i, dchi~^a``.
    """

    psi: np.ndarray
    rhs: np.ndarray
    nu: np.ndarray
    nu_inverse: np.ndarray
    D: int
    r: int

    @property
    def sign(self) -> int:
        return -1 if self.D % 2 else 1

    def a_coefficients(self) -> np.ndarray:
        """Expansion of ``A`` over the dual potentials: ``A^i = 1/2 dphi~^i``, ``A^{a+r} = dchi~^a``."""
        S = self.psi.shape[0]
        out = np.eye(S)
        out[: self.r, : self.r] *= 0.5
        return out

    def recovered_a(self) -> np.ndarray:
        """``(-1)^D nu^-1`` applied to the right-hand side; should give back ``A``."""
        return self.sign * (self.nu_inverse @ self.rhs)

    def inversion_error(self) -> float:
        return float(np.abs(np.asarray(self.recovered_a(), dtype=float) - self.a_coefficients()).max())

    def equations(self, labels: Sequence[str], digits: int = 6) -> list[str]:
        S = self.psi.shape[0]
        names = [f"dphi{i + 1}" for i in range(self.r)] + [f"dchi{a + 1}" for a in range(S - self.r)]
        duals = [f"dphi~{i + 1}" for i in range(self.r)] + [f"dchi~{a + 1}" for a in range(S - self.r)]

        def combo(row, syms):
            terms = [f"{float(c):+.{digits}g} {s}" for c, s in zip(row, syms) if c != 0]
            return " ".join(terms) if terms else "0"

        return [f"*({combo(self.psi[n], names)}) = {combo(self.rhs[n], duals)}    [{labels[n]}]" for n in range(S)]


def first_order_system(d: DualizedAlgebra, fc: FieldConfiguration, D: int = 2) -> FirstOrderSystem:
    fc.check(d)
    nu = coset_matrix(d, fc)
    inv = coset_matrix_inverse(d, fc)
    sign = -1 if D % 2 else 1
    psi = np.asarray(psi_coefficients(d, fc), dtype=float)
    a = np.eye(d.S)
    a[: d.r, : d.r] *= 0.5
    return FirstOrderSystem(psi, sign * nu @ a, nu, inv, D, d.r)


# ---------------------------------------------------------------------------
# formal expansions


@dataclass
class FormalExpansion:
    """Coefficients of ``one_form ^ star_form`` symbol pairs."""

    coeffs: dict[tuple[Symbol, Symbol], Any] = field(default_factory=dict)

    def add(self, left: Symbol, right: Symbol, value) -> None:
        if value == 0:
            return
        key = (left, right)
        total = self.coeffs.get(key, 0) + value
        if total == 0:
            self.coeffs.pop(key, None)
        else:
            self.coeffs[key] = total

    def __getitem__(self, key) -> Any:
        return self.coeffs.get(key, 0)

    def keys(self):
        return self.coeffs.keys()

    def nonzero(self, exact: bool = False) -> dict:
        if exact:
            return {k: v for k, v in self.coeffs.items() if sympy.expand(v) != 0}
        return {k: v for k, v in self.coeffs.items() if v != 0}

    def is_zero(self, exact: bool = False) -> bool:
        return not self.nonzero(exact)

    def scale(self) -> float:
        return max((abs(float(v)) for v in self.coeffs.values()), default=0.0)

    def compare(self, other: "FormalExpansion", exact: bool, rtol: float = 1e-12) -> tuple[list, float]:
        """Keys whose coefficients differ, and the largest absolute gap."""
        bad, worst = [], 0.0
        scale = max(self.scale(), other.scale(), 1e-300)
        for key in sorted(set(self.coeffs) | set(other.coeffs)):
            diff = self[key] - other[key]
            if exact:
                diff = sympy.expand(diff)
                if diff != 0 and sympy.simplify(diff) != 0:
                    bad.append(key)
                    worst = max(worst, abs(float(diff)))
            else:
                gap = abs(float(diff))
                worst = max(worst, gap)
                if gap > rtol * scale:
                    bad.append(key)
        return bad, worst

    def render(self) -> str:
        parts = [f"({v}) {_name(l)} ^ {_name(r)}" for (l, r), v in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"


def _name(sym: Symbol) -> str:
    kind, k = sym
    return f"{kind}{k + 1}"


def star_psi_expansion(d: DualizedAlgebra, G: CartanForm, m: int) -> FormalExpansion:
    """``G[m, n] ^ *Psi^n`` over the symbols ``(one-form, *Psi^n)``."""
    out = FormalExpansion()
    for n in range(d.S):
        for sym, v in G.entry(m, n).items():
            out.add(sym, ("*Psi", n), v)
    return out


def to_primitive(d: DualizedAlgebra, exp88: FormalExpansion, P: np.ndarray) -> FormalExpansion:
    """Rewrite ``*Psi^n`` as ``P[n, k] *(one-form k)``."""
    r = d.r
    out = FormalExpansion()
    for (left, right), v in exp88.coeffs.items():
        n = right[1]
        for k in range(d.S):
            if P[n, k] != 0:
                star = ("*dphi", k) if k < r else ("*dchi", k - r)
                out.add(left, star, v * P[n, k])
    return out


def dilaton_target(d: DualizedAlgebra, i: int, Om, pref) -> FormalExpansion:
    """Right side of the second-order dilaton equation, divided by 2 so it equals ``d*Psi^i``.

    ``d*dphi^i = 1/2 sum b_i e^{b.phi/2} Om[b,a] dchi^a ^ e^{b.phi/2} Om[b,g] *dchi^g``.
    """
    out = FormalExpansion()
    n = len(d.ncp)
    for b, root in enumerate(d.ncp):
        bi = d.base.components(root)[i]
        if bi == 0:
            continue
        for a in range(n):
            for g in range(n):
                v = Fraction(1, 2) * Fraction(1, 2) * bi * pref[b] * Om[b, a] * pref[b] * Om[b, g]
                out.add(("dchi", a), ("*dchi", g), v)
    return out


def axion_target(d: DualizedAlgebra, b: int, Om, pref) -> FormalExpansion:
    """Right side of the second-order axion equation for root ``b`` (it equals ``d*Psi^{b+r}``)."""
    out = FormalExpansion()
    n = len(d.ncp)
    beta = d.ncp[b]
    sc = d.structure_constants
    pos = {x.coeffs: k for k, x in enumerate(d.ncp)}
    comps = d.base.components(beta)
    for i in range(d.r):
        for a in range(n):
            out.add(("dphi", i), ("*dchi", a), -Fraction(1, 2) * comps[i] * pref[b] * Om[b, a])
    for kap, kappa in enumerate(d.ncp):
        theta = tuple(x + y for x, y in zip(kappa.coeffs, beta.coeffs))  # kappa - theta = -beta
        if theta not in pos:
            continue
        t = pos[theta]
        N = sc.N(kappa.coeffs, tuple(-x for x in theta))
        for a in range(n):
            for s in range(n):
                out.add(("dchi", a), ("*dchi", s), pref[kap] * Om[kap, a] * N * pref[t] * Om[t, s])
    return out


def _vanishing_checks(d: DualizedAlgebra, m: int, eps: FormalExpansion, exact: bool, rep: Report) -> None:
    r = d.r

    def zero(v):
        return (sympy.expand(v) == 0) if exact else v == 0

    if m < r:
        for (left, right), v in eps.coeffs.items():
            if left[0] == "dphi":
                rep.checked += 1
                if not zero(v):
                    rep.add(component=m, clause="dphi ^ *Psi term in dilaton sector", key=[_name(left), _name(right)])
            elif right[1] < r:
                rep.checked += 1
                if not zero(v):
                    rep.add(component=m, clause="dchi ^ *Psi(Cartan) term in dilaton sector", key=[_name(left), _name(right)])
        # inside each f~_b only the column of b itself reaches the Cartan rows
        for b in range(len(d.ncp)):
            for kap in range(len(d.ncp)):
                if kap != b:
                    rep.checked += 1
                    if d.ftildes[b][m, r + kap] != 0:
                        rep.add(component=m, clause="off-column Cartan entry of f~", b=b, kappa=kap)
    else:
        for (left, right), v in eps.coeffs.items():
            if left[0] == "dphi" and right[1] != m:
                rep.checked += 1
                if not zero(v):
                    rep.add(component=m, clause="dphi ^ *Psi off the diagonal", key=[_name(left), _name(right)])
            if left[0] == "dchi" and right[1] < r:
                rep.checked += 1
                if not zero(v):
                    rep.add(component=m, clause="dchi ^ *Psi(Cartan) term in axion sector", key=[_name(left), _name(right)])


@dataclass
class SecondOrderResult:
    expansions: dict[int, FormalExpansion]  # over (one-form, *Psi^n)
    primitive: dict[int, FormalExpansion]
    targets: dict[int, FormalExpansion]
    report: Report
    vanishing: Report
    max_deviation: dict[int, float]
    exact: bool

    @property
    def passed(self) -> bool:
        return self.report.passed and self.vanishing.passed


def expand_second_order(d: DualizedAlgebra, fc: FieldConfiguration, exact: bool | None = None) -> SecondOrderResult:
    """Differentiate the first-order system and compare with the second-order equations.

    Builds ``G[m, n] ^ *Psi^n`` for every component ``m``. Separately, it builds
    the closed-form dilaton and axion right-hand sides. Both are rewritten over
    ``{dphi, dchi} ^ {*dphi, *dchi}`` and compared coefficient by coefficient.
    With rational fields the comparison is exact. With float fields it uses a
    1e-12 tolerance relative to the largest coefficient of the component.
    """
    fc.check(d)
    exact, exp, conv = _backend(fc, exact)
    phi = [Fraction(x) for x in fc.phi] if exact else [float(x) for x in fc.phi]
    chi = [Fraction(x) for x in fc.chi] if exact else [float(x) for x in fc.chi]
    fc_n = FieldConfiguration(tuple(phi), tuple(chi))

    G = cartan_form(d, fc_n, exp=exp)
    P = psi_coefficients(d, fc_n, exp=exp)
    Om = omega_capital(d, chi).entries
    pref = _prefactors(d, phi, exp)
    if exact:
        G = CartanForm(np.vectorize(_sym, otypes=[object])(G.coeffs), G.r)
        P = np.vectorize(_sym, otypes=[object])(P)
        Om = np.vectorize(_sym, otypes=[object])(Om)

    rep = Report("first-order => second-order", unit="components")
    van = Report("vanishing terms", unit="coefficients")
    expansions, primitive, targets, worst = {}, {}, {}, {}
    for m in range(d.S):
        eps = star_psi_expansion(d, G, m)
        prim = to_primitive(d, eps, P)
        target = dilaton_target(d, m, Om, pref) if m < d.r else axion_target(d, m - d.r, Om, pref)
        if exact:
            target = FormalExpansion({k: _sym(v) for k, v in target.coeffs.items()})
        bad, gap = prim.compare(target, exact)
        rep.checked += 1
        if bad:
            rep.add(component=m, label=d.base.basis_labels[m], keys=[[_name(a), _name(b)] for a, b in bad], max_gap=gap)
        _vanishing_checks(d, m, eps, exact, van)
        expansions[m], primitive[m], targets[m], worst[m] = eps, prim, target, gap
    return SecondOrderResult(expansions, primitive, targets, rep, van, worst, exact)
