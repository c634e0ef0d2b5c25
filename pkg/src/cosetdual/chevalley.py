"""Cartan-Weyl structure constants ``N_{alpha,beta}`` in exact arithmetic.

The table is built in two stages.

1. Chevalley constants ``n_{alpha,beta} = +-(p+1)`` for the Chevalley basis
   ``{h_i, e_alpha}``, with every extraspecial pair of positive roots given a
   positive sign and ``n_{-alpha,-beta} = -n_{alpha,beta}``. All other signs
   follow from the standard relations between Chevalley constants.
2. The negative-root generators are rescaled, ``E_{-alpha} = (|alpha|^2/|short|^2) e_{-alpha}``.
   That keeps every constant rational, leaves the positive-pair constants
   equal to the Chevalley ones, and makes the unweighted cyclic identity
   ``N_{a,b} = N_{b,c} = N_{c,a}`` (for ``a+b+c = 0``) hold in every type,
   not only the simply laced ones.

After the rescaling ``[E_alpha, E_{-alpha}] = sum_i k_i |alpha_i|^2/|short|^2 H_i``
where ``alpha = sum_i k_i alpha_i`` and ``H_i`` are the simple coroots.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from ._exact import frac_str
from .lie import SparseBracket, check_jacobi as _check_jacobi
from .report import Report
from .roots import RootSystem

Key = tuple[int, ...]


def _add(a: Key, b: Key) -> Key:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Key) -> Key:
    return tuple(-x for x in a)


def _positive(a: Key) -> bool:
    return sum(a) > 0


def string_below(rs: RootSystem, alpha: Key, beta: Key) -> int:
    """Largest ``p`` with ``beta - p*alpha`` a root."""
    p = 0
    cur = beta
    while True:
        cur = tuple(y - x for x, y in zip(alpha, cur))
        if cur not in rs:
            return p
        p += 1


class _ChevalleyTable:
    """Chevalley constants via extraspecial pairs (Carter's algorithm)."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.pos: dict[tuple[Key, Key], int] = {}
        self.extraspecial: dict[Key, tuple[Key, Key]] = {}
        order = [a.coeffs for a in rs.positive_roots]
        for xi in order[rs.rank:]:
            first = next(a for a in order if _add(_neg(a), xi) in rs and _positive(_add(_neg(a), xi)))
            second = _add(xi, _neg(first))
            self.extraspecial[xi] = (first, second)
            n = string_below(rs, first, second) + 1
            self.pos[first, second] = n
            self.pos[second, first] = -n
            for a in order:
                b = _add(xi, _neg(a))
                if a == first or a == second or b not in rs or not _positive(b):
                    continue
                if (a, b) in self.pos:
                    continue
                value = self._special(a, b, first, second, xi)
                self.pos[a, b] = value
                self.pos[b, a] = -value

    def _special(self, a: Key, b: Key, a1: Key, b1: Key, xi: Key) -> int:
        # four-root relation applied to (a, b, -a1, -b1)
        rs = self.rs
        total = Fraction(0)
        d = _add(b, _neg(a1))
        if d in rs:
            total += Fraction(self.n(b, _neg(a1)) * self.n(a, _neg(b1))) / rs.norm2(d)
        d = _add(a, _neg(a1))
        if d in rs:
            total += Fraction(self.n(_neg(a1), a) * self.n(b, _neg(b1))) / rs.norm2(d)
        value = rs.norm2(xi) * total / self.pos[a1, b1]
        assert value.denominator == 1 and value != 0, (a, b, value)
        return int(value)

    def n(self, a: Key, b: Key) -> Fraction:
        rs = self.rs
        s = _add(a, b)
        if s not in rs:
            return Fraction(0)
        pa, pb = _positive(a), _positive(b)
        if pa and pb:
            return Fraction(self.pos[a, b])
        if not pa and not pb:
            return -self.n(_neg(a), _neg(b))
        if not pa:
            return -self.n(b, a)
        # a > 0 > b; use n_{a,b}/|c|^2 = n_{b,c}/|a|^2 = n_{c,a}/|b|^2 with c = -(a+b)
        c = _neg(s)
        if _positive(s):
            return rs.norm2(c) / rs.norm2(a) * self.n(b, c)
        return rs.norm2(c) / rs.norm2(b) * self.n(c, a)


@dataclass(frozen=True)
class StructureConstants:
    """Antisymmetric table ``N_{alpha,beta}`` over all root pairs with ``alpha+beta`` a root."""

    root_system: RootSystem
    table: dict[tuple[Key, Key], Fraction]
    chevalley: dict[tuple[Key, Key], Fraction] = field(repr=False)
    extraspecial: dict[Key, tuple[Key, Key]] = field(repr=False)

    def N(self, alpha, beta) -> Fraction:
        a = RootSystem._key(alpha)
        b = RootSystem._key(beta)
        return self.table.get((a, b), Fraction(0))

    def cartan_bracket(self, alpha) -> tuple[Fraction, ...]:
        """Coefficients of ``[E_alpha, E_{-alpha}]`` on ``H_1..H_rank``."""
        rs = self.root_system
        a = RootSystem._key(alpha)
        short = min(rs.simple_lengths)
        return tuple(k * rs.simple_lengths[i] / short for i, k in enumerate(a))

    def scale(self, alpha) -> Fraction:
        """Factor ``E_alpha = scale * e_alpha`` relating to the Chevalley generator."""
        rs = self.root_system
        a = RootSystem._key(alpha)
        if _positive(a):
            return Fraction(1)
        return rs.norm2(a) / min(rs.simple_lengths)

    def to_list(self) -> list[dict]:
        return [
            {"alpha": list(a), "beta": list(b), "N": frac_str(v)}
            for (a, b), v in sorted(self.table.items(), key=lambda kv: (self._order(kv[0][0]), self._order(kv[0][1])))
        ]

    def _order(self, key: Key) -> tuple:
        rs = self.root_system
        root = rs.root(key)
        if root.is_positive:
            return (0, rs.position(root))
        return (1, rs.position(rs.negate(root)))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_list(), **kwargs)


def compute_structure_constants(rs: RootSystem) -> StructureConstants:
    chev = _ChevalleyTable(rs)
    keys = [a.coeffs for a in rs.roots]
    raw: dict[tuple[Key, Key], Fraction] = {}
    table: dict[tuple[Key, Key], Fraction] = {}
    short = min(rs.simple_lengths)

    def c(a: Key) -> Fraction:
        return Fraction(1) if _positive(a) else rs.norm2(a) / short

    for a in keys:
        for b in keys:
            s = _add(a, b)
            if s not in rs:
                continue
            n = chev.n(a, b)
            raw[a, b] = n
            table[a, b] = n * c(a) * c(b) / c(s)
    return StructureConstants(rs, table, raw, dict(chev.extraspecial))


def _root_tuples(rs: RootSystem, k: int):
    keys = [a.coeffs for a in rs.roots]
    zero = tuple(0 for _ in range(rs.rank))
    for head in itertools.product(keys, repeat=k - 1):
        last = _neg(tuple(map(sum, zip(*head)))) if head else zero
        if last in rs:
            yield head + (last,)


def verify_cycle_identity(sc: StructureConstants) -> Report:
    """``N_{a,b} = N_{b,c} = N_{c,a}`` for every root triple with ``a+b+c = 0``."""
    rep = Report("cycle identity", unit="zero-sum triples")
    for a, b, c in _root_tuples(sc.root_system, 3):
        rep.checked += 1
        vals = (sc.N(a, b), sc.N(b, c), sc.N(c, a))
        if len(set(vals)) != 1:
            rep.add(triple=[list(a), list(b), list(c)], values=[frac_str(v) for v in vals])
    return rep


def verify_quadruple_identity(sc: StructureConstants) -> Report:
    """``N_ab N_cd + N_bc N_ad + N_ca N_bd = 0`` for admissible zero-sum quadruples."""
    rep = Report("quadruple identity", unit="quadruples")
    N = sc.N
    for a, b, c, d in _root_tuples(sc.root_system, 4):
        if any(_add(x, y) == tuple(0 for _ in x) for x, y in itertools.combinations((a, b, c, d), 2)):
            continue
        rep.checked += 1
        value = N(a, b) * N(c, d) + N(b, c) * N(a, d) + N(c, a) * N(b, d)
        if value != 0:
            rep.add(quadruple=[list(a), list(b), list(c), list(d)], residual=frac_str(value))
    return rep


def verify_table(sc: StructureConstants) -> Report:
    """Antisymmetry, support, and ``|N| = p+1`` on positive pairs."""
    rs = sc.root_system
    rep = Report("table invariants", unit="root pairs")
    for a in rs.roots:
        for b in rs.roots:
            rep.checked += 1
            ka, kb = a.coeffs, b.coeffs
            n = sc.N(ka, kb)
            if n != -sc.N(kb, ka):
                rep.add(clause="antisymmetry", alpha=list(ka), beta=list(kb))
            if (n != 0) != (_add(ka, kb) in rs):
                rep.add(clause="support", alpha=list(ka), beta=list(kb))
            if a.is_positive and b.is_positive and n != 0:
                if abs(n) != string_below(rs, ka, kb) + 1:
                    rep.add(clause="magnitude", alpha=list(ka), beta=list(kb), N=frac_str(n))
    for xi, (a, b) in sc.extraspecial.items():
        if sc.N(a, b) <= 0:
            rep.add(clause="extraspecial sign", alpha=list(a), beta=list(b))
    return rep


def ambient_bracket(sc: StructureConstants) -> tuple[list[str], SparseBracket]:
    """Bracket table of the full algebra on ``{H_1..H_rank, E_alpha (all roots)}``."""
    rs = sc.root_system
    roots = rs.roots
    labels = [f"H{i + 1}" for i in range(rs.rank)] + [f"E[{a.label()}]" for a in roots]
    idx = {a.coeffs: rs.rank + k for k, a in enumerate(roots)}
    br: SparseBracket = {}

    def put(x, y, coeffs):
        coeffs = {k: v for k, v in coeffs.items() if v != 0}
        if coeffs:
            br[x, y] = coeffs
            br[y, x] = {k: -v for k, v in coeffs.items()}

    for j in range(rs.rank):
        for a in roots:
            put(j, idx[a.coeffs], {idx[a.coeffs]: a.components[j]})
    for a in roots:
        for b in roots:
            if idx[a.coeffs] >= idx[b.coeffs]:
                continue
            s = _add(a.coeffs, b.coeffs)
            if not any(s):
                put(idx[a.coeffs], idx[b.coeffs], dict(enumerate(sc.cartan_bracket(a))))
            elif s in rs:
                put(idx[a.coeffs], idx[b.coeffs], {idx[s]: sc.N(a, b)})
    return labels, br


def check_ambient_jacobi(sc: StructureConstants) -> Report:
    """Jacobi identities of the full simple Lie algebra built from the table."""
    labels, br = ambient_bracket(sc)
    rep = _check_jacobi(len(labels), br)
    rep.name = "ambient Jacobi"
    return rep
