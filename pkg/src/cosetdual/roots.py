"""Finite crystallographic root systems of the simple types.

Roots are generated by closing the simple roots under simple reflections.
Positive roots are enumerated by ascending height; roots of equal height are
ordered by descending coefficient tuple, so that the simple roots come out as
``alpha_1, alpha_2, ...``. That order is the canonical basis order used by every
other module.

Cartan components follow the Chevalley convention: the component of a root
``alpha`` on ``H_j`` is ``<alpha, alpha_j^vee>``, so the simple root ``alpha_i``
has the ``i``-th column of the Cartan matrix as its components.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._exact import frac_str

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class Root:
    coeffs: tuple[int, ...]
    components: tuple[Fraction, ...]

    def __post_init__(self):
        if not any(self.coeffs):
            raise RootSystemError("the zero vector is not a root")
        signs = {c > 0 for c in self.coeffs if c}
        if len(signs) != 1:
            raise RootSystemError(f"mixed-sign coefficients {self.coeffs}")

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def label(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign}{mag}a{i}")
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


def _dynkin(family: str, rank: int) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and the Dynkin edges (Bourbaki numbering)."""
    path = [(i, i + 1) for i in range(rank - 1)]
    two, one = Fraction(2), Fraction(1)
    if family == "A":
        return [two] * rank, path
    if family == "B":
        return [two] * (rank - 1) + [one], path
    if family == "C":
        return [one] * (rank - 1) + [two], path
    if family == "D":
        return [two] * rank, path[:-1] + [(rank - 3, rank - 1)]
    if family == "G":
        return [one, Fraction(3)], path
    if family == "F":
        return [two, two, one, one], path
    if family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, rank - 1)]
        return [two] * rank, edges
    raise RootSystemError(f"unknown family {family!r}")


def normalize_type(family: str, rank: int | None = None) -> tuple[str, int]:
    """Accept ``("A", 2)``, ``("G2", 2)``, ``("G2", None)`` or ``("E8", None)``."""
    family = family.strip().upper()
    if len(family) > 1:
        letter, digits = family[0], family[1:]
        if not digits.isdigit():
            raise RootSystemError(f"cannot parse type {family!r}")
        if rank is not None and int(digits) != rank:
            raise RootSystemError(f"type {family} conflicts with rank {rank}")
        family, rank = letter, int(digits)
    if family not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}")
    if rank is None:
        raise RootSystemError(f"family {family} needs a rank")
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not valid:
        raise RootSystemError(f"no simple root system of type {family}{rank}")
    return family, rank


def parse_type(name: str) -> tuple[str, int]:
    """Parse strings such as ``"A2"`` or ``"g2"``."""
    return normalize_type(name)


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_lengths: tuple[Fraction, ...]
    positive_roots: tuple[Root, ...]
    _index: dict = field(repr=False, compare=False, default_factory=dict)
    _position: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def negative_roots(self) -> tuple[Root, ...]:
        return tuple(self.negate(a) for a in self.positive_roots)

    @property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + self.negative_roots

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def __contains__(self, item) -> bool:
        return self._key(item) in self._index

    def __len__(self) -> int:
        return 2 * len(self.positive_roots)

    @staticmethod
    def _key(item) -> tuple[int, ...]:
        if isinstance(item, Root):
            return item.coeffs
        return tuple(int(c) for c in item)

    def root(self, coeffs: Iterable[int] | Root) -> Root:
        key = self._key(coeffs)
        try:
            return self._index[key]
        except KeyError:
            raise RootSystemError(f"{key} is not a root of {self.name}") from None

    def get(self, coeffs) -> Root | None:
        return self._index.get(self._key(coeffs))

    def negate(self, a: Root) -> Root:
        return Root(tuple(-c for c in a.coeffs), tuple(-x for x in a.components))

    def position(self, a: Root) -> int:
        """Index of a positive root in the canonical enumeration."""
        return self._position[a.coeffs]

    def inner(self, a, b) -> Fraction:
        """Invariant bilinear form, normalized by the simple-root lengths."""
        ca, cb = self._key(a), self._key(b)
        # (alpha_i, alpha_j) = A_ij * |alpha_i|^2 / 2
        total = Fraction(0)
        for i, x in enumerate(ca):
            if x:
                half = self.simple_lengths[i] / 2
                for j, y in enumerate(cb):
                    if y:
                        total += x * y * half * self.cartan_matrix[i][j]
        return total

    def norm2(self, a) -> Fraction:
        return self.inner(a, a)

    def pairing(self, beta, i: int) -> int:
        """``<beta, alpha_i^vee>`` for a simple index ``i``."""
        return sum(c * self.cartan_matrix[i][k] for k, c in enumerate(self._key(beta)))

    def reflect(self, alpha, beta) -> Root:
        """Weyl reflection ``s_alpha(beta) = beta - <beta, alpha^vee> alpha``."""
        a, b = self.root(alpha), self.root(beta)
        n = 2 * self.inner(b, a) / self.norm2(a)
        assert n.denominator == 1
        return self.root(tuple(y - int(n) * x for x, y in zip(a.coeffs, b.coeffs)))

    def root_sum(self, alpha, beta) -> Root | None:
        """``alpha + beta`` if it is a root, else ``None`` (never the zero vector)."""
        a, b = self.root(alpha), self.root(beta)
        return self.get(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def cartan_components(self, alpha) -> tuple[Fraction, ...]:
        return self.root(alpha).components

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "positive_roots": [
                {
                    "coeffs": list(a.coeffs),
                    "height": a.height,
                    "components": [frac_str(x) for x in a.components],
                }
                for a in self.positive_roots
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _components(coeffs: Sequence[int], cartan) -> tuple[Fraction, ...]:
    rank = len(coeffs)
    return tuple(Fraction(sum(c * cartan[j][k] for k, c in enumerate(coeffs))) for j in range(rank))


def cartan_matrix(family: str, rank: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``A_ij = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``."""
    family, rank = normalize_type(family, rank)
    lengths, edges = _dynkin(family, rank)
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = lengths[i]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) / 2
    mat = []
    for i in range(rank):
        row = []
        for j in range(rank):
            v = 2 * gram[i][j] / lengths[i]
            assert v.denominator == 1
            row.append(int(v))
        mat.append(tuple(row))
    return tuple(mat)


def build_root_system(family: str, rank: int | None = None) -> RootSystem:
    """Build the root system of a simple type, e.g. ``build_root_system("A", 2)``."""
    family, rank = normalize_type(family, rank)
    lengths, _ = _dynkin(family, rank)
    cartan = cartan_matrix(family, rank)

    simple = [tuple(int(i == k) for k in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                n = sum(c * cartan[i][k] for k, c in enumerate(beta))
                image = tuple(c - n * (k == i) for k, c in enumerate(beta))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt

    positive = sorted((c for c in seen if sum(c) > 0), key=lambda c: (sum(c), tuple(-x for x in c)))
    if len(seen) != 2 * len(positive):
        raise RootSystemError("reflection closure is not symmetric under negation")
    roots = tuple(Root(c, _components(c, cartan)) for c in positive)

    rs = RootSystem(family, rank, cartan, tuple(lengths), roots)
    for k, a in enumerate(roots):
        rs._index[a.coeffs] = a
        neg = rs.negate(a)
        rs._index[neg.coeffs] = neg
        rs._position[a.coeffs] = k
    return rs
