"""Small helpers for exact rational matrices held in numpy object arrays."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def frac_str(q) -> str:
    """Serialize a rational as a ``"p/q"`` string (denominator always shown)."""
    q = frac(q)
    return f"{q.numerator}/{q.denominator}"


def zeros(rows: int, cols: int | None = None, fill=ZERO) -> np.ndarray:
    cols = rows if cols is None else cols
    out = np.empty((rows, cols), dtype=object)
    out.fill(fill)
    return out


def identity(n: int, one=ONE, zero=ZERO) -> np.ndarray:
    out = zeros(n, n, zero)
    for i in range(n):
        out[i, i] = one
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(a, dtype=object).flat)


def to_float(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=object).astype(float)


def matrix_to_strings(a: np.ndarray) -> list[list[str]]:
    return [[frac_str(x) for x in row] for row in a]


def nilpotent_powers(a: np.ndarray, bound: int) -> list[np.ndarray]:
    """Return ``[I, a, a**2, ..., a**(k-1)]`` where ``a**k`` is the first zero power.

    Raises ``ArithmeticError`` if no power up to ``bound`` vanishes.
    """
    n = a.shape[0]
    zero = a.flat[0] * 0 if a.size else ZERO
    powers = [identity(n, one=zero + 1, zero=zero)]
    current = a
    for _ in range(bound):
        if is_zero(current):
            return powers
        powers.append(current)
        current = current @ a
    if is_zero(current):
        return powers
    raise ArithmeticError(f"matrix is not nilpotent within {bound} powers")


def factorial_series(powers: Iterable[np.ndarray], weight: Callable[[int], Fraction]) -> np.ndarray:
    """Sum ``weight(m) * powers[m]`` over a finite list of powers."""
    total = None
    for m, p in enumerate(powers):
        term = p * weight(m)
        total = term if total is None else total + term
    return total
