"""Generic checks for Lie brackets given as sparse structure-constant tables.

A bracket table maps an ordered pair of basis indices ``(a, b)`` to a dict
``{c: C^c_ab}`` of nonzero coefficients. Missing pairs bracket to zero.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from ._exact import frac_str, zeros
from .report import Report

SparseBracket = dict[tuple[int, int], dict[int, Fraction]]

THREADS_ENV = "COSETDUAL_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def bracket_vec(br: SparseBracket, x: int, vec: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for k, v in vec.items():
        for c, coeff in br.get((x, k), {}).items():
            out[c] = out.get(c, 0) + v * coeff
    return {c: v for c, v in out.items() if v != 0}


def jacobi_residual(br: SparseBracket, a: int, b: int, c: int) -> dict[int, Fraction]:
    total: dict[int, Fraction] = {}
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        for k, v in bracket_vec(br, x, br.get((y, z), {})).items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v != 0}


def _scan(args) -> tuple[int, list[dict]]:
    dim, br, firsts = args
    found = []
    count = 0
    for a in firsts:
        for b in range(dim):
            for c in range(dim):
                count += 1
                res = jacobi_residual(br, a, b, c)
                if res:
                    found.append({"triple": [a, b, c], "residual": {str(k): frac_str(v) for k, v in sorted(res.items())}})
    return count, found


def check_jacobi(dim: int, br: SparseBracket, workers: int | None = None) -> Report:
    """Evaluate the Jacobi identity on all ``dim**3`` ordered basis triples."""
    workers = default_workers() if workers is None else workers
    rep = Report("Jacobi", unit="triples")
    if workers <= 1 or dim < 8:
        chunks = [(dim, br, range(dim))]
        results = map(_scan, chunks)
    else:
        chunks = [(dim, br, range(w, dim, workers)) for w in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_scan, chunks))
    for count, found in results:
        rep.checked += count
        rep.violations.extend(found)
    rep.violations.sort(key=lambda v: v["triple"])
    return rep


def check_antisymmetry(dim: int, br: SparseBracket) -> Report:
    rep = Report("antisymmetry", unit="pairs")
    for a in range(dim):
        for b in range(dim):
            rep.checked += 1
            x = br.get((a, b), {})
            y = br.get((b, a), {})
            if a == b and x:
                rep.add(pair=[a, b], clause="alternativity")
            elif {k: -v for k, v in y.items()} != x:
                rep.add(pair=[a, b], clause="antisymmetry")
    return rep


def dense_tensor(dim: int, br: SparseBracket) -> np.ndarray:
    """Dense tensor ``C[c, a, b] = C^c_ab``."""
    out = np.empty((dim, dim, dim), dtype=object)
    out.fill(Fraction(0))
    for (a, b), coeffs in br.items():
        for c, v in coeffs.items():
            out[c, a, b] = v
    return out


def action_matrix(dim_out: int, br: SparseBracket, x: int, sources: list[int], targets: list[int]) -> np.ndarray:
    """Matrix ``M[t, m]`` = coefficient of ``targets[t]`` in ``[x, sources[m]]``."""
    pos = {c: t for t, c in enumerate(targets)}
    out = zeros(dim_out, len(sources))
    for m, src in enumerate(sources):
        for c, v in br.get((x, src), {}).items():
            out[pos[c], m] = v
    return out


def derived_series_dims(dim: int, br: SparseBracket) -> list[int]:
    """Dimensions of ``g, [g,g], [[g,g],[g,g]], ...`` down to a fixed point."""
    import sympy

    def span_dim(vectors):
        if not vectors:
            return 0, []
        m = sympy.Matrix([[v.get(k, 0) for k in range(dim)] for v in vectors])
        rref, pivots = m.T.rref()
        basis = [vectors[p] for p in pivots]
        return len(pivots), basis

    def bracket(u, v):
        out: dict[int, Fraction] = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, coeff in br.get((a, b), {}).items():
                    out[c] = out.get(c, 0) + x * y * coeff
        return {c: v for c, v in out.items() if v != 0}

    current = [{k: Fraction(1)} for k in range(dim)]
    dims = [dim]
    while dims[-1] > 0:
        products = [bracket(u, v) for i, u in enumerate(current) for v in current[i + 1:]]
        d, current = span_dim([p for p in products if p])
        if d == dims[-1]:
            break
        dims.append(d)
    return dims
