"""Exact linear algebra over the local ring Z_(p).

Matrices are lists of rows with entries in Z_(p): integers, or Fractions
whose denominators are prime to p (each row is first scaled by a unit to
clear them).  Elimination only ever multiplies a row or column by an
integer prime to p before subtracting a multiple of the pivot line, so
every step is invertible over Z_(p) and no denominators appear.  This is
exact arithmetic, not arithmetic mod p^K.  Rows and columns are divided by
their p-free content as we go to keep the integers small.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

INFINITE_VALUATION = 10 ** 9


def valuation(x, p: int) -> int:
    """p-adic valuation of an integer or Fraction (huge for zero)."""
    if isinstance(x, Fraction):
        if x == 0:
            return INFINITE_VALUATION
        return valuation(x.numerator, p) - valuation(x.denominator, p)
    x = int(x)
    if x == 0:
        return INFINITE_VALUATION
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _integral_row(row: list, p: int) -> list:
    """Scale a row of Z_(p) entries by a unit so that it becomes integral."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // gcd(den, x.denominator)
    if den % p == 0:
        raise ValueError(f"entry with p in the denominator is not in Z_({p})")
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _unit_part(x: int, p: int) -> int:
    while x % p == 0:
        x //= p
    return x


def _p_free_content(values, p: int) -> int:
    g = 0
    for x in values:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    if g == 0:
        return 1
    return _unit_part(g, p)


def matmul(A: list, B: list) -> list:
    if not A or not B:
        return []
    cols = len(B[0])
    out = []
    for row in A:
        acc = [0] * cols
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: list, x) -> list:
    return [sum(a * b for a, b in zip(row, x) if a and b) for row in A]


@dataclass
class SmithForm:
    """Smith form data: U A V = diag(u_i p^a_i) with U, V in GL(Z_(p)).

    ``diagonal`` holds the valuations a_1 <= a_2 <= ...; ``passengers`` holds
    U applied to any extra columns handed in."""

    diagonal: list
    V: list
    rows: int
    cols: int
    passengers: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith_form(A: list, p: int, ncols: Optional[int] = None,
               rng: Optional[random.Random] = None,
               passengers: Optional[list] = None,
               track_columns: bool = True) -> SmithForm:
    """Smith normal form over Z_(p).

    Each step pivots on an entry of minimal valuation in the remaining block
    (ties go to the first in row order, or to ``rng``'s choice).  Minimal
    valuation means the pivot divides everything left, so no gcd steps are
    needed.  ``passengers`` are column vectors that undergo the row
    operations only."""
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    extra = passengers or []
    q = len(extra)
    # rows carry the matrix entries followed by passenger entries
    D = [_integral_row(list(A[i]) + [v[i] for v in extra], p)
         for i in range(m)]
    V = ([[int(i == j) for j in range(n)] for i in range(n)]
         if track_columns else None)
    diag = []
    for t in range(min(m, n)):
        best = INFINITE_VALUATION
        cands = []
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    v = 0
                    while x % p == 0:
                        x //= p
                        v += 1
                    if v < best:
                        best, cands = v, [(i, j)]
                        if v == 0 and rng is None:
                            break
                    elif v == best:
                        cands.append((i, j))
            if best == 0 and rng is None:
                break
        if not cands:
            break
        i, j = rng.choice(cands) if rng is not None else cands[0]
        if i != t:
            D[t], D[i] = D[i], D[t]
        if j != t:
            for row in D:
                row[t], row[j] = row[j], row[t]
            if V is not None:
                for row in V:
                    row[t], row[j] = row[j], row[t]
        pivot_row = D[t]
        piv = pivot_row[t]
        scale = p ** best
        u = piv // scale
        for i in range(t + 1, m):
            row = D[i]
            e = row[t]
            if e:
                c = e // scale
                D[i] = [u * a - c * b for a, b in zip(row, pivot_row)]
                g = _p_free_content(D[i], p)
                if g != 1:
                    D[i] = [a // g for a in D[i]]
        for j in range(t + 1, n):
            e = pivot_row[j]
            if e:
                c = e // scale
                for row in D:
                    row[j] = u * row[j] - c * row[t]
                if V is not None:
                    for row in V:
                        row[j] = u * row[j] - c * row[t]
                    g = _p_free_content([row[j] for row in D]
                                        + [row[j] for row in V], p)
                    if g != 1:
                        for row in D:
                            row[j] //= g
                        for row in V:
                            row[j] //= g
        diag.append(best)
    pas = [[D[i][n + k] for i in range(m)] for k in range(q)]
    return SmithForm(diag, V or [], m, n, pas)


def kernel_basis(A: list, p: int, ncols: int) -> list:
    """Z_(p)-basis (column vectors) of {x : A x = 0}."""
    if not A:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    sf = smith_form(A, p, ncols)
    return [[sf.V[i][j] for i in range(ncols)] for j in range(sf.rank, ncols)]


def elementary_valuations(A: list, p: int, ncols: int,
                          rng: Optional[random.Random] = None) -> list:
    return smith_form(A, p, ncols, rng=rng, track_columns=False).diagonal


def quotient_invariants(sub: list, big: list, dim: int, p: int,
                        rng: Optional[random.Random] = None):
    """(free_rank, torsion valuations) of span(big + sub) / span(sub) for
    column vectors in Z_(p)^dim."""
    gens = list(big) + list(sub)
    if not gens or dim == 0:
        return 0, []
    G = [[g[i] for g in gens] for i in range(dim)]
    sf = smith_form(G, p, len(gens), rng=rng, passengers=list(sub),
                    track_columns=False)
    r = sf.rank
    if r == 0:
        return 0, []
    if not sub:
        return r, []
    # coordinates of sub in the basis of the span, up to unit row scalings
    Y = [[x[k] // p ** sf.diagonal[k] for x in sf.passengers] for k in range(r)]
    vals = elementary_valuations(Y, p, len(sub), rng=rng)
    return r - len(vals), [a for a in vals if a > 0]
