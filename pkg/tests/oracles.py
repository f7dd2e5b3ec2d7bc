"""Independent oracles the tests check the library against.

Everything here deliberately avoids the library's own algorithms: Betti
numbers come from Taylor-complex strands over the subset lattice of the
generators (exponential in the generator count, fine for oracle sizes), ranks
from fraction-free Bareiss elimination over the integers, and determinants
from cofactor expansion.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from bsdecomp import BettiTable, MonomialIdeal


def bareiss_rank(matrix: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(row) for row in matrix]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][col]
        for r in range(rank + 1, nrows):
            factor = m[r][col]
            for c in range(col, ncols):
                m[r][c] = (m[r][c] * lead - factor * m[rank][c]) // prev
        prev = lead
        rank += 1
        if rank == nrows:
            break
    return rank


def cofactor_determinant(matrix) -> Fraction:
    """Determinant by cofactor expansion along the first row."""
    size = len(matrix)
    rows = [[Fraction(x) for x in row] for row in matrix]
    if any(len(r) != size for r in rows):
        raise ValueError("not square")

    def det(sub: list[list[Fraction]]) -> Fraction:
        if len(sub) == 1:
            return sub[0][0]
        total = Fraction(0)
        for c, top in enumerate(sub[0]):
            if top == 0:
                continue
            minor = [row[:c] + row[c + 1 :] for row in sub[1:]]
            term = top * det(minor)
            total += term if c % 2 == 0 else -term
        return total

    return det(rows) if rows else Fraction(1)


def cramer_solve(matrix, rhs) -> list[Fraction]:
    """Solve a small square system by Cramer's rule; requires det != 0."""
    d = cofactor_determinant(matrix)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    out = []
    for c in range(len(matrix)):
        replaced = [
            [rhs[r] if cc == c else matrix[r][cc] for cc in range(len(matrix))]
            for r in range(len(matrix))
        ]
        out.append(Fraction(cofactor_determinant(replaced)) / d)
    return out


def taylor_betti_entries(ideal: MonomialIdeal) -> dict[tuple[int, int], int]:
    """Graded Betti numbers from the Taylor complex of the generators.

    For each multidegree b, the strand has one basis element per generator
    subset with lcm b; the boundary keeps the faces whose lcm stays b. The
    homology at subset size i+1 is beta_i in total degree |b|. Exponential in
    the number of generators; keep it at or below a dozen.
    """
    gens = [g.exponents for g in ideal.generators]
    count = len(gens)
    if count == 0:
        raise ValueError("zero ideal")
    if count > 14:
        raise ValueError("too many generators for the subset-lattice oracle")
    n = ideal.num_vars

    lcm_of: dict[int, tuple[int, ...]] = {}
    strands: dict[tuple[int, ...], list[int]] = {}
    for mask in range(1, 1 << count):
        low = mask & -mask
        rest = mask ^ low
        g = gens[low.bit_length() - 1]
        if rest:
            prior = lcm_of[rest]
            g = tuple(max(a, b) for a, b in zip(g, prior))
        lcm_of[mask] = g
        strands.setdefault(g, []).append(mask)

    entries: dict[tuple[int, int], int] = {}
    for b, masks in strands.items():
        by_size: dict[int, list[int]] = {}
        for mask in masks:
            by_size.setdefault(bin(mask).count("1"), []).append(mask)
        for size in by_size:
            by_size[size].sort()
        top = max(by_size)
        ranks: dict[int, int] = {}
        for size in range(2, top + 1):
            sources = by_size.get(size, [])
            targets = by_size.get(size - 1, [])
            if not sources or not targets:
                ranks[size] = 0
                continue
            index_of = {m: c for c, m in enumerate(targets)}
            rows = []
            for mask in sources:
                row = [0] * len(targets)
                sign = 1
                for v in range(count):
                    if mask >> v & 1:
                        sub = mask ^ (1 << v)
                        if lcm_of[sub] == b:
                            row[index_of[sub]] = sign
                        sign = -sign
                rows.append(row)
            ranks[size] = bareiss_rank(rows)
        degree = sum(b)
        for size in range(1, top + 1):
            homology = len(by_size.get(size, [])) - ranks.get(size, 0) - ranks.get(size + 1, 0)
            if homology:
                pos = (size - 1, degree)
                entries[pos] = entries.get(pos, 0) + homology
    return entries


def taylor_betti_table(ideal: MonomialIdeal) -> BettiTable:
    return BettiTable.from_entries(
        {pos: Fraction(v) for pos, v in taylor_betti_entries(ideal).items()}
    )
