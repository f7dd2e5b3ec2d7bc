"""Reference data for the running example: the edge ideal of the 5-vertex path.

I = (x1x2, x2x3, x3x4, x4x5) in 5 variables is equigenerated in degree 2, and
from k = 3 on the Betti tables of I^k follow the cubic entry polynomials
below. The closed forms and decompositions here serve as pinned expectations;
the oracle tests cross-check the same tables against an independent
Taylor-complex computation, and the small-k data was frozen from that oracle.
"""

from __future__ import annotations

from fractions import Fraction

from bsdecomp import (
    BettiTable,
    Chain,
    DegreeSequence,
    MonomialIdeal,
    PolynomialQ,
    parse_monomial,
)

NUM_VARS = 5
GEN_DEGREE = 2
EDGE_GENERATORS = ("x1*x2", "x2*x3", "x3*x4", "x4*x5")


def path_edge_ideal() -> MonomialIdeal:
    return MonomialIdeal(NUM_VARS, tuple(parse_monomial(g, NUM_VARS) for g in EDGE_GENERATORS))


def poly(*coeffs) -> PolynomialQ:
    return PolynomialQ(tuple(Fraction(c) for c in coeffs))


# entry polynomials of beta_{i, 2k+j}(I^k), valid for k >= 3
ENTRY_POLYNOMIALS = {
    (0, 0): poly(1, "11/6", 1, "1/6"),
    (1, 1): poly(0, 1, "3/2", "1/2"),
    (1, 2): poly(0, 1),
    (2, 2): poly(0, "-1/2", 0, "1/2"),
    (2, 3): poly(0, 1),
    (3, 3): poly(0, "1/3", "-1/2", "1/6"),
}
VALID_FROM = 3

# positive decomposition of the family: (degree offsets, coefficient in k)
POSITIVE_TERMS = (
    ((0, 1, 2, 3), poly(0, 2, -3, 1)),
    ((0, 1, 2), poly(0, -3, 3)),
    ((0, 1, 3), poly(0, 6)),
    ((0, 2), poly(0, 2)),
    ((0,), poly(1)),
)

POSITIVE_CHAIN_OFFSETS = (
    (0, 1, 2, 3),
    (0, 1, 2, 4),
    (0, 1, 2),
    (0, 1, 3),
    (0, 2, 3),
    (0, 2),
    (0,),
    (1,),
)

ALTERNATE_CHAIN_OFFSETS = (
    (0, 1, 2, 3),
    (0, 1, 2, 4),
    (0, 1, 2),
    (0, 1, 3),
    (0, 2, 3),
    (1, 2, 3),
    (1, 2),
    (1,),
)

# expansion of the family along the alternate chain, including the zero and
# the negative coefficients
ALTERNATE_TERMS = (
    ((0, 1, 2, 3), poly(0, 2, -3, 1)),
    ((0, 1, 2, 4), poly()),
    ((0, 1, 2), poly(0, -3, 3)),
    ((0, 1, 3), poly(0, 6)),
    ((0, 2, 3), poly(6, 6)),
    ((1, 2, 3), poly(-4, -4)),
    ((1, 2), poly(1, 2)),
    ((1,), poly(1)),
)

# before stabilization the greedy decomposition is shorter
GREEDY_TERM_COUNTS_SMALL = {1: 3, 2: 4}

# frozen small-power data, cross-checked against the Taylor-complex oracle
SMALL_TABLES = {
    1: {(0, 2): 4, (1, 3): 3, (1, 4): 1, (2, 5): 1},
    2: {(0, 4): 10, (1, 5): 12, (1, 6): 2, (2, 6): 3, (2, 7): 2},
}

# minimal generator counts of I^k, frozen from the same runs
MINIMAL_GENERATOR_COUNTS = {1: 4, 2: 10, 3: 20, 5: 56, 8: 165, 9: 220}


def expected_table(k: int) -> BettiTable:
    """Table of I^k built from the entry polynomials; only valid for k >= 3."""
    assert k >= VALID_FROM
    entries = {
        (i, GEN_DEGREE * k + j): p(k) for (i, j), p in ENTRY_POLYNOMIALS.items()
    }
    return BettiTable.from_entries(entries)


def expected_positive_terms(k: int) -> tuple[tuple[Fraction, DegreeSequence], ...]:
    """Evaluated positive decomposition for k >= 3, zero terms dropped."""
    assert k >= VALID_FROM
    out = []
    for offsets, p in POSITIVE_TERMS:
        value = p(k)
        if value:
            out.append((value, DegreeSequence(tuple(d + GEN_DEGREE * k for d in offsets))))
    return tuple(out)


def alternate_chain(k: int) -> Chain:
    return Chain.from_sequences(
        [tuple(d + GEN_DEGREE * k for d in seq) for seq in ALTERNATE_CHAIN_OFFSETS]
    )


def expected_alternate_coefficients(k: int) -> tuple[Fraction, ...]:
    return tuple(p(k) for _, p in ALTERNATE_TERMS)
