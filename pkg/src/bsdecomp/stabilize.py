"""Polynomial-in-k Betti table families for powers of an equigenerated ideal.

Once the shifted supports of beta(I^k) stop changing, every entry follows a
polynomial in k and the whole decomposition machinery lifts: coefficients
become polynomials, degree sequences become offsets against k times the
generator degree, and sign questions become leading-coefficient questions
certified by explicit root bounds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .decompose import Chain, Decomposition, chain_decompose, enumerate_maximal_chains, greedy_decompose
from .errors import (
    AmbiguousOrMissingChainError,
    DegreeSequenceError,
    NoSolutionError,
    NotDecomposableError,
    NotEquigeneratedError,
    NotStabilizedError,
    ParseError,
)
from .linalg import solve_exact
from .monomial import MonomialIdeal, betti_table, ideal_from_json, ideal_to_json, is_equigenerated, power
from .polynomials import (
    PolynomialQ,
    eventual_min,
    eventually_nonnegative,
    eventually_positive,
    interpolate_consecutive,
    sign_threshold,
)
from .tables import BettiTable, Comparison, DegreeSequence, Window, compare, pure_diagram

__all__ = [
    "SymbolicBettiTable",
    "TranslatedDecomposition",
    "StabilizationReport",
    "fit_family",
    "eventual_min",
    "symbolic_greedy_decompose",
    "symbolic_chain_decompose",
    "positive_family_chain",
    "detect_stabilization",
    "total_betti_polynomials",
    "report_to_json",
    "report_json_text",
    "report_from_json",
]


@dataclass(frozen=True)
class SymbolicBettiTable:
    """Betti table family beta(I^k): entry polynomials indexed by offsets.

    ``entries`` maps (column i, degree offset j) to a nonzero polynomial in k;
    the table of I^k has beta_{i, gen_degree*k + j}(k) there. ``valid_from``
    is the first k the fit was checked against.
    """

    gen_degree: int
    entries: Mapping[tuple[int, int], PolynomialQ]
    valid_from: int

    def __post_init__(self):
        fixed = {}
        for key, poly in self.entries.items():
            i, j = key
            if i < 0:
                raise ValueError(f"negative column {i}")
            if not isinstance(poly, PolynomialQ) or not poly:
                raise ValueError(f"entry at {key} must be a nonzero PolynomialQ")
            fixed[(int(i), int(j))] = poly
        if not fixed:
            raise ValueError("a symbolic table needs at least one entry")
        object.__setattr__(self, "entries", fixed)

    def support(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.entries))

    def entry(self, col: int, offset: int) -> PolynomialQ:
        return self.entries.get((col, offset), PolynomialQ())

    def offset_window(self) -> Window:
        rows = [j - i for i, j in self.entries]
        cols = [i for i, _ in self.entries]
        return Window(min(rows), max(rows), max(cols))

    def evaluate(self, k: int) -> BettiTable:
        """Numeric table at a concrete power: offsets shift by gen_degree*k."""
        shift = self.gen_degree * k
        window = self.offset_window()
        absolute = Window(window.min_row + shift, window.max_row + shift, window.max_col)
        values = {(i, j + shift): poly(k) for (i, j), poly in self.entries.items()}
        return BettiTable.from_entries(values, absolute)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicBettiTable):
            return NotImplemented
        return (
            self.gen_degree == other.gen_degree
            and self.valid_from == other.valid_from
            and dict(self.entries) == dict(other.entries)
        )


@dataclass(frozen=True)
class TranslatedDecomposition:
    """Decomposition with polynomial coefficients and offset degree sequences.

    A term (w, d) stands for w(k) * pi(d + gen_degree*k) for every k at or
    beyond ``certified_from``. Terms follow chain order; chain expansions keep
    identically-zero coefficients to preserve the chain, greedy output drops
    them.
    """

    terms: tuple[tuple[PolynomialQ, DegreeSequence], ...]
    gen_degree: int
    certified_from: int
    offset_window: Window

    def __post_init__(self):
        terms = tuple(self.terms)
        for (_, a), (_, b) in zip(terms, terms[1:]):
            if compare(a, b) is not Comparison.LESS:
                raise ValueError(f"terms out of chain order: {a.degrees} then {b.degrees}")
        object.__setattr__(self, "terms", terms)

    def nonzero_terms(self) -> tuple[tuple[PolynomialQ, DegreeSequence], ...]:
        return tuple((w, s) for w, s in self.terms if w)

    def evaluate(self, k: int, keep_zero_terms: bool = False) -> Decomposition:
        """Numeric decomposition at a concrete power.

        Coefficients are evaluated and degree sequences shifted by
        gen_degree*k; terms whose value is zero are dropped unless
        ``keep_zero_terms`` asks for the full chain expansion.
        """
        shift = self.gen_degree * k
        window = Window(
            self.offset_window.min_row + shift,
            self.offset_window.max_row + shift,
            self.offset_window.max_col,
        )
        terms = []
        for poly, seq in self.terms:
            value = poly(k)
            if value or keep_zero_terms:
                terms.append((value, seq.shift(shift)))
        return Decomposition(tuple(terms), window)


def fit_family(
    tables: Mapping[int, BettiTable], gen_degree: int, degree_bound: int
) -> SymbolicBettiTable:
    """Exact polynomial fit of a sampled power family.

    ``tables`` maps consecutive integers k to beta(I^k). All shifted supports
    (column, degree - gen_degree*k) must agree, the sample count must exceed
    the degree bound by at least one held-out point, and every fitted
    polynomial must reproduce all samples exactly and be eventually positive.
    Any violation raises NotStabilized naming the offending (k, column,
    degree).
    """
    ks = sorted(tables)
    if not ks:
        raise ValueError("no sample tables")
    if any(b - a != 1 for a, b in zip(ks, ks[1:])):
        raise ValueError(f"sample powers must be consecutive, got {ks}")
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    if len(ks) < degree_bound + 2:
        raise NotStabilizedError(
            f"{len(ks)} samples cannot certify a degree-{degree_bound} fit; "
            f"need at least {degree_bound + 2}"
        )
    shapes = {
        k: frozenset((i, j - gen_degree * k) for (i, j), _ in tables[k].iter_support())
        for k in ks
    }
    base = shapes[ks[0]]
    for k in ks[1:]:
        if shapes[k] != base:
            i, off = min(shapes[k] ^ base)
            raise NotStabilizedError(
                f"support shape changes at k={k} (column {i}, degree {gen_degree * k + off})",
                offender=(k, i, gen_degree * k + off),
            )
    entries = {}
    for i, off in sorted(base):
        samples = [tables[k].entry(i, gen_degree * k + off) for k in ks]
        poly = interpolate_consecutive(ks[0], samples[: degree_bound + 1])
        for k, value in zip(ks, samples):
            if poly(k) != value:
                raise NotStabilizedError(
                    f"entry at column {i}, offset {off} is not polynomial of degree "
                    f"<= {degree_bound}: misfit at k={k}",
                    offender=(k, i, gen_degree * k + off),
                )
        if not eventually_positive(poly):
            raise NotStabilizedError(
                f"entry at column {i}, offset {off} fits {poly.text()}, "
                "which is not eventually positive",
                offender=(ks[0], i, gen_degree * ks[0] + off),
            )
        entries[(i, off)] = poly
    return SymbolicBettiTable(gen_degree, entries, valid_from=ks[0])


def symbolic_greedy_decompose(table: SymbolicBettiTable) -> TranslatedDecomposition:
    """Greedy decomposition of a whole family at once.

    Runs the numeric greedy algorithm with polynomial entries: offsets are
    chosen by the support, each step's coefficient is the eventually smallest
    of the candidate products, and every sign decision contributes a root
    bound. For k beyond ``certified_from`` the evaluated output matches the
    numeric greedy decomposition of beta(I^k) term for term.
    """
    entries = dict(table.entries)
    terms = []
    bound = 0
    while entries:
        for poly in entries.values():
            if poly.leading_coefficient() < 0:
                raise NotDecomposableError(
                    f"entry {poly.text()} is eventually negative; not a Betti table family"
                )
            bound = max(bound, sign_threshold(poly))
        last = max(i for i, _ in entries)
        offsets = []
        for i in range(last + 1):
            column = [j for ci, j in entries if ci == i]
            if not column:
                raise NotDecomposableError(
                    f"column {i} is exhausted but column {last} is not; no pure diagram fits"
                )
            offsets.append(min(column))
        try:
            sequence = DegreeSequence(tuple(offsets))
        except DegreeSequenceError as exc:
            raise NotDecomposableError(
                f"minimal offsets {tuple(offsets)} do not increase strictly"
            ) from exc
        products = []
        for i, d in enumerate(offsets):
            prod = 1
            for p, dp in enumerate(offsets):
                if p != i:
                    prod *= abs(dp - d)
            products.append(prod)
        candidates = [entries[(i, offsets[i])] * products[i] for i in range(last + 1)]
        index, threshold = eventual_min(candidates)
        bound = max(bound, threshold)
        coefficient = candidates[index]
        terms.append((coefficient, sequence))
        for i in range(last + 1):
            remainder = entries[(i, offsets[i])] - coefficient * Fraction(1, products[i])
            if remainder:
                entries[(i, offsets[i])] = remainder
            else:
                del entries[(i, offsets[i])]
    # past every root bound the numeric tables share the symbolic support and
    # every min decision, so the numeric greedy runs in lockstep from there
    certified = max(table.valid_from, bound + 1)
    return TranslatedDecomposition(tuple(terms), table.gen_degree, certified, table.offset_window())


def symbolic_chain_decompose(table: SymbolicBettiTable, chain: Chain) -> TranslatedDecomposition:
    """Expansion of a family along a maximal chain of offset sequences.

    Solves the window's exact linear system once per coefficient degree; the
    result is certified from the fit's own ``valid_from`` because the identity
    is linear, with no sign decisions involved.
    """
    if not chain.maximal:
        raise ValueError("chain expansion needs a maximal chain")
    window = chain.window
    size = window.dimension
    rhs_polys = [PolynomialQ()] * size
    for (i, j), poly in table.entries.items():
        if not window.contains(i, j):
            raise NoSolutionError(
                f"family support at column {i}, offset {j} is outside the chain window"
            )
        rhs_polys[window.flat_index(i, j)] = poly
    columns = [pure_diagram(s).table.flatten(window) for s in chain.elements]
    matrix = [[col[r] for col in columns] for r in range(size)]
    top_degree = max(p.degree() for p in rhs_polys)
    solved: list[list[Fraction]] = [[] for _ in chain.elements]
    for m in range(top_degree + 1):
        rhs = [p.coefficients[m] if m <= p.degree() else Fraction(0) for p in rhs_polys]
        for c, value in enumerate(solve_exact(matrix, rhs)):
            solved[c].append(value)
    coefficients = [PolynomialQ(tuple(cs)) for cs in solved]
    return TranslatedDecomposition(
        tuple(zip(coefficients, chain.elements)), table.gen_degree, table.valid_from, window
    )


def positive_family_chain(
    table: SymbolicBettiTable, window: Window | None = None
) -> tuple[Chain, int]:
    """The maximal chain of offsets carrying the positive decomposition.

    Scans every maximal chain of the offset window and keeps those whose
    expansion coefficients are all eventually nonnegative. Identically zero
    coefficients carry no sign information, so several chains can qualify by
    routing through degree sequences the decomposition never uses; they must
    all agree on the nonzero terms, and the first in enumeration order is
    returned. Disagreement, or no qualifying chain at all, raises
    AmbiguousOrMissingChain.

    Returns the chain and an integer K such that every nonzero coefficient is
    strictly positive for all k > K.
    """
    if window is None:
        window = table.offset_window()
    qualifying: list[tuple[Chain, TranslatedDecomposition]] = []
    for chain in enumerate_maximal_chains(window):
        expansion = symbolic_chain_decompose(table, chain)
        if all(eventually_nonnegative(w) for w, _ in expansion.terms):
            qualifying.append((chain, expansion))
    if not qualifying:
        raise AmbiguousOrMissingChainError(
            "no maximal chain of the window has eventually nonnegative coefficients"
        )
    first_chain, first_expansion = qualifying[0]
    reference = {(s.degrees, w) for w, s in first_expansion.nonzero_terms()}
    for _, expansion in qualifying[1:]:
        if {(s.degrees, w) for w, s in expansion.nonzero_terms()} != reference:
            raise AmbiguousOrMissingChainError(
                "several maximal chains qualify with different nonzero terms"
            )
    threshold = max(
        (sign_threshold(w) for w, _ in first_expansion.nonzero_terms()), default=0
    )
    return first_chain, threshold


def total_betti_polynomials(table: SymbolicBettiTable) -> list[PolynomialQ]:
    """Column sums: polynomial total Betti numbers of the family."""
    out = [PolynomialQ() for _ in range(table.offset_window().max_col + 1)]
    for (i, _), poly in sorted(table.entries.items()):
        out[i] = out[i] + poly
    return out


_REPORT_NOTES = (
    "certified_from certifies the decomposition stage: it assumes every table "
    "in the family follows the fitted polynomials from the first fitted power "
    "on. The stabilization point k0 is observed on the sampled range, not "
    "proven for all k."
)


@dataclass(frozen=True)
class StabilizationReport:
    """Everything detect_stabilization established about a power family."""

    ideal: MonomialIdeal
    gen_degree: int
    k0_observed: int
    fit: SymbolicBettiTable
    positive_chain: Chain
    positive: TranslatedDecomposition
    certified_from: int
    verified_k: tuple[int, ...]
    notes: str = _REPORT_NOTES


def detect_stabilization(
    ideal: MonomialIdeal,
    k_min: int,
    k_max: int,
    degree_bound: int | None = None,
) -> StabilizationReport:
    """Detect, fit, decompose, and certify the power family of an ideal.

    Computes beta(I^k) for k_min..k_max, finds the least k0 from which the
    shifted supports all agree, fits entry polynomials on k0..k_max with one
    held-out sample, runs the symbolic greedy decomposition, locates the
    unique positive chain, and replays every claim numerically at each
    certified k in range. The degree bound defaults to one below the variable
    count.
    """
    if k_min < 1:
        raise ValueError(f"k_min must be >= 1, got {k_min}")
    if k_max < k_min:
        raise ValueError(f"empty power range {k_min}..{k_max}")
    gen_degree = is_equigenerated(ideal)
    if gen_degree is None:
        raise NotEquigeneratedError(
            "stabilization needs an equigenerated ideal; generator degrees are "
            + str(sorted({g.degree for g in ideal.generators}))
        )
    bound = ideal.num_vars - 1 if degree_bound is None else degree_bound
    if bound < 0:
        raise ValueError("degree bound must be >= 0")
    needed = bound + 2
    if k_max - k_min + 1 < needed:
        raise NotStabilizedError(
            f"range {k_min}..{k_max} has fewer than {needed} samples needed for "
            f"a certified degree-{bound} fit"
        )
    tables = {k: betti_table(power(ideal, k)) for k in range(k_min, k_max + 1)}
    shapes = {
        k: frozenset((i, j - gen_degree * k) for (i, j), _ in tables[k].iter_support())
        for k in tables
    }
    k0 = k_max
    while k0 > k_min and shapes[k0 - 1] == shapes[k_max]:
        k0 -= 1
    if k_max - k0 + 1 < needed:
        i, off = min(shapes[k0 - 1] ^ shapes[k0])
        raise NotStabilizedError(
            f"supports stabilize only from k={k0}, leaving {k_max - k0 + 1} samples; "
            f"need {needed} (raise k_max)",
            offender=(k0 - 1, i, gen_degree * (k0 - 1) + off),
        )
    fit = fit_family({k: tables[k] for k in range(k0, k_max + 1)}, gen_degree, bound)
    positive = symbolic_greedy_decompose(fit)
    chain, chain_threshold = positive_family_chain(fit)
    expansion = symbolic_chain_decompose(fit, chain)
    assert set(expansion.nonzero_terms()) == set(positive.terms)
    certified = max(positive.certified_from, chain_threshold + 1)
    verified = []
    for k in range(max(k_min, certified), k_max + 1):
        table_k = tables[k]
        assert fit.evaluate(k).same_entries(table_k)
        numeric_greedy = greedy_decompose(table_k)
        assert numeric_greedy.terms == positive.evaluate(k).terms
        numeric_chain = chain_decompose(table_k, chain.shift(gen_degree * k))
        assert numeric_chain.terms == expansion.evaluate(k, keep_zero_terms=True).terms
        verified.append(k)
    return StabilizationReport(
        ideal=ideal,
        gen_degree=gen_degree,
        k0_observed=k0,
        fit=fit,
        positive_chain=chain,
        positive=positive,
        certified_from=certified,
        verified_k=tuple(verified),
    )


def _poly_json(poly: PolynomialQ) -> dict:
    return {"coefficients": [str(c) for c in poly.coefficients], "text": poly.text()}


def report_to_json(report: StabilizationReport) -> dict:
    return {
        "ideal": ideal_to_json(report.ideal),
        "r": report.gen_degree,
        "k0_observed": report.k0_observed,
        "fit": {
            f"({i},{j})": _poly_json(poly)
            for (i, j), poly in sorted(report.fit.entries.items())
        },
        "positive_chain": [list(s.degrees) for s in report.positive_chain.elements],
        "positive_decomposition": {
            "terms": [
                {"offsets": list(s.degrees), "coefficient_poly": _poly_json(w)}
                for w, s in report.positive.terms
            ]
        },
        "certified_from": report.certified_from,
        "verified_k": list(report.verified_k),
        "notes": report.notes,
    }


def report_json_text(report: StabilizationReport) -> str:
    return json.dumps(report_to_json(report), indent=2) + "\n"


def report_from_json(obj) -> StabilizationReport:
    """Rebuild a report from its JSON form.

    Stage-level certification thresholds are not serialized separately, so the
    rebuilt decomposition carries the report-level ``certified_from`` (a valid,
    possibly looser, bound).
    """
    if not isinstance(obj, dict):
        raise ParseError("report JSON must be an object")
    try:
        ideal = ideal_from_json(obj["ideal"])
        gen_degree = int(obj["r"])
        k0 = int(obj["k0_observed"])
        certified = int(obj["certified_from"])
        fit_entries = {}
        for key, body in obj["fit"].items():
            i, j = (int(x) for x in key.strip("()").split(","))
            fit_entries[(i, j)] = PolynomialQ(tuple(Fraction(c) for c in body["coefficients"]))
        fit = SymbolicBettiTable(gen_degree, fit_entries, valid_from=k0)
        chain = Chain.from_sequences(
            [tuple(int(d) for d in s) for s in obj["positive_chain"]],
            window=fit.offset_window(),
        )
        terms = tuple(
            (
                PolynomialQ(tuple(Fraction(c) for c in t["coefficient_poly"]["coefficients"])),
                DegreeSequence(tuple(int(d) for d in t["offsets"])),
            )
            for t in obj["positive_decomposition"]["terms"]
        )
        positive = TranslatedDecomposition(terms, gen_degree, certified, fit.offset_window())
        verified = tuple(int(k) for k in obj["verified_k"])
        notes = str(obj["notes"])
    except ParseError:
        raise
    except (KeyError, ValueError, TypeError, ZeroDivisionError, DegreeSequenceError) as exc:
        raise ParseError(f"bad report JSON: {exc}") from exc
    return StabilizationReport(
        ideal=ideal,
        gen_degree=gen_degree,
        k0_observed=k0,
        fit=fit,
        positive_chain=chain,
        positive=positive,
        certified_from=certified,
        verified_k=verified,
        notes=notes,
    )
