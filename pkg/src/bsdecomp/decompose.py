"""Decompositions of Betti tables into chains of pure diagrams.

The greedy algorithm peels off the pure diagram of the minimal-degree support
in each column with the largest coefficient keeping the remainder nonnegative;
for a genuine Betti table this terminates with the unique decomposition whose
coefficients are all positive. Arbitrary maximal chains in a window give a
square exact linear system instead, with coefficients of either sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (
    DegreeSequenceError,
    NoSolutionError,
    NotDecomposableError,
    ParseError,
)
from .linalg import solve_exact
from .tables import (
    BettiTable,
    Comparison,
    DegreeSequence,
    Window,
    compare,
    pure_diagram,
)


def cover_successors(sequence: DegreeSequence, window: Window) -> list[DegreeSequence]:
    """Immediate successors of a degree sequence inside the window.

    Two kinds of minimal moves: bump a single degree by one (keeping strict
    increase and the row cap), listed by increasing position, then drop the
    last degree, allowed only once it sits on the window's top row.
    """
    degs = sequence.degrees
    last = len(degs) - 1
    out = []
    for i, d in enumerate(degs):
        if d + 1 > window.max_row + i:
            continue
        if i < last and d + 1 >= degs[i + 1]:
            continue
        out.append(DegreeSequence(degs[:i] + (d + 1,) + degs[i + 1 :]))
    if last >= 1 and degs[last] == window.max_row + last:
        out.append(DegreeSequence(degs[:-1]))
    return out


def _is_maximal(elements: tuple[DegreeSequence, ...], window: Window) -> bool:
    if len(elements) != window.dimension:
        return False
    bottom = tuple(range(window.min_row, window.min_row + window.max_col + 1))
    if elements[0].degrees != bottom or elements[-1].degrees != (window.max_row,):
        return False
    return all(b in cover_successors(a, window) for a, b in zip(elements, elements[1:]))


@dataclass(frozen=True)
class Chain:
    """Strictly increasing degree sequences inside a window.

    ``maximal`` records whether the chain walks the window's full cover poset
    from the bottom sequence (min_row, min_row+1, ...) to the single top
    degree (max_row); only maximal chains span enough pure diagrams to expand
    arbitrary tables.
    """

    elements: tuple[DegreeSequence, ...]
    window: Window
    maximal: bool

    @classmethod
    def from_sequences(cls, sequences, window: Window | None = None) -> "Chain":
        elems = tuple(
            s if isinstance(s, DegreeSequence) else DegreeSequence(tuple(s)) for s in sequences
        )
        if not elems:
            raise ValueError("a chain needs at least one element")
        for a, b in zip(elems, elems[1:]):
            if compare(a, b) is not Comparison.LESS:
                raise ValueError(f"not strictly increasing: {a.degrees} then {b.degrees}")
        if window is None:
            rows = [d - i for e in elems for i, d in enumerate(e)]
            window = Window(min(rows), max(rows), max(len(e) for e in elems) - 1)
        for e in elems:
            if not e.fits(window):
                raise ValueError(f"sequence {e.degrees} does not fit the window")
        return cls(elems, window, _is_maximal(elems, window))

    def shift(self, offset: int) -> "Chain":
        """Translate every degree and the window rows by a constant."""
        window = Window(self.window.min_row + offset, self.window.max_row + offset, self.window.max_col)
        return Chain(tuple(e.shift(offset) for e in self.elements), window, self.maximal)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def enumerate_maximal_chains(window: Window) -> Iterator[Chain]:
    """All maximal chains of the window, depth first.

    Successors are explored in cover_successors order (single-degree bumps by
    position, then the drop), so the enumeration order is deterministic. Every
    maximal chain has exactly window.dimension elements: each cover move
    raises the rank sum(d_i - i) + (max_col - len + 1) * height by one.
    """
    bottom = DegreeSequence(tuple(range(window.min_row, window.min_row + window.max_col + 1)))
    top = (window.max_row,)
    size = window.dimension

    def walk(path: list[DegreeSequence]) -> Iterator[Chain]:
        tail = path[-1]
        if tail.degrees == top:
            assert len(path) == size
            yield Chain(tuple(path), window, True)
            return
        for successor in cover_successors(tail, window):
            path.append(successor)
            yield from walk(path)
            path.pop()

    yield from walk([bottom])


@dataclass(frozen=True)
class Decomposition:
    """Ordered terms (coefficient, degree sequence) along an increasing chain.

    Greedy output carries only positive coefficients; chain expansions keep
    every chain member, zeros and negatives included. ``source_window`` is the
    window of the table the decomposition came from, which pins down the zero
    table when all terms cancel.
    """

    terms: tuple[tuple[Fraction, DegreeSequence], ...]
    source_window: Window

    def __post_init__(self):
        terms = tuple((Fraction(c), s) for c, s in self.terms)
        for (_, a), (_, b) in zip(terms, terms[1:]):
            if compare(a, b) is not Comparison.LESS:
                raise ValueError(f"terms out of chain order: {a.degrees} then {b.degrees}")
        object.__setattr__(self, "terms", terms)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(c for c, _ in self.terms)

    @property
    def sequences(self) -> tuple[DegreeSequence, ...]:
        return tuple(s for _, s in self.terms)

    def nonzero_terms(self) -> tuple[tuple[Fraction, DegreeSequence], ...]:
        return tuple((c, s) for c, s in self.terms if c)

    def reconstruct(self) -> BettiTable:
        """Sum of coefficient * pure diagram, as a table over source_window."""
        total = BettiTable.zero(self.source_window)
        for c, s in self.terms:
            if c:
                total = total + pure_diagram(s).table.scale(c)
        return total


def greedy_decompose(table: BettiTable) -> Decomposition:
    """Unique positive decomposition of a Betti table into pure diagrams.

    Each step reads the minimal nonzero degree of every column up to the last
    nonzero one, peels the corresponding pure diagram with the largest
    coefficient that keeps the remainder nonnegative (which zeroes at least
    one entry), and repeats. Raises NotDecomposable when the top degrees fail
    to increase strictly or a needed column is empty, which certifies the
    input is not the Betti table of any module.
    """
    if not table.is_nonnegative():
        raise NotDecomposableError("table has negative entries")
    terms = []
    for coefficient, sequence, _ in _greedy_steps(table):
        terms.append((coefficient, sequence))
    return Decomposition(tuple(terms), table.window)


def _greedy_steps(table: BettiTable) -> Iterator[tuple[Fraction, DegreeSequence, BettiTable]]:
    """Greedy peeling, one (coefficient, sequence, remainder) per step."""
    current = table
    while not current.is_zero():
        last = current.last_nonzero_column()
        degrees = []
        for i in range(last + 1):
            d = current.column_min_degree(i)
            if d is None:
                raise NotDecomposableError(
                    f"column {i} is zero but column {last} is not; no pure diagram fits"
                )
            degrees.append(d)
        try:
            sequence = DegreeSequence(tuple(degrees))
        except DegreeSequenceError as exc:
            raise NotDecomposableError(f"minimal degrees {tuple(degrees)} do not increase strictly") from exc
        diagram = pure_diagram(sequence)
        # the diagram touches exactly one entry per column, so this choice
        # keeps the remainder nonnegative and zeroes at least one entry
        coefficient = min(
            current.entry(i, d) / diagram.table.entry(i, d) for i, d in enumerate(degrees)
        )
        current = current - diagram.table.scale(coefficient)
        yield coefficient, sequence, current


def chain_decompose(table: BettiTable, chain: Chain) -> Decomposition:
    """Exact expansion of a table along a maximal chain of its window.

    The pure diagrams of a maximal chain are a basis of the window space, so
    the expansion exists and is unique for any table supported there; the
    coefficients may be negative. NoSolution signals a table whose support
    escapes the chain's window.
    """
    if not chain.maximal:
        raise ValueError("chain expansion needs a maximal chain")
    window = chain.window
    try:
        rhs = table.flatten(window)
    except ValueError as exc:
        raise NoSolutionError(f"table does not fit the chain window: {exc}") from exc
    columns = [pure_diagram(s).table.flatten(window) for s in chain.elements]
    matrix = [[col[r] for col in columns] for r in range(window.dimension)]
    coefficients = solve_exact(matrix, rhs)
    return Decomposition(tuple(zip(coefficients, chain.elements)), window)


def coefficient_column_formula(table: BettiTable, chain: Chain, index: int) -> Fraction | None:
    """Closed-form chain coefficient when both neighbors differ from the
    middle sequence in one shared position.

    In that case only the middle diagram of the chain has support at (c, d_c),
    so its coefficient is beta_{c, d_c} * prod_{p != c} |d_c - d_p|. Returns
    None when the neighbor pattern does not apply.
    """
    if not 0 < index < len(chain.elements) - 1:
        raise ValueError("the formula needs both a predecessor and a successor")
    prev, mid, nxt = chain.elements[index - 1 : index + 2]
    col = _single_position_difference(prev, mid)
    if col is None or _single_position_difference(mid, nxt) != col:
        return None
    degs = mid.degrees
    prod = 1
    for p, dp in enumerate(degs):
        if p != col:
            prod *= abs(degs[col] - dp)
    return table.entry(col, degs[col]) * prod


def _single_position_difference(a: DegreeSequence, b: DegreeSequence) -> int | None:
    if len(a) != len(b):
        return None
    diffs = [i for i, (x, y) in enumerate(zip(a.degrees, b.degrees)) if x != y]
    return diffs[0] if len(diffs) == 1 else None


def verify(decomposition: Decomposition, table: BettiTable) -> bool:
    """Whether the decomposition reconstructs the table exactly."""
    return reconstruction_mismatch(decomposition, table) is None


def reconstruction_mismatch(
    decomposition: Decomposition, table: BettiTable
) -> tuple[tuple[int, int], Fraction, Fraction] | None:
    """First position where the reconstruction and the table disagree.

    Returns ((column, degree), reconstructed, expected) in column-major order,
    or None when they match everywhere.
    """
    built = dict(decomposition.reconstruct().iter_support())
    wanted = dict(table.iter_support())
    for pos in sorted(set(built) | set(wanted)):
        got = built.get(pos, Fraction(0))
        want = wanted.get(pos, Fraction(0))
        if got != want:
            return pos, got, want
    return None


def decomposition_to_json(decomposition: Decomposition) -> dict:
    window = decomposition.source_window
    return {
        "window": [window.min_row, window.max_row, window.max_col],
        "terms": [
            {"degrees": list(s.degrees), "coefficient": str(c)}
            for c, s in decomposition.terms
        ],
    }


def decomposition_from_json(obj) -> Decomposition:
    if not isinstance(obj, dict):
        raise ParseError("decomposition JSON must be an object")
    try:
        min_row, max_row, max_col = (int(x) for x in obj["window"])
        window = Window(min_row, max_row, max_col)
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad decomposition window: {exc}") from exc
    raw_terms = obj.get("terms")
    if not isinstance(raw_terms, list):
        raise ParseError("decomposition JSON needs a 'terms' list")
    terms = []
    for t in raw_terms:
        try:
            sequence = DegreeSequence(tuple(int(d) for d in t["degrees"]))
            coefficient = Fraction(t["coefficient"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError, DegreeSequenceError) as exc:
            raise ParseError(f"bad decomposition term {t!r}: {exc}") from exc
        terms.append((coefficient, sequence))
    try:
        return Decomposition(tuple(terms), window)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
