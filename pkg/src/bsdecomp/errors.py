"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed textual input: .btt files, ideal JSON, monomial strings, chains."""


class DegreeSequenceError(ValueError):
    """A degree sequence that is not strictly increasing (or is empty)."""


class DomainError(Exception):
    """A mathematically invalid request on otherwise well-formed input."""


class ZeroIdealError(DomainError):
    """The zero ideal has no Betti table, lcm closure, or generator degree."""


class NotEquigeneratedError(DomainError):
    """Minimal generators do not all share one total degree."""


class NotDecomposableError(DomainError):
    """Greedy decomposition failed: the input is not the Betti table of a module."""


class NoSolutionError(DomainError):
    """An exact linear system has no unique solution.

    ``witness`` pins down the failure: ``("free_column", c)`` for a
    rank-deficient column, ``("residual_row", r, value)`` for an inconsistent
    row after elimination.
    """

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class AmbiguousOrMissingChainError(DomainError):
    """No chain, or several genuinely different chains, carry the positive family."""


class NotStabilizedError(Exception):
    """The sampled power family does not settle into a single polynomial shape.

    ``offender`` is ``(k, i, j)`` for the first table position that broke the
    fit or the shape agreement, when one can be named.
    """

    def __init__(self, message: str, offender: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.offender = offender
