"""Exception hierarchy shared by all hoopforge modules.

Witness-carrying errors keep their payload JSON-serializable so CLI
reports can embed them directly.
"""

from __future__ import annotations


class HoopforgeError(Exception):
    """Base class for every error raised by this package."""


class MalformedTable(HoopforgeError):
    """Operation table has the wrong shape or an out-of-range entry."""


class AxiomViolation(HoopforgeError):
    """An equational axiom failed; carries the axiom id and a witness."""

    def __init__(self, axiom: str, witness: dict):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom} fails at {witness}")


class IndexOutOfRange(HoopforgeError):
    pass


class NotBasic(HoopforgeError):
    """Join (or a basic-only construction) requested on a non-basic hoop."""


class NotBounded(HoopforgeError):
    """A bottom constant is required but absent."""


class ParseError(HoopforgeError):
    """Syntax error in the algebra or identity DSL; 1-based position."""

    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, col {col})")


class UndeclaredVariable(HoopforgeError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"undeclared variable {name!r}")


class MissingBinding(HoopforgeError):
    pass


class NotAFilter(HoopforgeError):
    pass


class NotACongruence(HoopforgeError):
    pass


class BudgetExceeded(HoopforgeError):
    """A bounded search ran past its node budget."""

    def __init__(self, nodes: int, budget: int):
        self.nodes = nodes
        self.budget = budget
        super().__init__(f"search exceeded budget ({nodes} > {budget} nodes)")


class SectionFailure(HoopforgeError):
    """p∘s is not the identity on the base."""


class KernelMismatch(HoopforgeError):
    """Image of the kernel map differs from the preimage of the unit."""


class NotInjective(HoopforgeError):
    pass


class NotStrong(HoopforgeError):
    """Operation requires a split extension with strong section."""


class NotInCarrier(HoopforgeError):
    pass


class PreconditionUnmet(HoopforgeError):
    pass


class ValidationFailure(HoopforgeError):
    """A construction that is guaranteed to work failed validation.

    Raised where failure signals an implementation bug rather than bad
    input, e.g. the semidirect product of a validated action not being
    a hoop.
    """


class BijectionFailure(HoopforgeError):
    """The reconstruction maps of a semidirect product failed to invert."""
