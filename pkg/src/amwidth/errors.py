"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI:
  DomainError (and subclasses)  -> 1
  ResourceError                 -> 2
  usage problems                -> 3
"""


class AmwidthError(Exception):
    """Base class for all package errors."""


class DomainError(AmwidthError):
    """Invalid input: unknown elements, violated preconditions, bad data."""


class ResourceError(AmwidthError):
    """A brute-force bound or compilation budget was exceeded."""


class NoProperAmalgamError(DomainError):
    """The candidate rank function zeta is not submodular.

    Carries a concrete violating pair of subsets (as frozensets of
    element ids) so failures are diagnosable.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness  # (frozenset, frozenset)


class GluePreconditionError(DomainError):
    """A glueing precondition failed; ``violations`` names each one."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ValidationError(DomainError):
    """A decomposition failed validation; carries the full report."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class FormulaSyntaxError(DomainError):
    """MSO formula text could not be parsed; ``position`` is 0-based."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CompilationBudgetError(ResourceError):
    """The compiled MSO evaluator exceeded its table-entry budget."""

    def __init__(self, message, subformula):
        super().__init__(f"{message}: {subformula}")
        self.subformula = subformula
