"""Exception types shared across the package."""


class BlinkerError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(BlinkerError):
    """A malformed record in an input file; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateIdError(BlinkerError):
    """Two records claim the same verse id."""


class CorpusSizeError(BlinkerError):
    """A sampling request exceeds the available corpus."""


class BoundsError(BlinkerError):
    """A token index is outside the verse, naming the side and the bound."""

    def __init__(self, side: str, index: int, bound: int):
        self.side = side
        self.index = index
        self.bound = bound
        super().__init__(f"{side} index {index} out of range [0, {bound})")


class PunctSearchBoundError(BlinkerError):
    """Too many unlinked punctuation marks for exhaustive search."""


class VerseMismatchError(BlinkerError):
    """An alignment refers to a different verse than expected."""


class UnknownRuleError(BlinkerError):
    """check_rule was asked for a rule id that does not exist."""


class AuthorizationError(BlinkerError):
    """The annotator is not assigned to the verse being submitted."""


class RevisionConflictError(BlinkerError):
    """A submission was based on a revision older than the stored one."""


class LintGateError(BlinkerError):
    """A submission is blocked by error-severity findings (no override given)."""

    def __init__(self, findings):
        self.findings = list(findings)
        names = ", ".join(sorted({f.rule_id for f in self.findings}))
        super().__init__(f"submission blocked by error-severity findings: {names}")
