"""Exception types shared across the package.

The split mirrors the CLI exit codes: bad input syntax (2), a value outside
an operation's mathematical domain (3), and a refusal to start a computation
that would blow past a resource guard (4).
"""


class SpecParseError(ValueError):
    """A state-spec string (or file payload) could not be parsed."""


class DomainError(ValueError):
    """Input is syntactically fine but mathematically out of domain."""


class ResourceGuardError(RuntimeError):
    """Requested computation exceeds a hard size guard."""
