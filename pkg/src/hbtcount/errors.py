"""Exception types shared across the package.

Validation failures (bad arguments, inconsistent parameters) raise plain
ValueError.  Failures of a numeric domain condition that can only be
detected during evaluation raise DomainError, so callers (notably the CLI)
can distinguish the two.
"""


class DomainError(ValueError):
    """A numeric domain condition was violated during evaluation."""
