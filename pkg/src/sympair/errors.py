"""Exception taxonomy shared across the toolkit.

The split matters for the CLI exit codes: bad user input and shape
problems are ordinary errors (exit 2), while InvariantViolation marks a
failure of a structural guarantee the algorithms rely on -- those must
never be swallowed (exit 3).
"""


class ShapeError(ValueError):
    """Dimension or structural mismatch in an exact-linalgebra operation."""


class InputError(ValueError):
    """Malformed user input (CLI flags, pair-spec documents, fact files)."""


class PreconditionError(ValueError):
    """An operation was called on data that violates its stated precondition."""


class InvariantViolation(RuntimeError):
    """A structural guarantee failed mid-computation.

    Raised for: unsolvable Morozov systems, non-integral or unresolved
    spectra, positive eigenvalues where only non-positive ones can occur,
    degenerate restricted forms, failed involution adaptation, exhausted
    witness scans.  Callers must surface these loudly, never downgrade.
    """
