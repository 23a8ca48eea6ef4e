"""Exception types shared across the package.

Invalid arguments raise the built-in ``ValueError``; the two classes here
cover the remaining failure modes that callers (CLI, service) need to
distinguish: broken on-disk/wire formats and numerically invalid data.
"""


class FormatError(Exception):
    """A file or payload does not conform to the declared binary format."""


class NumericError(Exception):
    """Input data or a computed result is numerically invalid (NaN/Inf,
    violated row-stochasticity, failed validation of an augmented batch)."""
