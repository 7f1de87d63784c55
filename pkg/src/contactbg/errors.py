"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: data/config problems exit 2, numeric
and domain problems exit 3 (see ``contactbg.cli``).
"""

from __future__ import annotations


class ContactBgError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ContactBgError):
    """A physical precondition is violated (non-positive separation, bad geometry)."""


class RangeError(ContactBgError):
    """A query lies outside a declared validity range or sampled grid."""


class NumericError(ContactBgError):
    """A numerical procedure failed to converge or an internal identity broke."""


class DataError(ContactBgError):
    """Measurement data is malformed: parse failures, bad values, duplicates."""


class InsufficientDataError(DataError):
    """Too few samples for the requested operation."""


class DegenerateDesignError(DataError):
    """The fit design matrix is singular (e.g. all separations equal)."""


class MixedSignError(DataError):
    """A log-space fit was requested on force samples of non-uniform sign."""


class ConfigError(ContactBgError):
    """The pipeline configuration file is invalid."""
