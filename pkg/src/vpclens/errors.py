"""Exception hierarchy shared across the package.

The CLI maps these onto stable exit codes: validation / format problems
exit 2, I/O problems exit 3 (plain OSError), degenerate data exits 4.
"""


class VpclensError(Exception):
    """Base class for all package-specific errors."""


class QueryError(VpclensError):
    """A concordance query is malformed or empty."""


class DegenerateDataError(VpclensError):
    """Input data cannot support the requested computation.

    Raised for singleton or empty classes, fewer than two classes, and
    all-zero distance matrices.
    """


class BundleError(VpclensError):
    """Base class for embedding-bundle problems."""


class BundleMetadataError(BundleError):
    """meta.json is missing, unparseable, or lies about the layout."""


class MissingLayerError(BundleError):
    """A layer file declared in meta.json is absent on disk."""


class LayerShapeError(BundleError):
    """A layer file's byte length disagrees with the declared shape."""


class BundleValidationError(BundleError):
    """A bundle violates its invariants; carries the full report."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"invalid bundle: {lines}{more}")
