"""Exception types raised across the package.

Every domain error derives from CoverGraphError so callers (and the CLI,
which maps them to exit code 2) can catch one base class.
"""


class CoverGraphError(Exception):
    pass


class DimensionMismatch(CoverGraphError):
    pass


class ZeroVectorCosine(CoverGraphError):
    """Cosine dissimilarity is undefined for zero vectors."""


class UnmatchedImage(CoverGraphError):
    """A coordinate transform sent a point outside the cloud (within tau)."""


class AmbiguousMatch(CoverGraphError):
    """Point matching under tau was not a bijection."""


class GroupTooLarge(CoverGraphError):
    pass


class InvalidOrder(CoverGraphError):
    """Scan order is not a permutation of the cloud indices."""


class StaleNet(CoverGraphError):
    """Net does not belong to the cloud/metric it is being used with."""


class UnknownColumn(CoverGraphError):
    pass


class CoveringConditionViolated(CoverGraphError):
    """The net was not equivariant: some ball image is not exactly a ball."""


class MixedKinds(CoverGraphError):
    pass


class EmptyCollection(CoverGraphError):
    pass


class RaggedRows(CoverGraphError):
    pass


class NonNumericCell(CoverGraphError):
    pass


class UnknownFormat(CoverGraphError):
    pass


class GraphCloudMismatch(CoverGraphError):
    """Graph, cloud, or relation identifiers do not line up."""


class ProvenanceMismatch(CoverGraphError):
    pass


class EmptyImage(CoverGraphError):
    """The relation hits no codomain point."""


class UnknownVertex(CoverGraphError):
    """A selection referenced vertex ids absent from the graph."""

    def __init__(self, ids):
        self.ids = sorted(ids)
        super().__init__(f"unknown vertex ids: {', '.join(self.ids)}")
