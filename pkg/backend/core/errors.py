class TightNbrError(Exception):
    """Base class for every error raised by the library."""


class InputError(TightNbrError):
    """Malformed input data (facet lists, facet files)."""


class PurityError(InputError):
    pass


class EmptyError(InputError):
    pass


class TokenError(InputError):
    pass


class VertexError(TightNbrError):
    pass


class AdjacencyError(TightNbrError):
    pass


class PathError(TightNbrError):
    pass


class BoundaryError(TightNbrError):
    pass


class DimensionError(TightNbrError):
    pass


class ParamError(TightNbrError):
    pass


class ScaleError(TightNbrError):
    pass


class ChainError(TightNbrError):
    """An XY tuple leaves a vertex that is absent or enters one already present."""


class DegenerateError(TightNbrError):
    """Decoded facets are not pairwise distinct."""


class ClassError(TightNbrError):
    """Complex is not in the Z3-symmetric class on the 15 canonical vertices."""


class GraphError(TightNbrError):
    pass


class IdError(TightNbrError):
    pass
