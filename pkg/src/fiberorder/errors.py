"""Exception hierarchy.

Every domain error derives from :class:`FiberOrderError`; the CLI maps these
to exit code 1 and a machine-readable payload (see :meth:`FiberOrderError.payload`).
"""


__all__ = [
    "FiberOrderError",
    "DuplicateLabel",
    "UnknownLabel",
    "NotTransitive",
    "NotAntisymmetric",
    "SizeOverflow",
    "NotConnected",
    "TooLarge",
    "NotADecomposition",
    "RefinementNotFound",
    "InvalidNetwork",
    "DimensionMismatch",
    "KTooLarge",
    "InvalidPoint",
    "Infeasible",
    "InternalContradiction",
    "OverlappingSets",
    "NotInImage",
    "InvalidMeasure",
    "BadBasePoint",
    "BaseMismatch",
    "FiberTooLarge",
]


class FiberOrderError(Exception):
    code = "error"

    def payload(self):
        return {"error": self.code, "message": str(self)}


class DuplicateLabel(FiberOrderError, ValueError):
    code = "duplicate_label"


class UnknownLabel(FiberOrderError, ValueError):
    code = "unknown_label"


class NotTransitive(FiberOrderError, ValueError):
    code = "not_transitive"


class NotAntisymmetric(FiberOrderError, ValueError):
    code = "not_antisymmetric"


class SizeOverflow(FiberOrderError):
    code = "size_overflow"


class NotConnected(FiberOrderError, ValueError):
    code = "not_connected"


class TooLarge(FiberOrderError):
    code = "too_large"


class NotADecomposition(FiberOrderError, ValueError):
    code = "not_a_decomposition"


class RefinementNotFound(FiberOrderError):
    code = "refinement_not_found"


class InvalidNetwork(FiberOrderError, ValueError):
    code = "invalid_network"


class DimensionMismatch(FiberOrderError, ValueError):
    code = "dimension_mismatch"


class KTooLarge(FiberOrderError, ValueError):
    code = "k_too_large"


class InvalidPoint(FiberOrderError, ValueError):
    code = "invalid_point"


class Infeasible(FiberOrderError):
    code = "infeasible"

    def __init__(self, violated):
        self.violated = tuple(sorted(violated))
        super().__init__(f"strict inequality fails for A={list(self.violated)}")

    def payload(self):
        return {"error": self.code, "violated": list(self.violated)}


class InternalContradiction(FiberOrderError):
    code = "internal_contradiction"


class OverlappingSets(FiberOrderError, ValueError):
    code = "overlapping_sets"


class NotInImage(FiberOrderError):
    code = "not_in_image"


class InvalidMeasure(FiberOrderError, ValueError):
    code = "invalid_measure"


class BadBasePoint(FiberOrderError, ValueError):
    code = "bad_base_point"


class BaseMismatch(FiberOrderError, ValueError):
    code = "base_mismatch"


class FiberTooLarge(FiberOrderError):
    code = "fiber_too_large"
