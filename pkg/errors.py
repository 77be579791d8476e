class ChromaError(Exception):
    """Base class for every domain error raised by chromaguard."""


class InvalidPolygonError(ChromaError):
    def __init__(self, report):
        self.report = report
        first = report.violations[0] if report.violations else None
        super().__init__(f"invalid polygon: {first.kind}: {first.message}" if first else "invalid polygon")


class IndexRangeError(ChromaError, ValueError):
    pass


class UncoveredError(ChromaError):
    def __init__(self, index, message="not covered by any guard"):
        self.index = index
        super().__init__(f"{index}: {message}")


class UnsupportedModelError(ChromaError):
    pass


class PartitionError(ChromaError):
    pass


class TableauError(ChromaError, ValueError):
    pass


class OutsideError(ChromaError, ValueError):
    pass


class GuardPlacementError(ChromaError, ValueError):
    pass
