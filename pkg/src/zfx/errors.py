"""Exception types shared across the package."""


class CapacityError(ValueError):
    """An input exceeds a hard or configured size budget."""


class Graph6ParseError(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class TreeError(ValueError):
    """A graph-labelled tree is structurally invalid."""


class TraceError(ValueError):
    """An elimination trace cannot be replayed."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
