"""Exception hierarchy shared by every module.

The CLI maps these onto its exit codes, so the split between
precondition, budget and internal failures matters.
"""


class SubdivError(Exception):
    """Base class for all library errors."""


class DigraphParseError(SubdivError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class PatternParseError(SubdivError, ValueError):
    pass


class BudgetExceeded(SubdivError):
    """The exact chromatic search ran out of nodes.

    Carries the best bounds known at the time so callers can report an
    interval instead of a guess.
    """

    def __init__(self, lower: int, upper: int, nodes: int):
        super().__init__(f"chromatic budget exhausted after {nodes} nodes (bounds {lower}..{upper})")
        self.lower = lower
        self.upper = upper
        self.nodes = nodes


class PreconditionError(SubdivError):
    """An input does not satisfy the hypothesis of the requested construction."""


class SecantFoundError(PreconditionError):
    def __init__(self, pair, message: str = "graph has a k-secant pair"):
        super().__init__(f"{message}: {pair}")
        self.pair = pair


class InsufficientChromaticError(PreconditionError):
    """Vertices ran out before a segment reached its chromatic target."""

    def __init__(self, segment: int, target: int, achieved: int):
        super().__init__(
            f"segment {segment + 1} reached chi={achieved} before vertices ran out (target {target})"
        )
        self.segment = segment
        self.target = target
        self.achieved = achieved


class AssemblyError(SubdivError):
    """A construction produced an object that failed its own verification."""


class InconsistencyError(AssemblyError):
    """No 1-secant pair in either parity class although chi was above threshold.

    ``certificate`` holds the two colorings of the contracted halves and the
    resulting bound on the chromatic number of the host.
    """

    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = certificate


class LimitExceeded(SubdivError):
    """An oracle instance is larger than its search limit allows."""
