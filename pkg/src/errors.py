class ChromhomError(Exception):
    """Base class for every error raised by the engine."""


class ConfigError(ChromhomError):
    pass


class GraphError(ChromhomError):
    """Invalid graph data: loops, multi-edges, bad endpoints, foreign subsets."""


class GraphParseError(GraphError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class ContractViolation(ChromhomError):
    """An operation was called outside its precondition."""


class AlgebraError(ChromhomError):
    def __init__(self, axiom, message):
        self.axiom = axiom
        super().__init__(f"{axiom}: {message}")


class LinearExtensionError(ChromhomError):
    def __init__(self, lower, upper):
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"{lower} is contained in {upper} but appears after it"
        )


class ChainComplexError(ChromhomError):
    def __init__(self, i, j, message="d^2 != 0"):
        self.i = i
        self.j = j
        super().__init__(f"bigrade (i={i}, j={j}): {message}")
