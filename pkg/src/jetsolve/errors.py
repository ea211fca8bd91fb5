"""Exception types shared across the package."""


class JetsolveError(Exception):
    """Base class for all errors raised by jetsolve."""


class ZeroEquationError(JetsolveError):
    """An equation is identically zero."""


class InputError(JetsolveError):
    """Malformed system file or request."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class DegenerateEdgeError(JetsolveError):
    """A tree-edge resultant vanished identically: the two equations share a
    component and the chosen tree cannot separate them."""

    def __init__(self, edge, level=None):
        super().__init__(f"degenerate edge {{{edge[0]},{edge[1]}}}"
                         + (f" at level {level}" if level is not None else ""))
        self.edge = edge
        self.level = level


class NotRegularError(JetsolveError):
    """A polynomial does not satisfy the regularity precondition
    f(0, x) != 0 in the distinguished unknown."""


class RegularizationError(JetsolveError):
    """The deterministic substitution schedule was exhausted."""


class TruncationError(JetsolveError):
    """Inputs are too short to produce the requested order."""

    def __init__(self, message, required_order=None):
        super().__init__(message)
        self.required_order = required_order


class PrecisionError(JetsolveError):
    """Numerically close roots could not be separated at the working
    precision."""

    def __init__(self, message, separation=None):
        super().__init__(message)
        self.separation = separation


class VerificationError(JetsolveError):
    """A candidate branch failed the residual check and was withheld."""
