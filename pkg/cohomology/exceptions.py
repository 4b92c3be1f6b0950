"""Errors raised by the cohomology engine.

Everything derives from ``EqcohError`` so the management commands can tell
mathematical failures (exit 2) apart from usage problems (exit 1).
"""


class EqcohError(ValueError):
    """Base class for engine errors."""


class ContextMismatch(EqcohError):
    """Operands live in different ring contexts or have different sizes."""


class OddWeightError(EqcohError):
    """A grading weight is not a positive even integer."""


class InhomogeneousError(EqcohError):
    """A polynomial is zero or not homogeneous where homogeneity is required."""


class UnboundVariable(EqcohError):
    """A full evaluation left a variable without a value."""


class ParseError(EqcohError):
    """Text could not be parsed by one of the engine grammars."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} (at position {position} in {text!r})")


class InvalidElement(EqcohError):
    """A matrix is not an element of sl_n."""


class SingularSystem(EqcohError):
    """A linear system has no unique solution."""


class NonRegularError(EqcohError):
    """A torus element has a vanishing root."""

    def __init__(self, root):
        self.root = root
        super().__init__(f"torus element is not regular: root {root} vanishes")


class NotDiagonalLinear(EqcohError):
    """The field of h is not diagonal-linear in the chart coordinates."""


class NotInCell(EqcohError):
    """A point does not lie in the open cell of the chart."""


class UnsupportedFamily(EqcohError):
    """The family cannot be used with this chart or operation."""


class PositiveDimensionalFiber(EqcohError):
    """A specialized zero scheme has a positive-dimensional fiber."""


class ComponentExtractionUnavailable(EqcohError):
    """Rational-root extraction could not split the zero scheme into components."""


class IdentityViolation(EqcohError):
    """A checked identity failed; carries the expected and computed values."""

    def __init__(self, identity, expected="", got=""):
        self.identity = identity
        self.expected = expected
        self.got = got
        detail = f": expected {expected}, got {got}" if expected or got else ""
        super().__init__(f"{identity} violated{detail}")
