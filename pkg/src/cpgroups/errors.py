"""Exception hierarchy shared by every module of the package."""


class CPGError(Exception):
    """Base class for all errors raised by cpgroups."""


# polynomials

class NotDivisible(CPGError, ArithmeticError):
    pass


class BothZero(CPGError, ValueError):
    pass


class ZeroPolynomial(CPGError, ValueError):
    pass


class ConstantPolynomial(CPGError, ValueError):
    pass


class EqualIndices(CPGError, ValueError):
    pass


class PolySyntaxError(CPGError, ValueError):
    """Malformed polynomial text; ``position`` is the 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


# matrices

class EmptyRow(CPGError, ValueError):
    pass


# presentations

class WordSyntaxError(CPGError, ValueError):
    """Malformed defining word; ``position`` is the 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class EmptyWord(CPGError, ValueError):
    pass


class DanglingReference(CPGError, ValueError):
    pass


# classification

class ZeroRepresenter(CPGError, ValueError):
    pass


class HypothesisViolated(CPGError, ValueError):
    pass


class BadCongruence(CPGError, ValueError):
    pass


class EqualRS(CPGError, ValueError):
    pass


class InvariantViolation(CPGError, AssertionError):
    """A relation that must hold mathematically failed; indicates a bug."""


class UnknownSuite(CPGError, ValueError):
    pass
