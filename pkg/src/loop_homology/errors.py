from typing import Optional


class LoopHomError(Exception):
    pass


class InputError(LoopHomError):
    """Malformed or inconsistent input. The CLI exits with status 2."""


class ParseError(InputError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class InhomogeneousRelation(InputError):
    pass


class UnknownSymbol(InputError):
    pass


class UnknownGenerator(UnknownSymbol):
    pass


class UnknownLetter(UnknownSymbol):
    pass


class DegreeMismatch(InputError):
    pass


class UnknownSuite(InputError):
    pass


class EvenInput(InputError):
    pass


class ComputationError(LoopHomError):
    """An engine invariant was violated by the data it was given."""

    degree: Optional[int] = None


class CompositionNotZero(ComputationError):
    pass


class DimensionMismatch(ComputationError):
    pass


class CapExceeded(ComputationError):
    pass


class RewritingLoop(ComputationError):
    pass


class DifferentialNotSquareZero(ComputationError):
    def __init__(self, message: str, degree: Optional[int] = None):
        self.degree = degree
        super().__init__(message)


class RelationNotPreserved(ComputationError):
    def __init__(self, message: str, degree: Optional[int] = None):
        self.degree = degree
        super().__init__(message)


class StageMismatch(ComputationError):
    def __init__(self, label: str, degree: int, expected: int, found: int):
        self.label = label
        self.degree = degree
        super().__init__(
            f"stage {label}: degree {degree} has homology {found}, next page expects {expected}"
        )


class NotACycle(ComputationError):
    pass


class DegreeInhomogeneous(ComputationError):
    def __init__(self, message: str, degree: Optional[int] = None):
        self.degree = degree
        super().__init__(message)


class InducedDifferentialNonzero(ComputationError):
    def __init__(self, message: str, degree: Optional[int] = None):
        self.degree = degree
        super().__init__(message)
