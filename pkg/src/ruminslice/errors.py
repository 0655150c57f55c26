"""Exception types shared across the library."""


class ParameterError(ValueError):
    """An argument violates a documented precondition."""


class GradeMismatchError(ParameterError):
    """Two graded objects of incompatible grades were combined."""

    def __init__(self, left_grade, right_grade, operation="+"):
        self.left_grade = left_grade
        self.right_grade = right_grade
        super().__init__(
            f"grade mismatch in '{operation}': {left_grade} vs {right_grade}"
        )


class DimensionMismatchError(ParameterError):
    """Operands live over different Heisenberg groups."""


class AdmissibilityError(ParameterError):
    """A chain tangent pairs nontrivially with the contact ideal."""


class DegenerateLevelError(ParameterError):
    """A slicing level hits a vertex value; perturb the level instead."""


class MiddleDimensionError(ParameterError):
    """Mass bounds for slices of middle dimension k = n are out of scope."""


class ChainFormatError(ParameterError):
    """A chain file is malformed or carries an unsupported version."""


class FormSyntaxError(ParameterError):
    """A form expression failed to lex or parse."""

    def __init__(self, message, line=1, column=0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class InternalInvariantError(RuntimeError):
    """A certified internal property failed; indicates a bug, not bad input."""
