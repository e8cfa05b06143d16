"""Exception types shared across the package."""


class FrameError(ValueError):
    """Malformed frame, relation, partition or incompatible arguments."""


class AlphabetError(FrameError):
    """Alphabets that should agree (or be disjoint) do not."""


class FormulaSyntaxError(ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """An exhaustive search was refused because it would exceed its budget."""

    def __init__(self, message, required=None, budget=None):
        self.required = required
        self.budget = budget
        super().__init__(message)


class ExpressionError(ValueError):
    """Malformed construction expression."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
