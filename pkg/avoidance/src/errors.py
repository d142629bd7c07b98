class AvoidanceError(Exception):
    """Base error. `exit_code` is what the CLI exits with, `detail` goes to stderr."""

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InputError(AvoidanceError):
    exit_code = 2


class AlphabetError(InputError):
    pass


class MorphismError(InputError):
    pass


class ExponentError(InputError):
    pass


class BudgetError(InputError):
    pass


class MissingVariableError(InputError):
    pass


class FormulaParseError(InputError):
    def __init__(self, detail: str, position: int):
        super().__init__(f"{detail} at position {position}")
        self.position = position


class ConstructionVerificationError(AvoidanceError):
    # an encounter was found where avoidance is claimed
    exit_code = 1
