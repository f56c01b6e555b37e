"""Exception types raised by twistlink."""


class TwistLinkError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class CodeSyntaxError(TwistLinkError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class CodeValidationError(TwistLinkError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class MoveError(TwistLinkError, ValueError):
    """A move site does not apply to the given code."""


class PresentationError(TwistLinkError, ValueError):
    pass


class BudgetExceeded(TwistLinkError, RuntimeError):
    pass


class RibbonSizeError(TwistLinkError, ValueError):
    pass


class CatalogError(TwistLinkError, ValueError):
    pass
