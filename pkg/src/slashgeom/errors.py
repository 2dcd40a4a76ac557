"""Exception hierarchy.  Everything raised on purpose derives from SlashError."""


class SlashError(Exception):
    pass


class DimensionMismatch(SlashError, ValueError):
    pass


class ShapeMismatch(SlashError, ValueError):
    pass


class NotAComplexStructure(SlashError, ValueError):
    """j does not square to -id."""


class DegenerateForm(SlashError, ValueError):
    """A form (or matrix) that must be invertible is singular."""


class NotASlashStructure(SlashError, ValueError):
    def __init__(self, msg, clause=None):
        super().__init__(msg)
        self.clause = clause


class NotACirclePoint(SlashError, ValueError):
    pass


class InvalidLabel(SlashError, ValueError):
    pass


class NotInAnyOrbit(SlashError, ValueError):
    def __init__(self, msg, clause=None):
        super().__init__(msg)
        self.clause = clause


class NotInOrbit(SlashError, ValueError):
    pass


class ToleranceExceeded(SlashError, ArithmeticError):
    def __init__(self, msg, residuals=None):
        super().__init__(msg)
        self.residuals = residuals


class UnsupportedOrbit(SlashError, NotImplementedError):
    """No conjugator construction for this orbit (the quaternionic rows)."""
