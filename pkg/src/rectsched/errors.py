"""Exception hierarchy shared by all modules."""


class RectSchedError(Exception):
    pass


class DegenerateDirection(RectSchedError):
    pass


class UnsupportedDirection(RectSchedError):
    pass


class DegenerateAmplitude(RectSchedError):
    pass


class MalformedInput(RectSchedError):
    pass


class InvariantViolation(RectSchedError):
    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


class NonAxisAlignedDirections(RectSchedError):
    pass


class UnsupportedMode(RectSchedError):
    pass


class BudgetRequired(RectSchedError):
    pass


class DimensionMismatch(RectSchedError):
    pass


class InconsistentCases(RectSchedError):
    pass


class OverlappingRealization(RectSchedError):
    pass


class ConfigurationMismatch(RectSchedError):
    pass


class OutOfBox(RectSchedError):
    pass


class NonLatticeInstance(RectSchedError):
    pass


class StateSpaceExceeded(RectSchedError):
    pass


NonAxisAligned = NonAxisAlignedDirections
