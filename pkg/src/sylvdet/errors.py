"""Exception types shared across the package."""


class SylvdetError(Exception):
    """Base class for all domain errors."""


class DuplicateNode(SylvdetError):
    """Interpolation received two points with the same abscissa."""


class DegenerateParams(SylvdetError):
    """Family parameters make a coefficient denominator (or a required
    transform entry) vanish. Carries the list of violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class BadDimension(SylvdetError):
    """Dimension outside the range an operation supports."""


class Unsupported(SylvdetError):
    """Operation not defined for this family."""


class SamplingExhausted(SylvdetError):
    """Rejection sampling hit its retry bound without a valid draw."""


class Singular(SylvdetError):
    """Matrix inversion failed; carries the elimination step index."""

    def __init__(self, step: int):
        self.step = step
        super().__init__(f"no pivot at elimination step {step}")
