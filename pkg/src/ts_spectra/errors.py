"""Exception hierarchy shared by the library and the CLI."""


class SpectraError(Exception):
    """Base class for every error raised by ts_spectra."""


class PartitionError(SpectraError, ValueError):
    pass


class NonPositivePart(PartitionError):
    def __init__(self, index: int, value: int):
        self.index = index
        self.value = value
        super().__init__(f"part at index {index} is {value}, expected >= 1")


class NotMonotone(PartitionError):
    """Raised when a sequence increases somewhere.

    ``index`` is the first position ``i`` with ``seq[i] < seq[i + 1]``.
    """

    def __init__(self, index: int, seq):
        self.index = index
        self.seq = tuple(seq)
        super().__init__(
            f"not weakly decreasing at index {index}: "
            f"{self.seq[index]} < {self.seq[index + 1]}"
        )


class InvalidSpec(PartitionError):
    pass


class ResourceLimit(SpectraError):
    def __init__(self, message: str, hint: str | None = None):
        self.hint = hint
        super().__init__(message if hint is None else f"{message} ({hint})")


class RoundingFailure(SpectraError, ArithmeticError):
    pass


class ConstructionError(SpectraError):
    pass


class OutOfRange(ConstructionError, ValueError):
    pass


class NonMonotoneOutput(ConstructionError):
    """The expanded row is a composition but not a partition."""

    def __init__(self, result):
        self.result = result
        super().__init__(
            f"{result.recipe} produced non-monotone row {list(result.raw.parts)}"
        )


class ChecksumFailure(ConstructionError):
    """The printed row does not sum to ``n`` (or has a negative run)."""

    def __init__(self, recipe: str, detail: str):
        self.recipe = recipe
        super().__init__(f"{recipe}: {detail}")


class Unreachable(SpectraError):
    pass


class FirstRowTooSmall(SpectraError, ValueError):
    pass


class NotFound(SpectraError):
    def __init__(self, n: int, target: int, reason: str = ""):
        self.n = n
        self.target = target
        msg = f"no partition of {n} attains {target}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class NoPlanFound(NotFound):
    pass
