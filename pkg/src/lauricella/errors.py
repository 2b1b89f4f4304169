"""Exception types raised across the package."""


class LauricellaError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(LauricellaError, ValueError):
    pass


class IndexOutOfRange(LauricellaError, IndexError):
    pass


class NotClosed(LauricellaError):
    """A one-form that was expected to be exact has nonzero exterior derivative."""


class NonRegularPoint(LauricellaError):
    pass


class NonInvertibleEuler(LauricellaError):
    """Some block eigenvalue u^{1(a)} vanishes, so E has no inverse for the product."""


class NotSemisimpleConfig(LauricellaError):
    pass


class NotSingleBlock(LauricellaError):
    pass


class UnsupportedDimension(LauricellaError):
    pass


class CoincidingSpeeds(LauricellaError):
    pass


class TorsionNotZero(LauricellaError):
    pass
