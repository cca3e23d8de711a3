"""Exception hierarchy shared by every module of the package."""


class ZMCError(Exception):
    """Base class for all errors raised by riemann_zmc."""


class InvalidParams(ZMCError, ValueError):
    pass


class OutOfDomain(ZMCError, ValueError):
    pass


class QuadratureFailure(ZMCError, ArithmeticError):
    pass


class NotLightlike(ZMCError, ValueError):
    pass


class DegenerateDirection(ZMCError, ValueError):
    pass


class ZeroRadius(OutOfDomain):
    pass


class LightlikePoint(ZMCError, ArithmeticError):
    """The first fundamental form degenerates, so curvature is undefined."""


class NoLightlikePart(ZMCError, ValueError):
    pass


class TooFewSamples(ZMCError, ValueError):
    pass


class NotALine(ZMCError, ValueError):
    pass


class DegenerateTransverse(ZMCError, ArithmeticError):
    pass


class NonMonotoneY(ZMCError, ValueError):
    pass


class Inconsistent(ZMCError, ValueError):
    pass


class BracketFailure(ZMCError, ArithmeticError):
    pass
