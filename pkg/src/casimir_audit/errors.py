"""Exception hierarchy shared by the numerical modules."""


class NumericalError(ArithmeticError):
    """Base class for failures of a numerical routine."""


class NonConvergence(NumericalError):
    """Adaptive quadrature ran out of subdivisions before meeting tolerance."""


class PoleOnBoundary(NumericalError, ValueError):
    pass


class PolesTooClose(NumericalError, ValueError):
    pass


class StepUnderflow(NumericalError, ValueError):
    pass


class OutOfShell(ValueError):
    """Radius lies outside the shell a <= r <= R_out."""


class NearPole(NumericalError, ValueError):
    pass


class ArcThroughPole(NumericalError, ValueError):
    pass
