"""Exception hierarchy shared by all relcalc modules."""


class RelcalcError(Exception):
    """Base class for every error raised by relcalc."""


class DimensionMismatch(RelcalcError, ValueError):
    """Operands live in spaces of different dimension."""


class NotInRegularSet(RelcalcError):
    """The point is not in the regular set of a relation.

    ``reason`` is ``"injectivity"`` when ``ker(T - zeta I) != {0}`` and
    ``"surjectivity"`` when ``ran(T - zeta I) != C^n``.
    """

    def __init__(self, msg, zeta, reason):
        super().__init__(msg)
        self.zeta = zeta
        self.reason = reason


class NotSelfadjoint(RelcalcError):
    pass


class NotSymmetric(RelcalcError):
    pass


class PreconditionFailed(RelcalcError):
    """A hypothesis of a theorem check does not hold for the inputs."""

    def __init__(self, msg, hypothesis=None):
        super().__init__(msg)
        self.hypothesis = hypothesis


class ExtensionCheckFailed(PreconditionFailed):
    """The claimed restriction is not contained in the claimed extension."""


class NotALacuna(PreconditionFailed):
    pass


class LambdaNotQuasiRegular(RelcalcError, ValueError):
    pass
