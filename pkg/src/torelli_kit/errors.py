"""Exception hierarchy shared by every module."""


class TorelliKitError(Exception):
    """Base class for all library errors."""


class NonPrimitive(TorelliKitError, ValueError):
    """An integer vector whose entries have gcd different from 1."""


class NotUnimodular(TorelliKitError, ValueError):
    """A matrix expected to have determinant +-1 does not."""


class NonUnimodularDuality(TorelliKitError, ArithmeticError):
    """The boundary duality pairing failed to be unimodular (internal basis bug)."""


class DimensionMismatch(TorelliKitError, ValueError):
    pass


class NotPoincare(TorelliKitError, ValueError):
    """A variation fails D + D^T = D L D^T."""


class NotTorelli(TorelliKitError, ValueError):
    """A variation whose induced automorphism is not the identity."""


class InjectivityUnverified(TorelliKitError, ValueError):
    """Gluing was requested without evidence that H_2(Y) -> H_2(X) is injective."""


class MalformedFront(TorelliKitError, ValueError):
    """A front word violates strand bookkeeping."""


class GeneratorMismatch(TorelliKitError, ValueError):
    pass


class UnknownGenerator(TorelliKitError, KeyError):
    pass


class InconsistentProfile(TorelliKitError, ValueError):
    pass


class SchemaError(TorelliKitError, ValueError):
    """Serialized input does not match the expected schema."""


class HypothesisFailed(TorelliKitError):
    """A hypothesis of the non-smoothability criterion does not hold."""

    def __init__(self, which, detail=""):
        self.which = which
        self.detail = detail
        super().__init__(f"{which}: {detail}" if detail else which)
