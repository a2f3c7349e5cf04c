"""Exception hierarchy. Every domain error carries its class name as the diagnostic code."""


class AdeJacobianError(Exception):
    """Base class for all domain errors raised by the package."""

    @property
    def code(self):
        return type(self).__name__


# dynkin
class InvalidRank(AdeJacobianError):
    pass


class InvalidGraph(AdeJacobianError):
    pass


class DimensionMismatch(AdeJacobianError):
    pass


# curve
class NonRationalMultipleComponent(AdeJacobianError):
    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        super().__init__(
            "multiple components must be rational; positive genus at "
            + ", ".join(self.vertices)
        )


class UnknownVertex(AdeJacobianError):
    pass


# polarisation
class NonPositiveChi(AdeJacobianError):
    pass


class ZeroEulerCharacteristic(NonPositiveChi):
    """chi = 0 admits properly semistable sheaves and is not modelled."""

    def __init__(self):
        super().__init__(
            "chi = 0 is out of scope: properly semistable sheaves occur there "
            "and the moduli description changes"
        )


class InvalidPolarisation(AdeJacobianError):
    pass


class AssumptionNotSatisfied(AdeJacobianError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


# sheaves
class InvalidMarking(AdeJacobianError):
    pass


class NotClassified(AdeJacobianError):
    pass


class NotSingular(AdeJacobianError):
    pass


class NotAPartition(AdeJacobianError):
    pass


class ClassificationMismatch(AdeJacobianError):
    """The brute-force stable set differs from the exactly-one-special family."""


# moduli
class InconsistentDescription(AdeJacobianError):
    def __init__(self, check, detail=""):
        self.check = check
        super().__init__(f"{check}: {detail}" if detail else check)


# charcycle
class PointNotOnCurve(AdeJacobianError):
    pass


class FieldTooLarge(AdeJacobianError):
    pass


class InvalidEllipticCurve(AdeJacobianError):
    pass


class InvalidTorsionSpec(AdeJacobianError):
    pass


class SpecMissing(AdeJacobianError):
    pass


class SpecForbidden(AdeJacobianError):
    pass


# cli documents
class DocumentError(AdeJacobianError):
    pass


class SelftestFailed(AdeJacobianError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
