"""Exception hierarchy shared by all modules."""


class AlbertError(Exception):
    """Base class for every error raised by this package."""


class DescriptorMismatch(AlbertError):
    pass


class ZeroInput(AlbertError):
    pass


class InseparablePolynomial(AlbertError):
    pass


class NotDegreeTwo(AlbertError):
    pass


class AlgebraMismatch(AlbertError):
    pass


class NoneExist(AlbertError):
    """The requested objects provably do not exist (e.g. anisotropic norm)."""


class NotFound(AlbertError):
    """A bounded search finished without success; says nothing about existence."""


class NegativePower(AlbertError):
    pass


class NotPrimitiveIdempotent(AlbertError):
    pass


class SingularMatrix(AlbertError):
    pass


class GammaNotUnit(AlbertError):
    pass


class DimensionMismatch(AlbertError):
    pass


class NotSingular(AlbertError):
    pass


class NotInnerIdeal(AlbertError):
    pass


class ConstructionFailed(AlbertError):
    def __init__(self, dim, msg=""):
        super().__init__(f"no inner ideal of dimension {dim} constructed{': ' + msg if msg else ''}")
        self.dim = dim


class RankMismatch(AlbertError):
    pass


class TripleMismatch(AlbertError):
    pass


class NotKSubmodule(AlbertError):
    pass


class NotAWitness(AlbertError):
    pass


class TraceZeroS(AlbertError):
    pass


class CharTwoUnsupportedShape(AlbertError):
    pass


class NotACongruence(AlbertError):
    pass


class ZeroGenerator(AlbertError):
    pass


class UnsupportedBase(AlbertError):
    pass


class ZeroGamma(AlbertError):
    pass


class BadGamma(AlbertError):
    pass


class UndecidedRegime(AlbertError):
    pass


class ConfigParseError(AlbertError):
    pass
