"""Exception hierarchy. Every error raised by the library derives from K3DreamError."""


class K3DreamError(ValueError):
    pass


# linear algebra
class SingularSystem(K3DreamError):
    pass


class InconsistentSystem(K3DreamError):
    pass


class NotNegativeDefinite(K3DreamError):
    pass


# binary forms
class NotUnimodular(K3DreamError):
    pass


class SquareDiscriminant(K3DreamError):
    pass


class NonPositiveDiscriminant(K3DreamError):
    pass


class NotASolution(K3DreamError):
    pass


class NotPrimitive(K3DreamError):
    pass


class AOutOfRange(K3DreamError):
    pass


# rank-two lattices
class NotHyperbolic(K3DreamError):
    pass


class OddLattice(K3DreamError):
    pass


class NonNegativeSelfIntersection(K3DreamError):
    pass


class HypothesisViolated(K3DreamError):
    pass


class ParityViolation(K3DreamError):
    pass


# A_n arithmetic
class IndexOutOfRange(K3DreamError):
    pass


class NTooSmall(K3DreamError):
    pass


class LengthMismatch(K3DreamError):
    pass


# weighted projective cases
class DimensionMismatch(K3DreamError):
    pass


class Underdetermined(K3DreamError):
    pass


class Inconsistent(K3DreamError):
    pass


class UnknownCase(K3DreamError):
    pass
