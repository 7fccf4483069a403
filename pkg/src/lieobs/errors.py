"""Exception hierarchy.

``InputError`` subclasses mean the user supplied something mathematically
inadmissible.  ``InvariantViolation`` subclasses mean a check that theory
guarantees has failed, i.e. a bug.  The CLI maps them to exit codes 1 and 2.
"""


class LieObsError(Exception):
    pass


class InputError(LieObsError):
    pass


class InvariantViolation(LieObsError):
    pass


class InvalidAlgebra(InputError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid Lie algebra: {report.summary()}")


class NotCentral(InputError):
    pass


class DegreeOverflow(InputError):
    pass


class NotFlat(InputError):
    def __init__(self, pair, defect):
        self.pair = pair
        self.defect = defect
        super().__init__(f"action is not flat on basis pair {pair}")


class NotCocycle(InputError):
    pass


class ModuleMismatch(InputError):
    pass


class NotIntertwining(InputError):
    def __init__(self, index, defect):
        self.index = index
        self.defect = defect
        super().__init__(f"map does not intertwine the actions of basis element {index}")


class NotInvertible(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotDerivation(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"representative {index} is not a derivation of the fiber")


class NotCouplingHomomorphism(InputError):
    def __init__(self, pair, defect, distance):
        self.pair = pair
        self.defect = defect
        self.distance = distance
        super().__init__(
            f"representatives {pair} violate the homomorphism condition modulo inner "
            f"derivations (outer part of the defect has {distance} nonzero coordinates)"
        )


class NotInner(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"shift {index} is not an inner derivation")


class ScalarsBothZero(InputError):
    pass


class BaseMismatch(InputError):
    pass


class ReferenceMismatch(InputError):
    pass


class SubspaceNotPreserved(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"derivation {index} does not preserve the subspace being factored out")


class CenterGrew(InputError):
    def __init__(self, expected, actual):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"center of the quotient has dimension {actual}, reference module has {expected}"
        )


class InternalCheckFailure(InvariantViolation):
    pass


class CurvatureNotInner(InvariantViolation):
    pass


class NoPreimage(InvariantViolation):
    pass


class NotClosed(InvariantViolation):
    pass


class IndependenceViolation(InvariantViolation):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class JacobiFailure(InvariantViolation):
    def __init__(self, triple, residual):
        self.triple = triple
        self.residual = residual
        super().__init__(f"Jacobi identity fails on {triple}")


class LinearityViolation(InvariantViolation):
    def __init__(self, class1, class2, class3, alpha, beta):
        self.classes = (class1, class2, class3)
        super().__init__(
            f"obstruction of the combination with ({alpha}, {beta}) is not the linear combination"
        )
