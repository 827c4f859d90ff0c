"""Exception hierarchy. Every error carries an optional ``witness``."""


class FinlocError(Exception):
    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPoset(FinlocError):
    pass


class NotALattice(FinlocError):
    pass


class NotAFrame(FinlocError):
    pass


class NotALocalicMap(FinlocError):
    pass


class ShapeMismatch(FinlocError):
    pass


class UnknownElement(FinlocError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SizeGuardExceeded(FinlocError):
    pass


class InternalInvariantBroken(FinlocError):
    pass


class CategoryLawViolation(FinlocError):
    pass


class AssocViolation(CategoryLawViolation):
    pass


class IdentityViolation(CategoryLawViolation):
    pass


class FunctorLawViolation(FinlocError):
    pass


class UnknownObject(FinlocError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotColimiting(FinlocError):
    pass


class NotIdempotent(FinlocError):
    pass


class MissingProducts(FinlocError):
    pass


class MissingColimit(FinlocError):
    pass


class NotCloseable(FinlocError):
    pass


class UniverseTooSmall(FinlocError):
    pass


class NotATopology(FinlocError):
    pass


class ParseError(FinlocError):
    def __init__(self, message, line=0, col=0):
        super().__init__(f"{line}:{col}: {message}", witness=(line, col))
        self.line = line
        self.col = col


class UnknownCommand(FinlocError):
    pass


class NotStronglyHausdorff(FinlocError):
    pass
