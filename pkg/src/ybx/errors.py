"""Exception types raised across the package."""


class YBXError(ValueError):
    """Base class for every error raised by ybx."""


class NotAGroup(YBXError):
    pass


class NotAShelf(YBXError):
    pass


class NotLeftNonDegenerate(YBXError):
    pass


class NotASolution(YBXError):
    pass


class NotShelfHom(YBXError):
    pass


class CarrierMismatch(YBXError):
    pass


class PreconditionFailed(YBXError):
    """A documented hypothesis does not hold; ``condition`` names it."""

    def __init__(self, condition, witness=None):
        self.condition = condition
        self.witness = witness
        msg = condition if witness is None else f"{condition} (witness {witness})"
        super().__init__(msg)


class InvalidZParams(PreconditionFailed):
    pass


class NotPreLieBrace(YBXError):
    pass


class NotAbelian(YBXError):
    pass


class BulletIncompatible(YBXError):
    pass


class RelationFailed(YBXError):
    def __init__(self, relation, indices):
        self.relation = relation
        self.indices = indices
        super().__init__(f"relation {relation} fails at {indices}")


class AdmissibilityFailed(YBXError):
    def __init__(self, identity):
        self.identity = identity
        super().__init__(f"twist identity {identity} fails")


class DimMismatch(YBXError):
    pass


class DimNotSquare(YBXError):
    pass


class ParseError(YBXError):
    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SearchRefused(YBXError):
    """Brute-force search space exceeds the supported cap."""
