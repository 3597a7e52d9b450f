"""Exception types shared across the package."""


class EqzetaError(ValueError):
    """Base class for all validation and consistency errors."""


class GroupError(EqzetaError):
    """Invalid group data: bad table, bad generators, order bound exceeded."""


class ActionError(EqzetaError):
    """An action table is not a homomorphism, not bijective, or a map
    fails the required equivariance/invariance."""


class RegularityError(EqzetaError):
    """A cellular action or cellular map violates regularity."""


class TableError(EqzetaError):
    """Lefschetz data admits no integer solution, or a classical
    Lefschetz sequence is not realizable."""


class StratumError(EqzetaError):
    """A stratum record fails its algebraic invariants."""


class DocumentError(EqzetaError):
    """An input document is malformed; the message carries a field path."""
