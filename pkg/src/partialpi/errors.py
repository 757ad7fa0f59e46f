"""Exception hierarchy for the partialpi engine."""


class PartialPiError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(PartialPiError):
    """Base class for configured-limit violations."""


class ClosureCapExceeded(CapExceeded):
    """Generating set closes to more elements than the closure cap allows."""


class IsoCapExceeded(CapExceeded):
    """Isomorphism test requested on groups above the iso cap."""


class LatticeCapExceeded(CapExceeded):
    """Subgroup-lattice enumeration requested above the lattice cap."""


class SeriesCapExceeded(CapExceeded):
    """Chief-series enumeration would exceed the series cap."""


class ModuleCapExceeded(CapExceeded):
    """Module dimension above the submodule-enumeration cap."""


class ElementNotInGroup(PartialPiError):
    pass


class NotNormal(PartialPiError):
    pass


class NotChief(PartialPiError):
    """A claimed chief factor admits an intermediate normal subgroup."""


class BadAction(PartialPiError):
    """Semidirect-product action matrix is singular or has wrong order."""


class NoHallSubgroup(PartialPiError):
    """No subgroup of the full pi-part order exists."""


class NotPSoluble(PartialPiError):
    """p-rank requested for a group that is not p-soluble."""


class NotElementaryAbelian(PartialPiError):
    pass


class NotNormalized(PartialPiError):
    """Section is not normalized by the acting subgroup."""


class NotSemisimpleContext(PartialPiError):
    """Homogeneity requested without the coprime-action guarantee."""


class ActingGroupMismatch(PartialPiError):
    """Module operation on modules over different acting groups."""


class NotIrreducible(PartialPiError):
    pass


class HypothesisViolated(PartialPiError):
    """A lemma-level precondition does not hold for the given input."""


class BadParameter(PartialPiError):
    """Theorem parameter outside its admissible range."""


class UnknownLemma(PartialPiError):
    pass


class ParseError(PartialPiError):
    """Group definition file is malformed; carries line/column info."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class DegreeMismatch(ParseError):
    """Cycle notation references a point beyond the declared degree."""
