"""Exception types shared across the package."""


class Pd3Error(Exception):
    """Base class for all errors raised by this package."""


class UnknownSymbol(Pd3Error):
    """A word uses a generator that does not exist in the group."""


class ContextMismatch(Pd3Error):
    """Two values living over different groups were combined."""


class InfiniteEnumeration(Pd3Error):
    """Full enumeration was requested for an infinite group."""


class InfiniteGroup(Pd3Error):
    """An operation requiring a finite group was applied to an infinite one."""


class ElementSyntaxError(Pd3Error):
    """A word or ring-element string failed to parse.

    ``pos`` is the character offset of the failure in the input string.
    """

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class NotACycle(Pd3Error):
    """A top cell was attached along a chain whose boundary is nonzero.

    ``residual`` holds the nonzero boundary so the failure is reproducible.
    """

    def __init__(self, residual):
        super().__init__(f"attaching chain is not a cycle; boundary = {residual}")
        self.residual = residual


class NotInvertible(Pd3Error):
    """A basis-change matrix has no two-sided inverse over the group ring."""


class NotAComplex(Pd3Error):
    """Consecutive differentials do not compose to zero."""


class GroupTooLarge(Pd3Error):
    """Bar-resolution homology was requested beyond the supported size."""


class UnknownArtifact(Pd3Error):
    """A catalog lookup used a name that is not shipped."""


class UnknownCheck(Pd3Error):
    """A verification run referenced a check id that does not exist."""
