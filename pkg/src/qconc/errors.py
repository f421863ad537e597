"""Exception hierarchy shared by all qconc modules."""


class QconcError(Exception):
    """Base class for all library errors."""


class InvalidState(QconcError):
    """A matrix failed the density-operator checks (hermiticity, trace, positivity)."""


class NotAState(QconcError):
    """Bloch-style data does not assemble into a positive semidefinite operator."""


class NotNormalized(QconcError):
    """A state vector's norm deviates too far from one."""


class EigSolveFailure(QconcError):
    """The underlying eigensolver did not converge."""


class I3Mismatch(QconcError):
    """The two equivalent contractions for the third invariant disagree."""


class NotPure(QconcError):
    """Purity residuals are too large for a pure-state-only formula."""


class ReconstructionDegenerate(QconcError):
    """Measured polarizations sit on the degenerate set where the canonical
    rank-2 parameters cannot be recovered from ratios."""


class InvalidPurity(QconcError):
    """A purity value is outside the range attainable by the target family."""


class DomainError(QconcError):
    """A closed-form radicand is negative beyond numerical tolerance."""


class I1Zero(QconcError):
    """A formula that divides by the first invariant received I1 = 0."""


class Infeasible(QconcError):
    """Recovered mixing weights violate the simplex constraints."""
