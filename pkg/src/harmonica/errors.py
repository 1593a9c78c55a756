"""Exception hierarchy shared across the library.

Every domain error carries a machine-readable ``code`` and a ``payload``
dict so the command line layer can emit structured JSON on stderr.
"""


class HarmonicaError(Exception):
    """Base class for all domain errors raised by this library."""

    code = "Error"

    def __init__(self, message="", **payload):
        super().__init__(message or self.code)
        self.payload = dict(payload)

    def to_json(self):
        out = {"error": self.code, "message": str(self)}
        out.update(self.payload)
        return out


class DivisionByZero(HarmonicaError):
    code = "DivisionByZero"


class DenominatorDivisibleByP(HarmonicaError):
    code = "DenominatorDivisibleByP"


class DomainMismatch(HarmonicaError):
    code = "DomainMismatch"


class MalformedFacet(HarmonicaError):
    code = "MalformedFacet"


class DimensionMismatch(HarmonicaError):
    code = "DimensionMismatch"


class DegreeOutOfRange(HarmonicaError):
    code = "DegreeOutOfRange"


class NotACycle(HarmonicaError):
    code = "NotACycle"


class NotHarmonicComplex(HarmonicaError):
    """Raised when a unique-representative query hits a non-harmonic complex.

    Carries the diagnostic report so callers can see which statements failed.
    """

    code = "NotHarmonicComplex"

    def __init__(self, message="", report=None, **payload):
        super().__init__(message, **payload)
        self.report = report

    def to_json(self):
        out = super().to_json()
        if self.report is not None:
            out["report"] = self.report.to_json()
        return out


class InternalEquivalenceViolation(HarmonicaError):
    """The nine equivalent diagnostics disagreed: an implementation bug."""

    code = "InternalEquivalenceViolation"


class NoDecomposition(HarmonicaError):
    """Hodge decomposition does not exist; ``side`` names the failed half."""

    code = "NoDecomposition"

    def __init__(self, side, message="", **payload):
        super().__init__(message or f"decomposition fails on the {side} side",
                         side=side, **payload)
        self.side = side


class CapExceeded(HarmonicaError):
    code = "CapExceeded"

    def __init__(self, candidates, cap, message="", **payload):
        super().__init__(
            message or f"{candidates} candidate subsets exceed cap {cap}",
            candidates=candidates, cap=cap, **payload)
        self.candidates = candidates
        self.cap = cap


class NotARowBasis(HarmonicaError):
    code = "NotARowBasis"


class NotAColumnBasis(HarmonicaError):
    code = "NotAColumnBasis"


class NotASurface(HarmonicaError):
    code = "NotASurface"

    def __init__(self, condition, message="", **payload):
        super().__init__(message or f"surface check failed: {condition}",
                         condition=condition, **payload)
        self.condition = condition


class NonIntegerDivision(HarmonicaError):
    code = "NonIntegerDivision"


class TorsionObstruction(HarmonicaError):
    code = "TorsionObstruction"

    def __init__(self, p, message="", **payload):
        super().__init__(message or f"integral homology has {p}-torsion",
                         p=p, **payload)
        self.p = p
