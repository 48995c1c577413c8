"""Exception hierarchy.

Every error carries a short stable ``code`` token which the CLI prints on
the error stream.
"""


class SympdetError(Exception):
    code = "ERROR"


class NumericalError(SympdetError):
    code = "NUMERICAL"


class NotPositiveDefinite(SympdetError):
    code = "NOT_PD"


class DegenerateSpectrum(SympdetError):
    code = "DEGENERATE"

    def __init__(self, message, groups=None):
        super().__init__(message)
        self.groups = groups


class DegenerateMode(DegenerateSpectrum):
    code = "DEGENERATE_MODE"


class PivotFailure(SympdetError):
    code = "PIVOT"


class NegativeNorm(SympdetError):
    code = "NEGATIVE_NORM"


class NotSymplectic(SympdetError):
    code = "NOT_SYMPLECTIC"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ZeroSymplecticEigenvalue(SympdetError):
    code = "ZERO_EIGENVALUE"


class DegeneracyNotBroken(SympdetError):
    code = "DEGENERACY_NOT_BROKEN"


class CertificationFailed(SympdetError):
    code = "CERTIFICATION"

    def __init__(self, message, residual_symp=None, residual_rec=None):
        super().__init__(message)
        self.residual_symp = residual_symp
        self.residual_rec = residual_rec


class ParseError(SympdetError):
    code = "PARSE"
