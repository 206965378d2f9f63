"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI when it
emits ``{"error": code, "detail": ...}``.
"""


class HardyKernelError(Exception):
    code = "Error"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail


def _make(name, doc, base=HardyKernelError):
    cls = type(name, (base,), {"code": name, "__doc__": doc})
    return cls


ZeroPolynomial = _make("ZeroPolynomial", "Operation needs a nonzero polynomial.")
PoleHit = _make("PoleHit", "Evaluation point is (numerically) a pole.")
PoleOnCircle = _make("PoleOnCircle", "Function has a pole on the unit circle.")
PoleAtOrigin = _make("PoleAtOrigin", "Function has a pole at the origin.")
ZeroFunction = _make("ZeroFunction", "Function is identically zero.")
NotSmirnov = _make("NotSmirnov", "Function is outside the supported Smirnov class.")
NotHardy = _make("NotHardy", "Function is not in the Hardy space (pole in the closed disc).")
QuotientNotSmirnov = _make("QuotientNotSmirnov", "Quotient g/f_outer is not Smirnov.")
NotLogIntegrable = _make("NotLogIntegrable", "Modulus vanishes on too much of the grid.")
TruncationTooSmall = _make("TruncationTooSmall", "Grid or truncation order is too small.")
IllConditioned = _make("IllConditioned", "No clear spectral gap at the kernel threshold.")
GridMismatch = _make("GridMismatch", "Boundary grids of different sizes were combined.")
EmptyKernel = _make("EmptyKernel", "Numerical kernel is trivial.")
NotDivisible = _make("NotDivisible", "Inner function does not divide the vector.")
ZeroPivot = _make("ZeroPivot", "Pivot coordinate is identically zero.")
HypothesisFails = _make("HypothesisFails", "A hypothesis of the construction does not hold.")
ZeroInput = _make("ZeroInput", "Input vector is identically zero.")
InnerNotVanishing = _make("InnerNotVanishing", "Inner function must vanish at 0.")
NotInnerVanishing = _make("NotInnerVanishing", "Matrix inner function must vanish at 0.")
NotIsometric = _make("NotIsometric", "Matrix function is not isometric on the circle.")
DetNotInvertible = _make("DetNotInvertible", "Determinant is not bounded away from 0.")
FactorizationMismatch = _make("FactorizationMismatch", "Supplied factors do not reproduce the symbol.")
NotInner = _make("NotInner", "Supplied factor is not unitary on the circle.")
NotCyclicFlag = _make("NotCyclicFlag", "Function is not flagged cyclic.")
SchemaError = _make("SchemaError", "Catalog or JSON input is malformed.")
ParseError = _make("ParseError", "Expression could not be parsed.", SchemaError)
