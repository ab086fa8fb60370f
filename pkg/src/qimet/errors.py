"""Exception types raised across the package."""


class MetricSpaceError(ValueError):
    """Base class for malformed distance matrices and generator parameters."""


class AsymmetricMatrix(MetricSpaceError):
    pass


class NegativeEntry(MetricSpaceError):
    pass


class ZeroOffDiagonal(MetricSpaceError):
    pass


class TriangleViolation(MetricSpaceError):
    """Raised with every violated triple ``(i, j, k)``, meaning
    ``d[i, j] > d[i, k] + d[k, j]`` beyond the tolerance, ``i < j``."""

    def __init__(self, triples):
        self.triples = [tuple(int(v) for v in t) for t in triples]
        i, j, k = self.triples[0]
        more = len(self.triples) - 1
        msg = f"triangle inequality violated at ({i}, {j}, {k})"
        if more:
            msg += f" and {more} other triple(s)"
        super().__init__(msg)


class NonpositiveAlpha(MetricSpaceError):
    pass


class BadExponent(MetricSpaceError):
    pass


class SizeMismatch(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """The exhaustive search would need more evaluations than allowed."""

    def __init__(self, required, cap):
        self.required = int(required)
        self.cap = int(cap)
        super().__init__(f"search needs {self.required} evaluations, cap is {self.cap}")
