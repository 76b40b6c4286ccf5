# iotmarket/numerics/numerics_exceptions.py
"""
Numerics Exceptions
-------------------

Errors raised by quadrature, root finding and monotonicity scans.
"""


class NumericsError(Exception):
    """Base numerics failure."""


class NonFiniteValueError(NumericsError):
    """Raised when a routine evaluates its function to inf or nan."""

    def __init__(self, abscissa: float, value: float, routine: str):
        self.abscissa = abscissa
        self.value = value
        super().__init__(f"{routine}: non-finite value {value} at x={abscissa!r}")


class QuadratureDepthError(NumericsError):
    """Raised when adaptive subdivision exceeds the configured depth."""

    def __init__(self, a: float, b: float, max_depth: int):
        self.interval = (a, b)
        super().__init__(f"integrate: max_depth={max_depth} exceeded on [{a!r}, {b!r}]")


class NoSignChangeError(NumericsError):
    """Raised when a root is requested on an interval without a sign change."""

    def __init__(self, a: float, b: float, fa: float, fb: float):
        self.bracket = (a, b)
        self.values = (fa, fb)
        super().__init__(
            f"find_root: no sign change on [{a!r}, {b!r}] (f(a)={fa!r}, f(b)={fb!r})"
        )
