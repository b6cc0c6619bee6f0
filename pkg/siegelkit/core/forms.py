"""
Values of (1,1)-forms and residual helpers shared by every verifier.

A (1,1)-form ``alpha`` is evaluated on an ordered pair of tangent directions by
plugging ``X`` into the holomorphic slots and ``conj(Y)`` into the
antiholomorphic slots, with no antisymmetrization factor beyond the wedge
ordering. For example ``(i/2) dtau ^ dtau-bar`` evaluates to ``(i/2) X conj(Y)``.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict
from pydantic.functional_validators import field_validator


class Form11Value(BaseModel):
    """
    Value alpha(X, Y) of a (1,1)-form on an ordered pair of tangent directions.

    Attributes:
        value: The complex scalar alpha(X, Y).

    Example:
        >>> Form11Value(value=0.5j).divide_by_i()
        (0.5+0j)
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: complex

    @field_validator("value", mode="before")
    @classmethod
    def coerce_complex(cls, value: Any) -> complex:
        return complex(value)

    def __complex__(self) -> complex:
        return self.value

    def divide_by_i(self) -> complex:
        """Return alpha(X, Y) / sqrt(-1); real and positive for positive forms on X = Y."""
        return self.value / 1j

    def scaled(self, factor: complex) -> "Form11Value":
        return Form11Value(value=factor * self.value)


def relative_residual(lhs: complex, rhs: complex) -> float:
    """
    Relative deviation |lhs - rhs| / max(|lhs|, |rhs|), zero when both vanish.

    Example:
        >>> relative_residual(1.0, 1.0 + 1e-9) < 1e-8
        True
        >>> relative_residual(0.0, 0.0)
        0.0
    """
    scale = max(abs(lhs), abs(rhs))
    if scale == 0.0:
        return 0.0
    return float(abs(lhs - rhs) / scale)
