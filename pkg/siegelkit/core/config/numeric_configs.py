"""
Configuration classes for the numerical kernels.

This module defines the tunables of theta-series truncation, finite-difference
curvature stencils and torus quadrature. Every class is an immutable pydantic
model, so a configuration can be shared between threads and reused across
calls.
"""

import math
from typing import TYPE_CHECKING, Annotated

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic.functional_validators import field_validator

from ...exceptions import InvalidPolicy
from ...types import ComplexArray, RealArray

if TYPE_CHECKING:  # pragma: no cover
    from ..siegel import SiegelPoint


class TruncationPolicy(BaseModel):
    """
    Truncation policy for theta lattice sums.

    The lattice sum is restricted to the integer points inside an ellipsoid of
    whitened radius R, where R is the smallest radius whose Gaussian tail bound
    drops below ``epsilon``. The absolute truncation error is then at most
    ``epsilon * exp(pi * Im(z)^T (Im tau)^{-1} Im(z))``.

    Attributes:
        epsilon: Target tail bound relative to the Gaussian envelope, 0 < epsilon < 1.
        max_radius: Safety cap on the whitened ellipsoid radius.

    Example:
        >>> policy = TruncationPolicy(epsilon=1e-12)
        >>> policy.max_radius
        40.0
    """

    model_config = ConfigDict(frozen=True)

    epsilon: Annotated[float, Field(default=1e-14)]
    max_radius: Annotated[float, Field(default=40.0)]

    @field_validator("epsilon")
    @classmethod
    def check_epsilon(cls, value: float) -> float:
        """Validate that epsilon lies strictly between 0 and 1."""
        if not (0.0 < value < 1.0) or not math.isfinite(value):
            raise ValueError(f"epsilon must satisfy 0 < epsilon < 1, got {value}")
        return value

    @field_validator("max_radius")
    @classmethod
    def check_max_radius(cls, value: float) -> float:
        """Validate that the radius cap is positive and finite."""
        if not (value > 0.0) or not math.isfinite(value):
            raise ValueError(f"max_radius must be positive, got {value}")
        return value

    @classmethod
    def build(cls, epsilon: float = 1e-14, max_radius: float = 40.0) -> "TruncationPolicy":
        """
        Construct a policy, raising ``InvalidPolicy`` instead of a pydantic error.

        Raises:
            InvalidPolicy: If epsilon or max_radius is out of range.
        """
        try:
            return cls(epsilon=epsilon, max_radius=max_radius)
        except ValidationError as exc:
            raise InvalidPolicy(str(exc)) from exc

    def ensure_valid(self) -> None:
        """Re-check a policy that may have been built with ``model_construct``."""
        if not (0.0 < self.epsilon < 1.0) or not (self.max_radius > 0.0):
            raise InvalidPolicy(
                f"epsilon={self.epsilon}, max_radius={self.max_radius}"
            )


class FDConfig(BaseModel):
    """
    Finite-difference configuration for the complex Hessian stencil.

    Attributes:
        step: Real increment h applied along each complex direction.
        richardson: Combine steps h and h/step_ratio to cancel the O(h^2) error.
        step_ratio: Ratio between the coarse and fine step.
    """

    model_config = ConfigDict(frozen=True)

    step: Annotated[float, Field(default=1e-3, gt=0.0)]
    richardson: Annotated[bool, Field(default=True)]
    step_ratio: Annotated[float, Field(default=2.0, gt=1.0)]

    def with_step(self, step: float) -> "FDConfig":
        return self.model_copy(update={"step": step})


class QuadratureGrid(BaseModel):
    """
    Uniform grid on the real torus [0,1)^{2g}, realized as z = u + tau v.

    The invariant volume form of a principally polarized abelian variety has
    total mass one and is translation invariant, so in the (u, v) coordinates it
    is the uniform probability measure and every node carries the weight
    ``1 / n_per_dim^(2g)``.

    Attributes:
        g: Genus of the torus.
        n_per_dim: Number of nodes along each of the 2g real directions.

    Example:
        >>> grid = QuadratureGrid.default_for(1)
        >>> grid.n_per_dim, grid.size
        (64, 4096)
    """

    model_config = ConfigDict(frozen=True)

    g: Annotated[int, Field(ge=1)]
    n_per_dim: Annotated[int, Field(ge=1)]

    @classmethod
    def default_for(cls, g: int) -> "QuadratureGrid":
        """Default resolution: 64 nodes per direction for g=1, 24 for g=2."""
        return cls(g=g, n_per_dim=64 if g == 1 else 24)

    @property
    def size(self) -> int:
        return int(self.n_per_dim ** (2 * self.g))

    @property
    def weight(self) -> float:
        return 1.0 / self.size

    def unit_coordinates(self) -> tuple[RealArray, RealArray]:
        """Return the (u, v) node coordinates, each of shape (size, g)."""
        axis = np.arange(self.n_per_dim, dtype=np.float64) / self.n_per_dim
        mesh = np.meshgrid(*([axis] * (2 * self.g)), indexing="ij")
        flat = np.stack([m.reshape(-1) for m in mesh], axis=1)
        return flat[:, : self.g], flat[:, self.g :]

    def nodes(self, tau: "SiegelPoint") -> ComplexArray:
        """Return the complex nodes z = u + tau v, shape (size, g)."""
        u, v = self.unit_coordinates()
        return u.astype(np.complex128) + v @ tau.tau.T
