"""
Machine-readable verification reports.
"""

import math
from typing import Annotated, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class VerificationReport(BaseModel):
    """
    Outcome of one identity over the configured genera and samples.

    ``pass`` holds exactly when ``max_residual <= tolerance``; a report whose
    identity raised carries ``max_residual = None``, the error text, and fails.

    Attributes:
        identity_name: Name of the verified identity.
        g: Largest genus exercised.
        samples: Random draws per genus.
        seed: Seed of the sampler.
        max_residual: Largest residual over all genera and draws.
        tolerance: Pass threshold.
        passed: Serialized as ``pass``.
        wall_time_ms: Elapsed wall-clock time.
        error: Exception summary when the identity could not be evaluated.

    Example:
        >>> report = VerificationReport.build("torsion", 2, 5, 7, 1e-16, 1e-13, 0.4)
        >>> report.passed
        True
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    identity_name: str
    g: Annotated[int, Field(ge=0)]
    samples: Annotated[int, Field(ge=0)]
    seed: Annotated[int, Field(ge=0)]
    max_residual: Optional[float]
    tolerance: Annotated[float, Field(ge=0.0)]
    passed: Annotated[bool, Field(alias="pass")]
    wall_time_ms: Annotated[float, Field(ge=0.0)]
    error: Optional[str] = None

    @model_validator(mode="after")
    def check_pass(self) -> "VerificationReport":
        expected = self.max_residual is not None and self.max_residual <= self.tolerance
        if self.passed != expected:
            raise ValueError("pass must equal max_residual <= tolerance")
        return self

    @classmethod
    def build(
        cls,
        identity_name: str,
        g: int,
        samples: int,
        seed: int,
        max_residual: Optional[float],
        tolerance: float,
        wall_time_ms: float,
        error: Optional[str] = None,
    ) -> "VerificationReport":
        if max_residual is not None:
            max_residual = float(max_residual)
        if max_residual is not None and not math.isfinite(max_residual):
            error = error or f"non-finite residual {max_residual}"
            max_residual = None
        return cls(
            identity_name=identity_name,
            g=g,
            samples=samples,
            seed=seed,
            max_residual=max_residual,
            tolerance=tolerance,
            passed=bool(max_residual is not None and max_residual <= tolerance),
            wall_time_ms=wall_time_ms,
            error=error,
        )

    def to_json_line(self, include_timing: bool = True) -> str:
        exclude = None if include_timing else {"wall_time_ms"}
        return self.model_dump_json(by_alias=True, exclude=exclude)
