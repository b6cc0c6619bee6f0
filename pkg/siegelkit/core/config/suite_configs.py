"""
Configuration for the batch verification suite.

The suite reads a single flat JSON document so that one checked-in file pins a
reproducible verification run.
"""

import json
from pathlib import Path
from typing import Annotated, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic.functional_validators import field_validator

from ...exceptions import ConfigParseError, UnknownIdentity

DEFAULT_IDENTITIES: tuple[str, ...] = (
    "norms",
    "torsion",
    "curvature:hodge",
    "curvature:theta-det",
    "curvature:c1",
    "curvature:c1-section",
    "curvature:root",
    "symplectic-invariance",
    "quasi-periodicity",
)

OPTIONAL_IDENTITIES: tuple[str, ...] = (
    "curvature:hodge-line",
    "spectral-torsion",
)

KNOWN_IDENTITIES: frozenset[str] = frozenset(DEFAULT_IDENTITIES + OPTIONAL_IDENTITIES)

DEFAULT_TOLERANCES: dict[str, float] = {
    "norms": 1e-6,
    "torsion": 1e-13,
    "curvature:hodge": 1e-6,
    "curvature:theta-det": 1e-6,
    "curvature:c1": 1e-9,
    "curvature:c1-section": 1e-6,
    "curvature:root": 1e-6,
    "curvature:hodge-line": 1e-6,
    "symplectic-invariance": 1e-6,
    "quasi-periodicity": 1e-10,
    "spectral-torsion": 1e-2,
}


class SuiteConfig(BaseModel):
    """
    Configuration for ``run_suite``.

    Attributes:
        identities: Identity names to verify, in report order.
        g_list: Genera to exercise; identities with a genus limit skip larger g.
        samples: Number of seeded random draws per identity and genus.
        seed: Seed of the deterministic sampler.
        tolerances: Per-identity pass threshold on the maximal residual.
        fd_step: Step of the finite-difference stencil.
        quadrature_n: Nodes per real direction of the torus quadrature, per genus.

    Example:
        >>> config = SuiteConfig(identities=["torsion"])
        >>> config.tolerance_for("torsion")
        1e-13
    """

    model_config = ConfigDict(frozen=True)

    identities: Annotated[list[str], Field(default_factory=lambda: list(DEFAULT_IDENTITIES))]
    g_list: Annotated[list[int], Field(default_factory=lambda: [1, 2])]
    samples: Annotated[int, Field(default=5, ge=1)]
    seed: Annotated[int, Field(default=20240601, ge=0)]
    tolerances: Annotated[dict[str, float], Field(default_factory=dict)]
    fd_step: Annotated[float, Field(default=1e-3, gt=0.0)]
    quadrature_n: Annotated[dict[int, int], Field(default_factory=lambda: {1: 64, 2: 24})]

    @field_validator("identities")
    @classmethod
    def check_identities(cls, values: list[str]) -> list[str]:
        """Validate that all identities are known."""
        for name in values:
            if name not in KNOWN_IDENTITIES:
                raise UnknownIdentity(f"Unknown identity: {name}")
        return values

    @field_validator("g_list")
    @classmethod
    def check_genera(cls, values: list[int]) -> list[int]:
        for g in values:
            if g < 1:
                raise ValueError(f"Genus must be positive, got {g}")
        return values

    def tolerance_for(self, identity: str) -> float:
        return self.tolerances.get(identity, DEFAULT_TOLERANCES[identity])

    def quadrature_n_for(self, g: int) -> int:
        return self.quadrature_n.get(g, 64 if g == 1 else 24)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SuiteConfig":
        """
        Load a suite configuration from a JSON document.

        Raises:
            ConfigParseError: If the file is missing, is not JSON, or fails validation.
            UnknownIdentity: If the document names an identity that does not exist.
        """
        try:
            raw = Path(path).read_text(encoding="utf-8")
            payload = json.loads(raw)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigParseError(f"{path}: {exc}") from exc
        if not isinstance(payload, dict):
            raise ConfigParseError(f"{path}: expected a JSON object")
        try:
            return cls.model_validate(payload)
        except ValidationError as exc:
            raise ConfigParseError(f"{path}: {exc}") from exc
