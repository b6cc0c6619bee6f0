"""
JSON encodings of Siegel points, symplectic matrices and complex values.

Matrices are row-major nested lists of IEEE doubles. A Siegel point is encoded
as ``{"g": int, "tau_re": [[...]], "tau_im": [[...]]}`` and a symplectic matrix
as ``{"A": [[...]], "B": [[...]], "C": [[...]], "D": [[...]]}``.
"""

import json
from pathlib import Path
from typing import Any, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from ..exceptions import ConfigParseError
from .siegel import SiegelPoint, SymplecticMatrix, validate_siegel


class SiegelPointPayload(BaseModel):
    g: int
    tau_re: list[list[float]]
    tau_im: list[list[float]]

    def to_point(self) -> SiegelPoint:
        tau = np.array(self.tau_re, dtype=np.float64) + 1j * np.array(
            self.tau_im, dtype=np.float64
        )
        point = validate_siegel(tau)
        if point.g != self.g:
            raise ConfigParseError(f"Declared g={self.g} but tau is {point.g}x{point.g}")
        return point

    @classmethod
    def from_point(cls, point: SiegelPoint) -> "SiegelPointPayload":
        return cls(g=point.g, tau_re=point.real.tolist(), tau_im=point.imag.tolist())


class SymplecticMatrixPayload(BaseModel):
    A: list[list[float]]
    B: list[list[float]]
    C: list[list[float]]
    D: list[list[float]]

    def to_matrix(self) -> SymplecticMatrix:
        return SymplecticMatrix(g=len(self.A), A=self.A, B=self.B, C=self.C, D=self.D)

    @classmethod
    def from_matrix(cls, matrix: SymplecticMatrix) -> "SymplecticMatrixPayload":
        return cls(
            A=matrix.A.tolist(),
            B=matrix.B.tolist(),
            C=matrix.C.tolist(),
            D=matrix.D.tolist(),
        )


def _read_json(path: Union[str, Path]) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc


def load_siegel_point(path: Union[str, Path]) -> SiegelPoint:
    """
    Read a Siegel point from a JSON file.

    Raises:
        ConfigParseError: If the file cannot be read or does not match the encoding.
        NotSymmetric, ImaginaryPartNotPositiveDefinite: If the matrix is not in the Siegel space.
    """
    try:
        payload = SiegelPointPayload.model_validate(_read_json(path))
    except ValidationError as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    return payload.to_point()


def load_symplectic_matrix(path: Union[str, Path]) -> SymplecticMatrix:
    try:
        payload = SymplecticMatrixPayload.model_validate(_read_json(path))
    except ValidationError as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    return payload.to_matrix()


def dump_siegel_point(point: SiegelPoint) -> str:
    return SiegelPointPayload.from_point(point).model_dump_json()


def dump_symplectic_matrix(matrix: SymplecticMatrix) -> str:
    return SymplecticMatrixPayload.from_matrix(matrix).model_dump_json()


def complex_to_json(value: complex) -> dict[str, float]:
    return {"re": float(np.real(value)), "im": float(np.imag(value))}


def complex_matrix_to_json(matrix: np.ndarray) -> dict[str, list[list[float]]]:
    return {"re": np.real(matrix).tolist(), "im": np.imag(matrix).tolist()}


def parse_complex_vector(text: str) -> np.ndarray:
    """
    Parse ``"re,im;re,im;..."`` into a complex vector.

    Example:
        >>> parse_complex_vector("0.3,0;0,0.1")
        array([0.3+0.j , 0. +0.1j])
    """
    entries = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [part.strip() for part in chunk.split(",")]
        if len(parts) == 1:
            parts.append("0")
        if len(parts) != 2:
            raise ConfigParseError(f"Cannot parse complex entry {chunk!r}")
        try:
            entries.append(complex(float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ConfigParseError(f"Cannot parse complex entry {chunk!r}") from exc
    return np.array(entries, dtype=np.complex128)


def parse_characteristic(text: str) -> tuple[np.ndarray, np.ndarray]:
    """
    Parse ``"a1,a2;b1,b2"`` into the two real vectors of a theta characteristic.

    Example:
        >>> parse_characteristic("0.5,0;0,0")
        (array([0.5, 0. ]), array([0., 0.]))
    """
    halves = text.split(";")
    if len(halves) != 2:
        raise ConfigParseError(f"Characteristic must look like 'a;b', got {text!r}")
    try:
        a, b = (
            np.array([float(x) for x in half.split(",") if x.strip()], dtype=np.float64)
            for half in halves
        )
    except ValueError as exc:
        raise ConfigParseError(f"Cannot parse characteristic {text!r}") from exc
    return a, b
