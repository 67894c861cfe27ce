"""Schemas for extension and presentation files."""

from pathlib import Path
from typing import Any

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from henselkit.lib.errors import InputError

Scalar = str | int | float


def _text(value: Scalar) -> str:
    return str(value).strip()


class RealizationSchema(BaseModel):
    """Basis elements written as series in a stage with its own ramification."""

    ramification: list[int] = Field(..., description="Ramification per level of the realization")
    elements: list[str] = Field(..., description="One series literal per basis element")

    @field_validator("elements", mode="before")
    @classmethod
    def validate_elements(cls, v: list[Scalar]) -> list[str]:
        return [_text(x) for x in v]


class ExtensionSchema(BaseModel):
    """A finite free extension L/K."""

    name: str = Field("L", description="Display name of the extension")
    dim: int = Field(..., ge=1, description="Degree l of L over K")
    labels: list[str] | None = Field(None, description="Basis labels, b1..bl by default")
    base_level: int = Field(0, alias="baseLevel", ge=0, description="Height of K in the tower")
    ramification: list[int] = Field([1], description="Ramification of K per level")
    structure_constants: list[list[list[str]]] = Field(..., alias="structureConstants")
    derivation_matrix: list[list[str]] = Field(..., alias="derivationMatrix")
    basis_valuations: list[str] = Field(..., alias="basisValuations")
    unit: list[str] | None = Field(None, description="Coordinates of 1, (1, 0, ...) by default")
    realization: RealizationSchema | None = None
    separated: bool = False

    model_config = ConfigDict(populate_by_name=True)

    @field_validator("structure_constants", mode="before")
    @classmethod
    def validate_structure(cls, v: Any) -> Any:
        return [[[_text(x) for x in entry] for entry in row] for row in v]

    @field_validator("derivation_matrix", mode="before")
    @classmethod
    def validate_derivation(cls, v: Any) -> Any:
        return [[_text(x) for x in row] for row in v]

    @field_validator("basis_valuations", "unit", mode="before")
    @classmethod
    def validate_rows(cls, v: Any) -> Any:
        if v is None:
            return v
        return [_text(x) for x in v]

    @model_validator(mode="after")
    def validate_shape(self) -> "ExtensionSchema":
        size = self.dim
        if self.labels is not None and len(self.labels) != size:
            raise ValueError(f"expected {size} labels")
        if len(self.basis_valuations) != size:
            raise ValueError(f"expected {size} basis valuations")
        if self.realization is not None and len(self.realization.elements) != size:
            raise ValueError(f"expected {size} realized basis elements")
        return self

    @property
    def basis_labels(self) -> list[str]:
        return self.labels or [f"b{i + 1}" for i in range(self.dim)]


class PresentationSchema(BaseModel):
    """Generators, relations and an optional base point (a jet per generator)."""

    generators: list[str] = Field(..., description="Generator names x1..xm")
    relations: list[str] = Field(default_factory=list, description="Relation texts")
    base_point: dict[str, list[str]] | None = Field(None, alias="basePoint")

    model_config = ConfigDict(populate_by_name=True)

    @field_validator("generators")
    @classmethod
    def validate_generators(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("At least one generator must be declared")
        return [g.strip() for g in v]

    @field_validator("relations", mode="before")
    @classmethod
    def validate_relations(cls, v: Any) -> Any:
        return [_text(x) for x in v or []]

    @field_validator("base_point", mode="before")
    @classmethod
    def validate_base_point(cls, v: Any) -> Any:
        if v is None:
            return v
        return {
            name: [_text(x) for x in (jet if isinstance(jet, list) else [jet])]
            for name, jet in v.items()
        }


def read_document(path: str | Path) -> dict[str, Any]:
    """Load a YAML or JSON document (JSON is read as YAML)."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"File not found: {path}")
    try:
        with path.open() as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise InputError(f"Invalid YAML/JSON in {path}: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"{path} does not hold a mapping")
    return data


def load_extension_schema(path: str | Path) -> ExtensionSchema:
    data = read_document(path)
    try:
        return ExtensionSchema(**data)
    except ValidationError as e:
        raise InputError(f"Extension file {path} is invalid: {e}") from e


def load_presentation_schema(path: str | Path) -> PresentationSchema:
    data = read_document(path)
    try:
        return PresentationSchema(**data)
    except ValidationError as e:
        raise InputError(f"Presentation file {path} is invalid: {e}") from e


def save_document(data: dict[str, Any], path: str | Path) -> None:
    """Write a result document as YAML."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with path.open("w") as f:
            yaml.dump(data, f, default_flow_style=False, sort_keys=False, allow_unicode=True)
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e}") from e
