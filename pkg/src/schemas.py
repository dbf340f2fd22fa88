"""
Pydantic Schemas: input documents and command reports

Document = what the CLI reads, Report = what it writes.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, FiniteFloat, field_validator, model_validator

from src.config import settings
from src.enums import PRODUCTS_BY_CATEGORY, CategoryId, ProductKind

Entry = Tuple[FiniteFloat, FiniteFloat]


def _as_pairs(value):
    """Accept bare reals next to [re, im] pairs."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [value, 0.0]
    return value


# ============================================================
# DOCUMENT SCHEMAS
# ============================================================

class InstanceSpec(BaseModel):
    """Which monoidal category the document lives in."""
    category: CategoryId
    product: ProductKind
    tolerance: Optional[FiniteFloat] = None

    @model_validator(mode="after")
    def check_pairing(self):
        if self.product not in PRODUCTS_BY_CATEGORY[self.category]:
            raise ValueError(f"{self.category.value} has no {self.product.value} structure")
        if self.tolerance is not None and self.tolerance < 0:
            raise ValueError(f"tolerance must be nonnegative, got {self.tolerance}")
        return self


class ObjectSpec(BaseModel):
    name: str
    elements: Optional[List[str]] = None
    dim: Optional[int] = None
    product_of: Optional[Tuple[str, str]] = None

    @model_validator(mode="after")
    def check_payload(self):
        given = [k for k in ("elements", "dim", "product_of") if getattr(self, k) is not None]
        if len(given) != 1:
            raise ValueError(f"object {self.name!r} needs exactly one of elements, dim, product_of")
        if self.elements is not None:
            if len(set(self.elements)) != len(self.elements):
                raise ValueError(f"object {self.name!r} has duplicate elements")
            # "[..." is reserved for encoded tagged/paired elements.
            bad = [e for e in self.elements if e.startswith("[")]
            if bad:
                raise ValueError(f"element {bad[0]!r} of {self.name!r} may not start with '['")
        if self.dim is not None and not 0 <= self.dim <= settings.max_dim:
            raise ValueError(f"dimension of {self.name!r} must lie in 0..{settings.max_dim}, got {self.dim}")
        return self


class MorphismSpec(BaseModel):
    name: str
    dom: str
    cod: str
    table: Optional[Dict[str, str]] = None
    matrix: Optional[List[List[Entry]]] = None

    @field_validator("matrix", mode="before")
    @classmethod
    def normalize_entries(cls, value):
        if value is None:
            return value
        return [[_as_pairs(x) for x in row] if isinstance(row, list) else row for row in value]


class VectorSpec(BaseModel):
    name: str
    entries: List[Entry]

    @field_validator("entries", mode="before")
    @classmethod
    def normalize_entries(cls, value):
        return [_as_pairs(x) for x in value] if isinstance(value, list) else value


class SplitSpec(BaseModel):
    """
    A fixed split for decompose-par, entangled and coupling.

    dims: (d₁, d₂, d₁′, d₂′) for operators, (d₁, d₂) for states; for ⊕ the
    first pair splits the domain and the second the codomain. (finset, ×)
    splits name the factor objects and the witness isos instead.
    """
    name: str
    dims: Optional[List[int]] = None
    dom: Optional[Tuple[str, str]] = None
    cod: Optional[Tuple[str, str]] = None
    dom_iso: Optional[str] = None
    cod_iso: Optional[str] = None

    @model_validator(mode="after")
    def check_shape(self):
        if self.dims is not None:
            if len(self.dims) not in (2, 4) or min(self.dims) < 0:
                raise ValueError(f"split {self.name!r}: dims must be 2 or 4 nonnegative integers")
        else:
            missing = [k for k in ("dom", "cod", "dom_iso", "cod_iso") if getattr(self, k) is None]
            if missing:
                raise ValueError(f"split {self.name!r} needs dims, or dom, cod, dom_iso and cod_iso")
        return self


class Document(BaseModel):
    schema_version: Literal["1"]
    instance: InstanceSpec
    objects: List[ObjectSpec] = Field(default_factory=list)
    morphisms: List[MorphismSpec] = Field(default_factory=list)
    vectors: List[VectorSpec] = Field(default_factory=list)
    splits: List[SplitSpec] = Field(default_factory=list)

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def check_references(self):
        seen = set()
        for section in ("objects", "morphisms", "vectors", "splits"):
            for i, item in enumerate(getattr(self, section)):
                if item.name in seen:
                    raise ValueError(f"{section}[{i}]: duplicate name {item.name!r}")
                seen.add(item.name)

        is_vec = self.instance.category is CategoryId.VEC
        sizes: Dict[str, int] = {}
        for i, obj in enumerate(self.objects):
            where = f"objects[{i}]"
            if obj.product_of is not None:
                for part in obj.product_of:
                    if part not in sizes:
                        raise ValueError(f"{where}.product_of: unknown object {part!r} (declare it first)")
                a, b = (sizes[p] for p in obj.product_of)
                # the cap binds declared factors; products inherit their size
                joined = a + b if self.instance.product in (ProductKind.COPRODUCT, ProductKind.DIRECTSUM) else a * b
                sizes[obj.name] = joined
            elif is_vec:
                if obj.dim is None:
                    raise ValueError(f"{where}: vec objects are declared by dim")
                sizes[obj.name] = obj.dim
            else:
                if obj.elements is None:
                    raise ValueError(f"{where}: finset objects are declared by elements")
                sizes[obj.name] = len(obj.elements)

        for i, mor in enumerate(self.morphisms):
            where = f"morphisms[{i}]"
            for end in ("dom", "cod"):
                if getattr(mor, end) not in sizes:
                    raise ValueError(f"{where}.{end}: unknown object {getattr(mor, end)!r}")
            if is_vec:
                if mor.matrix is None or mor.table is not None:
                    raise ValueError(f"{where}: vec morphisms carry a matrix")
                rows, cols = sizes[mor.cod], sizes[mor.dom]
                if len(mor.matrix) != rows:
                    raise ValueError(f"{where}.matrix: expected {rows} row(s), got {len(mor.matrix)}")
                for r, row in enumerate(mor.matrix):
                    if len(row) != cols:
                        raise ValueError(f"{where}.matrix[{r}]: row has {len(row)} entries, expected {cols}")
            elif mor.table is None or mor.matrix is not None:
                raise ValueError(f"{where}: finset morphisms carry a table")

        morphism_names = {m.name for m in self.morphisms}
        for i, split in enumerate(self.splits):
            where = f"splits[{i}]"
            for part in (split.dom or ()) + (split.cod or ()):
                if part not in sizes:
                    raise ValueError(f"{where}: unknown object {part!r}")
            for iso in (split.dom_iso, split.cod_iso):
                if iso is not None and iso not in morphism_names:
                    raise ValueError(f"{where}: unknown morphism {iso!r}")
        return self


# ============================================================
# REPORT SCHEMAS
# ============================================================

class LawSummary(BaseModel):
    law_id: str
    trials: int
    passed: bool
    failures: int = 0
    max_deviation: Optional[float] = None
    first_failure: Optional[Dict[str, Any]] = None


class Report(BaseModel):
    """Result of one CLI command."""
    command: str
    instance: str
    morphism: Optional[str] = None
    policy: Optional[str] = None
    mode: Optional[str] = None
    verdict: Optional[str] = None
    passed: Optional[bool] = None
    values: Dict[str, Any] = Field(default_factory=dict)
    witnesses: Dict[str, Any] = Field(default_factory=dict)
    laws: List[LawSummary] = Field(default_factory=list)
    tolerance: float
    seed: Optional[int] = None
    timing_ms: Optional[float] = None
    dot: Optional[str] = None
    exit_code: int
