"""
Document parsing, serialization and instantiation.

Element labels are strings in documents. Elements of ⊕ / × objects are
tuples in memory and JSON arrays as text, e.g. ["a1", 1] or ["x", "y"].
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Union

import numpy as np
from pydantic import ValidationError

from src.config import settings
from src.core.instance import MonoidalInstance
from src.core.morphisms import Morphism
from src.core.objects import Label, ObjectHandle
from src.enums import CategoryId
from src.errors import DocumentError, McatError
from src.finset.instances import finset_instance
from src.linvec.instances import vec_instance
from src.schemas import Document, SplitSpec

logger = logging.getLogger(__name__)


def encode_label(label: Label) -> str:
    return label if isinstance(label, str) else json.dumps(label, ensure_ascii=False)


def _reject_constant(name: str):
    raise DocumentError(f"non-finite number {name} is not allowed")


def _path(loc) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out


def parse(text: Union[str, bytes]) -> Document:
    """Validated Document, or DocumentError naming the offending path."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DocumentError(f"document is not valid UTF-8 (byte {e.start})") from e
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    try:
        return Document.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        message = first["msg"].removeprefix("Value error, ")
        raise DocumentError(message, path=_path(first["loc"]) or None) from e


def serialize(doc: Document) -> str:
    return json.dumps(doc.model_dump(mode="json", exclude_none=True), indent=2,
                      sort_keys=True, ensure_ascii=False) + "\n"


# ============================================================
# WORKSPACE
# ============================================================

@dataclass
class Workspace:
    """A document instantiated against its monoidal instance."""
    document: Document
    instance: MonoidalInstance
    objects: Dict[str, ObjectHandle] = field(default_factory=dict)
    morphisms: Dict[str, Morphism] = field(default_factory=dict)
    vectors: Dict[str, np.ndarray] = field(default_factory=dict)
    splits: Dict[str, SplitSpec] = field(default_factory=dict)

    def morphism(self, name: str) -> Morphism:
        if name not in self.morphisms:
            raise DocumentError(f"unknown morphism {name!r}")
        return self.morphisms[name]

    def vector(self, name: str) -> np.ndarray:
        if name not in self.vectors:
            raise DocumentError(f"unknown vector {name!r}")
        return self.vectors[name]

    def split(self, name: str) -> SplitSpec:
        if name not in self.splits:
            raise DocumentError(f"unknown split {name!r}")
        return self.splits[name]


def resolve_tolerance(doc: Document, flag: Optional[float] = None) -> float:
    """Flag, then MCAT_TOLERANCE, then the document, then the default."""
    override = flag if flag is not None else settings.tolerance
    if doc.instance.category is CategoryId.FINSET:
        if override:
            logger.warning(f"tolerance {override} ignored: finite-set instances compare exactly")
        return 0.0
    for value in (override, doc.instance.tolerance):
        if value is not None:
            if value < 0:
                raise DocumentError(f"tolerance must be nonnegative, got {value}")
            return float(value)
    return settings.default_tolerance


def build_workspace(doc: Document, tolerance: Optional[float] = None) -> Workspace:
    tol = resolve_tolerance(doc, tolerance)
    if doc.instance.category is CategoryId.FINSET:
        inst = finset_instance(doc.instance.product)
    else:
        inst = vec_instance(doc.instance.product, tol)
    ws = Workspace(document=doc, instance=inst)

    for obj in doc.objects:
        if obj.product_of is not None:
            a, b = (ws.objects[p] for p in obj.product_of)
            handle = inst.mproduct_obj(a, b)
        elif obj.elements is not None:
            handle = inst.obj(obj.elements)
        else:
            handle = inst.obj(obj.dim)
        ws.objects[obj.name] = handle.named(obj.name)

    for i, spec in enumerate(doc.morphisms):
        dom, cod = ws.objects[spec.dom], ws.objects[spec.cod]
        try:
            if spec.table is not None:
                ws.morphisms[spec.name] = _table_morphism(dom, cod, spec.table, spec.name)
            else:
                matrix = np.array([[complex(re, im) for re, im in row] for row in spec.matrix],
                                  dtype=np.complex128).reshape(cod.dim, dom.dim)
                ws.morphisms[spec.name] = Morphism(dom, cod, matrix=matrix, name=spec.name)
        except McatError:
            raise
        except ValueError as e:
            raise DocumentError(str(e), path=f"morphisms[{i}]") from e

    for vec in doc.vectors:
        ws.vectors[vec.name] = np.array([complex(re, im) for re, im in vec.entries], dtype=np.complex128)
    ws.splits = {s.name: s for s in doc.splits}
    logger.info(f"built {inst.instance_id} workspace: {len(ws.objects)} object(s), "
                f"{len(ws.morphisms)} morphism(s)")
    return ws


def _table_morphism(dom: ObjectHandle, cod: ObjectHandle, table: Dict[str, str], name: str) -> Morphism:
    dom_labels = {encode_label(x): x for x in dom.labels}
    cod_labels = {encode_label(y): y for y in cod.labels}
    for key in table:
        if key not in dom_labels:
            raise ValueError(f"table maps {key!r}, which is not an element of {dom}")
    mapping = {}
    for key, x in dom_labels.items():
        if key not in table:
            raise ValueError(f"table is not total: no image for {key!r}")
        if table[key] not in cod_labels:
            raise ValueError(f"{key!r} maps to {table[key]!r}, which is not an element of {cod}")
        mapping[x] = cod_labels[table[key]]
    return Morphism.from_mapping(dom, cod, mapping, name=name)
