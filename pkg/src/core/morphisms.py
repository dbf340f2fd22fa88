"""
Morphisms: total function tables between finite sets, or dense complex
matrices of shape (dim cod, dim dom). Values are immutable after construction.
"""

from dataclasses import dataclass, replace
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from src.core.objects import Label, ObjectHandle
from src.errors import InstanceError


@dataclass(frozen=True, eq=False)
class Morphism:
    dom: ObjectHandle
    cod: ObjectHandle
    table: Optional[Tuple[Label, ...]] = None
    matrix: Optional[np.ndarray] = None
    name: Optional[str] = None

    def __post_init__(self):
        if self.dom.instance_id != self.cod.instance_id:
            raise InstanceError(
                f"dom and cod of {self.name or 'morphism'} belong to different instances "
                f"({self.dom.instance_id} vs {self.cod.instance_id})"
            )
        if self.dom.is_set:
            if self.table is None or self.matrix is not None:
                raise ValueError("finite-set morphisms carry a function table")
            table = tuple(self.table)
            if len(table) != self.dom.size:
                raise ValueError(
                    f"table of {self.name or 'morphism'} has {len(table)} entries, "
                    f"domain has {self.dom.size} elements"
                )
            for x, y in zip(self.dom.labels, table):
                if y not in self.cod:
                    raise ValueError(f"{x!r} maps to {y!r}, which is not an element of the codomain")
            object.__setattr__(self, "table", table)
        else:
            if self.matrix is None or self.table is not None:
                raise ValueError("vector-space morphisms carry a matrix")
            m = np.array(self.matrix, dtype=np.complex128)
            if m.ndim != 2 or m.shape != (self.cod.dim, self.dom.dim):
                raise ValueError(
                    f"matrix of {self.name or 'morphism'} has shape {m.shape}, "
                    f"expected {(self.cod.dim, self.dom.dim)}"
                )
            if not np.all(np.isfinite(m)):
                raise ValueError(f"matrix of {self.name or 'morphism'} has non-finite entries")
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)

    @classmethod
    def from_mapping(cls, dom: ObjectHandle, cod: ObjectHandle,
                     mapping: Mapping[Label, Label], name: Optional[str] = None) -> "Morphism":
        missing = [x for x in dom.labels if x not in mapping]
        if missing:
            raise ValueError(f"table is not total: no image for {missing[0]!r}")
        extra = [x for x in mapping if x not in dom]
        if extra:
            raise ValueError(f"table maps {extra[0]!r}, which is not an element of the domain")
        return cls(dom, cod, table=tuple(mapping[x] for x in dom.labels), name=name)

    @classmethod
    def from_function(cls, dom: ObjectHandle, cod: ObjectHandle,
                      fn: Callable[[Label], Label], name: Optional[str] = None) -> "Morphism":
        return cls(dom, cod, table=tuple(fn(x) for x in dom.labels), name=name)

    @property
    def instance(self):
        return self.dom.instance

    @property
    def instance_id(self) -> str:
        return self.dom.instance_id

    @property
    def is_table(self) -> bool:
        return self.table is not None

    def __call__(self, x: Label) -> Label:
        return self.table[self.dom.index[x]]

    def mapping(self) -> Dict[Label, Label]:
        return dict(zip(self.dom.labels, self.table))

    def image(self) -> Tuple[Label, ...]:
        """Image elements in codomain order."""
        hit = set(self.table)
        return tuple(y for y in self.cod.labels if y in hit)

    def named(self, name: Optional[str]) -> "Morphism":
        return replace(self, name=name)

    def __repr__(self) -> str:
        body = self.mapping() if self.is_table else self.matrix.tolist()
        return f"Morphism({self.name or ''}: {self.dom} -> {self.cod}, {body})"
