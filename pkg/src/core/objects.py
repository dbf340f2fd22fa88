"""
Objects of a concrete monoidal instance.

An object is either a finite set with an explicit element order or a
nonnegative dimension. Handles compare by (instance id, payload); the
optional name is display-only.
"""

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import TYPE_CHECKING, Any, Dict, Hashable, Optional, Tuple

if TYPE_CHECKING:
    from src.core.instance import MonoidalInstance

Label = Hashable


@dataclass(frozen=True, eq=False)
class ObjectHandle:
    instance: "MonoidalInstance" = field(repr=False)
    labels: Optional[Tuple[Label, ...]] = None
    dim: Optional[int] = None
    name: Optional[str] = None

    def __post_init__(self):
        if (self.labels is None) == (self.dim is None):
            raise ValueError("an object carries either element labels or a dimension")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate element labels in object {self.name or labels!r}")
            object.__setattr__(self, "labels", labels)
        else:
            if int(self.dim) != self.dim or self.dim < 0:
                raise ValueError(f"dimension must be a nonnegative integer, got {self.dim!r}")
            object.__setattr__(self, "dim", int(self.dim))

    @property
    def instance_id(self) -> str:
        return self.instance.instance_id

    @property
    def is_set(self) -> bool:
        return self.labels is not None

    @property
    def size(self) -> int:
        return len(self.labels) if self.labels is not None else self.dim

    @cached_property
    def index(self) -> Dict[Label, int]:
        if self.labels is None:
            raise TypeError("dimension objects have no element index")
        return {label: i for i, label in enumerate(self.labels)}

    @property
    def key(self) -> Tuple[Any, ...]:
        return (self.instance_id, self.labels, self.dim)

    def named(self, name: Optional[str]) -> "ObjectHandle":
        return replace(self, name=name)

    def __contains__(self, label: Label) -> bool:
        return self.labels is not None and label in self.index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ObjectHandle):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        if self.name:
            return self.name
        if self.labels is not None:
            return "{" + ", ".join(map(repr, self.labels)) + "}"
        return f"dim {self.dim}"
