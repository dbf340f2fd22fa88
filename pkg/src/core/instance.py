"""
The monoidal-instance contract: a category paired with one monoidal
structure. finset and linvec provide the concrete instances.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core.morphisms import Morphism
from src.core.objects import ObjectHandle
from src.enums import CategoryId, IsoKind, ProductKind
from src.errors import CompositionError, InstanceError


@dataclass(frozen=True)
class StructuralIso:
    kind: IsoKind
    forward: Morphism
    backward: Morphism


class EmptyHomSet(Exception):
    """hom(A, B) has no elements (nonempty A, empty B)."""


class MonoidalInstance(ABC):
    category: CategoryId
    product: ProductKind

    def __init__(self, tolerance: float = 0.0):
        if tolerance < 0:
            raise InstanceError(f"tolerance must be nonnegative, got {tolerance}")
        self.tolerance = float(tolerance)

    @property
    def instance_id(self) -> str:
        return f"{self.category.value}/{self.product.value}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}(tolerance={self.tolerance})"

    # ---- objects -------------------------------------------------------

    @property
    @abstractmethod
    def unit(self) -> ObjectHandle:
        ...

    @abstractmethod
    def mproduct_obj(self, a: ObjectHandle, b: ObjectHandle) -> ObjectHandle:
        ...

    # ---- morphisms -----------------------------------------------------

    @abstractmethod
    def identity(self, a: ObjectHandle) -> Morphism:
        ...

    @abstractmethod
    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """g after f."""

    @abstractmethod
    def mproduct_mor(self, f: Morphism, g: Morphism) -> Morphism:
        ...

    @abstractmethod
    def associator(self, a: ObjectHandle, b: ObjectHandle, c: ObjectHandle) -> Morphism:
        """(A⊗B)⊗C → A⊗(B⊗C)."""

    @abstractmethod
    def left_unitor(self, a: ObjectHandle) -> Morphism:
        """I⊗A → A."""

    @abstractmethod
    def right_unitor(self, a: ObjectHandle) -> Morphism:
        """A⊗I → A."""

    @abstractmethod
    def inverse(self, f: Morphism) -> Optional[Morphism]:
        ...

    # ---- comparison ----------------------------------------------------

    @abstractmethod
    def deviation(self, f: Morphism, g: Morphism) -> float:
        """Distance between parallel morphisms; inf when endpoints differ."""

    def equal(self, f: Morphism, g: Morphism) -> bool:
        return self.deviation(f, g) <= self.tolerance

    def is_identity(self, f: Morphism) -> bool:
        return f.dom == f.cod and self.equal(f, self.identity(f.dom))

    def is_iso(self, f: Morphism) -> bool:
        return self.inverse(f) is not None

    @abstractmethod
    def is_split_mono(self, f: Morphism) -> bool:
        ...

    @abstractmethod
    def is_split_epi(self, f: Morphism) -> bool:
        ...

    @abstractmethod
    def is_null(self, f: Morphism) -> bool:
        """Empty-domain function or zero matrix: the degenerate processes."""

    # ---- states --------------------------------------------------------

    @abstractmethod
    def state_embed(self, a: ObjectHandle, point) -> Morphism:
        ...

    @abstractmethod
    def state_extract(self, f: Morphism):
        ...

    # ---- sampling ------------------------------------------------------

    @abstractmethod
    def sample_object(self, rng: np.random.Generator, size: int) -> ObjectHandle:
        ...

    @abstractmethod
    def sample_morphism(self, rng: np.random.Generator, dom: ObjectHandle,
                        cod: ObjectHandle) -> Morphism:
        """Raises EmptyHomSet when no morphism dom → cod exists."""

    # ---- shared checks -------------------------------------------------

    def owns(self, *items) -> None:
        for item in items:
            if item.instance_id != self.instance_id:
                raise InstanceError(f"{item} belongs to {item.instance_id}, not {self.instance_id}")

    def check_composable(self, g: Morphism, f: Morphism) -> None:
        self.owns(f, g)
        if f.cod != g.dom:
            raise CompositionError(
                f"cannot compose {g.name or 'g'} after {f.name or 'f'}: "
                f"cod {f.cod} differs from dom {g.dom}"
            )
