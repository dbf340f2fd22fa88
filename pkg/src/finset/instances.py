"""
Finite sets with disjoint union (⊕) or cartesian product (×).

Coproduct elements are tagged (x, 1) / (x, 2); product elements are pairs in
row-major order. Both orders put the left factor first, so every structural
map is a plain retagging bijection.
"""

import logging
from typing import Callable, Iterable, Optional

import numpy as np

from src.core.instance import EmptyHomSet, MonoidalInstance
from src.core.morphisms import Morphism
from src.core.objects import Label, ObjectHandle
from src.enums import CategoryId, ProductKind
from src.errors import DomainError, InstanceError

logger = logging.getLogger(__name__)

PRODUCT_UNIT_LABEL = "*"


class FinSetInstance(MonoidalInstance):
    category = CategoryId.FINSET

    def __init__(self, tolerance: float = 0.0):
        if tolerance:
            raise InstanceError("finite-set instances compare exactly; tolerance must be 0")
        super().__init__(0.0)

    def obj(self, labels: Iterable[Label], name: Optional[str] = None) -> ObjectHandle:
        return ObjectHandle(self, labels=tuple(labels), name=name)

    def relabel(self, dom: ObjectHandle, cod: ObjectHandle,
                fn: Callable[[Label], Label], name: Optional[str] = None) -> Morphism:
        return Morphism.from_function(dom, cod, fn, name=name)

    def identity(self, a: ObjectHandle) -> Morphism:
        self.owns(a)
        return Morphism(a, a, table=a.labels)

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        self.check_composable(g, f)
        return Morphism(f.dom, g.cod, table=tuple(g(y) for y in f.table))

    def deviation(self, f: Morphism, g: Morphism) -> float:
        if f.dom != g.dom or f.cod != g.cod:
            return float("inf")
        return float(sum(1 for x, y in zip(f.table, g.table) if x != y))

    def is_identity(self, f: Morphism) -> bool:
        return f.dom == f.cod and f.table == f.dom.labels

    def inverse(self, f: Morphism) -> Optional[Morphism]:
        if f.dom.size != f.cod.size or len(set(f.table)) != len(f.table):
            return None
        back = {y: x for x, y in zip(f.dom.labels, f.table)}
        return Morphism.from_mapping(f.cod, f.dom, back)

    def is_injective(self, f: Morphism) -> bool:
        return len(set(f.table)) == len(f.table)

    def is_surjective(self, f: Morphism) -> bool:
        return len(set(f.table)) == f.cod.size

    def is_split_mono(self, f: Morphism) -> bool:
        # A retraction needs somewhere to send the unhit codomain points.
        return self.is_injective(f) and (f.dom.size > 0 or f.cod.size == 0)

    def is_split_epi(self, f: Morphism) -> bool:
        return self.is_surjective(f)

    def is_null(self, f: Morphism) -> bool:
        return f.dom.size == 0

    def sample_object(self, rng: np.random.Generator, size: int) -> ObjectHandle:
        return self.obj(range(size))

    def sample_morphism(self, rng: np.random.Generator, dom: ObjectHandle,
                        cod: ObjectHandle) -> Morphism:
        if dom.size and not cod.size:
            raise EmptyHomSet(f"no function from {dom} to the empty set")
        picks = rng.integers(0, max(cod.size, 1), size=dom.size)
        return Morphism(dom, cod, table=tuple(cod.labels[int(i)] for i in picks))

    def state_embed(self, a: ObjectHandle, point: Label) -> Morphism:
        if self.unit.size != 1:
            raise InstanceError(f"{self.instance_id} has no one-point unit; states are undefined")
        self.owns(a)
        if point not in a:
            raise DomainError(f"{point!r} is not an element of {a}")
        return Morphism(self.unit, a, table=(point,))

    def state_extract(self, f: Morphism) -> Label:
        if f.dom != self.unit or self.unit.size != 1:
            raise DomainError(f"state extraction needs a morphism out of the unit, got dom {f.dom}")
        return f.table[0]


class FinSetCoproduct(FinSetInstance):
    product = ProductKind.COPRODUCT

    @property
    def unit(self) -> ObjectHandle:
        return self.obj((), name="∅")

    def mproduct_obj(self, a: ObjectHandle, b: ObjectHandle) -> ObjectHandle:
        self.owns(a, b)
        return self.obj([(x, 1) for x in a.labels] + [(y, 2) for y in b.labels])

    def mproduct_mor(self, f: Morphism, g: Morphism) -> Morphism:
        self.owns(f, g)
        return Morphism(
            self.mproduct_obj(f.dom, g.dom),
            self.mproduct_obj(f.cod, g.cod),
            table=tuple((y, 1) for y in f.table) + tuple((y, 2) for y in g.table),
        )

    def associator(self, a, b, c) -> Morphism:
        dom = self.mproduct_obj(self.mproduct_obj(a, b), c)
        cod = self.mproduct_obj(a, self.mproduct_obj(b, c))

        def retag(x):
            inner, tag = x
            if tag == 2:
                return ((inner, 2), 2)
            element, side = inner
            return (element, 1) if side == 1 else ((element, 1), 2)

        return self.relabel(dom, cod, retag)

    def left_unitor(self, a: ObjectHandle) -> Morphism:
        return self.relabel(self.mproduct_obj(self.unit, a), a, lambda x: x[0])

    def right_unitor(self, a: ObjectHandle) -> Morphism:
        return self.relabel(self.mproduct_obj(a, self.unit), a, lambda x: x[0])


class FinSetProduct(FinSetInstance):
    product = ProductKind.PRODUCT

    @property
    def unit(self) -> ObjectHandle:
        return self.obj((PRODUCT_UNIT_LABEL,), name="1")

    def mproduct_obj(self, a: ObjectHandle, b: ObjectHandle) -> ObjectHandle:
        self.owns(a, b)
        return self.obj([(x, y) for x in a.labels for y in b.labels])

    def mproduct_mor(self, f: Morphism, g: Morphism) -> Morphism:
        self.owns(f, g)
        return Morphism(
            self.mproduct_obj(f.dom, g.dom),
            self.mproduct_obj(f.cod, g.cod),
            table=tuple((x, y) for x in f.table for y in g.table),
        )

    def associator(self, a, b, c) -> Morphism:
        dom = self.mproduct_obj(self.mproduct_obj(a, b), c)
        cod = self.mproduct_obj(a, self.mproduct_obj(b, c))
        return self.relabel(dom, cod, lambda x: (x[0][0], (x[0][1], x[1])))

    def left_unitor(self, a: ObjectHandle) -> Morphism:
        return self.relabel(self.mproduct_obj(self.unit, a), a, lambda x: x[1])

    def right_unitor(self, a: ObjectHandle) -> Morphism:
        return self.relabel(self.mproduct_obj(a, self.unit), a, lambda x: x[0])


def finset_instance(product: ProductKind) -> FinSetInstance:
    product = ProductKind(product)
    if product is ProductKind.COPRODUCT:
        return FinSetCoproduct()
    if product is ProductKind.PRODUCT:
        return FinSetProduct()
    raise InstanceError(f"finset has no {product.value} structure")
