"""
Deliberately broken instances, used to show that each law check can fail.

FaultyInstance wraps a working instance and corrupts exactly one operation.
Corruptions only change entries when there is room to (a codomain with two
or more elements, a nonempty matrix), so a law check reports the fault on
the trials that draw such inputs.
"""

from typing import Optional

import numpy as np

from src.core.instance import MonoidalInstance
from src.core.morphisms import Morphism
from src.core.objects import ObjectHandle
from src.enums import Fault


def _perturb(f: Morphism) -> Morphism:
    """Change one entry: the first table value moves to the next codomain label, or M[0,0] += 1."""
    if f.is_table:
        if f.dom.size == 0 or f.cod.size < 2:
            return f
        labels = f.cod.labels
        shifted = labels[(f.cod.index[f.table[0]] + 1) % len(labels)]
        return Morphism(f.dom, f.cod, table=(shifted,) + f.table[1:], name=f.name)
    if f.matrix.size == 0:
        return f
    m = np.array(f.matrix)
    m[0, 0] += 1.0
    return Morphism(f.dom, f.cod, matrix=m, name=f.name)


def _permute_cod(f: Morphism, rotate: bool = False) -> Morphism:
    """Post-compose with a codomain permutation: swap of the first two points, or a cyclic shift."""
    n = f.cod.size
    if n < 2:
        return f
    perm = [(i + 1) % n for i in range(n)] if rotate else [1, 0] + list(range(2, n))
    if f.is_table:
        labels = f.cod.labels
        moved = {labels[i]: labels[perm[i]] for i in range(n)}
        return Morphism(f.dom, f.cod, table=tuple(moved[y] for y in f.table), name=f.name)
    rows = np.empty(n, dtype=int)
    rows[perm] = np.arange(n)
    return Morphism(f.dom, f.cod, matrix=f.matrix[rows], name=f.name)


class FaultyInstance(MonoidalInstance):
    def __init__(self, base: MonoidalInstance, fault: Fault):
        super().__init__(base.tolerance)
        self.base = base
        self.fault = Fault(fault)
        self.category = base.category
        self.product = base.product

    def __repr__(self) -> str:
        return f"FaultyInstance({self.base!r}, {self.fault.value})"

    @property
    def unit(self) -> ObjectHandle:
        return self.base.unit

    def mproduct_obj(self, a, b):
        return self.base.mproduct_obj(a, b)

    def identity(self, a: ObjectHandle) -> Morphism:
        out = self.base.identity(a)
        return _perturb(out) if self.fault is Fault.IDENTITY else out

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        out = self.base.compose(g, f)
        if self.fault is Fault.ASSOC and not (self.base.is_identity(g) or self.base.is_identity(f)):
            return _perturb(out)
        return out

    def mproduct_mor(self, f: Morphism, g: Morphism) -> Morphism:
        out = self.base.mproduct_mor(f, g)
        if self.fault is Fault.INTERCHANGE and not (self.base.is_identity(f) or self.base.is_identity(g)):
            return _perturb(out)
        return out

    def associator(self, a, b, c) -> Morphism:
        out = self.base.associator(a, b, c)
        if self.fault is Fault.NATURALITY_ALPHA:
            return _permute_cod(out)
        if self.fault is Fault.TRIANGLE and b == self.base.unit:
            return _permute_cod(out)
        if self.fault is Fault.PENTAGON:
            return _permute_cod(out, rotate=True)
        return out

    def left_unitor(self, a: ObjectHandle) -> Morphism:
        out = self.base.left_unitor(a)
        return _permute_cod(out) if self.fault is Fault.NATURALITY_LAMBDA else out

    def right_unitor(self, a: ObjectHandle) -> Morphism:
        out = self.base.right_unitor(a)
        return _permute_cod(out) if self.fault is Fault.NATURALITY_RHO else out

    def inverse(self, f: Morphism) -> Optional[Morphism]:
        return self.base.inverse(f)

    def deviation(self, f: Morphism, g: Morphism) -> float:
        return self.base.deviation(f, g)

    def is_identity(self, f: Morphism) -> bool:
        return self.base.is_identity(f)

    def is_split_mono(self, f: Morphism) -> bool:
        return self.base.is_split_mono(f)

    def is_split_epi(self, f: Morphism) -> bool:
        return self.base.is_split_epi(f)

    def is_null(self, f: Morphism) -> bool:
        return self.base.is_null(f)

    def state_embed(self, a, point) -> Morphism:
        return self.base.state_embed(a, point)

    def state_extract(self, f: Morphism):
        return self.base.state_extract(f)

    def sample_object(self, rng, size: int) -> ObjectHandle:
        return self.base.sample_object(rng, size)

    def sample_morphism(self, rng, dom, cod) -> Morphism:
        return self.base.sample_morphism(rng, dom, cod)
