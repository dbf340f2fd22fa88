"""
Finite-dimensional complex vector spaces with ⊕ (direct sum) or ⊗ (tensor).

Objects are dimensions; basis order is left-factor-major, so the associators
and unitors of both structures are literally identity matrices.
"""

from typing import Optional

import numpy as np

from src.config import settings
from src.core.instance import MonoidalInstance
from src.core.morphisms import Morphism
from src.core.objects import ObjectHandle
from src.enums import CategoryId, ProductKind
from src.errors import DomainError, InstanceError, ShapeError, SingularityError
from src.linvec import kernel


class VecInstance(MonoidalInstance):
    category = CategoryId.VEC

    def __init__(self, tolerance: Optional[float] = None):
        super().__init__(settings.default_tolerance if tolerance is None else tolerance)

    def obj(self, dim: int, name: Optional[str] = None) -> ObjectHandle:
        return ObjectHandle(self, dim=dim, name=name)

    def morphism(self, matrix, dom: Optional[ObjectHandle] = None, cod: Optional[ObjectHandle] = None,
                 name: Optional[str] = None) -> Morphism:
        """Wrap a matrix; endpoints default to anonymous objects of matching dimension."""
        m = kernel.as_complex_matrix(matrix)
        dom = dom if dom is not None else self.obj(m.shape[1])
        cod = cod if cod is not None else self.obj(m.shape[0])
        return Morphism(dom, cod, matrix=m, name=name)

    def identity(self, a: ObjectHandle) -> Morphism:
        self.owns(a)
        return Morphism(a, a, matrix=np.eye(a.dim, dtype=np.complex128))

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        self.check_composable(g, f)
        return Morphism(f.dom, g.cod, matrix=g.matrix @ f.matrix)

    def deviation(self, f: Morphism, g: Morphism) -> float:
        if f.dom != g.dom or f.cod != g.cod:
            return float("inf")
        if f.matrix.size == 0:
            return 0.0
        scale = 1.0 + max(np.abs(f.matrix).max(), np.abs(g.matrix).max())
        return float(np.abs(f.matrix - g.matrix).max() / scale)

    def inverse(self, f: Morphism) -> Optional[Morphism]:
        if f.dom.dim != f.cod.dim:
            return None
        try:
            return Morphism(f.cod, f.dom, matrix=kernel.invert(f.matrix))
        except (SingularityError, ShapeError):
            return None

    def rank(self, f: Morphism) -> int:
        return kernel.numerical_rank(kernel.svd(f.matrix)[1])

    def is_split_mono(self, f: Morphism) -> bool:
        return self.rank(f) == f.dom.dim

    def is_split_epi(self, f: Morphism) -> bool:
        return self.rank(f) == f.cod.dim

    def is_null(self, f: Morphism) -> bool:
        return self.rank(f) == 0

    def sample_object(self, rng: np.random.Generator, size: int) -> ObjectHandle:
        return self.obj(size)

    def sample_morphism(self, rng: np.random.Generator, dom: ObjectHandle,
                        cod: ObjectHandle) -> Morphism:
        shape = (cod.dim, dom.dim)
        entries = rng.uniform(-1.0, 1.0, size=shape) + 1j * rng.uniform(-1.0, 1.0, size=shape)
        return Morphism(dom, cod, matrix=entries)

    def state_embed(self, a: ObjectHandle, point) -> Morphism:
        if self.unit.dim != 1:
            raise InstanceError(f"{self.instance_id} has a zero-dimensional unit; states are undefined")
        self.owns(a)
        v = np.asarray(point, dtype=np.complex128)
        if v.shape != (a.dim,):
            raise DomainError(f"state of length {v.shape} does not fit {a}")
        return Morphism(self.unit, a, matrix=v.reshape(a.dim, 1))

    def state_extract(self, f: Morphism) -> np.ndarray:
        if f.dom != self.unit or self.unit.dim != 1:
            raise DomainError(f"state extraction needs a morphism out of the unit, got dom {f.dom}")
        return np.array(f.matrix[:, 0])


class VecDirectSum(VecInstance):
    product = ProductKind.DIRECTSUM

    @property
    def unit(self) -> ObjectHandle:
        return self.obj(0, name="0")

    def mproduct_obj(self, a: ObjectHandle, b: ObjectHandle) -> ObjectHandle:
        self.owns(a, b)
        return self.obj(a.dim + b.dim)

    def mproduct_mor(self, f: Morphism, g: Morphism) -> Morphism:
        self.owns(f, g)
        out = np.zeros((f.cod.dim + g.cod.dim, f.dom.dim + g.dom.dim), dtype=np.complex128)
        out[:f.cod.dim, :f.dom.dim] = f.matrix
        out[f.cod.dim:, f.dom.dim:] = g.matrix
        return Morphism(self.mproduct_obj(f.dom, g.dom), self.mproduct_obj(f.cod, g.cod), matrix=out)

    def associator(self, a, b, c) -> Morphism:
        return self.identity(self.mproduct_obj(self.mproduct_obj(a, b), c))

    def left_unitor(self, a: ObjectHandle) -> Morphism:
        return self.identity(self.mproduct_obj(self.unit, a))

    def right_unitor(self, a: ObjectHandle) -> Morphism:
        return self.identity(self.mproduct_obj(a, self.unit))


class VecTensor(VecInstance):
    product = ProductKind.TENSOR

    @property
    def unit(self) -> ObjectHandle:
        return self.obj(1, name="ℂ")

    def mproduct_obj(self, a: ObjectHandle, b: ObjectHandle) -> ObjectHandle:
        self.owns(a, b)
        return self.obj(a.dim * b.dim)

    def mproduct_mor(self, f: Morphism, g: Morphism) -> Morphism:
        self.owns(f, g)
        return Morphism(self.mproduct_obj(f.dom, g.dom), self.mproduct_obj(f.cod, g.cod),
                        matrix=np.kron(f.matrix, g.matrix))

    def associator(self, a, b, c) -> Morphism:
        return self.identity(self.mproduct_obj(self.mproduct_obj(a, b), c))

    def left_unitor(self, a: ObjectHandle) -> Morphism:
        return self.identity(self.mproduct_obj(self.unit, a))

    def right_unitor(self, a: ObjectHandle) -> Morphism:
        return self.identity(self.mproduct_obj(a, self.unit))


def vec_instance(product: ProductKind, tolerance: Optional[float] = None) -> VecInstance:
    product = ProductKind(product)
    if product is ProductKind.DIRECTSUM:
        return VecDirectSum(tolerance)
    if product is ProductKind.TENSOR:
        return VecTensor(tolerance)
    raise InstanceError(f"vec has no {product.value} structure")
