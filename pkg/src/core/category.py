"""
Category-level operations, dispatched to the instance that owns the inputs.
"""

from typing import Optional

from src.core.instance import StructuralIso
from src.core.morphisms import Morphism
from src.core.objects import ObjectHandle
from src.enums import IsoKind
from src.errors import InstanceError


def identity(a: ObjectHandle) -> Morphism:
    return a.instance.identity(a)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g ∘ f, read as "g after f"."""
    return f.instance.compose(g, f)


def mproduct_obj(a: ObjectHandle, b: ObjectHandle) -> ObjectHandle:
    a.instance.owns(b)
    return a.instance.mproduct_obj(a, b)


def mproduct_mor(f: Morphism, g: Morphism) -> Morphism:
    f.instance.owns(g)
    return f.instance.mproduct_mor(f, g)


def iso_check(f: Morphism) -> Optional[Morphism]:
    """Two-sided inverse of f, or None."""
    return f.instance.inverse(f)


def structural_iso(kind: IsoKind, a: ObjectHandle, b: Optional[ObjectHandle] = None,
                   c: Optional[ObjectHandle] = None) -> StructuralIso:
    """
    α_{A,B,C}, λ_A or ρ_A together with its inverse.

    Unitors take a single object; b and c are only read for the associator.
    """
    inst = a.instance
    kind = IsoKind(kind)
    if kind is IsoKind.ASSOCIATOR:
        if b is None or c is None:
            raise InstanceError("the associator needs three objects")
        inst.owns(b, c)
        forward = inst.associator(a, b, c)
    elif kind is IsoKind.LEFT_UNITOR:
        forward = inst.left_unitor(a)
    else:
        forward = inst.right_unitor(a)
    backward = inst.inverse(forward)
    if backward is None:
        raise InstanceError(f"{kind.value} at {a} is not invertible")
    return StructuralIso(kind=kind, forward=forward, backward=backward)


def state_embed(a: ObjectHandle, point) -> Morphism:
    return a.instance.state_embed(a, point)


def state_extract(f: Morphism):
    return f.instance.state_extract(f)
