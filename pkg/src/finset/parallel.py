"""
Parallel decomposition of functions.

Over ⊕ a function splits along the connected components of its graph; over ×
the fixed-iso check reads the two factors off the transported table.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from src.config import settings
from src.core.morphisms import Morphism
from src.core.objects import Label, ObjectHandle
from src.core.outcome import PARALLEL, DecompositionOutcome, Witness, decide
from src.enums import Policy, Verdict
from src.errors import InstanceError, SizeError, WitnessError
from src.finset.instances import FinSetCoproduct, FinSetInstance, FinSetProduct
from src.finset.unionfind import DisjointSet

logger = logging.getLogger(__name__)

Block = Tuple[Tuple[Label, ...], Tuple[Label, ...]]


@dataclass(frozen=True)
class ComponentPartition:
    blocks: Tuple[Block, ...]
    isolated_cod: Tuple[Label, ...]

    @property
    def unit_count(self) -> int:
        return len(self.blocks) + len(self.isolated_cod)


def components(f: Morphism) -> ComponentPartition:
    """Connected components of the bipartite graph dom ⊔ cod with edges (a, f(a))."""
    if not isinstance(f.instance, FinSetInstance):
        raise InstanceError(f"components needs a finite-set morphism, got {f.instance_id}")
    A, B = f.dom, f.cod
    ds = DisjointSet(A.size + B.size)
    for i, y in enumerate(f.table):
        ds.merge(i, A.size + B.index[y])
    comp = ds.get_components()

    blocks = {}
    for i, x in enumerate(A.labels):
        blocks.setdefault(int(comp[i]), ([], []))[0].append(x)
    isolated = []
    for j, y in enumerate(B.labels):
        cid = int(comp[A.size + j])
        if cid in blocks:
            blocks[cid][1].append(y)
        else:
            isolated.append(y)
    ordered = tuple((tuple(d), tuple(c)) for d, c in blocks.values())
    return ComponentPartition(blocks=ordered, isolated_cod=tuple(isolated))


# ============================================================
# (finset, ⊕)
# ============================================================

def coproduct_violation(inst: FinSetInstance, witness: Witness, policy: Policy) -> Optional[str]:
    f1, f2 = witness.factors
    if inst.is_identity(f1) or inst.is_identity(f2):
        return "identity factor"
    if policy is Policy.PAPER_LITERAL:
        return None
    if min(f1.dom.size, f1.cod.size, f2.dom.size, f2.cod.size) == 0:
        return "factor with empty domain or codomain"
    if policy is Policy.NONDEGENERATE:
        return None
    if inst.is_iso(f1) or inst.is_iso(f2):
        return "bijective factor"
    return None


def coproduct_witness(f: Morphism, dom_parts: Tuple[set, set], cod_parts: Tuple[set, set]) -> Witness:
    """Restrictions of f to a two-sided split of dom and cod, with the retagging isos."""
    inst = f.instance
    A, B = f.dom, f.cod
    c1, c2 = (inst.obj(x for x in A.labels if x in part) for part in dom_parts)
    d1, d2 = (inst.obj(y for y in B.labels if y in part) for part in cod_parts)
    f1 = Morphism(c1, d1, table=tuple(f(x) for x in c1.labels))
    f2 = Morphism(c2, d2, table=tuple(f(x) for x in c2.labels))
    dom_iso = inst.relabel(inst.mproduct_obj(c1, c2), A, lambda t: t[0])
    cod_iso = inst.relabel(inst.mproduct_obj(d1, d2), B, lambda t: t[0])
    return Witness((f1, f2), (dom_iso, cod_iso), {"sizes": [c1.size, c2.size, d1.size, d2.size]})


def _split_key(f: Morphism, side1: List[Block], side2: List[Block]):
    def side_key(side):
        dom = [x for d, _ in side for x in d]
        dom.sort(key=f.dom.index.__getitem__)
        cod = [y for _, c in side for y in c]
        cod.sort(key=f.cod.index.__getitem__)
        return tuple((repr(x), repr(f(x))) for x in dom), tuple(map(repr, cod))

    k1, k2 = side_key(side1), side_key(side2)
    return (len(k1[0]), k1, k2)


def _coproduct_splits(f: Morphism, units: List[Block]) -> Iterator[Witness]:
    n = len(units)
    keyed = []
    for mask in range(1, (1 << n) - 1):
        side1 = [u for i, u in enumerate(units) if mask >> i & 1]
        side2 = [u for i, u in enumerate(units) if not mask >> i & 1]
        keyed.append((_split_key(f, side1, side2), side1, side2))
    keyed.sort(key=lambda item: item[0])
    logger.debug(f"enumerating {len(keyed)} coproduct splits")
    for _, side1, side2 in keyed:
        dom_parts = tuple({x for d, _ in side for x in d} for side in (side1, side2))
        cod_parts = tuple({y for _, c in side for y in c} for side in (side1, side2))
        yield coproduct_witness(f, dom_parts, cod_parts)


def par_decompose_coproduct(f: Morphism, policy: Policy = Policy.NONDEGENERATE,
                            max_units: Optional[int] = None) -> DecompositionOutcome:
    """
    Split f as f₁ ⊕ f₂ up to the retagging isos.

    Units are the component blocks plus isolated codomain elements; every
    assignment of units to two nonempty sides is a candidate, visited in
    (|C₁|, factor table) order.
    """
    inst = f.instance
    if not isinstance(inst, FinSetCoproduct):
        raise InstanceError(f"coproduct decomposition needs (finset, coproduct), got {f.instance_id}")
    policy = Policy.parse(policy)
    partition = components(f)
    units = list(partition.blocks) + [((), (y,)) for y in partition.isolated_cod]
    cap = settings.max_split_units if max_units is None else max_units
    if len(units) > cap:
        raise SizeError(f"{len(units)} split units exceed the cap of {cap}")

    outcome = decide(f, policy, PARALLEL, _coproduct_splits(f, units),
                     lambda w: coproduct_violation(inst, w, policy))
    outcome.details.setdefault("blocks", len(partition.blocks))
    outcome.details.setdefault("isolated", len(partition.isolated_cod))
    return outcome


# ============================================================
# (finset, ×)
# ============================================================

def product_violation(inst: FinSetInstance, witness: Witness, policy: Policy) -> Optional[str]:
    f1, f2 = witness.factors
    if inst.is_identity(f1) or inst.is_identity(f2):
        return "identity factor"
    if policy is Policy.PAPER_LITERAL:
        return None
    if min(f1.dom.size, f1.cod.size, f2.dom.size, f2.cod.size) < 2:
        return "factor object with fewer than two elements"
    if policy is Policy.NONDEGENERATE:
        return None
    if inst.is_iso(f1) or inst.is_iso(f2):
        return "bijective factor"
    return None


def _check_witness_iso(inst: FinSetProduct, iso: Morphism, dom: ObjectHandle,
                       cod: ObjectHandle, label: str) -> None:
    inst.owns(iso)
    if iso.dom != dom or iso.cod != cod:
        raise WitnessError(f"{label} must map {dom} to {cod}, got {iso.dom} -> {iso.cod}")
    if inst.inverse(iso) is None:
        raise WitnessError(f"{label} is not a bijection")


def _read_factors(g: Morphism, c1, c2, d1, d2):
    """Factors of g: C₁×C₂ → D₁×D₂ as a product map, or a reason string."""
    if not g.dom.size:
        if (c1.size and not d1.size) or (c2.size and not d2.size):
            return "no function into an empty factor"
        return (
            Morphism(c1, d1, table=tuple(d1.labels[0] for _ in c1.labels)),
            Morphism(c2, d2, table=tuple(d2.labels[0] for _ in c2.labels)),
        )
    first, second = {}, {}
    for (x1, x2), (y1, y2) in zip(g.dom.labels, g.table):
        if first.setdefault(x1, y1) != y1:
            return f"first output depends on the second input at {x1!r}"
        if second.setdefault(x2, y2) != y2:
            return f"second output depends on the first input at {x2!r}"
    return Morphism.from_mapping(c1, d1, first), Morphism.from_mapping(c2, d2, second)


def par_check_product(f: Morphism, split_dom: Tuple[ObjectHandle, ObjectHandle],
                      split_cod: Tuple[ObjectHandle, ObjectHandle], dom_iso: Morphism,
                      cod_iso: Morphism, policy: Policy = Policy.NONDEGENERATE) -> DecompositionOutcome:
    """Decomposition square over × with the isos fixed by the caller."""
    inst = f.instance
    if not isinstance(inst, FinSetProduct):
        raise InstanceError(f"product check needs (finset, product), got {f.instance_id}")
    policy = Policy.parse(policy)
    c1, c2 = split_dom
    d1, d2 = split_cod
    inst.owns(c1, c2, d1, d2)
    _check_witness_iso(inst, dom_iso, inst.mproduct_obj(c1, c2), f.dom, "dom_iso")
    _check_witness_iso(inst, cod_iso, inst.mproduct_obj(d1, d2), f.cod, "cod_iso")

    transported = inst.compose(inst.inverse(cod_iso), inst.compose(f, dom_iso))
    factors = _read_factors(transported, c1, c2, d1, d2)
    if isinstance(factors, str):
        return DecompositionOutcome(Verdict.NOT_DECOMPOSABLE, policy, PARALLEL,
                                    details={"reason": factors})
    isos = (dom_iso, cod_iso)
    if inst.is_identity(f):
        return DecompositionOutcome(Verdict.NOT_DECOMPOSABLE, policy, PARALLEL, factors, isos,
                                    {"reason": "identity morphism"})
    if not transported.dom.size:
        return DecompositionOutcome(Verdict.DEGENERATE_ONLY, policy, PARALLEL, factors, isos,
                                    {"reason": "empty product domain"})
    reason = product_violation(inst, Witness(factors, isos), policy)
    verdict = Verdict.DECOMPOSABLE if reason is None else Verdict.DEGENERATE_ONLY
    details = {} if reason is None else {"reason": reason}
    return DecompositionOutcome(verdict, policy, PARALLEL, factors, isos, details)
