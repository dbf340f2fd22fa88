"""
Sampled verification of the category, functor and monoidal laws.

Every law is a trial body that draws inputs from a Chooser and returns
(label, left path, right path, inputs) comparisons. Each law draws from its
own stream, so a report depends only on (instance, spec, law).
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from src.core.instance import EmptyHomSet, MonoidalInstance
from src.core.morphisms import Morphism
from src.core.objects import ObjectHandle
from src.enums import LawId
from src.lawcheck.sampling import Chooser, SampleSpec, choosers

logger = logging.getLogger(__name__)

Comparison = Tuple[str, Morphism, Morphism, Sequence[Union[Morphism, ObjectHandle]]]
TrialBody = Callable[[MonoidalInstance, Chooser], List[Comparison]]


# ============================================================
# REPORTS
# ============================================================

class LawFailure(BaseModel):
    trial: int
    check: str
    inputs: List[str]
    left: str
    right: str
    # None when the two paths do not even share endpoints.
    deviation: Optional[float] = None


class LawReport(BaseModel):
    law_id: LawId
    instance: str
    trials: int
    failures: List[LawFailure] = Field(default_factory=list)
    max_deviation: Optional[float] = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


def describe(item: Union[Morphism, ObjectHandle]) -> str:
    if isinstance(item, ObjectHandle):
        return str(item.labels) if item.is_set else f"dim {item.dim}"
    head = f"{describe(item.dom)} -> {describe(item.cod)}"
    if item.is_table:
        return head + " {" + ", ".join(f"{x!r}: {y!r}" for x, y in zip(item.dom.labels, item.table)) + "}"
    body = np.array2string(item.matrix, precision=6, suppress_small=True, separator=",",
                           max_line_width=10 ** 6, threshold=10 ** 6)
    return f"{head} {body}"


# ============================================================
# TRIAL BODIES
# ============================================================

def _assoc(inst: MonoidalInstance, ch: Chooser) -> List[Comparison]:
    a, b, c, d = (ch.obj() for _ in range(4))
    f, g, h = ch.mor(a, b), ch.mor(b, c), ch.mor(c, d)
    left = inst.compose(h, inst.compose(g, f))
    right = inst.compose(inst.compose(h, g), f)
    return [("h∘(g∘f) = (h∘g)∘f", left, right, [f, g, h])]


def _identity(inst: MonoidalInstance, ch: Chooser) -> List[Comparison]:
    a, b = ch.obj(), ch.obj()
    f = ch.mor(a, b)
    return [
        ("id_B∘f = f", inst.compose(inst.identity(b), f), f, [f]),
        ("f∘id_A = f", inst.compose(f, inst.identity(a)), f, [f]),
    ]


def _interchange(inst: MonoidalInstance, ch: Chooser) -> List[Comparison]:
    a1, b1, c1, a2, b2, c2 = (ch.obj() for _ in range(6))
    f1, g1 = ch.mor(a1, b1), ch.mor(b1, c1)
    f2, g2 = ch.mor(a2, b2), ch.mor(b2, c2)
    left = inst.mproduct_mor(inst.compose(g1, f1), inst.compose(g2, f2))
    right = inst.compose(inst.mproduct_mor(g1, g2), inst.mproduct_mor(f1, f2))
    ids = inst.mproduct_mor(inst.identity(a1), inst.identity(a2))
    return [
        ("(g₁∘f₁)⊗(g₂∘f₂) = (g₁⊗g₂)∘(f₁⊗f₂)", left, right, [f1, g1, f2, g2]),
        ("id⊗id = id", ids, inst.identity(inst.mproduct_obj(a1, a2)), [a1, a2]),
    ]


def _naturality_alpha(inst: MonoidalInstance, ch: Chooser) -> List[Comparison]:
    a, b, c, a2, b2, c2 = (ch.obj() for _ in range(6))
    f, g, h = ch.mor(a, a2), ch.mor(b, b2), ch.mor(c, c2)
    left = inst.compose(inst.associator(a2, b2, c2), inst.mproduct_mor(inst.mproduct_mor(f, g), h))
    right = inst.compose(inst.mproduct_mor(f, inst.mproduct_mor(g, h)), inst.associator(a, b, c))
    return [("α∘((f⊗g)⊗h) = (f⊗(g⊗h))∘α", left, right, [f, g, h])]


def _naturality_lambda(inst: MonoidalInstance, ch: Chooser) -> List[Comparison]:
    a, b = ch.obj(), ch.obj()
    f = ch.mor(a, b)
    left = inst.compose(inst.left_unitor(b), inst.mproduct_mor(inst.identity(inst.unit), f))
    right = inst.compose(f, inst.left_unitor(a))
    return [("λ_B∘(id_I⊗f) = f∘λ_A", left, right, [f])]


def _naturality_rho(inst: MonoidalInstance, ch: Chooser) -> List[Comparison]:
    a, b = ch.obj(), ch.obj()
    f = ch.mor(a, b)
    left = inst.compose(inst.right_unitor(b), inst.mproduct_mor(f, inst.identity(inst.unit)))
    right = inst.compose(f, inst.right_unitor(a))
    return [("ρ_B∘(f⊗id_I) = f∘ρ_A", left, right, [f])]


def _triangle(inst: MonoidalInstance, ch: Chooser) -> List[Comparison]:
    a, b = ch.obj(), ch.obj()
    left = inst.compose(inst.mproduct_mor(inst.identity(a), inst.left_unitor(b)),
                        inst.associator(a, inst.unit, b))
    right = inst.mproduct_mor(inst.right_unitor(a), inst.identity(b))
    return [("(id⊗λ)∘α = ρ⊗id", left, right, [a, b])]


def _pentagon(inst: MonoidalInstance, ch: Chooser) -> List[Comparison]:
    a, b, c, d = (ch.obj() for _ in range(4))
    ab, bc, cd = inst.mproduct_obj(a, b), inst.mproduct_obj(b, c), inst.mproduct_obj(c, d)
    left = inst.compose(
        inst.mproduct_mor(inst.identity(a), inst.associator(b, c, d)),
        inst.compose(inst.associator(a, bc, d),
                     inst.mproduct_mor(inst.associator(a, b, c), inst.identity(d))),
    )
    right = inst.compose(inst.associator(a, b, cd), inst.associator(ab, c, d))
    return [("pentagon", left, right, [a, b, c, d])]


LAW_BODIES = {
    LawId.ASSOC: _assoc,
    LawId.IDENTITY: _identity,
    LawId.INTERCHANGE: _interchange,
    LawId.NATURALITY_ALPHA: _naturality_alpha,
    LawId.NATURALITY_LAMBDA: _naturality_lambda,
    LawId.NATURALITY_RHO: _naturality_rho,
    LawId.TRIANGLE: _triangle,
    LawId.PENTAGON: _pentagon,
}


# ============================================================
# RUNNERS
# ============================================================

def run_law(instance: MonoidalInstance, spec: SampleSpec, law_id: LawId) -> LawReport:
    law_id = LawId(law_id)
    body = LAW_BODIES[law_id]
    failures: List[LawFailure] = []
    trials = 0
    max_dev: Optional[float] = 0.0

    for chooser in choosers(instance, spec, law_id.ordinal):
        try:
            comparisons = body(instance, chooser)
        except EmptyHomSet:
            continue
        chooser.completed = True
        for label, left, right, inputs in comparisons:
            dev = instance.deviation(left, right)
            if not math.isfinite(dev):
                max_dev = None
            elif max_dev is not None:
                max_dev = max(max_dev, dev)
            if dev > instance.tolerance:
                failures.append(LawFailure(
                    trial=trials,
                    check=label,
                    inputs=[describe(x) for x in inputs],
                    left=describe(left),
                    right=describe(right),
                    deviation=dev if math.isfinite(dev) else None,
                ))
        trials += 1

    report = LawReport(law_id=law_id, instance=instance.instance_id, trials=trials,
                       failures=failures, max_deviation=max_dev)
    logger.info(f"{law_id.value} on {instance.instance_id}: {trials} trial(s), "
                f"{len(failures)} failure(s)")
    return report


def check_category(instance: MonoidalInstance, spec: SampleSpec) -> Tuple[LawReport, LawReport]:
    return run_law(instance, spec, LawId.ASSOC), run_law(instance, spec, LawId.IDENTITY)


def check_interchange(instance: MonoidalInstance, spec: SampleSpec) -> LawReport:
    return run_law(instance, spec, LawId.INTERCHANGE)


def check_naturality(instance: MonoidalInstance, spec: SampleSpec) -> Tuple[LawReport, LawReport, LawReport]:
    return (run_law(instance, spec, LawId.NATURALITY_ALPHA),
            run_law(instance, spec, LawId.NATURALITY_LAMBDA),
            run_law(instance, spec, LawId.NATURALITY_RHO))


def check_coherence(instance: MonoidalInstance, spec: SampleSpec) -> Tuple[LawReport, LawReport]:
    return run_law(instance, spec, LawId.TRIANGLE), run_law(instance, spec, LawId.PENTAGON)


def check_all(instance: MonoidalInstance, spec: SampleSpec) -> List[LawReport]:
    return [run_law(instance, spec, law) for law in LawId]
