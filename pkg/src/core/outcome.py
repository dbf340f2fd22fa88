"""
Decomposition outcomes and the verdict ladder shared by every decomposition
procedure.

Ladder: an identity morphism is never decomposable; without a commuting
witness the verdict is not_decomposable; a witness that passes the requested
policy makes it decomposable; otherwise the best witness is reported as
degenerate_only.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

from src.core.morphisms import Morphism
from src.enums import Policy, Verdict

logger = logging.getLogger(__name__)

SEQUENTIAL = "sequential"
PARALLEL = "parallel"


@dataclass(frozen=True)
class Witness:
    factors: Tuple[Morphism, Morphism]
    witness_isos: Optional[Tuple[Morphism, Morphism]] = None
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class DecompositionOutcome:
    verdict: Verdict
    policy: Policy
    shape: str
    factors: Optional[Tuple[Morphism, Morphism]] = None
    witness_isos: Optional[Tuple[Morphism, Morphism]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def decomposable(self) -> bool:
        return self.verdict is Verdict.DECOMPOSABLE

    def replay_deviation(self, f: Morphism) -> float:
        """
        Deviation between the two paths of the witness diagram.

        Sequential: second ∘ first against f. Parallel: cod_iso ∘ (f₁⊗f₂)
        against f ∘ dom_iso.
        """
        if self.factors is None:
            raise ValueError("outcome carries no witness to replay")
        inst = f.instance
        first, second = self.factors
        if self.shape == SEQUENTIAL:
            return inst.deviation(inst.compose(second, first), f)
        dom_iso, cod_iso = self.witness_isos
        left = inst.compose(cod_iso, inst.mproduct_mor(first, second))
        right = inst.compose(f, dom_iso)
        return inst.deviation(left, right)

    def commutes(self, f: Morphism) -> bool:
        return self.replay_deviation(f) <= f.instance.tolerance


def decide(
    f: Morphism,
    policy: Policy,
    shape: str,
    candidates: Iterable[Witness],
    violation: Callable[[Witness], Optional[str]],
    absent_reason: str = "no commuting witness",
) -> DecompositionOutcome:
    """Walk candidates in tie-break order and apply the verdict ladder."""
    inst = f.instance
    if inst.is_identity(f):
        return DecompositionOutcome(Verdict.NOT_DECOMPOSABLE, policy, shape,
                                    details={"reason": "identity morphism"})
    best: Optional[Witness] = None
    best_reason: Optional[str] = None
    tried = 0
    for witness in candidates:
        tried += 1
        reason = violation(witness)
        if reason is None:
            logger.info(f"{shape} witness found for {f.name or 'morphism'} under {policy.value}")
            return DecompositionOutcome(Verdict.DECOMPOSABLE, policy, shape,
                                        witness.factors, witness.witness_isos,
                                        {**witness.details, "candidates_tried": tried})
        if best is None:
            best, best_reason = witness, reason
    if best is None:
        return DecompositionOutcome(Verdict.NOT_DECOMPOSABLE, policy, shape,
                                    details={"reason": absent_reason})
    return DecompositionOutcome(Verdict.DEGENERATE_ONLY, policy, shape,
                                best.factors, best.witness_isos,
                                {**best.details, "reason": best_reason, "candidates_tried": tried})


def sequential_violation(f: Morphism, witness: Witness, policy: Policy) -> Optional[str]:
    """Why a triangle f = second ∘ first fails the policy, or None."""
    inst = f.instance
    first, second = witness.factors
    if inst.is_identity(first) or inst.is_identity(second):
        return "identity factor"
    if policy is Policy.PAPER_LITERAL:
        return None
    if inst.is_null(f):
        return "null process (empty domain or zero map)"
    if inst.is_iso(first) or inst.is_iso(second):
        return "isomorphism factor"
    if policy is Policy.NONDEGENERATE:
        return None
    if inst.is_split_mono(first) or inst.is_split_epi(first):
        return "one-sided invertible first factor"
    if inst.is_split_mono(second) or inst.is_split_epi(second):
        return "one-sided invertible second factor"
    return None


def seq_verify(f: Morphism, first: Morphism, second: Morphism,
               policy: Policy = Policy.NONDEGENERATE) -> DecompositionOutcome:
    """Judge a caller-supplied triangle f = second ∘ first under the policy."""
    policy = Policy.parse(policy)
    inst = f.instance
    inst.owns(first, second)
    if first.dom != f.dom or second.cod != f.cod:
        return DecompositionOutcome(Verdict.NOT_DECOMPOSABLE, policy, SEQUENTIAL,
                                    details={"reason": "factor endpoints do not match f"})
    if inst.deviation(inst.compose(second, first), f) > inst.tolerance:
        return DecompositionOutcome(Verdict.NOT_DECOMPOSABLE, policy, SEQUENTIAL,
                                    details={"reason": "triangle does not commute"})
    witness = Witness((first, second), details={"intermediate": first.cod.size, "route": "supplied"})
    return decide(f, policy, SEQUENTIAL, [witness], lambda w: sequential_violation(f, w, policy))
