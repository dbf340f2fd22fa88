"""
Sequential and parallel decomposition of linear maps.

rank_factorization     M = L·R through the numerical rank (or one more)
strict_par_decompose_tensor  M = F₁ ⊗ F₂ with identity witness isos
par_decompose_directsum      M = F₁ ⊕ F₂, fixed blocks or up to invertibles
"""

import logging
from typing import Iterator, Optional, Tuple, Type

import numpy as np

from src.core.morphisms import Morphism
from src.core.outcome import PARALLEL, SEQUENTIAL, DecompositionOutcome, Witness, decide, sequential_violation
from src.enums import DecompositionMode, Policy, Verdict
from src.errors import InstanceError, ShapeError
from src.linvec import kernel
from src.linvec.instances import VecDirectSum, VecInstance, VecTensor
from src.linvec.schmidt import operator_schmidt

logger = logging.getLogger(__name__)


def as_morphism(m, kind: Type[VecInstance] = VecInstance) -> Morphism:
    """Use a Morphism as is (checking its instance) or wrap a bare matrix."""
    if isinstance(m, Morphism):
        if not isinstance(m.instance, kind):
            raise InstanceError(f"expected a morphism of {kind.__name__}, got {m.instance_id}")
        return m
    factory = VecTensor if kind is VecInstance else kind
    return factory().morphism(m)


# ============================================================
# SEQUENTIAL
# ============================================================

def _rank_candidates(f: Morphism) -> Iterator[Witness]:
    inst = f.instance
    u, s, v = kernel.svd(f.matrix)
    r = kernel.numerical_rank(s)
    root = np.sqrt(s[:r])
    left = u[:, :r] * root
    right = root[:, None] * v[:, :r].conj().T

    mid = inst.obj(r)
    yield Witness((Morphism(f.dom, mid, matrix=right), Morphism(mid, f.cod, matrix=left)),
                  details={"intermediate": r, "rank": r, "route": "rank"})

    mid = inst.obj(r + 1)
    padded_left = np.hstack([left, np.zeros((f.cod.dim, 1))])
    padded_right = np.vstack([right, np.zeros((1, f.dom.dim))])
    yield Witness((Morphism(f.dom, mid, matrix=padded_right), Morphism(mid, f.cod, matrix=padded_left)),
                  details={"intermediate": r + 1, "rank": r, "route": "padded rank"})


def rank_factorization(m, policy: Policy = Policy.NONDEGENERATE) -> DecompositionOutcome:
    """
    M = L·R with L = U√S, R = √S·V† from the truncated SVD.

    When that route fails the policy, the factorization padded with one zero
    column/row is tried; it has no invertible factor and no one-sided inverse
    unless M itself is injective or surjective.
    """
    f = as_morphism(m)
    policy = Policy.parse(policy)
    return decide(f, policy, SEQUENTIAL, _rank_candidates(f),
                  lambda w: sequential_violation(f, w, policy))


# ============================================================
# TENSOR
# ============================================================

def _gauge(left: np.ndarray, right: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Make the largest-magnitude entry of the right factor real positive."""
    flat = right.reshape(-1)
    if flat.size == 0:
        return left, right
    pivot = flat[int(np.argmax(np.abs(flat)))]
    phase = pivot / abs(pivot)
    return left * phase, right / phase


def tensor_violation(inst: VecInstance, witness: Witness, policy: Policy) -> Optional[str]:
    if policy is Policy.PAPER_LITERAL:
        return None
    f1, f2 = witness.factors
    if min(f1.dom.dim, f1.cod.dim, f2.dom.dim, f2.cod.dim) <= 1:
        return "factor space of dimension ≤ 1 (absorbs a scalar through the unit)"
    if policy is Policy.NONDEGENERATE:
        return None
    if inst.is_iso(f1) or inst.is_iso(f2):
        return "invertible factor"
    return None


def strict_par_decompose_tensor(m, split: kernel.Split,
                                policy: Policy = Policy.NONDEGENERATE) -> DecompositionOutcome:
    """
    M = F₁ ⊗ F₂ with identity witness isos, decided by operator Schmidt rank.

    split = (d₁, d₂, d₁′, d₂′). The scalar weight sits on F₁; F₂ is gauged so
    its largest entry is real positive.
    """
    f = as_morphism(m, VecTensor)
    inst = f.instance
    policy = Policy.parse(policy)
    d1, d2, d1p, d2p = split
    sd = operator_schmidt(f.matrix, split)
    c1, c2, e1, e2 = inst.obj(d1), inst.obj(d2), inst.obj(d1p), inst.obj(d2p)
    isos = (inst.identity(f.dom), inst.identity(f.cod))
    details = {"schmidt_rank": sd.rank, "coefficients": [float(x) for x in sd.coefficients]}

    if sd.rank == 0:
        zeros = (Morphism(c1, e1, matrix=np.zeros((d1p, d1))), Morphism(c2, e2, matrix=np.zeros((d2p, d2))))
        return DecompositionOutcome(Verdict.DEGENERATE_ONLY, policy, PARALLEL, zeros, isos,
                                    {**details, "reason": "zero operator"})
    if sd.rank >= 2:
        logger.info(f"operator Schmidt rank {sd.rank}: no tensor split for {tuple(split)}")
        return DecompositionOutcome(Verdict.NOT_DECOMPOSABLE, policy, PARALLEL,
                                    details={**details, "reason": "operator Schmidt rank ≥ 2"})

    left, right = _gauge(sd.coefficients[0] * sd.left_factors[0], sd.right_factors[0])
    witness = Witness((Morphism(c1, e1, matrix=left), Morphism(c2, e2, matrix=right)), isos)
    reason = tensor_violation(inst, witness, policy)
    if reason is None:
        return DecompositionOutcome(Verdict.DECOMPOSABLE, policy, PARALLEL, witness.factors, isos, details)
    return DecompositionOutcome(Verdict.DEGENERATE_ONLY, policy, PARALLEL, witness.factors, isos,
                                {**details, "reason": reason})


# ============================================================
# DIRECT SUM
# ============================================================

def directsum_violation(inst: VecInstance, witness: Witness, policy: Policy) -> Optional[str]:
    f1, f2 = witness.factors
    if inst.is_identity(f1) or inst.is_identity(f2):
        return "identity factor"
    if policy is not Policy.ESSENTIAL:
        return None
    if inst.is_iso(f1) or inst.is_iso(f2):
        return "invertible factor"
    return None


def _selector(size: int, first: int, r1: int, r2: int) -> np.ndarray:
    """Permutation placing pivots 0..r1-1 at the top of block 1 and r1..r1+r2-1 at the top of block 2."""
    src = [None] * size
    for k in range(r1):
        src[k] = k
    for k in range(r2):
        src[first + k] = r1 + k
    rest = iter(range(r1 + r2, size))
    src = [next(rest) if s is None else s for s in src]
    return np.eye(size, dtype=np.complex128)[src]


def _normal_form_witness(f: Morphism, m1: int, m2: int, n1: int, n2: int) -> Optional[Witness]:
    """
    Rank normal form: M = cod_iso · (J_{r₁} ⊕ J_{r₂}) · dom_iso⁻¹ with the
    rank split as r₁ = min(r, n₁, m₁), r₂ = r − r₁.
    """
    inst = f.instance
    n, m = f.matrix.shape
    u, s, v = kernel.svd(f.matrix, full=True)
    r = kernel.numerical_rank(s)
    r1 = min(r, n1, m1)
    r2 = r - r1
    if r2 > min(n2, m2):
        return None

    scale = np.ones(n)
    scale[:r] = s[:r]
    rows = _selector(n, n1, r1, r2)
    cols = _selector(m, m1, r1, r2).T
    cod_iso = (u * scale) @ rows.T
    dom_iso = v @ cols

    j1 = np.zeros((n1, m1))
    j1[np.arange(r1), np.arange(r1)] = 1.0
    j2 = np.zeros((n2, m2))
    j2[np.arange(r2), np.arange(r2)] = 1.0
    factors = (Morphism(inst.obj(m1), inst.obj(n1), matrix=j1),
               Morphism(inst.obj(m2), inst.obj(n2), matrix=j2))
    isos = (Morphism(inst.obj(m), f.dom, matrix=dom_iso), Morphism(inst.obj(n), f.cod, matrix=cod_iso))
    return Witness(factors, isos, {"rank": r, "block_ranks": [r1, r2]})


def par_decompose_directsum(m, dim_split_dom: Tuple[int, int], dim_split_cod: Tuple[int, int],
                            mode: DecompositionMode = DecompositionMode.FIXED,
                            policy: Policy = Policy.NONDEGENERATE) -> DecompositionOutcome:
    f = as_morphism(m, VecDirectSum)
    inst = f.instance
    policy = Policy.parse(policy)
    mode = DecompositionMode.parse(mode)
    m1, m2 = dim_split_dom
    n1, n2 = dim_split_cod
    rows, cols = f.matrix.shape
    if m1 + m2 != cols or n1 + n2 != rows or min(m1, m2, n1, n2) < 1:
        raise ShapeError(f"split {dim_split_dom}/{dim_split_cod} does not fit a {rows}×{cols} matrix "
                         f"with all parts ≥ 1")

    if mode is DecompositionMode.FIXED:
        a = f.matrix
        off = max(np.abs(a[:n1, m1:]).max(), np.abs(a[n1:, :m1]).max()) / (1.0 + np.abs(a).max())
        candidates = []
        if off <= inst.tolerance:
            factors = (Morphism(inst.obj(m1), inst.obj(n1), matrix=a[:n1, :m1]),
                       Morphism(inst.obj(m2), inst.obj(n2), matrix=a[n1:, m1:]))
            candidates.append(Witness(factors, (inst.identity(f.dom), inst.identity(f.cod))))
        outcome = decide(f, policy, PARALLEL, candidates,
                         lambda w: directsum_violation(inst, w, policy),
                         absent_reason="off-diagonal blocks do not vanish")
        outcome.details["off_diagonal"] = float(off)
    elif mode is DecompositionMode.UP_TO_ISO:
        witness = _normal_form_witness(f, m1, m2, n1, n2)
        outcome = decide(f, policy, PARALLEL, [witness] if witness else [],
                         lambda w: directsum_violation(inst, w, policy),
                         absent_reason="rank cannot be absorbed by the requested blocks")
    else:
        raise InstanceError("search mode applies to (finset, product) only")
    outcome.details["mode"] = mode.value
    return outcome
