"""
Existential search for a (finset, ×) parallel decomposition.

A witness lays dom(f) out as an m×n grid (rows = C₁, columns = C₂) and cod(f)
as a p×q grid such that f sends every cell (i, j) to (f₁(i), f₂(j)). Grids of
dom are enumerated up to row and column permutation; the codomain grid is
derived from the row/column classes that f forces on its image.
"""

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Tuple

from src.config import settings
from src.core.morphisms import Morphism
from src.core.outcome import PARALLEL, DecompositionOutcome, Witness, decide
from src.enums import Policy
from src.errors import InstanceError, SizeError
from src.finset.instances import FinSetProduct
from src.finset.parallel import product_violation
from src.finset.unionfind import DisjointSet

logger = logging.getLogger(__name__)


def cardinality_splits(size: int) -> List[Tuple[int, int]]:
    """Factorizations size = a·b with both factors ≥ 2, smallest a first."""
    return [(a, size // a) for a in range(2, size // 2 + 1) if size % a == 0 and size // a >= 2]


def canonical_grids(size: int, rows: int, cols: int) -> Iterator[Tuple[int, ...]]:
    """
    Row-major placements of 0..size-1 in a rows×cols grid, one per orbit of
    row and column permutations: first column and first row increasing.
    """
    for perm in itertools.permutations(range(size)):
        if perm[0] != 0:
            break
        if any(perm[i * cols] > perm[(i + 1) * cols] for i in range(rows - 1)):
            continue
        if any(perm[j] > perm[j + 1] for j in range(cols - 1)):
            continue
        yield perm


def restricted_growth(length: int, limit: int) -> Iterator[Tuple[int, ...]]:
    """Assignments of `length` classes to `limit` slots, up to slot renaming."""
    def grow(prefix: Tuple[int, ...], top: int):
        if len(prefix) == length:
            yield prefix
            return
        for v in range(min(top + 2, limit)):
            yield from grow(prefix + (v,), max(top, v))

    if length == 0:
        yield ()
        return
    yield from grow((0,), 0)


def _classes(num: int, groups: List[List[int]]) -> List[int]:
    ds = DisjointSet(num)
    for group in groups:
        for a, b in zip(group, group[1:]):
            ds.merge(a, b)
    return [int(c) for c in ds.get_components()]


def _swap01(label: str) -> str:
    return {"0": "1", "1": "0"}.get(label, label)


def _build_witness(f: Morphism, perm, shape, row_class, col_class, row_vals, col_vals,
                   cell_of: Dict) -> Witness:
    inst = f.instance
    A, B = f.dom, f.cod
    m, n, p, q = shape
    c1, c2, d1, d2 = (inst.obj(str(i) for i in range(k)) for k in shape)
    f1 = tuple(str(row_vals[row_class[i]]) for i in range(m))
    f2 = tuple(str(col_vals[col_class[j]]) for j in range(n))

    occupied = {cell: b for b, cell in cell_of.items()}
    spare = iter(y for y in B.labels if y not in cell_of)
    for cell in itertools.product(range(p), range(q)):
        if cell not in occupied:
            occupied[cell] = next(spare)

    # An identity factor is traded for a codomain transposition absorbed by cod_iso.
    tau1 = m == p and f1 == c1.labels
    tau2 = n == q and f2 == c2.labels
    if tau1:
        f1 = tuple(map(_swap01, f1))
    if tau2:
        f2 = tuple(map(_swap01, f2))

    def cod_label(r: int, c: int):
        if tau1 and r < 2:
            r = 1 - r
        if tau2 and c < 2:
            c = 1 - c
        return occupied[(r, c)]

    dom_iso = Morphism(inst.mproduct_obj(c1, c2), A,
                       table=tuple(A.labels[perm[i * n + j]] for i in range(m) for j in range(n)))
    cod_iso = Morphism(inst.mproduct_obj(d1, d2), B,
                       table=tuple(cod_label(r, c) for r in range(p) for c in range(q)))
    return Witness(
        (Morphism(c1, d1, table=f1), Morphism(c2, d2, table=f2)),
        (dom_iso, cod_iso),
        {"split": list(shape), "relabelled_identity": bool(tau1 or tau2)},
    )


def _witnesses(f: Morphism) -> Iterator[Witness]:
    inst = f.instance
    A, B = f.dom, f.cod
    targets = [B.index[y] for y in f.table]
    image = sorted(set(targets))
    pre: Dict[int, List[int]] = {}
    for a, b in enumerate(targets):
        pre.setdefault(b, []).append(a)

    for m, n in cardinality_splits(A.size):
        found: List[Witness] = []
        for perm in canonical_grids(A.size, m, n):
            row_of, col_of = {}, {}
            for cell, a in enumerate(perm):
                row_of[a], col_of[a] = divmod(cell, n)
            row_class = _classes(m, [[row_of[a] for a in pre[b]] for b in image])
            col_class = _classes(n, [[col_of[a] for a in pre[b]] for b in image])
            b_class = {b: (row_class[row_of[pre[b][0]]], col_class[col_of[pre[b][0]]]) for b in image}
            if len(set(b_class.values())) < len(image):
                continue
            num_rows, num_cols = max(row_class) + 1, max(col_class) + 1

            for p, q in cardinality_splits(B.size):
                if len(image) > p * q:
                    continue
                for row_vals in restricted_growth(num_rows, p):
                    for col_vals in restricted_growth(num_cols, q):
                        cells = {b: (row_vals[r], col_vals[c]) for b, (r, c) in b_class.items()}
                        if len(set(cells.values())) < len(image):
                            continue
                        cell_of = {B.labels[b]: cell for b, cell in cells.items()}
                        witness = _build_witness(f, perm, (m, n, p, q), row_class, col_class,
                                                 row_vals, col_vals, cell_of)
                        left = inst.compose(witness.witness_isos[1], inst.mproduct_mor(*witness.factors))
                        right = inst.compose(f, witness.witness_isos[0])
                        if inst.deviation(left, right):
                            logger.error(f"discarding non-commuting grid {perm} for split {(m, n, p, q)}")
                            continue
                        found.append(witness)
        # within one |C₁|, smallest factor tables first
        found.sort(key=lambda w: (w.factors[0].table, w.factors[1].table))
        yield from found


def par_search_product(f: Morphism, max_card: Optional[int] = None,
                       policy: Policy = Policy.NONDEGENERATE) -> DecompositionOutcome:
    """
    Search every cardinality split |dom| = m·n, |cod| = p·q (all factors ≥ 2)
    and every relabeling, up to symmetry, for a commuting decomposition square.
    The first witness in (|C₁|, factor tables) order that passes the policy wins.
    """
    inst = f.instance
    if not isinstance(inst, FinSetProduct):
        raise InstanceError(f"product search needs (finset, product), got {f.instance_id}")
    policy = Policy.parse(policy)
    cap = settings.max_card if max_card is None else max_card
    if f.dom.size > cap or f.cod.size > cap:
        raise SizeError(f"product search is capped at {cap} elements, got |dom|={f.dom.size}, |cod|={f.cod.size}")
    logger.info(f"searching product splits for {f.name or 'morphism'}: "
                f"dom {cardinality_splits(f.dom.size)}, cod {cardinality_splits(f.cod.size)}")
    return decide(f, policy, PARALLEL, _witnesses(f),
                  lambda w: product_violation(inst, w, policy))
