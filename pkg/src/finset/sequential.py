"""
Sequential decomposition of functions.

Candidates are tried in order of intermediate size: the image factorization,
a relabelled copy of the image, the image extended by one extra point, and
(for an empty domain) a single point. For finite sets this ladder reaches a
policy-passing witness whenever any intermediate of size ≤ |dom|+|cod| does.
"""

from typing import Iterator, List, Set

from src.core.morphisms import Morphism
from src.core.outcome import SEQUENTIAL, DecompositionOutcome, Witness, decide, seq_verify, sequential_violation
from src.enums import Policy
from src.errors import InstanceError
from src.finset.instances import FinSetInstance

__all__ = ["seq_decompose", "seq_verify", "fresh_labels"]


def fresh_labels(count: int, taken: Set) -> List[str]:
    out, i = [], 0
    while len(out) < count:
        label = f"c{i}"
        if label not in taken:
            out.append(label)
        i += 1
    return out


def _candidates(f: Morphism) -> Iterator[Witness]:
    inst = f.instance
    A, B = f.dom, f.cod
    image = f.image()
    taken = set(A.labels) | set(B.labels)

    c = inst.obj(image)
    yield Witness((Morphism(A, c, table=f.table), Morphism(c, B, table=image)),
                  details={"intermediate": len(image), "route": "image"})

    if A.size:
        fresh = fresh_labels(len(image) + 1, taken)
        rename = dict(zip(image, fresh))
        c = inst.obj(fresh[:-1])
        yield Witness((Morphism(A, c, table=tuple(rename[y] for y in f.table)),
                       Morphism(c, B, table=image)),
                      details={"intermediate": len(image), "route": "relabelled image"})

        c = inst.obj(image + (fresh[-1],))
        yield Witness((Morphism(A, c, table=f.table),
                       Morphism(c, B, table=image + (f.table[0],))),
                      details={"intermediate": len(image) + 1, "route": "extended image"})
    elif B.size:
        c = inst.obj(fresh_labels(1, taken))
        yield Witness((Morphism(A, c, table=()), Morphism(c, B, table=(B.labels[0],))),
                      details={"intermediate": 1, "route": "point"})


def seq_decompose(f: Morphism, policy: Policy = Policy.NONDEGENERATE) -> DecompositionOutcome:
    if not isinstance(f.instance, FinSetInstance):
        raise InstanceError(f"seq_decompose needs a finite-set morphism, got {f.instance_id}")
    policy = Policy.parse(policy)
    return decide(f, policy, SEQUENTIAL, _candidates(f),
                  lambda w: sequential_violation(f, w, policy))
