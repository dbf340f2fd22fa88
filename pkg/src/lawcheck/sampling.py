"""
Deterministic sampling of objects and morphisms.

Laws draw their inputs through a Chooser. The random chooser reads a numpy
Generator seeded from (seed, stream); the replay chooser walks every choice
sequence in odometer order, which gives the exhaustive mode for tiny finite
sets.
"""

import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, model_validator

from src.core.instance import EmptyHomSet, MonoidalInstance
from src.core.morphisms import Morphism
from src.core.objects import ObjectHandle
from src.enums import CategoryId
from src.errors import SpecError

logger = logging.getLogger(__name__)

MAX_SIZE = {CategoryId.FINSET: 6, CategoryId.VEC: 4}
EXHAUSTIVE_MAX_SIZE = 2
MAX_REDRAWS = 20


class SampleSpec(BaseModel):
    """Sampling controls for one law run."""
    seed: int = 1
    object_size_range: Tuple[int, int] = (0, 3)
    morphism_count: int = 4
    trial_count: int = 200
    exhaustive: bool = False
    max_cases: int = 20000

    @model_validator(mode="after")
    def check_ranges(self):
        lo, hi = self.object_size_range
        if lo < 0 or hi < lo:
            raise ValueError(f"object_size_range must satisfy 0 ≤ min ≤ max, got {self.object_size_range}")
        if self.trial_count < 1 or self.morphism_count < 1 or self.max_cases < 1:
            raise ValueError("trial_count, morphism_count and max_cases must be ≥ 1")
        if not -(2 ** 63) <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        return self


def validate_spec(instance: MonoidalInstance, spec: SampleSpec) -> None:
    cap = MAX_SIZE[instance.category]
    lo, hi = spec.object_size_range
    if hi > cap:
        raise SpecError(f"{instance.instance_id} samples objects of size ≤ {cap}, got max {hi}")
    if spec.exhaustive:
        if instance.category is not CategoryId.FINSET:
            raise SpecError("exhaustive mode is only available for finite sets")
        if hi > EXHAUSTIVE_MAX_SIZE:
            raise SpecError(f"exhaustive mode needs sizes ≤ {EXHAUSTIVE_MAX_SIZE}, got max {hi}")


def _seed_sequence(seed: int, stream: int) -> List[int]:
    # SeedSequence entropy must be nonnegative.
    return [seed % 2 ** 64, stream]


class Chooser:
    """Source of law inputs for one trial."""

    def __init__(self, instance: MonoidalInstance, size_range: Tuple[int, int]):
        self.instance = instance
        self.sizes = list(range(size_range[0], size_range[1] + 1))
        self.completed = False

    def obj(self) -> ObjectHandle:
        raise NotImplementedError

    def mor(self, dom: ObjectHandle, cod: ObjectHandle) -> Morphism:
        raise NotImplementedError


class RandomChooser(Chooser):
    def __init__(self, instance, size_range, rng: np.random.Generator):
        super().__init__(instance, size_range)
        self.rng = rng

    def obj(self) -> ObjectHandle:
        size = self.sizes[int(self.rng.integers(len(self.sizes)))]
        return self.instance.sample_object(self.rng, size)

    def mor(self, dom: ObjectHandle, cod: ObjectHandle) -> Morphism:
        return self.instance.sample_morphism(self.rng, dom, cod)


class ReplayChooser(Chooser):
    """Takes choice i from `path` (0 past its end) and records every option count."""

    def __init__(self, instance, size_range, path: List[int]):
        super().__init__(instance, size_range)
        self.path = path
        self.picks: List[int] = []
        self.counts: List[int] = []

    def _pick(self, count: int) -> int:
        pos = len(self.picks)
        choice = self.path[pos] if pos < len(self.path) else 0
        self.picks.append(choice)
        self.counts.append(count)
        return choice

    def obj(self) -> ObjectHandle:
        return self.instance.sample_object(None, self.sizes[self._pick(len(self.sizes))])

    def mor(self, dom: ObjectHandle, cod: ObjectHandle) -> Morphism:
        count = cod.size ** dom.size
        index = self._pick(count)
        if count == 0:
            raise EmptyHomSet(f"no function from {dom} to the empty set")
        table = []
        for _ in range(dom.size):
            index, digit = divmod(index, cod.size)
            table.append(cod.labels[digit])
        return Morphism(dom, cod, table=tuple(table))

    def next_path(self) -> Optional[List[int]]:
        for i in reversed(range(len(self.picks))):
            if self.picks[i] + 1 < self.counts[i]:
                return self.picks[:i] + [self.picks[i] + 1]
        return None


def choosers(instance: MonoidalInstance, spec: SampleSpec, stream: int) -> Iterator[Chooser]:
    """
    Trial inputs for one law. Callers mark a chooser `completed` once its
    trial ran; random choosers whose draw hit an empty hom-set are redrawn.
    """
    validate_spec(instance, spec)
    if spec.exhaustive:
        path: Optional[List[int]] = []
        cases = 0
        while path is not None:
            if cases >= spec.max_cases:
                logger.warning(f"exhaustive law check stopped at {spec.max_cases} cases")
                return
            chooser = ReplayChooser(instance, spec.object_size_range, path)
            yield chooser
            cases += 1
            path = chooser.next_path()
        return

    rng = np.random.default_rng(_seed_sequence(spec.seed, stream))
    done = attempts = 0
    while done < spec.trial_count and attempts < spec.trial_count * MAX_REDRAWS:
        chooser = RandomChooser(instance, spec.object_size_range, rng)
        yield chooser
        attempts += 1
        done += chooser.completed


class Sampler:
    """Object and morphism streams for one (seed, stream) pair."""

    def __init__(self, instance: MonoidalInstance, spec: SampleSpec, stream: int = 0):
        self.instance = instance
        self.spec = spec
        self._chooser = RandomChooser(instance, spec.object_size_range,
                                      np.random.default_rng(_seed_sequence(spec.seed, stream)))

    def objects(self) -> Iterator[ObjectHandle]:
        while True:
            yield self._chooser.obj()

    def morphisms(self) -> Iterator[Morphism]:
        """`morphism_count` morphisms between freshly drawn objects."""
        produced = 0
        while produced < self.spec.morphism_count:
            dom, cod = self._chooser.obj(), self._chooser.obj()
            try:
                yield self._chooser.mor(dom, cod)
            except EmptyHomSet:
                continue
            produced += 1


def sample(instance: MonoidalInstance, spec: SampleSpec, stream: int = 0) -> Sampler:
    validate_spec(instance, spec)
    return Sampler(instance, spec, stream)
