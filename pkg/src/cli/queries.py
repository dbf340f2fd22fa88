"""
Command options and the decomposition dispatch shared by run and emit_dot.
"""

import logging
from typing import Optional, Tuple

from pydantic import BaseModel

from src.cli.document import Workspace
from src.config import settings
from src.core.morphisms import Morphism
from src.core.outcome import DecompositionOutcome, seq_verify
from src.enums import CategoryId, DecompositionMode, DiagramOf, OutputFormat, Policy, ProductKind
from src.errors import DocumentError, InstanceError
from src.finset import par_check_product, par_decompose_coproduct, par_search_product, seq_decompose
from src.linvec import par_decompose_directsum, rank_factorization, strict_par_decompose_tensor

logger = logging.getLogger(__name__)


class Options(BaseModel):
    """Flags shared by every command."""
    morphism: Optional[str] = None
    vector: Optional[str] = None
    split: Optional[str] = None
    factors: Optional[str] = None
    policy: Policy = Policy.parse(settings.default_policy)
    mode: Optional[DecompositionMode] = None
    seed: int = settings.default_seed
    trials: int = settings.default_trials
    exhaustive: bool = False
    tolerance: Optional[float] = None
    timing: bool = False
    of: DiagramOf = DiagramOf.MORPHISM
    format: OutputFormat = OutputFormat.TEXT


def require_morphism(ws: Workspace, options: Options) -> Morphism:
    if not options.morphism:
        raise DocumentError("this command needs --morphism NAME")
    return ws.morphism(options.morphism)


def split_dims(ws: Workspace, options: Options, length: int) -> Tuple[int, ...]:
    """
    --split as a split name or inline "d1,d2,d1',d2'". A state query reads
    the codomain pair of a four-part split.
    """
    if not options.split:
        raise DocumentError("this command needs --split")
    raw = options.split
    if all(part.strip().isdigit() for part in raw.split(",")):
        dims = [int(part) for part in raw.split(",")]
    else:
        spec = ws.split(raw)
        if spec.dims is None:
            raise DocumentError(f"split {raw!r} has no dims")
        dims = list(spec.dims)
    if length == 2 and len(dims) == 4:
        dims = dims[2:]
    if len(dims) != length:
        raise DocumentError(f"--split needs {length} dimensions, got {len(dims)}")
    return tuple(dims)


def decompose_seq(ws: Workspace, options: Options) -> Tuple[Morphism, DecompositionOutcome]:
    f = require_morphism(ws, options)
    if options.factors:
        names = [n.strip() for n in options.factors.split(",")]
        if len(names) != 2:
            raise DocumentError("--factors takes two morphism names: FIRST,SECOND")
        first, second = (ws.morphism(n) for n in names)
        return f, seq_verify(f, first, second, options.policy)
    if ws.instance.category is CategoryId.FINSET:
        return f, seq_decompose(f, options.policy)
    return f, rank_factorization(f, options.policy)


def decompose_par(ws: Workspace, options: Options) -> Tuple[Morphism, DecompositionOutcome]:
    f = require_morphism(ws, options)
    product = ws.instance.product
    mode = options.mode or DecompositionMode.FIXED

    if mode is DecompositionMode.SEARCH and product is not ProductKind.PRODUCT:
        raise InstanceError("--mode search applies to (finset, product) only")
    if mode is DecompositionMode.UP_TO_ISO and product is not ProductKind.DIRECTSUM:
        raise InstanceError("--mode up-to-iso applies to (vec, directsum) only")

    if product is ProductKind.COPRODUCT:
        return f, par_decompose_coproduct(f, options.policy)
    if product is ProductKind.PRODUCT:
        if mode is DecompositionMode.SEARCH:
            return f, par_search_product(f, policy=options.policy)
        if not options.split:
            raise DocumentError("fixed product check needs --split NAME (or --mode search)")
        spec = ws.split(options.split)
        if spec.dom is None:
            raise DocumentError(f"split {spec.name!r} does not name factor objects and isos")
        split_dom = tuple(ws.objects[n] for n in spec.dom)
        split_cod = tuple(ws.objects[n] for n in spec.cod)
        return f, par_check_product(f, split_dom, split_cod, ws.morphism(spec.dom_iso),
                                    ws.morphism(spec.cod_iso), options.policy)
    dims = split_dims(ws, options, 4)
    if product is ProductKind.DIRECTSUM:
        return f, par_decompose_directsum(f, dims[:2], dims[2:], mode, options.policy)
    return f, strict_par_decompose_tensor(f, dims, options.policy)
