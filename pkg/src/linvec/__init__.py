from src.linvec.decompose import (
    as_morphism,
    par_decompose_directsum,
    rank_factorization,
    strict_par_decompose_tensor,
)
from src.linvec.instances import VecDirectSum, VecInstance, VecTensor, vec_instance
from src.linvec.kernel import invert, numerical_rank, realign, solve, svd
from src.linvec.schmidt import (
    SchmidtDecomposition,
    coupling_measure,
    is_entangled,
    operator_schmidt,
    state_schmidt,
)

__all__ = [
    "SchmidtDecomposition",
    "VecDirectSum",
    "VecInstance",
    "VecTensor",
    "as_morphism",
    "coupling_measure",
    "invert",
    "is_entangled",
    "numerical_rank",
    "operator_schmidt",
    "par_decompose_directsum",
    "rank_factorization",
    "realign",
    "solve",
    "state_schmidt",
    "strict_par_decompose_tensor",
    "svd",
    "vec_instance",
]
