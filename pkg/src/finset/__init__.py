from src.finset.instances import FinSetCoproduct, FinSetInstance, FinSetProduct, finset_instance
from src.finset.parallel import ComponentPartition, components, par_check_product, par_decompose_coproduct
from src.finset.search import par_search_product
from src.finset.sequential import seq_decompose, seq_verify

__all__ = [
    "ComponentPartition",
    "FinSetCoproduct",
    "FinSetInstance",
    "FinSetProduct",
    "components",
    "finset_instance",
    "par_check_product",
    "par_decompose_coproduct",
    "par_search_product",
    "seq_decompose",
    "seq_verify",
]
