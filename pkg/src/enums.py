from enum import Enum


class CategoryId(str, Enum):
    FINSET = "finset"
    VEC = "vec"


class ProductKind(str, Enum):
    COPRODUCT = "coproduct"
    PRODUCT = "product"
    DIRECTSUM = "directsum"
    TENSOR = "tensor"


PRODUCTS_BY_CATEGORY = {
    CategoryId.FINSET: (ProductKind.COPRODUCT, ProductKind.PRODUCT),
    CategoryId.VEC: (ProductKind.DIRECTSUM, ProductKind.TENSOR),
}

PRODUCT_SYMBOLS = {
    ProductKind.COPRODUCT: "⊕",
    ProductKind.PRODUCT: "×",
    ProductKind.DIRECTSUM: "⊕",
    ProductKind.TENSOR: "⊗",
}


class Verdict(str, Enum):
    DECOMPOSABLE = "decomposable"
    NOT_DECOMPOSABLE = "not_decomposable"
    DEGENERATE_ONLY = "degenerate_only"


class Policy(str, Enum):
    PAPER_LITERAL = "paper_literal"
    NONDEGENERATE = "nondegenerate"
    ESSENTIAL = "essential"

    @classmethod
    def parse(cls, value: "str | Policy") -> "Policy":
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("-", "_"))

    @property
    def cli_name(self) -> str:
        return self.value.replace("_", "-")


class IsoKind(str, Enum):
    ASSOCIATOR = "associator"
    LEFT_UNITOR = "left_unitor"
    RIGHT_UNITOR = "right_unitor"


class LawId(str, Enum):
    ASSOC = "assoc"
    IDENTITY = "identity"
    INTERCHANGE = "interchange"
    NATURALITY_ALPHA = "naturality_α"
    NATURALITY_LAMBDA = "naturality_λ"
    NATURALITY_RHO = "naturality_ρ"
    TRIANGLE = "triangle"
    PENTAGON = "pentagon"

    @property
    def ordinal(self) -> int:
        return list(LawId).index(self)


class DecompositionMode(str, Enum):
    FIXED = "fixed"
    UP_TO_ISO = "up_to_iso"
    SEARCH = "search"

    @classmethod
    def parse(cls, value: "str | DecompositionMode") -> "DecompositionMode":
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("-", "_"))


class Command(str, Enum):
    CHECK_LAWS = "check-laws"
    DECOMPOSE_SEQ = "decompose-seq"
    DECOMPOSE_PAR = "decompose-par"
    ENTANGLED = "entangled"
    COUPLING = "coupling"
    SOLVE = "solve"
    DIAGRAM = "diagram"


class DiagramOf(str, Enum):
    MORPHISM = "morphism"
    DECOMPOSE_SEQ = "decompose-seq"
    DECOMPOSE_PAR = "decompose-par"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class Fault(str, Enum):
    """Single corruptions injected by lawcheck.faults, one per law."""
    ASSOC = "assoc"
    IDENTITY = "identity"
    INTERCHANGE = "interchange"
    NATURALITY_ALPHA = "naturality_α"
    NATURALITY_LAMBDA = "naturality_λ"
    NATURALITY_RHO = "naturality_ρ"
    TRIANGLE = "triangle"
    PENTAGON = "pentagon"

    @property
    def law(self) -> LawId:
        return LawId(self.value)


EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
