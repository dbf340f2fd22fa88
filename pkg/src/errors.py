"""
Exception hierarchy.

Every error raised by the library derives from McatError and from ValueError,
so the CLI can map the whole family to exit code 2.
"""

from typing import Optional


class McatError(ValueError):
    """Base class for library errors."""


class CompositionError(McatError):
    """g ∘ f requested with cod(f) ≠ dom(g) or across instances."""


class InstanceError(McatError):
    """Operation applied to a morphism of the wrong monoidal instance."""


class DomainError(McatError):
    """State extraction from a morphism whose domain is not the unit."""


class WitnessError(McatError):
    """A caller-supplied witness isomorphism is not a bijection."""


class SizeError(McatError):
    """Search input above the configured cardinality cap."""


class ShapeError(McatError):
    """Matrix or split shape does not match."""


class SingularityError(McatError):
    def __init__(self, message: str, sigma_min: float):
        super().__init__(message)
        self.sigma_min = sigma_min


class NormalizationError(McatError):
    """State vector is not of unit norm."""


class UndefinedMeasureError(McatError):
    """Coupling measure requested for the zero operator."""


class SpecError(McatError):
    """Invalid sampling specification."""


class DocumentError(McatError):
    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
