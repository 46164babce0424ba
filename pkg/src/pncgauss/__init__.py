"""Linear physical-layer network coding over Gaussian-integer residue fields."""

from .gaussint import GInt
from .residue import ResidueField, build_field
from .mapping import NcMapping
from .diffs import CharDifference
from .gain import ChannelGain

__all__ = ["GInt", "ResidueField", "build_field", "NcMapping", "CharDifference", "ChannelGain"]
