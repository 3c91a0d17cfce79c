"""Tensorial Wang dominoes and tiles: tiling, traces and aperiodicity checks."""
from .tensor import Tensor, contract, direct_sum, is_zero, kron_per_index, norm_sq, permute, tensor_product
from .domino import Domino, Kind
from .tile import BoundaryTensor, Tile, rectangle
from .transfer import Budget, BudgetExceeded
from .verdict import Exact, HoldsUpTo, RefutedAt

__version__ = "0.1.0"
