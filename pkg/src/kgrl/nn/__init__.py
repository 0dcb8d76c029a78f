from .tensor import Tensor, Tape, no_grad
from . import ops
from .adam import Adam
from .checkpoint import load_checkpoint, save_checkpoint
from .gradcheck import finite_difference_check

__all__ = [
    "Tensor",
    "Tape",
    "no_grad",
    "ops",
    "Adam",
    "load_checkpoint",
    "save_checkpoint",
    "finite_difference_check",
]
