"""groupcalc: exact computation in free groups, Baumslag-Solitar groups,
Thompson's group F, and the limiting-sequence-pair verification machinery
built on top of them."""

__version__ = "0.1.0"

from groupcalc.kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from groupcalc.words import (
    Alphabet,
    Letter,
    Word,
    LengthFunction,
    free_reduce,
    fg_multiply,
    fg_invert,
    fg_power,
    fg_equal,
    fg_cyclic_reduce,
    parse_word,
    reduced_length,
    free_length_function,
)

__all__ = [
    "KERNEL_IMPLEMENTATION",
    "Alphabet",
    "Letter",
    "Word",
    "LengthFunction",
    "free_reduce",
    "fg_multiply",
    "fg_invert",
    "fg_power",
    "fg_equal",
    "fg_cyclic_reduce",
    "parse_word",
    "reduced_length",
    "free_length_function",
    "__version__",
]
