"""Exact computation in Thompson's group F."""

from .core import *  # noqa: F401,F403
from .errors import (DomainError, NumericError, ParseError, ResourceLimitError, StructureError,
                     ThompsonError, VerificationError)
from .words import (Letter, Word, anti_normal_form, caret_order_check, evaluate, format_word,
                    lower_to_x0x1, normal_form, parse_word, rewrite_moves, word_graph)

__version__ = "0.1.0"
