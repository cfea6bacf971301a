"""Free Rota-Baxter algebras, dendriform structures and planar trees, with
exact arithmetic."""

from .base import BaseAlgebra, finite_table, free_monoid, load_table, validate_base, zero_product
from .free import Context, Element, Morphism, add, context, embed_letter, eval_morphism, product, rb_apply, scale
from .parsing import ParseError, parse_element, parse_word, render_word
from .words import Bracket, Letter, Word, bracket, compare_words, enumerate_words, letter, standard_decomposition, word_stats

__all__ = [
    "BaseAlgebra",
    "Bracket",
    "Context",
    "Element",
    "Letter",
    "Morphism",
    "ParseError",
    "Word",
    "add",
    "bracket",
    "compare_words",
    "context",
    "embed_letter",
    "enumerate_words",
    "eval_morphism",
    "finite_table",
    "free_monoid",
    "letter",
    "load_table",
    "parse_element",
    "parse_word",
    "product",
    "rb_apply",
    "render_word",
    "scale",
    "standard_decomposition",
    "validate_base",
    "word_stats",
    "zero_product",
]
