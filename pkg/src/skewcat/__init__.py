"""Skew monoidal categories with optional normality: categorical calculus,
sequent calculus, focused proof search and the translations between them."""
from .core import (Atom, Unit, Tensor, I, NormalityFlags, Sequent, SkewError, ParseError, TypeMismatch,
                   FlagViolation, parse_formula, parse_sequent, print_formula, print_sequent, frontier,
                   is_closed, interp_antecedent, formulas_upto)
from . import catcalc, seqcalc, rewrite, focused, bridge  # noqa: F401  (seqcalc before rewrite)
from .catcalc import cat_equal, check_cat
from .seqcalc import check_seq, scut, ccut, seq_equal, rewrite_nf
from .focused import search, count_derivations, focus, emb
from .bridge import sound, cmplt, cmplt_seq, hom_enumerate

__all__ = [
    "Atom", "Unit", "Tensor", "I", "NormalityFlags", "Sequent", "SkewError", "ParseError", "TypeMismatch",
    "FlagViolation", "parse_formula", "parse_sequent", "print_formula", "print_sequent", "frontier",
    "is_closed", "interp_antecedent", "formulas_upto", "cat_equal", "check_cat", "check_seq", "scut",
    "ccut", "seq_equal", "rewrite_nf", "search", "count_derivations", "focus", "emb", "sound", "cmplt",
    "cmplt_seq", "hom_enumerate",
]
