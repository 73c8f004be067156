"""Finite universal-algebra workbench for split-extension decompositions."""

from .terms import (App, Identity, ParseError, Signature, Var, check_identity, eval_term,
                    format_term, parse_signature, parse_term, substitute, term_table)
from .algebra import (AlgebraError, FiniteAlgebra, Homomorphism, SubsetAlgebra, builtin,
                      find_homomorphisms, kernel, load_algebra, product, pullback_fiber)
from .clone import (CloneCache, generate_clone, find_biternary, find_maltsev,
                    find_protomodular, find_rho_sigma, find_right_loop, find_subtraction,
                    find_unital)

__version__ = "0.1.0"

__all__ = [
    "App", "Identity", "ParseError", "Signature", "Var", "check_identity", "eval_term",
    "format_term", "parse_signature", "parse_term", "substitute", "term_table",
    "AlgebraError", "FiniteAlgebra", "Homomorphism", "SubsetAlgebra", "builtin",
    "find_homomorphisms", "kernel", "load_algebra", "product", "pullback_fiber",
    "CloneCache", "generate_clone", "find_biternary", "find_maltsev", "find_protomodular",
    "find_rho_sigma", "find_right_loop", "find_subtraction", "find_unital",
]
