"""Partial combinatory algebras, relative computability and strictness, on a step budget."""
from .core import (EXHAUSTED, App, Const, ConsistentSoFar, Divergent, Diverges, Exhausted, Fuel,
                   LawReport, OutOfFuel, Pca, Term, TrivialPca, Value, Var, Violated, Witnessed,
                   apply, apps, eval_term, kleene_refines, laws_check, random_triples, show_outcome)
from .k1 import K1, K1_PCA, PairCode, decode_seq, encode_seq, pair_nat, unpair_nat
from .morphisms import (MorphismSpec, check_applicative, check_decider, check_effective_operation,
                        check_I1, check_preorder, compose, identity_spec, inclusion_spec)
from .oracle import (Dialogue, Functional, apply_functional, apply_oracle, at_zero, bounded_E,
                     builtin_functional, builtin_oracle, constant_index, functional_pca,
                     lift_index, oracle_pca, query_index, self_apply)
from .s19 import (S19Machine, check_extensional_equiv, compile_s19_to_k1f, s19_apply, s19_pca,
                  seq)
from .strictify import embed_realizer, strict_apply, strict_pca
from .toolkit import V, abstract, bracket, make_tuple, numeral

__all__ = [
    "EXHAUSTED", "App", "Const", "ConsistentSoFar", "Divergent", "Diverges", "Exhausted",
    "Fuel", "LawReport", "OutOfFuel", "Pca", "Term", "TrivialPca", "Value", "Var", "Violated",
    "Witnessed", "apply", "apps", "eval_term", "kleene_refines", "laws_check", "random_triples",
    "show_outcome", "K1", "K1_PCA", "PairCode", "decode_seq", "encode_seq", "pair_nat",
    "unpair_nat", "MorphismSpec", "check_applicative", "check_decider",
    "check_effective_operation", "check_I1", "check_preorder", "compose", "identity_spec",
    "inclusion_spec", "Dialogue", "Functional", "apply_functional", "apply_oracle", "at_zero",
    "bounded_E", "builtin_functional", "builtin_oracle", "constant_index", "functional_pca",
    "lift_index", "oracle_pca", "query_index", "self_apply", "S19Machine",
    "check_extensional_equiv", "compile_s19_to_k1f", "s19_apply", "s19_pca", "seq",
    "embed_realizer", "strict_apply", "strict_pca", "V", "abstract", "bracket", "make_tuple",
    "numeral",
]

__version__ = "0.1.0"
