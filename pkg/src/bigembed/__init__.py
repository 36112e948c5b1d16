"""Bigraph embeddings through linear integer constraints."""
from __future__ import annotations

from .core import (Bigraph, CompositionError, Control, Edge, Embedding, InnerName, Interface,
                   OuterName, Port, Root, Signature, SignatureMismatch, Site, Violation,
                   compose, identity, is_isomorphic, juxtapose, link_preimage, prnt_star,
                   validate, with_identity_names)
from .csp import EQ, GE, LE, LinearConstraint, Model, propagate, solve_all
from .encode import (BGE, LGE, PGE, EncodedInstance, InvalidEmbedding, VarRegistry,
                     count_embeddings, decode, embedding_to_solution, encode, encode_bge,
                     encode_lge, encode_pge, enumerate_embeddings, size_formulas)
from .jsonio import (BigraphFormatError, bigraph_from_dict, bigraph_to_dict, embedding_from_dict,
                     embedding_to_dict, loads_bigraph)
from .oracle import (ViolationReport, brute_force_embeddings, brute_force_link_embeddings,
                     brute_force_place_embeddings, check_embedding, check_link_embedding,
                     check_place_embedding)
from .reduce import (CnfFormula, ColouredTree, antichain_to_assignment, decode_antichain,
                     parse_dimacs, rainbow_to_instance, sat_to_rainbow, solve_sat,
                     verify_rainbow_antichain)
from .rewrite import ReactionRule, apply_rule, decompose, instantiate, step

__version__ = "0.1.0"
