"""Arithmetic of finite posets: sums, products, exponents, retracts, and
refinements of isomorphisms between exponents."""

from .arith import (
    ExponentPoset, MonotoneMap, component_C, constant_embed, curry_iso,
    decode_pair, diagonal_D, distributivity_check, encode_pair, exponent,
    iter_monotone_maps, pointwise_order, product, verify_exponent,
)
from .canon import (
    CanonicalForm, are_isomorphic, canonical_form, certificate,
    is_order_isomorphism,
)
from .catalog import catalog_upto, enumerate_posets
from .core import (
    EMPTY, ComponentPartition, FinitePoset, antichain, chain, connected_components,
    cover_relation, crown, disjoint_sum, dual, fence, from_covers, induced,
    is_connected, relabel, shuffle, singleton, standard, validate,
)
from .errors import (
    AxiomError, CapError, CycleError, EmptyExponentError, PosetError,
    PreconditionError, SearchExhausted, SizeError,
)
from .refinement import (
    RefinementWitness, SearchBounds, factorizations, lemma_suite, refine,
    verify_natural_law, verify_witness,
)
from .retract import (
    Retraction, find_retraction, lemma1_retraction, lift_retraction,
    prop4_transfer, verify_retraction,
)

__version__ = "0.1.0"
