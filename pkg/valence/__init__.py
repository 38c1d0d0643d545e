from .monoids import (Alphabet, Letter, SignedWord, FreeGroupElement, PolycyclicElement, IntVector, ProductElement,
                      free_reduce, fg_multiply, fg_invert, poly_eval, poly_multiply, zn_add, product_multiply,
                      is_identity, is_zero, is_dead, exponent_vector,
                      RegisterMonoid, FreeGroup, PolycyclicMonoid, FreeAbelianGroup, TrivialMonoid, DirectProduct, get_monoid)
from .automaton import (Edge, ValenceAutomaton, Acceptance, SearchBudget, SearchResult, LanguageResult,
                        search, accepts, skeleton_words, enumerate_language, used_submonoid_generators, labelled_runs)
from .dyck import (PAD, PaddedWord, is_one_sided_dyck, is_two_sided_dyck, minima, all_prefixes_positive_or_identity,
                   insert_padding, is_permissible_padding, strip_padding, iter_paddings)
from .transducer import (TransducerEdge, FiniteTransducer, AlphabeticMorphism, compose, image_of_word,
                         image_of_language, bounded_relation, normalize, trim, identity_transducer,
                         generator_change_transducer, morphism_image, morphism_preimage, morphism_to_transducer,
                         to_fst, from_fst)
from .constructions import (product_automaton, product_automaton_many, union_automaton, morphism_automaton,
                            word_problem_automaton, factor_identity_automaton, automaton_to_transducer,
                            transducer_to_automaton, normalize_multipliers, padding_construction)
from .grammar import (ContextFreeGrammar, format_grammar, trim_grammar, pda_to_cfg, fg_automaton_to_pda,
                      automaton_to_cfg, cnf_transform, cyk_member, GrammarOracle)
from .provider import load, load_automaton, load_transducer, save, to_document, from_document, dumps
