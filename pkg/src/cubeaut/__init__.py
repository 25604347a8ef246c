"""cubeaut: automorphism groups of universal covers of Salvetti complexes.

Normal cube paths, portrait-represented stabilizer automorphisms,
explicit topological generators and decision procedures for the
discreteness / simplicity / local-compactness behaviour of the full
automorphism group, for any finite defining graph.
"""

from .alphabet import (
    Alphabet,
    DefiningGraph,
    GuardExceeded,
    LabelMap,
    build_alphabet,
    enumerate_label_isomorphisms,
    enumerate_letters,
    is_label_isomorphism,
    load_defining_graph,
    tau,
)
from .words import (
    InvalidLetterError,
    WordSyntaxError,
    build_cube_automaton,
    build_normal_automaton,
    children_normal,
    concat_letter,
    equivalent,
    format_word,
    invert_word,
    is_normal,
    l1_distance,
    normalize,
    parse_word,
    reduce_word,
)
from .geometry import (
    TYPE1,
    TYPE2,
    TYPE3,
    Ball,
    classify_type,
    compatible,
    enumerate_ball,
    same_reductions,
)
from .automorphisms import (
    ElementSyntaxError,
    GroupElement,
    agree_on_ball,
    at_origin,
    at_vertex,
    check_axioms,
    conjugate_generator,
    format_element,
    identity_element,
    parse_element,
    peel_stabilizer,
    portrait_of,
    topological_generators,
    translation,
)
from .analysis import (
    HypothesisReport,
    admits_star_n,
    build_report,
    ck_link_fact,
    ck_orbit_experiment,
    flexibly_vertex_transitive,
    has_ad_palindrome_pattern,
    is_discrete,
    link_graph,
)
from .oracle import oracle_classes, oracle_equal, pile

__version__ = "0.1.0"
