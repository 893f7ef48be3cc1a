"""hoopforge: a finite-model workbench for hoops and their split
extensions, strong external actions, and L-algebra semidirect products.
"""

__version__ = "0.1.0"

from hoopforge.hoops import (  # noqa: F401
    FiniteHoop,
    VarietyReport,
    classify,
    direct_product,
    enumerate_hoops,
    godel_chain,
    join,
    leq,
    lukasiewicz_chain,
    meet,
    minimum,
    standard_corpus,
    trivial_hoop,
    validate_hoop,
)
from hoopforge.terms import (  # noqa: F401
    Identity,
    Term,
    eval_term,
    format_algebra,
    holds,
    parse_algebra,
    parse_identity,
    parse_term,
)
from hoopforge.morphisms import (  # noqa: F401
    Congruence,
    Filter,
    Homomorphism,
    all_homs,
    canonical_form,
    congruence_of_filter,
    filter_of_congruence,
    filters,
    homomorphism,
    is_homomorphism,
    iso,
    kernel,
    quotient,
)
