"""Construct and certify 3-pyramidal Steiner triple systems."""

from .builder import (
    admissible_3pyramidal,
    build_3pyramidal,
    build_dihedral,
    build_f_pyramidal_examples,
    build_projective,
    cyclic_system,
    develop,
    forbidden_class,
    group_descriptor_for,
)
from .errors import (
    ConstructionError,
    DomainError,
    NonExistenceError,
    SearchLimitExceeded,
    StructureError,
)
from .families import (
    LEMMA_TABLE,
    DifferenceFamily,
    PartialSpread,
    cyclic_df,
    delta,
    df_dihedral,
    df_lemma_z12n,
    df_projective,
    df_search,
    df_v3mod48,
    df_v7_v15,
    df_v9,
    df_v19mod48,
    infer_spread,
    lemma_spread,
    validate_df,
)
from .groups import (
    Cyclic,
    Dihedral,
    GroupSpec,
    involutions,
    parse_descriptor,
    patterned_starter,
    subgroups_of_prime_order,
)
from .sequences import (
    ExtendedLangfordSequence,
    ExtendedSkolemSequence,
    find_extended_langford,
    find_extended_skolem,
    langford_guaranteed,
    skolem_exists,
    validate_extended_langford,
    validate_extended_skolem,
)
from .system import Infinity, TripleSystem
from .verifier import involution_census, verify_pyramidal, verify_sts

__version__ = "0.1.0"
