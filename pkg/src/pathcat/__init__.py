"""Exact computations in the path category of finite groupoids.

Finite groupoids and functors are stored as index arrays; fibrations, weak
equivalences and cofibrations are decided by direct checks, and the
constructions (pullbacks, path objects, factorizations, truncation,
universes) come with verifiable certificates.  On top of these sit lifting
problems, univalence instances for small universes, and the homogeneity
argument that forces certain cofibrations to be monic.
"""

__version__ = "0.1.0"

from .classifiers import (
    Certificate,
    check_two_out_of_six,
    is_cofibration,
    is_equivalence,
    is_hproposition,
    is_isofibration,
    is_monomorphism,
    is_trivial_fibration,
    section_of_trivial_fibration,
)
from .constructions import (
    Universe,
    certify_pullback,
    coherent_path_object,
    delooping_universe,
    factor_we_fib,
    finset_universe,
    path_object,
    pullback,
    truncate,
)
from .errors import (
    DomainMismatch,
    GroupError,
    InternalInconsistency,
    PathcatError,
    PreconditionError,
    SearchBoundExceeded,
    StructuralError,
    UnivalenceFailure,
)
from .groupoids import (
    FiniteGroupoid,
    GroupoidMap,
    NaturalIso,
    codiscrete,
    compose_maps,
    delooping,
    discrete,
    identity_map,
    interval,
    product,
    terminal,
    validate_groupoid,
    validate_map,
    validate_natural_iso,
)
from .groups import FiniteGroup, cyclic_group, dihedral_group, group_by_name, symmetric_group
from .kraus import (
    abelian_nonsmallness_report,
    abelian_theta,
    kraus_main,
    search_homogeneity,
    truncation_mono_check,
    u_homogenize,
)
from .lifting import LiftingProblem, llp_brute_force, realign, solve_lifting
from .search import enumerate_functors, find_natural_iso, iter_functors
from .univalence import (
    check_univalence_instance,
    complete_group_pair,
    enumerate_equivalences_over,
    is_complete_group,
    smallness_witness,
)
