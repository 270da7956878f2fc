"""hklat: even-lattice invariants and the classification of prime-order
non-symplectic automorphisms on K3^[2]-type hyperkaehler fourfolds."""

from .exact import (
    DegenerateForm,
    det_exact,
    signature_of_symmetric,
    smith_normal_form,
)
from .fqf import (
    AmbiguousGaussSum,
    FiniteQuadraticForm,
    FormInvariants,
    GroupTooLarge,
    UnsupportedRegime,
    delta_invariant,
    even_lattice_exists,
    even_lattice_exists_report,
    form_invariants,
    forms_isomorphic,
    gauss_signature,
)
from .lattices import (
    DiscriminantData,
    InvalidParameter,
    Lattice,
    LatticeExpr,
    ambient_lattice,
    catalog,
    direct_sum,
    discriminant_data,
    discriminant_form,
    is_p_elementary,
    parse_expr,
    realize,
    render_expr,
    twist,
)
from .classify import (
    EmbeddingReport,
    LatticeInvariants,
    NotPElementary,
    embed_in_L,
    genus_unique,
    hyperbolic_p_elementary_exists,
    indefinite_p_elementary_exists,
    invariants_of,
    recognize,
    split_off_U,
)
from .tables import (
    AdmissibleTriple,
    NonIntegerResult,
    UnsupportedPrime,
    enumerate_triples,
    h4_trace,
    h_star,
    lefschetz_chi,
    moduli_dimension,
)
from .involutions import (
    InvolutionEmbeddingClass,
    TwoElemInvariants,
    classify_involution_embeddings,
    figure_points,
    k3_triple_exists,
    natural_involution_shift,
    two_elementary_exists,
)
from .fixedlocus import (
    Hilb2FixedLocus,
    K3FixedLocus,
    census_chi_closed_form,
    cross_check_against_table,
    enumerate_local_actions,
    hilb2_census,
)

__version__ = "0.1.0"
