"""Exact weight systems, hyperplane counts and non-smoothness certificates for types B, C, D."""
from .criteria import (
    Certificate,
    RankProfile,
    check_bms,
    check_nosm,
    check_two_lambda,
    exterior_rank,
    rank_contradiction,
    scan,
    witness_templates,
)
from .errors import (
    CertificateInvalidError,
    HyperplaneRankError,
    LatticeError,
    OracleScaleError,
    ParseError,
    RankBoundsError,
    UnsupportedTypeError,
    WeylcertError,
)
from .excision import Hyperplane, hyperplane_from_normal, roots_off, span_hyperplane, sxa_lower_bound, weights_off
from .rootsys import (
    RootSystem,
    SimpleSubsystem,
    Weight,
    boundary_subset,
    build_root_system,
    pairing,
    parse_weight,
    pc_family,
    subsystem_simple_system,
)
from .weightset import (
    WeightSystem,
    conv_membership,
    delta_indicator,
    freudenthal_multiplicity,
    lattice_membership,
    weight_system,
    weyl_dimension,
)
from .weyl import OrbitSet, dominant_representative, orbit, reflect

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
