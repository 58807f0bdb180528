"""Conley-Zehnder indices of Reeb orbits on the link of the A_n singularity."""

from .errors import (
    DegenerateOrbitError,
    DegeneratePointError,
    InternalInconsistencyError,
    InvalidCertificateError,
    NormalizationError,
    NotInSigmaStarError,
    PreconditionError,
    ReebCZError,
    RegimeError,
    SamplingError,
)
from .exact import Angle, Rational, as_rational, floor_div, is_resonant
from .geometry import Family, LinkParams, eval_f, eval_H, sample_link, tangent_frame
from .dynamics import OrbitDescriptor, enumerate_simple_orbits, flow_closed_form, flow_rk4, orbit, return_map
from .index import (
    RotationBlock,
    RotationPath,
    choose_eps,
    cz_lens,
    cz_link_closed_form,
    cz_link_simplified,
    cz_link_via_crossing,
    cz_path,
    cz_rotation,
)
from .ranks import RankTable, check_thm_pattern, conjugacy_class_count, tally_ranks
from .lens import CyclicAction, check_lens_hypersurface, lens_orbit_table
from .verify import RunConfig, VerificationReport, run_verification

__version__ = "0.1.0"
