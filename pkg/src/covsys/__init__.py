"""Covering functions of finite residue-class systems, with exact arithmetic."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .constructions import GeneratorSpec, classic_cover, erdos_cover, random_system
from .cyclotomic import (
    CyclotomicElement,
    IntPolynomial,
    cyc_arith,
    cyc_scale,
    cyclotomic_poly,
    divisible_by_integer,
    exp_sum,
    fourier_identity_check,
    from_root,
)
from .errors import (
    ConstructionError,
    CovsysError,
    DocumentError,
    InvalidFrequencyError,
    InvalidModulusError,
    OrderMismatchError,
    PeriodTooLargeError,
)
from .residue import (
    DEFAULT_CAP,
    Profile,
    ResidueClass,
    ResidueSystem,
    constancy_window_size,
    is_cover,
    make_class,
    maximal_moduli,
    mean_value,
    minimal_period,
    multiplicity,
    profile,
    range_and_spread,
    system_lcm,
)
from .verify import (
    Verdict,
    VerdictReport,
    check_corollary_1_1,
    check_corollary_1_2,
    check_theorem_1_1,
    check_theorem_1_2,
    check_theorem_1_3,
    power_sum_evidence,
)
