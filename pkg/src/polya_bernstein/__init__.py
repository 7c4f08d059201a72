"""Polya-urn Bernstein-type operators and numerical verification of their
sup-norm error bounds."""

from .numeric_core import (
    RealInterval,
    UNIT_INTERVAL,
    factorial_ratio,
    rising_factorial,
    strict_floor_bracket,
)
from .polya import (
    AdmissibilityError,
    PolyaParams,
    moments,
    pmf,
    pmf_matrix,
    truncated_first_moment,
    validate,
)
from .operators import (
    BUILTIN_FUNCTIONS,
    CProfile,
    FunctionSpec,
    bernstein_curve,
    bernstein_eval,
    builtin_function,
    function_from_csv,
    function_from_samples,
    modulus_of_continuity,
    operator_curve,
    polya_operator_eval,
    popoviciu_ratio,
    r_n_curve,
    r_n_eval,
)
from .analysis import (
    breakpoints,
    conjecture_scan,
    f_n_c,
    f_n_c_curve,
    n6_case_check,
    scan_sup,
    sikkema_function,
    verify_kozniewska,
    verify_lemma_claim,
)
from .reports import GridSpec, ScanReport, VerificationReport, dump_json

__version__ = "0.1.0"
