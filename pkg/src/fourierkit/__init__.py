"""fourierkit: symbolic-numeric Fourier analysis of continuous-time signals.

Closed-form spectra are derived structurally from a signal grammar and
cross-checked against an adaptive-quadrature oracle; rational frequency
responses of differential systems are cross-checked against time-domain
simulation.  The package is wrapped by a FastAPI service
(``fourierkit.service``) with the command line acting as a thin client.
"""

__version__ = "0.1.0"

from .errors import (
    CausalityViolation,
    ConstraintViolation,
    DslSyntaxError,
    ExcludedPoint,
    ExistenceViolation,
    FourierKitError,
    InvalidSystem,
    NoConvergence,
    NotSettled,
    ParityViolation,
    RootFindingFailure,
    StepTooLarge,
    UnstableSystem,
    UnsupportedNode,
)
from .signals import (
    BilateralExp,
    DampedUnilatSine,
    DecayBound,
    Derivative,
    FreqShiftExp,
    Gaussian,
    LinComb,
    ModCos,
    ModSin,
    Parity,
    RectPulse,
    SignalExpr,
    SignalMeta,
    SineToneBurst,
    TimeReverse,
    TimeScale,
    TimeShift,
    UnilatNegExp,
    eval_signal,
    signal_metadata,
)
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    abs_integrability_check,
    improper_integral,
    numeric_ft,
)
from .spectrum import (
    PropertyReport,
    SpectrumExpr,
    area_under,
    spectrum_eval,
    symbolic_ft,
    verify_property,
)
from .systems import (
    DiffEqSystem,
    PoleSet,
    RationalResponse,
    builtin_system,
    derive_freq_response,
    eval_freq_response,
    poles,
)
from .transforms import (
    LaplacePoint,
    check_even_relation,
    check_laplace_relation,
    check_odd_relation,
    numeric_cosine_ft,
    numeric_laplace,
    numeric_sine_ft,
)
from .simulate import (
    SimConfig,
    SteadyStateMeasurement,
    cross_validate,
    measure_steady_state,
    simulate_lti,
)
from .dsl import parse_omega_spec, parse_signal_dsl, parse_system_spec, to_dsl
