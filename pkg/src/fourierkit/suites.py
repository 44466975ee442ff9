"""Named verification suites and the primitive catalog listing.

Each suite returns a list of :class:`PropertyReport`; a suite passes when
every report does.  These are the same checks the service's /verify
endpoint and the CLI ``verify`` subcommand run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .quadrature import DEFAULT_CONFIG, QuadratureConfig, numeric_ft
from .signals import (
    BilateralExp,
    DampedUnilatSine,
    Gaussian,
    ModSin,
    RectPulse,
    SignalExpr,
    SineToneBurst,
    UnilatNegExp,
)
from .simulate import SimConfig, cross_validate
from .spectrum import (
    PropertyReport,
    scaled_residual,
    spectrum_eval,
    symbolic_ft,
    verify_property,
)
from .systems import builtin_system
from .transforms import (
    LaplacePoint,
    check_even_relation,
    check_laplace_relation,
    check_odd_relation,
    laplace_truncated,
    numeric_laplace,
)

__all__ = [
    "STANDARD_GRID",
    "SUITE_NAMES",
    "CatalogEntry",
    "catalog_entries",
    "catalog_suite",
    "table2_suite",
    "relations_suite",
    "ode_suite",
    "run_suite",
]

STANDARD_GRID: Tuple[float, ...] = (
    -10.0, -5.0, -2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0
)

SUITE_NAMES = ("all", "table2", "relations", "catalog", "ode")


@dataclass(frozen=True)
class CatalogEntry:
    """One primitive: DSL signature, closed-form spectrum, provenance flag."""

    name: str
    signature: str
    description: str
    spectrum: str
    identity: str
    oracle_only: bool
    default: SignalExpr
    excluded: Tuple[float, ...] = ()


def catalog_entries() -> Tuple[CatalogEntry, ...]:
    return (
        CatalogEntry(
            name="rect",
            signature="rect(T1)",
            description="1 on |t| <= T1, 0 elsewhere (T1 > 0)",
            spectrum="2*T1*sinc(T1*w)",
            identity="Fourier transform of the rectangular pulse",
            oracle_only=False,
            default=RectPulse(1.0),
            excluded=(0.0,),
        ),
        CatalogEntry(
            name="unilat_exp",
            signature="unilat_exp(c)",
            description="exp(-c*t) for t >= 0, 0 for t < 0 (c > 0)",
            spectrum="1/(c + i*w)",
            identity="Fourier transform of the unilateral negative exponential",
            oracle_only=False,
            default=UnilatNegExp(1.0),
        ),
        CatalogEntry(
            name="bilateral_exp",
            signature="bilateral_exp()",
            description="exp(-|t|) on the whole line",
            spectrum="2/(1 + w^2)",
            identity="Fourier transform of the bilateral exponential",
            oracle_only=False,
            default=BilateralExp(),
        ),
        CatalogEntry(
            name="sine_burst",
            signature="sine_burst(T1, w0)",
            description="sin(w0*t) on |t| <= T1, 0 elsewhere (T1 > 0)",
            spectrum="-i*T1*(sinc(T1*(w - w0)) - sinc(T1*(w + w0)))",
            identity="Fourier transform of the finite sinusoidal tone burst",
            oracle_only=False,
            default=SineToneBurst(1.0, 2.0),
            excluded=(-2.0, 2.0),
        ),
        CatalogEntry(
            name="damped_sine",
            signature="damped_sine(c, w0)",
            description="exp(-c*t)*sin(w0*t) for t >= 0, 0 for t < 0 (c > 0)",
            spectrum="w0/((c + i*w)^2 + w0^2)",
            identity="Fourier transform of the damped unilateral sinusoid",
            oracle_only=False,
            default=DampedUnilatSine(1.0, 2.0),
        ),
        CatalogEntry(
            name="gauss",
            signature="gauss()",
            description="exp(-t^2); smooth and rapidly decaying",
            spectrum="sqrt(pi)*exp(-w^2/4)",
            identity="Gaussian spectrum (validated against the quadrature oracle only)",
            oracle_only=True,
            default=Gaussian(),
        ),
    )


def catalog_suite(
    tol: float = 1e-6,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    grid: Sequence[float] = STANDARD_GRID,
) -> List[PropertyReport]:
    """Closed-form spectrum vs quadrature for every catalog primitive."""
    reports = []
    for entry in catalog_entries():
        f = entry.default
        F = symbolic_ft(f)
        points = tuple(w for w in grid if w not in entry.excluded)
        residual = 0.0
        for w in points:
            sym = spectrum_eval(F, w)
            num = numeric_ft(f, w, cfg).value
            residual = max(residual, scaled_residual(num, sym))
        note = "closed form validated against the oracle only" if entry.oracle_only else ""
        reports.append(
            PropertyReport.from_residual(
                f"spectrum of {entry.name}", str(f), points, residual, tol, note=note
            )
        )
    return reports


def table2_suite(
    tol: float = 1e-5,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    grid: Sequence[float] = STANDARD_GRID,
) -> List[PropertyReport]:
    """Metamorphic checks of every transform property rule."""
    rect = RectPulse(1.0)
    unilat = UnilatNegExp(1.0)
    bilat = BilateralExp()
    gauss = Gaussian()

    rows: List[Tuple[str, SignalExpr, Dict, Optional[float]]] = [
        ("linearity", rect, {"a": 2.0, "b": -0.5 + 1.0j, "g": unilat}, None),
        ("time_shift", unilat, {"t0": 1.0}, None),
        ("time_shift", unilat, {"t0": -1.0}, None),
        ("time_shift", unilat, {"t0": 2.5}, None),
        ("freq_shift", bilat, {"w0": 1.0, "sign": 1}, None),
        ("freq_shift", bilat, {"w0": 1.0, "sign": -1}, None),
        ("freq_shift", bilat, {"w0": 4.0, "sign": 1}, None),
        ("freq_shift", bilat, {"w0": 4.0, "sign": -1}, None),
        ("modulation_cos", bilat, {"w0": 1.0}, None),
        ("modulation_cos", bilat, {"w0": 4.0}, None),
        ("modulation_sin", bilat, {"w0": 1.0}, None),
        ("modulation_sin", bilat, {"w0": 4.0}, None),
        ("time_scale", bilat, {"a": 0.5}, None),
        ("time_scale", bilat, {"a": 2.0}, None),
        ("time_scale", bilat, {"a": -1.0}, None),
        ("time_scale", bilat, {"a": -3.0}, None),
        ("time_reversal", unilat, {}, None),
        ("derivative", gauss, {"order": 1}, None),
        ("derivative", gauss, {"order": 2}, None),
        ("derivative", gauss, {"order": 3}, None),
        ("area", bilat, {}, 1e-8),
    ]
    reports = []
    for rule, f, params, tol_override in rows:
        reports.append(
            verify_property(rule, f, params, grid, tol_override or tol, cfg)
        )
    return reports


def relations_suite(
    tol: float = 1e-6,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    grid: Sequence[float] = STANDARD_GRID,
) -> List[PropertyReport]:
    """Cosine/sine/Laplace relation checks plus truncation consistency."""
    reports = [
        check_even_relation(RectPulse(1.0), grid, tol, cfg),
        check_even_relation(BilateralExp(), grid, tol, cfg),
        check_even_relation(Gaussian(), grid, tol, cfg),
        check_odd_relation(SineToneBurst(1.0, 5.0), grid, tol, cfg),
        check_odd_relation(ModSin(BilateralExp(), 2.0), grid, tol, cfg),
        check_laplace_relation(UnilatNegExp(1.0), (0.5, 1.0, 3.0), tol, cfg),
        check_laplace_relation(DampedUnilatSine(1.0, 2.0), (0.5, 1.0, 3.0), tol, cfg),
    ]

    # the half-line value must be the limit of truncated integrals; at T = 64
    # the unit-rate exponential tail is ~1e-28, far below the 1e-8 budget
    f = UnilatNegExp(1.0)
    s = LaplacePoint(1j)
    full = numeric_laplace(f, s, cfg).value
    truncated = laplace_truncated(f, s, 64.0, cfg)
    reports.append(
        PropertyReport.from_residual(
            "half-line truncation consistency",
            str(f),
            (1.0,),
            abs(full - truncated),
            1e-8,
            note="improper value vs proper integral over [0, 64] at s = i",
        )
    )
    return reports


def ode_suite(
    tol: float = 0.01,
    sim: SimConfig = SimConfig(),
    omegas: Sequence[float] = (0.5, 1.0, 2.0),
) -> List[PropertyReport]:
    """Steady-state simulation vs rational response for the applications."""
    return [
        cross_validate(builtin_system("bandpass", wc=1.0), omegas, tol, sim),
        cross_validate(builtin_system("mems", K=1.0, D=1.0, M=1.0), omegas, tol, sim),
    ]


def run_suite(
    name: str,
    tol: Optional[float] = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> List[PropertyReport]:
    """Run one named suite ('all' chains every suite with its own default tol)."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    reports: List[PropertyReport] = []
    if name in ("all", "catalog"):
        reports.extend(catalog_suite(tol or 1e-6, cfg))
    if name in ("all", "table2"):
        reports.extend(table2_suite(tol or 1e-5, cfg))
    if name in ("all", "relations"):
        reports.extend(relations_suite(tol or 1e-6, cfg))
    if name in ("all", "ode"):
        reports.extend(ode_suite(tol or 0.01))
    return reports
