"""Named verification suites and figure-data emission.

Each suite realizes a family of claims as machine-checkable cases and returns
a deterministic report: running a suite twice produces bit-identical output.
Every case is normalized to "pass iff measured <= bound"; checks that are
naturally lower bounds (a residual must EXCEED a floor on states expected to
fail the identity) store the negated value and the negated floor, and
error-expectation cases store 0.0 when the error was raised, 1.0 when not.
"""

import math
import os

import numpy as np
from dataclasses import dataclass, field

from .errors import ConfigurationError, DegenerateInputError
from . import io as sqio
from .fock import (bogoliubov_annihilate, coherent_state, outcome_ratio,
                   squeezed_vacuum, suggested_truncation)
from .gaussian import (AngularAverageSpec, GaussianComponent, GaussianWignerSpec,
                       angular_average_purity, angular_average_value, norm_ratio,
                       outcome_factors, spec_norm_ratio)
from .phasespace import (GridGeometry, add_photon, default_geometry, grid_metrics,
                         identity_residual, l1_relative_residual, photon_outcomes,
                         rasterize, refined_geometry, renormalize,
                         wigner_from_density)
from .special import elliptic_k

SUITE_NAMES = ("pure-identity", "impure-difference", "fock-ratio", "commutator",
               "mixtures", "angular-average", "bogoliubov", "negative-cases")

_NEG_INV_PI = -1.0 / math.pi


@dataclass
class SuiteConfig:
    """Suite knobs; anything left unset falls back to the suite's defaults.

    ``sigma_list`` doubles as the squeeze-parameter grid for the number-basis
    suites (fock-ratio, bogoliubov), where the natural parameter is z.
    """

    tolerances: dict = field(default_factory=dict)
    trunc: int | None = None
    geometry: GridGeometry | None = None
    sigma_list: tuple = ()
    theta_list: tuple = ()

    def __post_init__(self):
        for name, value in self.tolerances.items():
            if not value > 0:
                raise ConfigurationError(f"tolerance {name!r} must be positive")

    def tol(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))


@dataclass
class CaseResult:
    label: str
    measured: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.measured <= self.bound

    def to_obj(self) -> dict:
        return {"label": self.label, "measured": self.measured,
                "bound": self.bound, "pass": self.passed}


@dataclass
class VerificationReport:
    suite: str
    cases: list
    artifacts: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def to_obj(self) -> dict:
        return {"suite": self.suite, "cases": [c.to_obj() for c in self.cases],
                "artifacts": list(self.artifacts)}


def _upper(label: str, measured: float, bound: float) -> CaseResult:
    return CaseResult(label, float(measured), float(bound))


def _floor(label: str, measured: float, floor: float) -> CaseResult:
    # lower-bound check, stored negated so pass <=> measured <= bound holds
    return CaseResult(label, -float(measured), -float(floor))


def _expect_degenerate(label: str, fn) -> CaseResult:
    try:
        fn()
    except DegenerateInputError:
        return CaseResult(label, 0.0, 0.0)
    return CaseResult(label, 1.0, 0.0)


def _outcome_checks(label: str, spec, cfg: SuiteConfig, closed_ratio: float,
                    check_origin: bool = True) -> list:
    """Shared positive-case body: residual, ratio against closed form, origin."""
    geometry = cfg.geometry or refined_geometry(spec)
    grid = rasterize(spec, geometry)
    added, subtracted = photon_outcomes(grid)
    ia, isub = added.integral(), subtracted.integral()
    ratio = ia / isub
    residual = l1_relative_residual(added, subtracted, ratio)
    cases = [
        _upper(f"{label}-residual", residual, cfg.tol("residual", 1e-4)),
        _upper(f"{label}-ratio-err", abs(ratio - closed_ratio), cfg.tol("ratio", 1e-3)),
    ]
    if check_origin:
        origin = grid_metrics(renormalize(added)).origin_value
        cases.append(_upper(f"{label}-origin-err", abs(origin - _NEG_INV_PI),
                            cfg.tol("origin", 1e-3)))
    return cases


def _suite_pure_identity(cfg: SuiteConfig) -> list:
    sigmas = cfg.sigma_list or (0.5, 2.0, 2.2, 4.0)
    thetas = cfg.theta_list or (0.0, math.pi / 4.0)
    cases = []
    for sx in sigmas:
        for th in thetas:
            spec = GaussianWignerSpec.pure_state(sx, th)
            cases += _outcome_checks(f"sx{sx:g}-th{th:.4g}", spec, cfg, norm_ratio(sx))
    return cases


def _suite_impure_difference(cfg: SuiteConfig) -> list:
    sx, sp = 4.0, 0.5
    spec = GaussianWignerSpec.single(sx, sp)
    geometry = cfg.geometry or refined_geometry(spec)
    grid = rasterize(spec, geometry)
    added, subtracted = photon_outcomes(grid)
    ratio = added.integral() / subtracted.integral()
    residual = l1_relative_residual(added, subtracted, ratio)
    w_plus = renormalize(added)
    w_minus = renormalize(subtracted)
    maxdiff = float(np.max(np.abs(w_plus.values - w_minus.values)))
    f_plus, f_minus = outcome_factors(0.0, 0.0, sx, sp)
    return [
        _floor("impure-residual-floor", residual, cfg.tol("residual_floor", 0.05)),
        _floor("impure-outcome-maxdiff-floor", maxdiff, cfg.tol("maxdiff_floor", 0.01)),
        _upper("impure-ratio-err", abs(ratio - spec_norm_ratio(spec)),
               cfg.tol("ratio", 1e-3)),
        _floor("impure-origin-factor-gap", abs(f_plus - f_minus), 0.1),
    ]


def _suite_fock_ratio(cfg: SuiteConfig) -> list:
    zs = cfg.sigma_list or (0.1, math.log(2.0), 1.0)
    cases = []
    for z in zs:
        n = cfg.trunc or suggested_truncation(z)
        result = outcome_ratio(squeezed_vacuum(z, n))
        cases.append(_upper(f"z{z:.4g}-ratio-err", abs(result.ratio + math.tanh(z)),
                            cfg.tol("ratio", 1e-6)))
        cases.append(_upper(f"z{z:.4g}-residual", result.residual,
                            cfg.tol("residual", 1e-6)))
    return cases


def _commutator_inputs(cfg: SuiteConfig):
    for sx in (0.5, 2.0, 2.2, 4.0):
        for th in (0.0, math.pi / 4.0):
            spec = GaussianWignerSpec.pure_state(sx, th)
            yield f"pure-sx{sx:g}-th{th:.4g}", rasterize(spec, cfg.geometry)
    impure = GaussianWignerSpec.single(4.0, 0.5)
    yield "impure-sx4-sp0.5", rasterize(impure, cfg.geometry)
    mix = GaussianWignerSpec.two_angle_mixture(0.5, 0.0, math.pi / 4.0, 2.2)
    yield "two-angle-mixture", rasterize(mix, cfg.geometry)
    yield "angular-average", rasterize(AngularAverageSpec(2.2), cfg.geometry)
    yield "coherent-alpha1", wigner_from_density(coherent_state(1.0, cfg.trunc or 40))


def _suite_commutator(cfg: SuiteConfig) -> list:
    bound = cfg.tol("commutator", 1e-4)
    cases = []
    for label, grid in _commutator_inputs(cfg):
        added, subtracted = photon_outcomes(grid)
        gap = added.integral() - subtracted.integral()
        cases.append(_upper(f"{label}-weight-gap", abs(gap - 1.0), bound))
    return cases


def _suite_mixtures(cfg: SuiteConfig) -> list:
    sx = 2.2
    samples = ((0.5, 0.0, math.pi / 4.0), (0.3, 0.2, 1.0), (0.75, 1.2, 2.9))
    cases = []
    for weight, th1, th2 in samples:
        spec = GaussianWignerSpec.two_angle_mixture(weight, th1, th2, sx)
        label = f"two-angle-P{weight:g}-th{th1:g}-{th2:g}"
        cases += _outcome_checks(label, spec, cfg, spec_norm_ratio(spec))
    unequal = GaussianWignerSpec((GaussianComponent.pure(0.0, 2.0, 0.5),
                                  GaussianComponent.pure(0.0, 3.0, 0.5)))
    geometry = cfg.geometry or refined_geometry(unequal)
    chk = identity_residual(rasterize(unequal, geometry))
    cases.append(_floor("unequal-widths-residual-floor", chk.residual,
                        cfg.tol("mixture_floor", 0.01)))
    return cases


def _suite_angular_average(cfg: SuiteConfig) -> list:
    sx = 2.2
    spec = AngularAverageSpec(sx)
    sp = 1.0 / sx
    closed_ratio = (sx ** 2 + sp ** 2 + 2.0) / (sx ** 2 + sp ** 2 - 2.0)
    cases = _outcome_checks("angavg", spec, cfg, closed_ratio)

    geometry = cfg.geometry or refined_geometry(spec)
    grid_purity = grid_metrics(rasterize(spec, geometry)).purity
    closed = angular_average_purity(sx)
    cases.append(_upper("angavg-purity-grid-vs-closed", abs(grid_purity - closed),
                        cfg.tol("purity", 1e-4)))
    # convention probe: evaluating K at modulus instead of parameter must NOT match
    s4 = sx ** 4
    m = ((1.0 - s4) / (1.0 + s4)) ** 2
    alt = 4.0 * sx ** 2 * elliptic_k(math.sqrt(m)) / (math.pi * (1.0 + s4))
    cases.append(_floor("elliptic-convention-alt-mismatch", abs(alt - grid_purity), 1e-3))

    sigmas = 1.0 + 0.1 * np.arange(41)
    purities = np.array([angular_average_purity(s) for s in sigmas])
    cases.append(_upper("purity-strictly-decreasing", float(np.max(np.diff(purities))),
                        -1e-6))
    cases.append(_upper("purity-at-vacuum", abs(purities[0] - 1.0), 1e-10))
    return cases


def _suite_bogoliubov(cfg: SuiteConfig) -> list:
    zs = cfg.sigma_list or (0.1, math.log(2.0), 1.0)
    cases = []
    for z in zs:
        n = cfg.trunc or suggested_truncation(z)
        state = squeezed_vacuum(-z, n)
        killed = bogoliubov_annihilate(z, state)
        cases.append(_upper(f"z{z:.4g}-annihilation", killed.norm() / state.norm(),
                            cfg.tol("annihilation", 1e-6)))
    # sign probe: the same operator on the oppositely squeezed state must NOT vanish
    z = math.log(2.0)
    state = squeezed_vacuum(z, suggested_truncation(z))
    cases.append(_floor("opposite-pairing-probe",
                        bogoliubov_annihilate(z, state).norm() / state.norm(), 0.1))
    return cases


def _suite_negative_cases(cfg: SuiteConfig) -> list:
    cases = [
        _expect_degenerate(
            "vacuum-grid-degenerate-error",
            lambda: identity_residual(rasterize(GaussianWignerSpec.pure_state(1.0),
                                                cfg.geometry))),
        _expect_degenerate(
            "vacuum-fock-degenerate-error",
            lambda: outcome_ratio(squeezed_vacuum(0.0, cfg.trunc or 33))),
    ]

    coherent_grid = wigner_from_density(coherent_state(1.0, cfg.trunc or 40))
    cases.append(_floor("coherent-residual-floor",
                        identity_residual(coherent_grid).residual,
                        cfg.tol("coherent_floor", 0.1)))

    unequal = GaussianWignerSpec((GaussianComponent.pure(0.0, 2.0, 0.5),
                                  GaussianComponent.pure(0.0, 3.0, 0.5)))
    chk = identity_residual(rasterize(unequal, cfg.geometry or refined_geometry(unequal)))
    cases.append(_floor("unequal-widths-residual-floor", chk.residual,
                        cfg.tol("mixture_floor", 0.01)))

    impure = GaussianWignerSpec.single(4.0, 0.5)
    chk = identity_residual(rasterize(impure, cfg.geometry or refined_geometry(impure)))
    cases.append(_floor("impure-residual-floor", chk.residual,
                        cfg.tol("impure_floor", 0.05)))

    pure = GaussianWignerSpec.pure_state(2.0)
    grid = rasterize(pure, cfg.geometry or refined_geometry(pure))
    second = renormalize(add_photon(grid))
    cases.append(_floor("second-round-residual-floor",
                        identity_residual(second).residual,
                        cfg.tol("second_round_floor", 0.01)))
    return cases


_SUITES = {
    "pure-identity": _suite_pure_identity,
    "impure-difference": _suite_impure_difference,
    "fock-ratio": _suite_fock_ratio,
    "commutator": _suite_commutator,
    "mixtures": _suite_mixtures,
    "angular-average": _suite_angular_average,
    "bogoliubov": _suite_bogoliubov,
    "negative-cases": _suite_negative_cases,
}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> VerificationReport:
    if name not in _SUITES:
        raise ConfigurationError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    cfg = cfg or SuiteConfig()
    return VerificationReport(name, _SUITES[name](cfg))


def run_all(cfg: SuiteConfig | None = None) -> list:
    return [run_suite(name, cfg) for name in SUITE_NAMES]


# --- figure data ---

def _save_table(path: str, headers, columns) -> str:
    lines = [f"# {h}" for h in headers]
    for row in zip(*columns):
        lines.append(",".join(f"{v:.17g}" for v in row))
    sqio.atomic_write(path, "\n".join(lines) + "\n")
    return path


def figure_data(which: str, out_dir: str, cfg: SuiteConfig | None = None,
                seed: int | None = None) -> list:
    """Emit the data files behind one of the three reference figures.

    fig1: impure input (sigma_x 4, sigma_p 1/2) -- renormalized added and
    subtracted outcome grids plus their pointwise difference.
    fig2: renormalized added outcomes of the two-angle mixture and of the
    angular average, both at sigma_x 2.2.
    fig3: radial log10 profile of the angular average and the closed-form
    purity table over sigma_x in [1, 5].

    ``seed`` is only recorded in the output headers.
    """
    cfg = cfg or SuiteConfig()
    os.makedirs(out_dir, exist_ok=True)
    tail = [] if seed is None else [f"seed {seed}"]
    paths = []
    if which == "fig1":
        spec = GaussianWignerSpec.single(4.0, 0.5)
        grid = rasterize(spec, cfg.geometry or default_geometry(spec))
        added, subtracted = photon_outcomes(grid)
        w_plus, w_minus = renormalize(added), renormalize(subtracted)
        diff = w_plus.with_values(w_plus.values - w_minus.values)
        for name, g, note in (("fig1_added.csv", w_plus, "renormalized added outcome"),
                              ("fig1_subtracted.csv", w_minus,
                               "renormalized subtracted outcome"),
                              ("fig1_difference.csv", diff, "added minus subtracted")):
            path = os.path.join(out_dir, name)
            sqio.save_grid(path, g, [f"input sigma_x=4 sigma_p=0.5; {note}"] + tail)
            paths.append(path)
    elif which == "fig2":
        mix = GaussianWignerSpec.two_angle_mixture(0.5, 0.0, math.pi / 4.0, 2.2)
        av = AngularAverageSpec(2.2)
        for name, spec, note in (
                ("fig2_two_angle_outcome.csv", mix,
                 "two-angle mixture P=0.5 theta=0,pi/4 sigma_x=2.2"),
                ("fig2_angular_average_outcome.csv", av, "angular average sigma_x=2.2")):
            grid = rasterize(spec, cfg.geometry or refined_geometry(spec))
            outcome = renormalize(add_photon(grid))
            path = os.path.join(out_dir, name)
            sqio.save_grid(path, outcome, [f"{note}; renormalized added outcome"] + tail)
            paths.append(path)
    elif which == "fig3":
        radii = 0.05 * np.arange(121)
        values = angular_average_value(2.2, radii, 0.0)
        paths.append(_save_table(os.path.join(out_dir, "fig3_radial_profile.csv"),
                                 ["columns: radius,log10_wigner (sigma_x=2.2)"] + tail,
                                 (radii, np.log10(values))))
        sigmas = 1.0 + 0.1 * np.arange(41)
        purities = [angular_average_purity(s) for s in sigmas]
        paths.append(_save_table(os.path.join(out_dir, "fig3_purity.csv"),
                                 ["columns: sigma_x,purity"] + tail,
                                 (sigmas, purities)))
    else:
        raise ConfigurationError(f"unknown figure {which!r}; choose fig1, fig2 or fig3")
    return paths
