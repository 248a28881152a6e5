"""Truncated number-basis states and ladder operations.

Everything here works in a finite basis |0>..|N-1> with explicit truncation
budgets: operations that push probability weight past the basis edge refuse to
run (TruncationError) instead of silently corrupting norms.

Conventions: hbar = 1, quadratures x = (a + a^dag)/sqrt(2), p = i(a^dag - a)/sqrt(2),
so the vacuum has <x^2> = <p^2> = 1/2.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import ConfigurationError, DegenerateInputError, TruncationError
from typing import NamedTuple

#: Probability weight allowed past the truncation edge before operations refuse.
TRUNCATION_BUDGET = 1e-10

_HERMITICITY_TOL = 1e-12
_TRACE_TOL = 1e-10
_EIGENVALUE_FLOOR = -1e-10


@dataclass
class FockVector:
    """State vector in the truncated number basis.

    Args:
        trunc: basis size N (>= 2); amplitudes cover |0>..|N-1>.
        amps: complex array of shape (N,).
    """

    trunc: int
    amps: np.ndarray

    def __post_init__(self):
        if self.trunc < 2:
            raise ConfigurationError("FockVector needs trunc >= 2")
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (self.trunc,):
            raise ConfigurationError(
                f"amps shape {self.amps.shape} does not match trunc {self.trunc}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "FockVector":
        n = self.norm()
        if n < 1e-14:
            raise DegenerateInputError("cannot normalize a zero vector")
        return FockVector(self.trunc, self.amps / n)

    def mean_photon(self) -> float:
        w = np.abs(self.amps) ** 2
        return float(np.sum(np.arange(self.trunc) * w) / np.sum(w))

    def inner(self, other: "FockVector") -> complex:
        _check_same_trunc(self, other)
        return complex(np.vdot(self.amps, other.amps))


def _check_same_trunc(a, b):
    if a.trunc != b.trunc:
        raise ConfigurationError(f"truncation mismatch: {a.trunc} vs {b.trunc}")


@dataclass
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator in the number basis."""

    trunc: int
    elems: np.ndarray

    def __post_init__(self):
        if self.trunc < 2:
            raise ConfigurationError("DensityMatrix needs trunc >= 2")
        self.elems = np.asarray(self.elems, dtype=complex)
        if self.elems.shape != (self.trunc, self.trunc):
            raise ConfigurationError("elems must be a square trunc x trunc matrix")
        herm = np.max(np.abs(self.elems - self.elems.conj().T))
        if herm > _HERMITICITY_TOL:
            raise ConfigurationError(f"not Hermitian: max asymmetry {herm:.2e}")
        tr = np.trace(self.elems).real
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ConfigurationError(f"trace {tr!r} deviates from 1 beyond tolerance")
        lo = float(np.min(np.linalg.eigvalsh(self.elems)))
        if lo < _EIGENVALUE_FLOOR:
            raise ConfigurationError(f"negative eigenvalue {lo:.2e} below tolerance")

    @classmethod
    def from_pure(cls, vec: FockVector) -> "DensityMatrix":
        v = vec.normalized().amps
        return cls(vec.trunc, np.outer(v, v.conj()))

    @classmethod
    def mixture(cls, weights, vecs) -> "DensityMatrix":
        """Convex mixture of pure states (weights must sum to 1)."""
        if len(weights) != len(vecs) or not vecs:
            raise ConfigurationError("mixture needs matching, non-empty weights/vecs")
        n = vecs[0].trunc
        rho = np.zeros((n, n), dtype=complex)
        for w, v in zip(weights, vecs):
            if v.trunc != n:
                raise ConfigurationError("mixture components must share trunc")
            u = v.normalized().amps
            rho += w * np.outer(u, u.conj())
        return cls(n, rho)


@dataclass
class SqueezeParams:
    """Squeeze magnitude and phase; the magnitude is kept non-negative, a sign
    flip is the phi -> phi + pi member of the same family."""

    z: float
    phi: float = 0.0

    def __post_init__(self):
        if self.z < 0:
            raise ConfigurationError("SqueezeParams.z must be >= 0; use phi for the sign")


def lowering_matrix(trunc: int) -> np.ndarray:
    """Matrix of the annihilation operator: a|n> = sqrt(n)|n-1>."""
    a = np.zeros((trunc, trunc))
    idx = np.arange(1, trunc)
    a[idx - 1, idx] = np.sqrt(idx)
    return a


def annihilate(state: FockVector) -> FockVector:
    """Apply the annihilation operator: out[n] = sqrt(n+1) * in[n+1].

    Never loses weight (the top amplitude maps downward), so no budget check.
    """
    out = np.zeros_like(state.amps)
    n = np.arange(1, state.trunc)
    out[:-1] = np.sqrt(n) * state.amps[1:]
    return FockVector(state.trunc, out)


def create(state: FockVector) -> FockVector:
    """Apply the creation operator: out[n] = sqrt(n) * in[n-1].

    The top input amplitude would leave the basis; if its weight exceeds the
    truncation budget the operation refuses.
    """
    top = abs(state.amps[-1]) ** 2
    if top > TRUNCATION_BUDGET:
        raise TruncationError(
            f"create would lose weight {state.trunc * top:.3e} past the basis edge; "
            "enlarge trunc",
            lost_weight=state.trunc * top,
        )
    out = np.zeros_like(state.amps)
    n = np.arange(1, state.trunc)
    out[1:] = np.sqrt(n) * state.amps[:-1]
    return FockVector(state.trunc, out)


def suggested_truncation(z: float) -> int:
    """Basis size that keeps squeezed-vacuum truncation loss under budget."""
    return int(np.ceil(32.0 * np.cosh(2.0 * z)))


def squeezed_vacuum(z: float, trunc: int | None = None) -> FockVector:
    """Squeezed vacuum with position width sigma_x = exp(-z), unit norm.

    Amplitudes occupy even levels only; they follow the two-step recurrence
    c_{2m+2} / c_{2m} = -tanh(z) sqrt((2m+1)(2m+2)) / (2(m+1)) starting from
    c_0 = 1/sqrt(cosh z). The untruncated state is normalized, so the retained
    weight directly measures the truncation loss.

    Args:
        z: squeeze parameter, either sign (z > 0 narrows x, z < 0 widens it).
        trunc: basis size; defaults to suggested_truncation(z).

    Raises:
        TruncationError: if the tail weight beyond ``trunc`` exceeds budget.
    """
    if trunc is None:
        trunc = suggested_truncation(z)
    if trunc < 2:
        raise ConfigurationError("squeezed_vacuum needs trunc >= 2")
    c = np.zeros(trunc)
    c[0] = 1.0 / np.sqrt(np.cosh(z))
    t = np.tanh(z)
    for j in range(2, trunc, 2):
        m = (j - 2) // 2
        c[j] = c[j - 2] * (-t) * np.sqrt((2 * m + 1) * (2 * m + 2)) / (2 * (m + 1))
    tail = 1.0 - float(np.sum(c * c))
    if tail > TRUNCATION_BUDGET:
        raise TruncationError(
            f"trunc {trunc} keeps only 1 - {tail:.3e} of the squeezed vacuum; "
            f"suggested trunc >= {suggested_truncation(z)}",
            lost_weight=tail,
            suggested_trunc=suggested_truncation(z),
        )
    c /= np.linalg.norm(c)
    return FockVector(trunc, c)


def coherent_state(alpha: complex, trunc: int) -> FockVector:
    """Displaced vacuum with amplitude alpha, renormalized after truncation."""
    if trunc < 2:
        raise ConfigurationError("coherent_state needs trunc >= 2")
    amps = np.zeros(trunc, dtype=complex)
    amps[0] = np.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(1, trunc):
        amps[n] = amps[n - 1] * alpha / np.sqrt(n)
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    if tail > TRUNCATION_BUDGET:
        raise TruncationError(
            f"trunc {trunc} keeps only 1 - {tail:.3e} of the coherent state",
            lost_weight=tail,
        )
    return FockVector(trunc, amps / np.linalg.norm(amps))


def squeeze_operator(z, trunc: int, phi: float | None = None) -> np.ndarray:
    """Matrix exponential of the squeeze generator (zeta a^2 - zeta* a^dag^2)/2.

    Accepts either a SqueezeParams or a plain float z (any sign; phi may be
    given separately). Unitary on the lower half of the basis; the top rows
    feel the truncation, which is why callers should size trunc generously.
    """
    if isinstance(z, SqueezeParams):
        zeta = z.z * np.exp(1j * z.phi)
    else:
        zeta = float(z) * np.exp(1j * (phi or 0.0))
    a = lowering_matrix(trunc)
    gen = (zeta * (a @ a) - np.conj(zeta) * (a.T @ a.T)) / 2.0
    if zeta.imag == 0.0:
        gen = gen.real
    return expm(gen)


def displacement_operator(alpha: complex, trunc: int) -> np.ndarray:
    """Matrix exponential of alpha a^dag - alpha* a."""
    a = lowering_matrix(trunc)
    gen = alpha * a.T - np.conj(alpha) * a
    if complex(alpha).imag == 0.0:
        gen = np.real(gen)
    return expm(gen)


def bogoliubov_annihilate(z: float, state: FockVector) -> FockVector:
    """Apply a cosh(z) - a^dag sinh(z) (hyperbolic mix of the ladder pair).

    Annihilates the squeezed vacuum whose position width is exp(+z), i.e.
    squeezed_vacuum(-z).
    """
    lo = annihilate(state)
    hi = create(state)
    return FockVector(state.trunc, np.cosh(z) * lo.amps - np.sinh(z) * hi.amps)


class OutcomeRatio(NamedTuple):
    ratio: complex
    residual: float


def outcome_ratio(state: FockVector) -> OutcomeRatio:
    """Proportionality between the subtracted and added outcomes.

    Computes the least-squares scalar c minimizing || a psi - c a^dag psi ||,
    c = <a^dag psi | a psi> / ||a^dag psi||^2, together with the relative
    residual || a psi - c a^dag psi || / || a psi ||. When the two outcomes
    are parallel (squeezed vacuum), c = -tanh(z) up to truncation noise.

    Raises:
        DegenerateInputError: when a psi vanishes (vacuum input: the outcome
            ratio diverges there, the same exclusion as unit position width).
    """
    added = create(state)
    subbed = annihilate(state)
    sub_sq = float(np.vdot(subbed.amps, subbed.amps).real)
    norm_sq = float(np.vdot(state.amps, state.amps).real)
    if sub_sq < 1e-12 * max(norm_sq, 1e-300):
        raise DegenerateInputError(
            "outcome ratio undefined on (near-)vacuum input: the subtracted "
            "outcome vanishes, matching the unit-width exclusion"
        )
    add_sq = float(np.vdot(added.amps, added.amps).real)
    c = complex(np.vdot(added.amps, subbed.amps)) / add_sq
    res = float(np.linalg.norm(subbed.amps - c * added.amps) / np.sqrt(sub_sq))
    return OutcomeRatio(c, res)


class StateMetrics(NamedTuple):
    norm: float
    purity: float
    mean_photon: float


def state_metrics(state) -> StateMetrics:
    """Norm/trace, purity and mean photon number of a vector or density matrix."""
    if isinstance(state, FockVector):
        w = np.abs(state.amps) ** 2
        total = float(np.sum(w))
        nbar = float(np.sum(np.arange(state.trunc) * w) / total)
        return StateMetrics(float(np.sqrt(total)), 1.0, nbar)
    if isinstance(state, DensityMatrix):
        tr = float(np.trace(state.elems).real)
        purity = float(np.trace(state.elems @ state.elems).real)
        nbar = float(np.sum(np.arange(state.trunc) * np.diag(state.elems).real) / tr)
        return StateMetrics(tr, purity, nbar)
    raise ConfigurationError(f"state_metrics cannot handle {type(state).__name__}")


def quadrature_moments(state) -> tuple[float, float]:
    """Second moments (<x^2>, <p^2>), non-central so displacement is covered.

    Used to size phase-space grids: the grid must extend several times the
    root-mean-square spread in each quadrature.
    """
    if isinstance(state, FockVector):
        rho = DensityMatrix.from_pure(state).elems
        trunc = state.trunc
    elif isinstance(state, DensityMatrix):
        rho, trunc = state.elems, state.trunc
    else:
        raise ConfigurationError(f"quadrature_moments cannot handle {type(state).__name__}")
    a = lowering_matrix(trunc)
    x = (a + a.T) / np.sqrt(2.0)
    p = 1j * (a.T - a) / np.sqrt(2.0)
    x2 = float(np.trace(rho @ (x @ x)).real)
    p2 = float(np.trace(rho @ (p @ p)).real)
    return x2, p2
