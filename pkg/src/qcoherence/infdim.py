"""Coherence of discretised infinite-dimensional states.

Three families of representations are supported:

* orbital angular momentum / angle: coefficients c_{l l'} on a symmetric
  band l, l' in [-D, D], with the angle-space coherence function sampled on
  a uniform grid of M points in [0, 2*pi);
* photon number: coefficients a_{n n'} on [0, D];
* position / momentum: a self-consistent lattice of 2D + 1 points whose
  spacings satisfy dx * dp * (2D + 1) = 2*pi*hbar exactly, the two bases
  related by the discrete Fourier unitary.

Truncation is caller-declared: each truncated state carries a bound on the
coefficient mass it discards, and the square-sum estimators propagate that
bound through the square root.  Non-normalisable inputs are rejected by
validation rather than silently accepted.

The quadratures are plain uniform Riemann sums, matching the limiting
construction they discretise; convergence is tested, not assumed.  hbar is
a configurable positive real, default 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyStateError,
    GridMismatchError,
    GridTooCoarseError,
    InternalInvariantViolation,
    InvalidParameterError,
    NotHermitianError,
    NotNormalizedError,
    NotPSDError,
)
from .state import _readonly

_HERMITICITY_TOL = 1e-12
_PSD_TOL = 1e-10
_TRACE_TOL = 1e-10
_COMMUTATOR_TOL = 1e-10

REPRESENTATIONS = ("position", "momentum")


def _check_truncated_block(matrix: np.ndarray, trace_slack: float, label: str) -> None:
    defect = float(np.max(np.abs(matrix - matrix.conj().T)))
    if defect > _HERMITICITY_TOL:
        raise NotHermitianError(f"{label}: Hermiticity defect {defect:.3e}")
    trace = complex(matrix.trace())
    if abs(trace - 1.0) > trace_slack + 1e-12:
        raise NotNormalizedError(
            f"{label}: trace {trace} misses 1 beyond declared slack {trace_slack:.3e}"
        )
    min_eig = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2.0)[0])
    if min_eig < -_PSD_TOL:
        raise NotPSDError(f"{label}: minimum eigenvalue {min_eig:.3e}")


@dataclass(frozen=True)
class OamState:
    """Truncated state in the angular-momentum basis, indices l in [-D, D]
    stored at array position l + D, plus the caller's bound on the
    coefficient mass beyond the band."""

    cutoff: int
    coefficients: np.ndarray
    declared_tail_bound: float

    def __post_init__(self):
        if self.cutoff < 0:
            raise InvalidParameterError("cutoff must be >= 0")
        if not (0.0 <= self.declared_tail_bound <= 1.0):
            raise InvalidParameterError("tail bound must lie in [0, 1]")
        size = 2 * self.cutoff + 1
        mat = np.asarray(self.coefficients, dtype=complex)
        if mat.shape != (size, size):
            raise InvalidParameterError(
                f"coefficients must have shape {(size, size)}, got {mat.shape}"
            )
        _check_truncated_block(mat, self.declared_tail_bound, "angular-momentum state")
        object.__setattr__(self, "coefficients", _readonly(mat))


@dataclass(frozen=True)
class FockState:
    """Truncated state in the photon-number basis, indices n in [0, D]."""

    cutoff: int
    coefficients: np.ndarray
    declared_tail_bound: float

    def __post_init__(self):
        if self.cutoff < 0:
            raise InvalidParameterError("cutoff must be >= 0")
        if not (0.0 <= self.declared_tail_bound <= 1.0):
            raise InvalidParameterError("tail bound must lie in [0, 1]")
        size = self.cutoff + 1
        mat = np.asarray(self.coefficients, dtype=complex)
        if mat.shape != (size, size):
            raise InvalidParameterError(
                f"coefficients must have shape {(size, size)}, got {mat.shape}"
            )
        _check_truncated_block(mat, self.declared_tail_bound, "photon-number state")
        object.__setattr__(self, "coefficients", _readonly(mat))


@dataclass(frozen=True)
class AngularCoherence:
    """Angle-space coherence function sampled on theta_a = 2*pi*a/M."""

    grid_size: int
    samples: np.ndarray

    def __post_init__(self):
        if self.grid_size < 2:
            raise InvalidParameterError("grid_size must be >= 2")
        mat = np.asarray(self.samples, dtype=complex)
        if mat.shape != (self.grid_size, self.grid_size):
            raise InvalidParameterError(
                f"samples must have shape {(self.grid_size, self.grid_size)}"
            )
        defect = float(np.max(np.abs(mat - mat.conj().T)))
        if defect > _HERMITICITY_TOL:
            raise NotHermitianError(f"angular samples: Hermiticity defect {defect:.3e}")
        object.__setattr__(self, "samples", _readonly(mat))


@dataclass(frozen=True)
class CvGrid:
    """Position/momentum lattice of 2D + 1 points.

    dp = p_max / D and dx = 2*pi*hbar / ((2D+1) dp), so the defining
    relation dx * dp * (2D+1) = 2*pi*hbar holds by construction; positions
    are m*dx and momenta j*dp for m, j in [-D, D].
    """

    d: int
    p_max: float
    hbar: float = 1.0
    dp: float = field(init=False)
    dx: float = field(init=False)

    def __post_init__(self):
        if self.d < 1:
            raise InvalidParameterError("d must be >= 1")
        if not (self.p_max > 0.0 and math.isfinite(self.p_max)):
            raise InvalidParameterError("p_max must be a positive real")
        if not (self.hbar > 0.0 and math.isfinite(self.hbar)):
            raise InvalidParameterError("hbar must be a positive real")
        dp = self.p_max / self.d
        object.__setattr__(self, "dp", dp)
        object.__setattr__(self, "dx", 2.0 * math.pi * self.hbar / ((2 * self.d + 1) * dp))

    @property
    def size(self) -> int:
        return 2 * self.d + 1

    def indices(self) -> np.ndarray:
        return np.arange(-self.d, self.d + 1)

    def positions(self) -> np.ndarray:
        return self.indices() * self.dx

    def momenta(self) -> np.ndarray:
        return self.indices() * self.dp

    def position_to_momentum_matrix(self) -> np.ndarray:
        """Matrix of overlaps <p_j | x_m>; applying it to position-basis
        coordinates yields momentum-basis coordinates."""
        idx = self.indices()
        return np.exp(-2j * np.pi * np.outer(idx, idx) / self.size) / math.sqrt(self.size)

    def overlap_kernel(self, delta_x) -> np.ndarray:
        """Overlap of two continuum position vectors separated by delta_x:
        a normalised Dirichlet kernel, zero exactly at nonzero multiples of
        dx within one period."""
        u = np.asarray(delta_x, dtype=float) * self.dp / (2.0 * self.hbar)
        sin_u = np.sin(u)
        # an exact zero of sin(u) occurs only at delta_x = 0 for separations
        # within the lattice span
        at_pole = sin_u == 0.0
        safe = np.where(at_pole, 1.0, sin_u)
        out = np.sin(self.size * u) / (self.size * safe)
        pole_value = np.cos(self.size * u) / np.cos(u)
        return np.where(at_pole, pole_value, out)


@dataclass(frozen=True)
class CvState:
    """State matrix on a position/momentum lattice, in one representation.

    The matrix holds the dimensionless coefficients whose diagonal sums to
    one; dividing by the lattice spacing recovers the continuum kernel.
    """

    grid: CvGrid
    representation: str
    matrix: np.ndarray

    def __post_init__(self):
        if self.representation not in REPRESENTATIONS:
            raise InvalidParameterError(
                f"representation must be one of {REPRESENTATIONS}"
            )
        mat = np.asarray(self.matrix, dtype=complex)
        size = self.grid.size
        if mat.shape != (size, size):
            raise InvalidParameterError(
                f"matrix must have shape {(size, size)}, got {mat.shape}"
            )
        defect = float(np.max(np.abs(mat - mat.conj().T)))
        if defect > _HERMITICITY_TOL:
            raise NotHermitianError(f"lattice state: Hermiticity defect {defect:.3e}")
        trace = complex(mat.trace())
        if abs(trace - 1.0) > _TRACE_TOL:
            raise NotNormalizedError(
                f"lattice state: trace {trace} misses 1 beyond {_TRACE_TOL:.0e}; "
                "the grid may not resolve or contain the state"
            )
        min_eig = float(np.linalg.eigvalsh((mat + mat.conj().T) / 2.0)[0])
        if min_eig < -_PSD_TOL:
            raise NotPSDError(f"lattice state: minimum eigenvalue {min_eig:.3e}")
        object.__setattr__(self, "matrix", _readonly(mat))


@dataclass(frozen=True)
class WignerSamples:
    """Real phase-space samples W(x_a, p_b) on a uniform rectangular grid."""

    x: np.ndarray
    p: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        p = np.asarray(self.p, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if x.ndim != 1 or p.ndim != 1 or x.size < 2 or p.size < 2:
            raise InvalidParameterError("x and p must be 1-d with at least 2 points")
        if values.shape != (x.size, p.size):
            raise InvalidParameterError(
                f"values must have shape {(x.size, p.size)}, got {values.shape}"
            )
        for name, axis in (("x", x), ("p", p)):
            steps = np.diff(axis)
            if not np.allclose(steps, steps[0], rtol=1e-12, atol=0.0) or steps[0] <= 0:
                raise InvalidParameterError(f"{name} grid must be uniform ascending")
        object.__setattr__(self, "x", _readonly(x))
        object.__setattr__(self, "p", _readonly(p))
        object.__setattr__(self, "values", _readonly(values))

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def dp(self) -> float:
        return float(self.p[1] - self.p[0])


# ---------------------------------------------------------------------------
# square-sum estimators


def _sqrt_sum_with_tail(coefficients: np.ndarray, tail: float, label: str) -> tuple[float, float]:
    total = float(np.sum(np.abs(coefficients) ** 2))
    if total <= 0.0:
        raise EmptyStateError(f"{label}: all coefficients are zero")
    value = math.sqrt(total)
    error_bound = tail / (2.0 * value) if value > 0.0 else math.sqrt(tail)
    return value, error_bound


def p_inf_oam(state: OamState) -> tuple[float, float]:
    """Square root of the truncated coefficient square-sum, with the error
    bound obtained by pushing the declared tail through the square root."""
    return _sqrt_sum_with_tail(
        state.coefficients, state.declared_tail_bound, "angular-momentum state"
    )


def p_inf_fock(state: FockState) -> tuple[float, float]:
    """Photon-number analogue of :func:`p_inf_oam`."""
    return _sqrt_sum_with_tail(
        state.coefficients, state.declared_tail_bound, "photon-number state"
    )


def oam_to_angle(state: OamState, grid_size: int) -> AngularCoherence:
    """Sample the angle-space coherence function of a band-limited state.

    W(theta, theta') = (1/2pi) sum_{l,l'} c_{l l'} exp(i(l theta - l' theta')).
    Requires grid_size >= 2(2D+1) so the band is resolved (the uniform-grid
    quadrature of the resulting trigonometric polynomial is then exact).
    """
    band = 2 * state.cutoff + 1
    if grid_size < 2 * band:
        raise GridTooCoarseError(
            f"grid_size {grid_size} < {2 * band} cannot resolve the truncated band"
        )
    theta = 2.0 * np.pi * np.arange(grid_size) / grid_size
    modes = np.arange(-state.cutoff, state.cutoff + 1)
    phases = np.exp(1j * np.outer(theta, modes))
    samples = phases @ state.coefficients @ phases.conj().T / (2.0 * np.pi)
    return AngularCoherence(grid_size, samples)


def p_inf_angle(w: AngularCoherence, norm_tol: float = 1e-6) -> float:
    """Uniform-grid quadrature of the double angle integral of |W|^2,
    square-rooted; rejects samples whose trace quadrature misses 1."""
    m = w.grid_size
    weight = 2.0 * np.pi / m
    trace = weight * float(np.sum(w.samples.diagonal().real))
    if abs(trace - 1.0) > norm_tol:
        raise NotNormalizedError(f"trace quadrature {trace:.8f} misses 1 beyond {norm_tol:.0e}")
    return math.sqrt(weight * weight * float(np.sum(np.abs(w.samples) ** 2)))


def build_cv_grid(d: int, p_max: float, hbar: float = 1.0) -> CvGrid:
    """Construct the position/momentum lattice (validates parameters)."""
    return CvGrid(d, p_max, hbar)


def p_inf_cv(state: CvState) -> float:
    """Square root of the squared Frobenius mass of the lattice state; the
    Riemann-sum form of the double kernel integral, identical in either
    representation because the basis change is unitary."""
    return math.sqrt(float(np.sum(np.abs(state.matrix) ** 2)))


def convert_representation(state: CvState) -> CvState:
    """Fourier-conjugate the state to the other lattice representation."""
    f = state.grid.position_to_momentum_matrix()
    if state.representation == "position":
        return CvState(state.grid, "momentum", f @ state.matrix @ f.conj().T)
    return CvState(state.grid, "position", f.conj().T @ state.matrix @ f)


def commutator_check(grid: CvGrid, probe: CvState) -> tuple[complex, float]:
    """Expectation of the position-momentum commutator in the probe state.

    Builds both lattice operators, asserts the structural facts (zero trace
    and zero diagonal elements of the commutator), and returns the
    expectation together with its distance from i*hbar.  Bulk states
    reproduce i*hbar increasingly well on finer grids; states concentrated
    at the lattice edge do not, which is a property of the construction,
    not an error.
    """
    if probe.grid != grid:
        raise GridMismatchError("probe lives on a different lattice")
    position_state = probe if probe.representation == "position" else convert_representation(probe)
    x = grid.positions()
    p = grid.momenta()
    fourier = grid.position_to_momentum_matrix()
    momentum_op = fourier.conj().T @ (p[:, None] * fourier)
    commutator = x[:, None] * momentum_op - momentum_op * x[None, :]
    trace_mag = abs(complex(commutator.trace()))
    if trace_mag > _COMMUTATOR_TOL:
        raise InternalInvariantViolation(f"commutator trace {trace_mag:.3e} nonzero")
    diag_mag = float(np.max(np.abs(commutator.diagonal())))
    if diag_mag > _COMMUTATOR_TOL:
        raise InternalInvariantViolation(
            f"commutator diagonal max {diag_mag:.3e} nonzero"
        )
    expectation = complex(np.sum(position_state.matrix.T * commutator))
    deviation = abs(expectation - 1j * grid.hbar)
    return expectation, deviation


def continuum_position_state(grid: CvGrid, x0: float) -> CvState:
    """Projector onto the (normalised) continuum position vector at x0.

    Useful as a pathological probe: concentrated at a half-integer lattice
    position near the edge, its commutator expectation grows linearly with
    the lattice size instead of approaching i*hbar.
    """
    overlaps = grid.overlap_kernel(grid.positions() - x0)
    return CvState(grid, "position", np.outer(overlaps, overlaps.conj()))


def wigner_from_cv(
    state: CvState,
    x_steps: int,
    p_steps: int,
    x_span: float | None = None,
    p_span: float | None = None,
) -> WignerSamples:
    """Phase-space samples of a position-representation lattice state.

    Quadrature of W(x, p) = (1/pi hbar) * integral dy G(x+y, x-y)
    exp(-2ipy/hbar) with y stepped by dx/2 and the kernel G = matrix/dx
    linearly interpolated between lattice points.  Output spans
    [-x_span, x_span] times [-p_span, p_span], defaulting to the full
    lattice range in x and [-p_max, p_max] in p; rows near |p| = p_max
    pick up interpolation ripple at the 1e-4 level, so callers chasing
    accuracy should window the output to the state's support.
    """
    if state.representation != "position":
        raise GridMismatchError("phase-space sampling needs the position representation")
    if x_steps < 2 or p_steps < 2:
        raise InvalidParameterError("x_steps and p_steps must be >= 2")
    grid = state.grid
    hbar = grid.hbar
    n = grid.size
    x_max = grid.d * grid.dx
    if x_span is None:
        x_span = x_max
    if p_span is None:
        p_span = grid.p_max
    if not (0.0 < x_span <= x_max) or not (0.0 < p_span <= grid.p_max):
        raise InvalidParameterError(
            f"spans must lie in (0, {x_max:.6g}] x (0, {grid.p_max:.6g}]"
        )
    kernel = state.matrix / grid.dx
    xs = np.linspace(-x_span, x_span, x_steps)
    ps = np.linspace(-p_span, p_span, p_steps)
    dy = grid.dx / 2.0
    values = np.zeros((x_steps, p_steps))
    for a, xv in enumerate(xs):
        y_reach = x_max - abs(xv)
        if y_reach < 0.0:
            continue
        k_max = int(math.floor(y_reach / dy + 1e-12))
        y = np.arange(-k_max, k_max + 1) * dy
        frac_fwd = (xv + y + x_max) / grid.dx
        frac_bwd = (xv - y + x_max) / grid.dx
        i_fwd = np.clip(np.floor(frac_fwd).astype(int), 0, n - 2)
        i_bwd = np.clip(np.floor(frac_bwd).astype(int), 0, n - 2)
        w_fwd = np.clip(frac_fwd - i_fwd, 0.0, 1.0)
        w_bwd = np.clip(frac_bwd - i_bwd, 0.0, 1.0)
        g = (
            kernel[i_fwd, i_bwd] * (1.0 - w_fwd) * (1.0 - w_bwd)
            + kernel[i_fwd + 1, i_bwd] * w_fwd * (1.0 - w_bwd)
            + kernel[i_fwd, i_bwd + 1] * (1.0 - w_fwd) * w_bwd
            + kernel[i_fwd + 1, i_bwd + 1] * w_fwd * w_bwd
        )
        oscillations = np.exp(-2j * np.outer(ps, y) / hbar)
        values[a, :] = (oscillations @ g).real * dy / (np.pi * hbar)
    return WignerSamples(xs, ps, values)


def p_inf_wigner(w: WignerSamples, hbar: float, norm_tol: float = 1e-2) -> float:
    """Uniform quadrature of 2*pi*hbar times the squared phase-space
    samples, square-rooted; rejects unnormalised sample sets."""
    if not (hbar > 0.0 and math.isfinite(hbar)):
        raise InvalidParameterError("hbar must be a positive real")
    cell = w.dx * w.dp
    norm = cell * float(np.sum(w.values))
    if abs(norm - 1.0) > norm_tol:
        raise NotNormalizedError(
            f"phase-space normalisation {norm:.8f} misses 1 beyond {norm_tol:.0e}"
        )
    return math.sqrt(2.0 * np.pi * hbar * cell * float(np.sum(w.values**2)))


# ---------------------------------------------------------------------------
# state-family constructors (each computes its own rigorous tail bound)


def geometric_oam(q: float, cutoff: int) -> OamState:
    """Diagonal mixture of non-negative angular-momentum modes with
    geometric weights (1-q) q^l; discarded mass is exactly q^(cutoff+1)."""
    if not (0.0 < q < 1.0):
        raise InvalidParameterError("q must lie in (0, 1)")
    if cutoff < 0:
        raise InvalidParameterError("cutoff must be >= 0")
    size = 2 * cutoff + 1
    mat = np.zeros((size, size), dtype=complex)
    for l in range(cutoff + 1):
        mat[l + cutoff, l + cutoff] = (1.0 - q) * q**l
    return OamState(cutoff, mat, q ** (cutoff + 1))


def oam_mode_superposition(amplitudes: dict[int, complex], cutoff: int) -> OamState:
    """Pure superposition of angular-momentum modes, normalised; exact
    within the band so the tail bound is zero."""
    if cutoff < 0:
        raise InvalidParameterError("cutoff must be >= 0")
    size = 2 * cutoff + 1
    vec = np.zeros(size, dtype=complex)
    for mode, amp in amplitudes.items():
        if abs(mode) > cutoff:
            raise InvalidParameterError(f"mode {mode} outside band [-{cutoff}, {cutoff}]")
        vec[mode + cutoff] = amp
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise EmptyStateError("all amplitudes are zero")
    vec /= norm
    return OamState(cutoff, np.outer(vec, vec.conj()), 0.0)


def thermal_fock(nbar: float, cutoff: int) -> FockState:
    """Thermal photon-number mixture with mean occupation nbar; discarded
    mass is exactly (nbar/(nbar+1))^(cutoff+1)."""
    if nbar < 0.0 or not math.isfinite(nbar):
        raise InvalidParameterError("nbar must be a non-negative real")
    if cutoff < 0:
        raise InvalidParameterError("cutoff must be >= 0")
    ratio = nbar / (nbar + 1.0)
    n = np.arange(cutoff + 1)
    weights = ratio**n / (nbar + 1.0)
    return FockState(cutoff, np.diag(weights.astype(complex)), ratio ** (cutoff + 1))


def _poisson_tail_bound(mean: float, cutoff: int) -> float:
    """Upper bound on the Poisson mass above ``cutoff`` via the geometric
    ratio bound on the term series; requires cutoff + 2 > mean."""
    if mean == 0.0:
        return 0.0
    ratio = mean / (cutoff + 2.0)
    if ratio >= 1.0:
        return 1.0
    log_tail = (
        -mean
        + (cutoff + 1.0) * math.log(mean)
        - math.lgamma(cutoff + 2.0)
        - math.log(1.0 - ratio)
    )
    return min(1.0, math.exp(log_tail))


def coherent_fock(alpha: complex, cutoff: int) -> FockState:
    """Truncated coherent state; the tail bound doubles the Poisson mass
    above the cutoff because the square-sum of a truncated pure state is
    the squared retained mass."""
    if cutoff < 0:
        raise InvalidParameterError("cutoff must be >= 0")
    alpha = complex(alpha)
    mean = abs(alpha) ** 2
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[0] = math.exp(-mean / 2.0)
    for n in range(1, cutoff + 1):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    tail = min(1.0, 2.0 * _poisson_tail_bound(mean, cutoff))
    return FockState(cutoff, np.outer(amps, amps.conj()), tail)


def gaussian_cv(grid: CvGrid, sigma_x: float, x0: float = 0.0, p0: float = 0.0) -> CvState:
    """Pure Gaussian wave packet sampled on the lattice: position spread
    sigma_x, centred at (x0, p0).  Validation rejects grids that fail to
    contain or resolve it."""
    if not (sigma_x > 0.0 and math.isfinite(sigma_x)):
        raise InvalidParameterError("sigma_x must be a positive real")
    x = grid.positions()
    psi = (2.0 * np.pi * sigma_x**2) ** (-0.25) * np.exp(
        -((x - x0) ** 2) / (4.0 * sigma_x**2) + 1j * p0 * (x - x0) / grid.hbar
    )
    return CvState(grid, "position", np.outer(psi, psi.conj()) * grid.dx)


def thermal_cv(grid: CvGrid, nbar: float) -> CvState:
    """Thermal oscillator state (unit mass and frequency) with mean
    occupation nbar, sampled as a position-representation kernel."""
    if nbar < 0.0 or not math.isfinite(nbar):
        raise InvalidParameterError("nbar must be a non-negative real")
    s = 2.0 * nbar + 1.0
    hbar = grid.hbar
    x = grid.positions()
    fwd, bwd = np.meshgrid(x, x, indexing="ij")
    kernel = (
        1.0
        / math.sqrt(np.pi * hbar * s)
        * np.exp(-((fwd + bwd) ** 2) / (4.0 * hbar * s) - s * (fwd - bwd) ** 2 / (4.0 * hbar))
    )
    return CvState(grid, "position", kernel.astype(complex) * grid.dx)
