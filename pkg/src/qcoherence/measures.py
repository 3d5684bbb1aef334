"""All interpretations of the basis-independent degree of coherence.

For an N-dimensional state the same number is reachable through five
independent routes: the trace-of-square formula, the Bloch-vector norm, the
Frobenius distance to the maximally mixed state, the center-of-mass
distance built from the eigenvalues, and the maximal interference
visibility.  A sixth, basis-dependent quantity (the ratio of off-diagonal
to diagonal correlation mass) is bounded above by it, and the unique
pure-part split gives an upper bound through the total pure weight.

Radicands in [-1e-9, 0) are clamped to 0; anything more negative is a hard
error, so float noise and logic bugs stay distinguishable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bloch import bloch_norm, to_bloch
from .errors import (
    AllZeroError,
    DegenerateDiagonalError,
    InternalInvariantViolation,
    InvalidParameterError,
    WrongDimensionError,
)
from .state import DensityMatrix, Spectrum, _readonly, purity, spectral_decompose

_CLAMP = 1e-9
_MU_CLAMP = 1e-12
_REPORT_TOL = 1e-9
_IDENTITY_TOL = 1e-10


def _clamped_sqrt(radicand: float, context: str, clamp: float = _CLAMP) -> float:
    if radicand < -clamp:
        raise InternalInvariantViolation(
            f"{context}: radicand {radicand:.3e} below -{clamp:.0e}"
        )
    return math.sqrt(max(radicand, 0.0))


def _capped(value: float, context: str, cap_tol: float = _CLAMP) -> float:
    if value > 1.0 + cap_tol:
        raise InternalInvariantViolation(
            f"{context}: value {value:.12f} exceeds 1 beyond {cap_tol:.0e}"
        )
    return min(value, 1.0)


@dataclass(frozen=True)
class CoherenceReport:
    """All measures of one state, cross-checked for mutual consistency."""

    dim: int
    p_n: float
    frobenius_distance: float
    center_of_mass: float
    bloch_norm: float
    purity: float
    mu_in_given_basis: float
    visibility: float
    pure_part_weight_sum: float


@dataclass(frozen=True)
class PurePartDecomposition:
    """Unique split of a state into N-1 orthonormal pure parts plus a
    maximally mixed remainder."""

    weights: np.ndarray
    pure_states: np.ndarray
    mixed_weight: float


def p_n(rho: DensityMatrix) -> float:
    """Intrinsic degree of coherence sqrt((N Tr(rho^2) - 1) / (N - 1)).

    The radicand is evaluated through the exact rearrangement
    N Tr(rho^2) - t^2 = N sum_ij |rho_ij - delta_ij t/N|^2 (t = trace), a
    pure sum of squares; the direct difference would cancel catastrophically
    near the maximally mixed state and turn float noise into sqrt-amplified
    output noise.
    """
    n = rho.dim
    trace = rho.entries.trace().real
    centered = rho.entries - np.eye(n) * (trace / n)
    radicand = n * float(np.vdot(centered, centered).real) / (
        (n - 1.0) * trace * trace
    )
    return _capped(_clamped_sqrt(radicand, "p_n"), "p_n")


def p2_determinant_form(rho: DensityMatrix) -> float:
    """Two-dimensional special case sqrt(1 - 4 det(rho))."""
    if rho.dim != 2:
        raise WrongDimensionError(f"determinant form needs dim 2, got {rho.dim}")
    m = rho.entries
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    return _capped(_clamped_sqrt(1.0 - 4.0 * det, "p2_determinant_form"), "p2_determinant_form")


def frobenius_distance_measure(rho: DensityMatrix) -> float:
    """Normalised Frobenius distance between the state and the maximally
    mixed state, computed entrywise."""
    n = rho.dim
    diff = rho.entries - np.eye(n) / n
    dist_sq = float(np.vdot(diff, diff).real)
    return _capped(_clamped_sqrt(n / (n - 1.0) * dist_sq, "frobenius_distance"), "frobenius_distance")


def center_of_mass_distance(spectrum: Spectrum) -> float:
    """Distance to the center of mass of point masses equal to the
    eigenvalues, placed on the vertices of a regular simplex."""
    lam = spectrum.eigenvalues
    n = lam.size
    num = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            num += (lam[i] - lam[j]) ** 2
    total = float(np.sum(lam))
    return _capped(
        _clamped_sqrt(num / ((n - 1.0) * total * total), "center_of_mass"),
        "center_of_mass",
    )


def mu_n(rho: DensityMatrix) -> float:
    """Basis-dependent degree of coherence in the stored basis.

    Ratio of summed squared off-diagonal magnitudes to summed products of
    diagonal pairs.  Raises DegenerateDiagonalError when every diagonal pair
    product vanishes (one diagonal entry is 1, the rest 0), because that 0/0
    form has no single limiting value; the caller decides.
    """
    m = rho.entries
    n = rho.dim
    rows, cols = np.triu_indices(n, k=1)
    numerator = float(np.sum(np.abs(m[rows, cols]) ** 2))
    diag = m.diagonal().real
    denominator = float(np.sum(diag[rows] * diag[cols]))
    if denominator <= 0.0:
        raise DegenerateDiagonalError(
            "all diagonal pair products vanish; degree of coherence is 0/0 here"
        )
    return _capped(math.sqrt(max(numerator, 0.0) / denominator), "mu_n", _MU_CLAMP)


def interference_2d(rho: DensityMatrix, delta: float, theta: float) -> tuple[float, float]:
    """Two-port detection probabilities after a relative phase ``delta`` and
    a rotation ``theta`` applied to a two-dimensional state.

    The cross term carries the factor 2 that conjugation by the
    phase-then-rotation unitary produces (2 Re(rho_12 e^{i delta}) times
    sin(theta) cos(theta)); without it the maximal fringe visibility would
    not reach the degree of coherence.
    """
    if rho.dim != 2:
        raise WrongDimensionError(f"interference needs dim 2, got {rho.dim}")
    m = rho.entries
    r11 = m[0, 0].real
    r22 = m[1, 1].real
    amp = abs(m[0, 1])
    beta = cmath.phase(m[0, 1])
    c = math.cos(theta)
    s = math.sin(theta)
    cross = 2.0 * amp * s * c * math.cos(beta + delta)
    i1 = r11 * c * c + r22 * s * s + cross
    i2 = r11 * s * s + r22 * c * c - cross
    return i1, i2


def visibility_f(probs) -> float:
    """Spread of a probability vector: sqrt of the mean squared pairwise
    difference normalised by the squared total.

    Scale-invariant, Schur-convex; 1 exactly when the mass sits on one
    entry, 0 exactly when all entries are equal.
    """
    arr = np.asarray(probs, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise InvalidParameterError("need a 1-d vector of at least 2 probabilities")
    total = float(np.sum(arr))
    if total <= 0.0:
        raise AllZeroError("probabilities sum to zero")
    n = arr.size
    num = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            num += (arr[i] - arr[j]) ** 2
    return math.sqrt(max(num, 0.0) / ((n - 1.0) * total * total))


def visibility(rho: DensityMatrix) -> float:
    """Maximal interference visibility of the state over all measurement
    bases: the spread function evaluated on the eigenvalues, which majorize
    every achievable probability vector."""
    return visibility_f(spectral_decompose(rho).eigenvalues)


def pure_part_decomposition(rho: DensityMatrix) -> PurePartDecomposition:
    """Unique decomposition into N-1 orthonormal pure parts with weights
    lambda_i - lambda_N plus a maximally mixed part of weight N*lambda_N."""
    spectrum = spectral_decompose(rho)
    lam = spectrum.eigenvalues
    n = lam.size
    weights = lam[: n - 1] - lam[n - 1]
    mixed_weight = float(n * lam[n - 1])
    return PurePartDecomposition(
        _readonly(weights),
        _readonly(spectrum.eigenvectors[:, : n - 1]),
        mixed_weight,
    )


def pure_part_bound_check(
    decomposition: PurePartDecomposition, p: float
) -> tuple[bool, float]:
    """Verify the identity tying the coherence measure to the pure weights
    and the upper bound by the total pure weight; return (bound_holds, gap).

    ``p`` must be the coherence measure of the same state.  The identity is
    p == sqrt((sum s)^2 - (2N/(N-1)) * sum_{i<j} s_i s_j); its failure beyond
    1e-10 raises InternalInvariantViolation.
    """
    s = decomposition.weights
    n = decomposition.pure_states.shape[0]
    weight_sum = float(np.sum(s))
    cross = 0.0
    for i in range(s.size - 1):
        for j in range(i + 1, s.size):
            cross += s[i] * s[j]
    p_from_weights = _clamped_sqrt(
        weight_sum * weight_sum - (2.0 * n / (n - 1.0)) * cross, "pure_part_bound_check"
    )
    if abs(p_from_weights - p) > _IDENTITY_TOL:
        raise InternalInvariantViolation(
            f"weight identity off by {abs(p_from_weights - p):.3e} "
            f"(from weights {p_from_weights:.12f}, given {p:.12f})"
        )
    gap = weight_sum - p
    bound_holds = p <= weight_sum + _IDENTITY_TOL
    return bound_holds, gap


def coherence_report(rho: DensityMatrix) -> CoherenceReport:
    """Evaluate every measure and enforce their mutual consistency.

    The five equivalent routes must agree within 1e-9; the basis-dependent
    degree of coherence must not exceed them; the coherence measure must not
    exceed the total pure weight.  Any violation raises
    InternalInvariantViolation naming the offending pair.  For states whose
    diagonal makes the basis-dependent ratio a 0/0 form, the reported value
    is 0.0, the limit along nearby states in the same basis.
    """
    spectrum = spectral_decompose(rho)
    routes = {
        "p_n": p_n(rho),
        "frobenius_distance": frobenius_distance_measure(rho),
        "center_of_mass": center_of_mass_distance(spectrum),
        "bloch_norm": bloch_norm(to_bloch(rho)),
        "visibility": visibility_f(spectrum.eigenvalues),
    }
    high = max(routes, key=routes.get)
    low = min(routes, key=routes.get)
    spread = routes[high] - routes[low]
    if spread > _REPORT_TOL:
        raise InternalInvariantViolation(
            f"routes {high}={routes[high]:.12f} and {low}={routes[low]:.12f} "
            f"differ by {spread:.3e}"
        )
    try:
        mu = mu_n(rho)
    except DegenerateDiagonalError:
        mu = 0.0
    if mu > routes["p_n"] + _REPORT_TOL:
        raise InternalInvariantViolation(
            f"basis-dependent value {mu:.12f} exceeds maximum {routes['p_n']:.12f}"
        )
    lam = spectrum.eigenvalues
    weight_sum = float(np.sum(lam[:-1] - lam[-1]))
    if routes["p_n"] > weight_sum + _REPORT_TOL:
        raise InternalInvariantViolation(
            f"measure {routes['p_n']:.12f} exceeds pure weight sum {weight_sum:.12f}"
        )
    report = CoherenceReport(
        dim=rho.dim,
        p_n=routes["p_n"],
        frobenius_distance=routes["frobenius_distance"],
        center_of_mass=routes["center_of_mass"],
        bloch_norm=routes["bloch_norm"],
        purity=purity(rho),
        mu_in_given_basis=mu,
        visibility=routes["visibility"],
        pure_part_weight_sum=weight_sum,
    )
    for name, value in (
        ("purity", report.purity),
        ("mu_in_given_basis", mu),
        ("pure_part_weight_sum", weight_sum),
        *routes.items(),
    ):
        if not (0.0 <= value <= 1.0 + _REPORT_TOL):
            raise InternalInvariantViolation(f"field {name}={value} outside [0, 1]")
    return report


def max_route_discrepancy(report: CoherenceReport) -> float:
    """Largest pairwise difference among the five equivalent routes."""
    values = (
        report.p_n,
        report.frobenius_distance,
        report.center_of_mass,
        report.bloch_norm,
        report.visibility,
    )
    return max(values) - min(values)
