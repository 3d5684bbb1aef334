"""Numerical exploration of the unitary group.

The maxima of the two basis-dependent quantities (degree of coherence and
interference visibility) over all orthonormal bases are known analytically:
the coherence ratio peaks in any basis that equalises the diagonal, the
visibility peaks in the eigenbasis.  Both analytic maximisers are injected
as search seeds by default, so the stochastic search exists to supply
independent numerical evidence of the two theorems, not to discover the
optimum.

The local move is a two-parameter Givens rotation on a random index pair
composed with random diagonal phases, so every iterate stays exactly on the
unitary group.  Budgets count objective evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalInvariantViolation, InvalidParameterError
from .measures import p_n, visibility
from .state import DensityMatrix, _readonly, spectral_decompose

UNITARITY_TOL = 1e-10
_CEILING_SLACK = 1e-6
_INITIAL_STEP = 0.5
_MIN_STEP = 1e-6
_REJECTS_PER_HALVING = 20


@dataclass(frozen=True)
class MaximizationResult:
    """Outcome of one search: best value/basis found, effort spent, and the
    recorded trace of best-so-far values."""

    best_value: float
    best_unitary: np.ndarray
    iterations: int
    evaluations: int
    converged: bool
    target: str
    trace: tuple[tuple[int, float], ...]


def unitarity_defect(u: np.ndarray) -> float:
    """Max-entry deviation of U†U from the identity."""
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def _haar(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix with the
    phase-fixed R-diagonal correction; reproducible for fixed seed."""
    if dim < 2:
        raise InvalidParameterError(f"dimension {dim} < 2")
    return _readonly(_haar(np.random.default_rng(seed), dim))


def equalizing_basis(rho: DensityMatrix) -> np.ndarray:
    """Unitary whose basis gives the conjugated state a uniform diagonal.

    Columns are the eigenvectors composed with the discrete Fourier unitary;
    every diagonal entry of the conjugated state is then exactly 1/N, the
    configuration that maximises the basis-dependent degree of coherence.
    """
    n = rho.dim
    idx = np.arange(n)
    fourier = np.exp(2j * np.pi * np.outer(idx, idx) / n) / math.sqrt(n)
    return _readonly(spectral_decompose(rho).eigenvectors @ fourier)


def _greedy_search(
    rho: DensityMatrix,
    value_from_unitary,
    ceiling: float,
    analytic_seed: np.ndarray | None,
    target: str,
    budget: int,
    seed: int,
    trace_stride: int,
    assert_ceiling_tol: float | None,
) -> MaximizationResult:
    if budget < 1:
        raise InvalidParameterError(f"budget must be >= 1, got {budget}")
    if trace_stride < 0:
        raise InvalidParameterError("trace_stride must be >= 0")
    n = rho.dim
    rng = np.random.default_rng(seed)

    best = -math.inf
    best_u: np.ndarray | None = None
    evaluations = 0
    iterations = 0
    trace: list[tuple[int, float]] = []

    def evaluate(u: np.ndarray) -> float:
        nonlocal evaluations, best, best_u
        value = value_from_unitary(u)
        evaluations += 1
        if value > ceiling + _CEILING_SLACK:
            raise InternalInvariantViolation(
                f"{target}: evaluated value {value:.12f} exceeds analytic "
                f"ceiling {ceiling:.12f} beyond {_CEILING_SLACK:.0e}"
            )
        if assert_ceiling_tol is not None and value > ceiling + assert_ceiling_tol:
            raise InternalInvariantViolation(
                f"{target}: value {value:.15f} above ceiling {ceiling:.15f} "
                f"beyond {assert_ceiling_tol:.0e}"
            )
        if value > best:
            best = value
            best_u = u
        if trace_stride and (evaluations % trace_stride == 0):
            trace.append((evaluations, best))
        return value

    pending_seed = analytic_seed
    while evaluations < budget:
        start = pending_seed if pending_seed is not None else _haar(rng, n)
        pending_seed = None
        current_u = np.asarray(start, dtype=complex)
        current = evaluate(current_u)
        step = _INITIAL_STEP
        rejects = 0
        while evaluations < budget and step >= _MIN_STEP:
            iterations += 1
            i, j = rng.choice(n, size=2, replace=False)
            angle = step * rng.standard_normal()
            phase = 2.0 * np.pi * rng.random()
            givens = np.eye(n, dtype=complex)
            c = math.cos(angle)
            s = math.sin(angle)
            givens[i, i] = c
            givens[j, j] = c
            givens[i, j] = -np.exp(1j * phase) * s
            givens[j, i] = np.exp(-1j * phase) * s
            diag_phases = np.ones(n, dtype=complex)
            diag_phases[i] = np.exp(1j * step * rng.standard_normal())
            diag_phases[j] = np.exp(1j * step * rng.standard_normal())
            candidate_u = (current_u @ givens) * diag_phases
            candidate = evaluate(candidate_u)
            if candidate > current:
                current = candidate
                current_u = candidate_u
                rejects = 0
            else:
                rejects += 1
                if rejects >= _REJECTS_PER_HALVING:
                    step *= 0.5
                    rejects = 0

    if best > ceiling + _CEILING_SLACK:
        raise InternalInvariantViolation(
            f"{target}: best value {best:.12f} exceeds ceiling {ceiling:.12f}"
        )
    if not trace or trace[-1][0] != evaluations:
        trace.append((evaluations, best))
    assert best_u is not None
    return MaximizationResult(
        best_value=float(best),
        best_unitary=_readonly(best_u),
        iterations=iterations,
        evaluations=evaluations,
        converged=best >= ceiling - _CEILING_SLACK,
        target=target,
        trace=tuple(trace),
    )


def maximize_mu(
    rho: DensityMatrix,
    budget: int,
    seed: int,
    *,
    include_analytic_seed: bool = True,
    trace_stride: int = 0,
    assert_ceiling_tol: float | None = None,
) -> MaximizationResult:
    """Random-restart greedy search for the basis maximising the
    basis-dependent degree of coherence.

    The objective is the literal ratio of off-diagonal to paired-diagonal
    mass of the conjugated state, evaluated as sums of squares and products
    so near-zero values stay near zero instead of picking up cancellation
    noise.  The best value can never exceed the analytic maximum beyond
    1e-6; with the analytic seed enabled (default) it attains it
    immediately.
    """
    mat = rho.entries
    rows, cols = np.triu_indices(rho.dim, k=1)

    def from_unitary(u: np.ndarray) -> float:
        conjugated = u.conj().T @ mat @ u
        numerator = float(np.sum(np.abs(conjugated[rows, cols]) ** 2))
        diag = conjugated.diagonal().real
        denominator = float(np.sum(diag[rows] * diag[cols]))
        if denominator <= 1e-300:
            return 0.0
        return math.sqrt(numerator / denominator)

    return _greedy_search(
        rho,
        from_unitary,
        ceiling=p_n(rho),
        analytic_seed=equalizing_basis(rho) if include_analytic_seed else None,
        target="mu_n",
        budget=budget,
        seed=seed,
        trace_stride=trace_stride,
        assert_ceiling_tol=assert_ceiling_tol,
    )


def maximize_visibility(
    rho: DensityMatrix,
    budget: int,
    seed: int,
    *,
    include_analytic_seed: bool = True,
    trace_stride: int = 0,
    assert_ceiling_tol: float | None = None,
) -> MaximizationResult:
    """Random-restart greedy search for the basis maximising the detection
    probability spread; the eigenbasis attains the maximum and is injected
    as the first seed by default."""
    n = rho.dim
    mat = rho.entries
    rows, cols = np.triu_indices(n, k=1)

    def from_unitary(u: np.ndarray) -> float:
        diag = np.einsum("ji,jk,ki->i", u.conj(), mat, u).real
        total = float(np.sum(diag))
        spread = float(np.sum((diag[rows] - diag[cols]) ** 2))
        return math.sqrt(spread / ((n - 1.0) * total * total))

    return _greedy_search(
        rho,
        from_unitary,
        ceiling=visibility(rho),
        analytic_seed=(
            np.asarray(spectral_decompose(rho).eigenvectors) if include_analytic_seed else None
        ),
        target="visibility_f",
        budget=budget,
        seed=seed,
        trace_stride=trace_stride,
        assert_ceiling_tol=assert_ceiling_tol,
    )
