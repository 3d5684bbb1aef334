"""Construction, validation, spectral analysis and random generation of
finite-dimensional density matrices.

A density matrix is accepted when it is Hermitian, unit-trace and positive
semidefinite within a validation tolerance.  The stored entries are an
exactly Hermitian, exactly unit-trace copy of the input so that downstream
identities hold at the 1e-10 level rather than at the looser input
tolerance.  All returned objects are immutable and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionTooSmallError,
    EigenSolverFailure,
    InvalidParameterError,
    InvalidRankError,
    NotHermitianError,
    NotPSDError,
    NotSquareError,
    NotUnitTraceError,
)

DEFAULT_TOLERANCE = 1e-9

# eigenvalues closer than this are treated as one degenerate block
_DEGENERACY_TOL = 1e-12
_PHASE_TOL = 1e-12

RANDOM_KINDS = ("haar_pure", "ginibre_mixed", "rank_k")


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr)
    out.setflags(write=False)
    return out


def as_complex_matrix(matrix) -> np.ndarray:
    """Coerce input to a finite 2-d complex array."""
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2:
        raise NotSquareError(f"expected a 2-d matrix, got array of shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise InvalidParameterError("matrix entries must be finite")
    return arr


@dataclass(frozen=True)
class DensityMatrix:
    """Validated N x N state: Hermitian, unit trace, positive semidefinite.

    Construct through :func:`validate_density` (or the generators below);
    ``entries`` is exactly Hermitian with trace exactly renormalised to 1.
    """

    dim: int
    entries: np.ndarray
    validation_tolerance: float = DEFAULT_TOLERANCE


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, paired with orthonormal eigenvector
    columns; degenerate blocks are canonicalised for reproducibility."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def validate_density(matrix, tol: float = DEFAULT_TOLERANCE) -> DensityMatrix:
    """Check all physicality conditions and return the validated state.

    Eigenvalues in [-tol, 0) are clamped to zero and the matrix renormalised
    to unit trace.  Violations beyond ``tol`` raise the matching error:
    NotSquareError, DimensionTooSmallError, NotHermitianError,
    NotUnitTraceError, NotPSDError.
    """
    if not np.isfinite(tol) or tol < 0:
        raise InvalidParameterError("tolerance must be a non-negative real")
    arr = as_complex_matrix(matrix)
    rows, cols = arr.shape
    if rows != cols:
        raise NotSquareError(f"matrix has shape {rows}x{cols}")
    if rows < 2:
        raise DimensionTooSmallError(f"dimension {rows} < 2")

    herm_defect = float(np.max(np.abs(arr - arr.conj().T)))
    if herm_defect > tol:
        raise NotHermitianError(
            f"Hermiticity defect {herm_defect:.3e} exceeds tolerance {tol:.1e}"
        )
    trace = complex(arr.trace())
    if abs(trace - 1.0) > tol:
        raise NotUnitTraceError(f"trace {trace} differs from 1 beyond {tol:.1e}")

    # store an exactly Hermitian, exactly normalised copy
    sym = (arr + arr.conj().T) / 2.0
    sym /= sym.trace().real

    eigvals = _eigvalsh(sym)
    min_eig = float(eigvals[0])
    if min_eig < -tol:
        raise NotPSDError(f"minimum eigenvalue {min_eig:.6e} below -{tol:.1e}")
    if min_eig < 0.0:
        vals, vecs = _eigh(sym)
        vals = np.clip(vals, 0.0, None)
        sym = (vecs * vals) @ vecs.conj().T
        sym = (sym + sym.conj().T) / 2.0
        sym /= sym.trace().real

    pur = float(np.vdot(sym, sym).real)
    if pur > 1.0 + tol:
        raise NotPSDError(f"purity {pur:.12f} exceeds 1 beyond {tol:.1e}")
    return DensityMatrix(rows, _readonly(sym), tol)


def _eigvalsh(mat: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverFailure(f"eigenvalue solver failed: {exc}") from exc


def _eigh(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverFailure(f"eigendecomposition failed: {exc}") from exc


def _phase_fixed(column: np.ndarray) -> np.ndarray:
    """Rotate a vector so its first component above the noise floor is real
    positive."""
    above = np.abs(column) > _PHASE_TOL
    if not np.any(above):
        return column
    pivot = column[int(np.argmax(above))]
    return column * (pivot.conj() / abs(pivot))


def _lex_key(column: np.ndarray) -> tuple:
    return tuple(t for z in column for t in (z.real, z.imag))


def _canonicalize(vals: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Deterministic eigenvectors: re-orthonormalise each degenerate block,
    fix phases, and order block members lexicographically."""
    n = vals.size
    out = vecs.copy()
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and vals[start] - vals[stop] <= _DEGENERACY_TOL:
            stop += 1
        block = out[:, start:stop]
        if stop - start > 1:
            q, _ = np.linalg.qr(block)
            cols = sorted(
                (_phase_fixed(q[:, i]) for i in range(q.shape[1])),
                key=_lex_key,
                reverse=True,
            )
            block = np.column_stack(cols)
        else:
            block = _phase_fixed(block[:, 0])[:, None]
        out[:, start:stop] = block
        start = stop
    return out


def spectral_decompose(rho: DensityMatrix) -> Spectrum:
    """Descending eigenvalues and matching eigenvector columns of ``rho``.

    Output is deterministic for degenerate spectra: within a degenerate
    block the eigenvectors are re-orthogonalised, each phase is fixed so the
    first nonzero component is real positive, and ties are broken by
    lexicographic order of the phase-fixed vectors.
    """
    vals, vecs = _eigh(rho.entries)
    order = np.argsort(vals, kind="stable")[::-1]
    vals = vals[order]
    vecs = _canonicalize(vals, vecs[:, order])
    return Spectrum(_readonly(vals), _readonly(vecs))


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2), computed entrywise as the squared Frobenius norm."""
    return float(np.vdot(rho.entries, rho.entries).real)


def random_state(dim: int, kind: str, seed: int, rank: int | None = None) -> DensityMatrix:
    """Reproducible random density matrix of the requested kind.

    ``haar_pure`` draws a uniformly random pure state, ``ginibre_mixed`` a
    full-rank Ginibre mixture GG†/Tr(GG†), ``rank_k`` restricts the Ginibre
    factor to ``rank`` columns.  Fixed ``seed`` gives identical output.
    """
    if dim < 2:
        raise DimensionTooSmallError(f"dimension {dim} < 2")
    if kind not in RANDOM_KINDS:
        raise InvalidParameterError(f"unknown kind {kind!r}; expected one of {RANDOM_KINDS}")
    if kind == "rank_k":
        if rank is None or rank < 1 or rank > dim:
            raise InvalidRankError(f"rank must be in [1, {dim}], got {rank}")
    elif rank is not None:
        raise InvalidRankError("rank is only meaningful for kind='rank_k'")

    rng = np.random.default_rng(seed)
    if kind == "haar_pure":
        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        psi /= np.linalg.norm(psi)
        mat = np.outer(psi, psi.conj())
    else:
        k = dim if kind == "ginibre_mixed" else int(rank)
        g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
        w = g @ g.conj().T
        mat = w / w.trace().real
    return validate_density(mat, DEFAULT_TOLERANCE)
