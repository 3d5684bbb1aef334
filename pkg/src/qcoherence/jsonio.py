"""Deterministic JSON and TSV serialisation.

The JSON writer emits floats at 17 significant digits (value-preserving for
doubles) through a hand-rolled encoder, so identical inputs always produce
byte-identical files.  Complex numbers are [re, im] pairs; matrices are
row-major nested lists.  TSV output rounds to 12 significant digits for
human consumption.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .basis_opt import MaximizationResult
from .errors import InvalidParameterError
from .infdim import CvGrid, CvState, FockState, OamState
from .measures import CoherenceReport, max_route_discrepancy
from .state import DEFAULT_TOLERANCE, DensityMatrix, validate_density

JSON_DIGITS = 17
TSV_DIGITS = 12


def format_float(value: float, digits: int = JSON_DIGITS) -> str:
    if not math.isfinite(value):
        raise InvalidParameterError(f"cannot serialise non-finite value {value}")
    return f"{value:.{digits}g}"


def _encode(obj, parts: list[str], digits: int) -> None:
    if isinstance(obj, dict):
        parts.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                parts.append(", ")
            parts.append(json.dumps(str(key)))
            parts.append(": ")
            _encode(value, parts, digits)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, value in enumerate(obj):
            if i:
                parts.append(", ")
            _encode(value, parts, digits)
        parts.append("]")
    elif isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(format_float(float(obj), digits))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif obj is None:
        parts.append("null")
    else:
        raise TypeError(f"cannot serialise object of type {type(obj)!r}")


def dumps(obj, digits: int = JSON_DIGITS) -> str:
    parts: list[str] = []
    _encode(obj, parts, digits)
    parts.append("\n")
    return "".join(parts)


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_lists(matrix: np.ndarray) -> list[list[list[float]]]:
    return [[complex_pair(entry) for entry in row] for row in np.asarray(matrix, dtype=complex)]


def matrix_from_lists(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise InvalidParameterError("matrix must be a non-empty list of rows")
    data = []
    width = None
    for r, row in enumerate(rows):
        if not isinstance(row, list) or (width is not None and len(row) != width):
            raise InvalidParameterError(f"matrix row {r} is malformed")
        width = len(row)
        entries = []
        for c, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(part, (int, float)) for part in cell)
            ):
                raise InvalidParameterError(
                    f"matrix entry ({r}, {c}) must be a [re, im] pair"
                )
            entries.append(complex(cell[0], cell[1]))
        data.append(entries)
    return np.array(data, dtype=complex)


# ---------------------------------------------------------------------------
# finite-dimensional states


def density_to_dict(rho: DensityMatrix) -> dict:
    return {"dim": rho.dim, "matrix": matrix_to_lists(rho.entries)}


def density_from_dict(payload, tol: float = DEFAULT_TOLERANCE) -> DensityMatrix:
    if not isinstance(payload, dict) or "dim" not in payload or "matrix" not in payload:
        raise InvalidParameterError("state file needs keys 'dim' and 'matrix'")
    matrix = matrix_from_lists(payload["matrix"])
    dim = payload["dim"]
    if not isinstance(dim, int) or matrix.shape != (dim, dim):
        raise InvalidParameterError(
            f"declared dim {dim!r} does not match matrix shape {matrix.shape}"
        )
    return validate_density(matrix, tol)


def bloch_to_dict(vec) -> dict:
    return {
        "dim": vec.dim,
        "u": {f"{j},{k}": value for (j, k), value in vec.u.items()},
        "v": {f"{j},{k}": value for (j, k), value in vec.v.items()},
        "w": {str(l): value for l, value in vec.w.items()},
    }


def report_to_dict(report: CoherenceReport) -> dict:
    return {
        "dim": report.dim,
        "p_n": report.p_n,
        "frobenius_distance": report.frobenius_distance,
        "center_of_mass": report.center_of_mass,
        "bloch_norm": report.bloch_norm,
        "purity": report.purity,
        "mu_in_given_basis": report.mu_in_given_basis,
        "visibility": report.visibility,
        "pure_part_weight_sum": report.pure_part_weight_sum,
        "checks": {"max_route_discrepancy": max_route_discrepancy(report)},
    }


def maximization_to_dict(result: MaximizationResult, analytic_value: float) -> dict:
    unitary = np.asarray(result.best_unitary)
    return {
        "target": result.target,
        "best_value": result.best_value,
        "analytic_value": analytic_value,
        "gap": analytic_value - result.best_value,
        "iterations": result.iterations,
        "evaluations": result.evaluations,
        "converged": result.converged,
        "best_unitary": {
            "dim": unitary.shape[0],
            "columns": [
                [complex_pair(entry) for entry in unitary[:, c]]
                for c in range(unitary.shape[1])
            ],
        },
        "trace": [[index, value] for index, value in result.trace],
    }


# ---------------------------------------------------------------------------
# discretised infinite-dimensional states


def oam_state_to_dict(state: OamState) -> dict:
    return {
        "representation": "oam",
        "cutoff": state.cutoff,
        "tail_bound": state.declared_tail_bound,
        "matrix": matrix_to_lists(state.coefficients),
    }


def fock_state_to_dict(state: FockState) -> dict:
    return {
        "representation": "fock",
        "cutoff": state.cutoff,
        "tail_bound": state.declared_tail_bound,
        "matrix": matrix_to_lists(state.coefficients),
    }


def cv_state_to_dict(state: CvState) -> dict:
    return {
        "representation": state.representation,
        "grid": {"d": state.grid.d, "p_max": state.grid.p_max, "hbar": state.grid.hbar},
        "matrix": matrix_to_lists(state.matrix),
    }


def infdim_state_from_dict(payload):
    """Load any of the discretised-state file formats, dispatching on the
    representation tag."""
    if not isinstance(payload, dict) or "representation" not in payload:
        raise InvalidParameterError("state file needs a 'representation' tag")
    tag = payload["representation"]
    matrix = matrix_from_lists(payload.get("matrix"))
    if tag in ("oam", "fock"):
        cutoff = payload.get("cutoff")
        tail = payload.get("tail_bound")
        if not isinstance(cutoff, int) or not isinstance(tail, (int, float)):
            raise InvalidParameterError("need integer 'cutoff' and numeric 'tail_bound'")
        cls = OamState if tag == "oam" else FockState
        return cls(cutoff, matrix, float(tail))
    if tag in ("position", "momentum"):
        grid_info = payload.get("grid")
        if not isinstance(grid_info, dict):
            raise InvalidParameterError("lattice state file needs a 'grid' object")
        grid = CvGrid(
            int(grid_info.get("d", 0)),
            float(grid_info.get("p_max", 0.0)),
            float(grid_info.get("hbar", 1.0)),
        )
        return CvState(grid, tag, matrix)
    raise InvalidParameterError(f"unknown representation tag {tag!r}")


# ---------------------------------------------------------------------------
# TSV


def tsv_from_dict(payload: dict) -> str:
    """Header/value TSV for a mapping; one level of nested mappings is
    flattened to dotted keys, lists are skipped."""

    def fmt(value) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (float, np.floating)):
            return format_float(float(value), TSV_DIGITS)
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        return str(value)

    scalars = {}
    for key, value in payload.items():
        if isinstance(value, dict):
            for subkey, subvalue in value.items():
                if not isinstance(subvalue, (dict, list, tuple)):
                    scalars[f"{key}.{subkey}"] = subvalue
        elif not isinstance(value, (list, tuple)):
            scalars[key] = value
    header = "\t".join(scalars)
    row = "\t".join(fmt(value) for value in scalars.values())
    return header + "\n" + row + "\n"
