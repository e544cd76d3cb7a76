"""Human-readable and JSON renderings of verdicts, witnesses and projections."""

import json
import math
from typing import Any, Dict, Optional

import numpy as np

from logicsup.config import Tolerances
from logicsup.logic_order import OrderVerdict
from logicsup.projection_lattice import Projection
from logicsup.spectral_measure import FiniteSpectralMeasure
from logicsup.supremum import ExistenceResult, SupremumReport, Witness

EPSILON = 1e-12


def format_scalar(z: complex) -> str:
    if abs(z.imag) < EPSILON:
        x = z.real
        if abs(x - round(x)) < EPSILON:
            return str(int(round(x)))
        return f"{x:.6g}"
    if abs(z.real) < EPSILON:
        return f"{z.imag:.6g}j"
    return f"{z.real:.6g}{z.imag:+.6g}j"


def format_matrix(matrix: np.ndarray) -> str:
    cells = [[format_scalar(complex(z)) for z in row] for row in matrix]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  " + " ".join(c.rjust(width) for c in row) for row in cells)


def matrix_pairs(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]


def vector_pairs(vector: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(vector)]


def tolerance_line(tol: Tolerances) -> str:
    parts = [f"{name}={'auto' if value is None else f'{value:g}'}" for name, value in tol.as_dict().items()]
    return "tolerances: " + ", ".join(parts)


def verdict_to_dict(verdict: OrderVerdict) -> Dict[str, Any]:
    return {
        "holds": verdict.holds,
        "route_algebraic": verdict.route_algebraic,
        "route_spectral": verdict.route_spectral,
        "ambiguous": verdict.ambiguous,
        "defect": verdict.defect,
        "spectral_defect": verdict.spectral_defect if math.isfinite(verdict.spectral_defect) else None,
        "residual_norm": verdict.residual_norm,
        "residual": None if verdict.residual is None else matrix_pairs(verdict.residual.entries),
    }


def verdict_to_text(verdict: OrderVerdict) -> str:
    status = "holds" if verdict.holds else "does not hold"
    if verdict.ambiguous:
        status += " (numerically ambiguous: routes disagree inside the tolerance band)"
    lines = [
        f"A ≼ B {status}",
        f"  algebraic route (||AC|| test): {verdict.route_algebraic}",
        f"  spectral route (eigenprojection domination): {verdict.route_spectral}",
        f"  defect: {verdict.defect:.3e} (tolerance {verdict.tolerance:.1e})",
        f"  spectral defect: {verdict.spectral_defect:.3e} (tolerance {verdict.spectral_tolerance:.1e})",
    ]
    if verdict.residual is not None:
        lines.append(f"  residual C = B - A, ||C|| = {verdict.residual_norm:.6g}")
        lines.append(format_matrix(verdict.residual.entries))
    return "\n".join(lines)


def witness_to_dict(witness: Optional[Witness]) -> Optional[Dict[str, Any]]:
    if witness is None:
        return None
    return {
        "lambda": witness.lam,
        "mu": witness.mu,
        "overlap_norm": witness.overlap_norm,
        "unit_vector": vector_pairs(witness.unit_vector),
        "prob_a": witness.prob_a,
        "prob_b": witness.prob_b,
    }


def existence_to_dict(result: ExistenceResult) -> Dict[str, Any]:
    return {
        "exists": result.exists,
        "checked_pairs": result.checked_pairs,
        "bound": result.bound,
        "witness": witness_to_dict(result.witness),
    }


def witness_to_text(witness: Witness) -> str:
    vector = " ".join(format_scalar(complex(z)) for z in witness.unit_vector)
    return "\n".join(
        [
            "The supremum does not exist.",
            f"  witness: lambda = {witness.lam:.17g}, mu = {witness.mu:.17g}",
            f"  overlap ||P^A({{lambda}}) P^B({{mu}})|| = {witness.overlap_norm:.17g}",
            f"  unit vector: [{vector}]",
            f"  in this state A = lambda has probability {witness.prob_a:.6g} "
            f"and B = mu has probability {witness.prob_b:.6g}",
        ]
    )


def measure_to_dict(measure: FiniteSpectralMeasure) -> list:
    return [{"point": p.value, "rank": p.projection.rank} for p in measure.support]


def measure_to_text(measure: FiniteSpectralMeasure) -> str:
    lines = ["join spectral measure:"]
    for point in measure.support:
        lines.append(f"  {point.value:>12.6g}  rank {point.projection.rank}")
    return "\n".join(lines)


def projection_to_dict(projection: Projection) -> Dict[str, Any]:
    return {"rank": projection.rank, "matrix": matrix_pairs(projection.entries)}


def projection_to_text(projection: Projection) -> str:
    return f"{format_matrix(projection.entries)}\nrank: {projection.rank}"


def report_to_dict(report: SupremumReport) -> Dict[str, Any]:
    return {
        "passed": report.passed,
        "a_below": None if report.a_below is None else verdict_to_dict(report.a_below),
        "b_below": None if report.b_below is None else verdict_to_dict(report.b_below),
        "certificate_deviation": report.certificate_deviation,
        "commutator_a": report.commutator_a,
        "commutator_b": report.commutator_b,
        "bounds": [
            {
                "index": check.index,
                "is_common_bound": check.is_common_bound,
                "sup_below_bound": None if check.verdict is None else check.verdict.holds,
            }
            for check in report.bound_checks
        ],
        "failures": report.failures,
    }


def report_to_text(report: SupremumReport) -> str:
    lines = [f"verification {'passed' if report.passed else 'FAILED'}"]
    for name, verdict in (("A ≼ S", report.a_below), ("B ≼ S", report.b_below)):
        lines.append(f"  {name}: {'n/a' if verdict is None else verdict.holds}")
    lines.append(f"  spectral certificate deviation: {report.certificate_deviation:.3e}")
    lines.append(f"  ||AS - SA|| = {report.commutator_a:.3e}, ||BS - SB|| = {report.commutator_b:.3e}")
    for check in report.bound_checks:
        if check.is_common_bound:
            holds = None if check.verdict is None else check.verdict.holds
            lines.append(f"  bound {check.index}: common upper bound, S ≼ F: {holds}")
        else:
            lines.append(f"  bound {check.index}: not a common upper bound, skipped")
    for failure in report.failures:
        lines.append(f"  failure: {failure}")
    return "\n".join(lines)


def to_json(payload: Dict[str, Any], tol: Tolerances) -> str:
    return json.dumps({**payload, "tolerances": tol.as_dict()}, indent=2)
