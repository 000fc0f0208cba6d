"""Self-validation of the generated tables and quadrature rules.

The integer coefficient tables and the (5,5) row of the exact coefficient
tensor have frozen reference copies here; regeneration from the rational
oracle must reproduce them entry for entry.  Quadrature rules must
integrate every monomial up to their nominal degree against the oracle and
must fail one degree higher, certifying that the stated degree is tight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactpoly import monomial_integral
from .quadrature import SUPPORTED_POINT_COUNTS, standard_rule
from .schemes import ConstantTables, generate_constant_tables

EXACTNESS_TOL = 1e-12
TIGHTNESS_FLOOR = 1e-8

REFERENCE_M0 = np.array([
    [6, 1, 1, 1, -4, -6, -4, -4, -6, -6],
    [1, 6, 1, 1, -4, -4, -6, -6, -4, -6],
    [1, 1, 6, 1, -6, -4, -4, -6, -6, -4],
    [1, 1, 1, 6, -6, -6, -6, -4, -4, -4],
    [-4, -4, -6, -6, 32, 16, 16, 16, 16, 8],
    [-6, -4, -4, -6, 16, 32, 16, 8, 16, 16],
    [-4, -6, -4, -6, 16, 16, 32, 16, 8, 16],
    [-4, -6, -6, -4, 16, 8, 16, 32, 16, 16],
    [-6, -4, -6, -4, 16, 16, 8, 16, 32, 16],
    [-6, -6, -4, -4, 8, 16, 16, 16, 16, 32],
])

REFERENCE_LM = np.array([
    [
        [6, 0, 0, 0, 0, -2, 0, 0, -2, -2],
        [0, 2, 1, 1, -4, -2, -4, -4, -2, -2],
        [0, 1, 2, 1, -4, -2, -4, -4, -2, -2],
        [0, 1, 1, 2, -4, -2, -4, -4, -2, -2],
        [0, -4, -4, -4, 24, 8, 12, 12, 8, 4],
        [-2, -2, -2, -2, 8, 8, 8, 4, 4, 4],
        [0, -4, -4, -4, 12, 8, 24, 12, 4, 8],
        [0, -4, -4, -4, 12, 4, 12, 24, 8, 8],
        [-2, -2, -2, -2, 8, 4, 4, 8, 8, 4],
        [-2, -2, -2, -2, 4, 4, 8, 8, 4, 8],
    ],
    [
        [2, 0, 1, 1, -4, -4, -2, -2, -4, -2],
        [0, 6, 0, 0, 0, 0, -2, -2, 0, -2],
        [1, 0, 2, 1, -4, -4, -2, -2, -4, -2],
        [1, 0, 1, 2, -4, -4, -2, -2, -4, -2],
        [-4, 0, -4, -4, 24, 12, 8, 8, 12, 4],
        [-4, 0, -4, -4, 12, 24, 8, 4, 12, 8],
        [-2, -2, -2, -2, 8, 8, 8, 4, 4, 4],
        [-2, -2, -2, -2, 8, 4, 4, 8, 8, 4],
        [-4, 0, -4, -4, 12, 12, 4, 8, 24, 8],
        [-2, -2, -2, -2, 4, 8, 4, 4, 8, 8],
    ],
    [
        [2, 1, 0, 1, -2, -4, -4, -2, -2, -4],
        [1, 2, 0, 1, -2, -4, -4, -2, -2, -4],
        [0, 0, 6, 0, -2, 0, 0, -2, -2, 0],
        [1, 1, 0, 2, -2, -4, -4, -2, -2, -4],
        [-2, -2, -2, -2, 8, 8, 8, 4, 4, 4],
        [-4, -4, 0, -4, 8, 24, 12, 4, 8, 12],
        [-4, -4, 0, -4, 8, 12, 24, 8, 4, 12],
        [-2, -2, -2, -2, 4, 4, 8, 8, 4, 8],
        [-2, -2, -2, -2, 4, 8, 4, 4, 8, 8],
        [-4, -4, 0, -4, 4, 12, 12, 8, 8, 24],
    ],
    [
        [2, 1, 1, 0, -2, -2, -2, -4, -4, -4],
        [1, 2, 1, 0, -2, -2, -2, -4, -4, -4],
        [1, 1, 2, 0, -2, -2, -2, -4, -4, -4],
        [0, 0, 0, 6, -2, -2, -2, 0, 0, 0],
        [-2, -2, -2, -2, 8, 4, 4, 8, 8, 4],
        [-2, -2, -2, -2, 4, 8, 4, 4, 8, 8],
        [-2, -2, -2, -2, 4, 4, 8, 8, 4, 8],
        [-4, -4, -4, 0, 8, 4, 8, 24, 12, 12],
        [-4, -4, -4, 0, 8, 8, 4, 12, 24, 12],
        [-4, -4, -4, 0, 4, 8, 8, 12, 12, 24],
    ],
])

REFERENCE_QM_FIRST = np.array([
    [18, -6, -6, -6, 24, 12, 24, 24, 12, 12],
    [-6, -6, -1, -1, 0, 6, 6, 6, 6, 8],
    [-6, -1, -6, -1, 6, 6, 0, 6, 8, 6],
    [-6, -1, -1, -6, 6, 8, 6, 0, 6, 6],
    [24, 0, 6, 6, -24, -24, -12, -12, -24, -12],
    [12, 6, 6, 8, -24, -40, -24, -12, -20, -20],
    [24, 6, 0, 6, -12, -24, -24, -12, -12, -24],
    [24, 6, 6, 0, -12, -12, -12, -24, -24, -24],
    [12, 6, 8, 6, -24, -20, -12, -24, -40, -20],
    [12, 8, 6, 6, -12, -20, -24, -24, -20, -40],
])

REFERENCE_QM_LAST = np.array([
    [12, 8, 6, 6, -12, -20, -24, -24, -20, -40],
    [8, 12, 6, 6, -12, -24, -20, -20, -24, -40],
    [6, 6, 24, 0, -12, -12, -12, -24, -24, -24],
    [6, 6, 0, 24, -12, -24, -24, -12, -12, -24],
    [-12, -12, -12, -12, 32, 32, 32, 32, 32, 32],
    [-20, -24, -12, -24, 32, 96, 48, 32, 64, 96],
    [-24, -20, -12, -24, 32, 48, 96, 64, 32, 96],
    [-24, -20, -24, -12, 32, 32, 64, 96, 48, 96],
    [-20, -24, -24, -12, 32, 64, 32, 48, 96, 96],
    [-40, -40, -24, -24, 32, 96, 96, 96, 96, 288],
])

#: Numerators over 56700 of the exact coefficient row for matrix entry (5,5).
REFERENCE_EXACT_55_NUMERATORS = (
    720, 270, 90, 90, 120, 30, 20, 30, 10, 20,
    60, 12, 6, 6, 12, 3, 2, 6, 2, 6,
)
REFERENCE_EXACT_55_DENOMINATOR = 56700


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _compare_int_table(name: str, generated: np.ndarray, reference: np.ndarray) -> CheckResult:
    mismatches = np.argwhere(generated != reference)
    if mismatches.size == 0:
        return CheckResult(name, True)
    i, j = mismatches[0]
    return CheckResult(
        name,
        False,
        f"entry ({i + 1},{j + 1}): generated {generated[i, j]}, "
        f"reference {reference[i, j]} ({len(mismatches)} mismatching entries)",
    )


def check_reference_tables(tables: ConstantTables | None = None) -> list[CheckResult]:
    """Compare generated tables with the frozen references, entry for entry."""
    tables = tables if tables is not None else generate_constant_tables()
    results = [_compare_int_table("m0-table", tables.m0, REFERENCE_M0)]
    for k in range(4):
        results.append(_compare_int_table(f"lm-table-{k + 1}", tables.lm[k], REFERENCE_LM[k]))
    results.append(_compare_int_table("qm-table-1", tables.qm[0], REFERENCE_QM_FIRST))
    results.append(_compare_int_table("qm-table-10", tables.qm[9], REFERENCE_QM_LAST))

    lm_sum_ok = np.array_equal(tables.lm.sum(axis=0), 2 * tables.m0)
    results.append(CheckResult(
        "lm-sum-identity", lm_sum_ok,
        "" if lm_sum_ok else "sum of the four lm tables is not 2 * m0",
    ))
    qm_sum_ok = np.array_equal(tables.qm.sum(axis=0), 18 * tables.m0)
    results.append(CheckResult(
        "qm-sum-identity", qm_sum_ok,
        "" if qm_sum_ok else "sum of the ten qm tables is not 18 * m0",
    ))

    expected_row = tuple(
        Fraction(n, REFERENCE_EXACT_55_DENOMINATOR)
        for n in REFERENCE_EXACT_55_NUMERATORS
    )
    row = tables.exact_rational[4][4]
    if row == expected_row:
        results.append(CheckResult("exact-coefficient-row-55", True))
    else:
        w = next(k for k in range(20) if row[k] != expected_row[k])
        results.append(CheckResult(
            "exact-coefficient-row-55", False,
            f"coefficient {w}: generated {row[w]}, reference {expected_row[w]}",
        ))
    return results


def _monomials_of_degree(degree: int):
    for a in range(degree + 1):
        for b in range(degree - a + 1):
            yield a, b, degree - a - b


def check_quadrature_rules() -> list[CheckResult]:
    """Certify each rule's exactness degree against the rational oracle."""
    results = []
    for n_points in SUPPORTED_POINT_COUNTS:
        rule = standard_rule(n_points)
        xi, eta, zeta = rule.points.T
        worst = 0.0
        worst_mono = None
        for degree in range(rule.exact_degree + 1):
            for a, b, c in _monomials_of_degree(degree):
                approx = float(np.sum(rule.weights * xi**a * eta**b * zeta**c))
                err = abs(approx - float(monomial_integral(a, b, c)))
                if err > worst:
                    worst, worst_mono = err, (a, b, c)
        ok = worst <= EXACTNESS_TOL
        results.append(CheckResult(
            f"rule-{n_points}-exactness-degree-{rule.exact_degree}", ok,
            "" if ok else f"monomial {worst_mono} off by {worst:.3e}",
        ))

        over = max(
            abs(float(np.sum(rule.weights * xi**a * eta**b * zeta**c))
                - float(monomial_integral(a, b, c)))
            for a, b, c in _monomials_of_degree(rule.exact_degree + 1)
        )
        tight = over > TIGHTNESS_FLOOR
        results.append(CheckResult(
            f"rule-{n_points}-degree-tightness", tight,
            "" if tight else
            f"rule unexpectedly exact at degree {rule.exact_degree + 1} "
            f"(max error {over:.3e})",
        ))
    return results


def run_validation(tables: ConstantTables | None = None) -> list[CheckResult]:
    """Full validation suite: table reproduction plus quadrature certification."""
    return check_reference_tables(tables) + check_quadrature_rules()
