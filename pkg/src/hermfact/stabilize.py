"""Norm-power multipliers and the minimal stabilization exponent search.

Multiplying a bihomogeneous kernel by <z, w> shifts its coefficient tensor
along the diagonal; the minimal d for which the d-fold shift has a positive
(semi)definite coefficient matrix is found by a linear upward search, keeping
the full per-exponent certificate trail for audit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .certify import SignatureCertificate, ldl_signature
from .factor import WeightedGramFactor, holomorphic_factor, strict_holomorphic_factor
from .hermform import (
    BihermitianForm,
    bidegree,
    coefficient_matrix,
    is_hermitian_symmetric,
)
from .multiindex import enumerate_degree, multinomial
from .scalars import ZERO

MODES = ("strict", "semi")


def multiplier_shift(form: BihermitianForm) -> BihermitianForm:
    """The kernel <z, w> * F, one diagonal-translate convolution step.

    Requires a single bidegree m; the result has bidegree m + 1 and keeps
    Hermitian symmetry.
    """
    if bidegree(form) is None:
        raise ValueError("multiplier shift requires a single bidegree")
    acc = {}
    for (i, j, alpha, beta), coeff in form.support.items():
        for k in range(form.n):
            key = (
                i,
                j,
                alpha[:k] + (alpha[k] + 1,) + alpha[k + 1 :],
                beta[:k] + (beta[k] + 1,) + beta[k + 1 :],
            )
            acc[key] = acc.get(key, ZERO) + coeff
    return BihermitianForm.from_terms(form.n, form.r, acc)


def multiplier_power(form: BihermitianForm, d: int) -> BihermitianForm:
    """The kernel <z, w>^d * F via direct multinomial convolution.

    Agrees exactly with d iterated applications of multiplier_shift.
    """
    if d < 0:
        raise ValueError("multiplier exponent must be nonnegative")
    if bidegree(form) is None:
        raise ValueError("multiplier power requires a single bidegree")
    if d == 0:
        return form
    acc = {}
    for gamma in enumerate_degree(form.n, d):
        weight = multinomial(d, gamma)
        for (i, j, alpha, beta), coeff in form.support.items():
            key = (
                i,
                j,
                tuple(a + g for a, g in zip(alpha, gamma)),
                tuple(b + g for b, g in zip(beta, gamma)),
            )
            acc[key] = acc.get(key, ZERO) + coeff * weight
    return BihermitianForm.from_terms(form.n, form.r, acc)


@dataclass(eq=True)
class StabilizationStep:
    d: int
    size: int
    n_pos: int
    n_neg: int
    n_zero: int
    passes: bool
    certificate: SignatureCertificate


@dataclass(eq=True)
class StabilizationReport:
    mode: str
    d_max: int
    d_min: int | None
    steps: list[StabilizationStep] = field(default_factory=list)
    factor: WeightedGramFactor | None = None

    def found(self) -> bool:
        return self.d_min is not None


def find_minimal_d(
    form: BihermitianForm, mode: str, d_max: int
) -> StabilizationReport:
    """Smallest d <= d_max whose shifted coefficient matrix passes the mode's test.

    mode "strict" demands positive definiteness (spanning factorization);
    mode "semi" demands positive semidefiniteness.  Once the test passes at
    some d it passes at every larger one, so the linear search is complete.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    if not is_hermitian_symmetric(form):
        raise ValueError("stabilization search requires a Hermitian-symmetric form")
    if bidegree(form) is None:
        raise ValueError("stabilization search requires a single bidegree")
    report = StabilizationReport(mode=mode, d_max=d_max, d_min=None)
    shifted = form
    for d in range(d_max + 1):
        matrix, _ = coefficient_matrix(shifted, mode="bidegree")
        cert = ldl_signature(matrix)
        passes = (
            cert.is_positive_definite()
            if mode == "strict"
            else cert.is_positive_semidefinite()
        )
        report.steps.append(
            StabilizationStep(
                d=d,
                size=matrix.size,
                n_pos=cert.n_pos,
                n_neg=cert.n_neg,
                n_zero=cert.n_zero,
                passes=passes,
                certificate=cert,
            )
        )
        if passes:
            report.d_min = d
            if mode == "strict":
                report.factor = strict_holomorphic_factor(shifted)
            else:
                report.factor = holomorphic_factor(shifted)
            return report
        if d < d_max:
            shifted = multiplier_shift(shifted)
    return report


@dataclass(eq=True)
class SweepRow:
    label: str
    report: StabilizationReport | None
    error: str | None
    elapsed: float


def _sweep_entry(label: str, form: BihermitianForm, mode: str, d_max: int) -> SweepRow:
    start = time.perf_counter()
    try:
        report = find_minimal_d(form, mode, d_max)
        return SweepRow(label, report, None, time.perf_counter() - start)
    except ValueError as exc:
        return SweepRow(label, None, str(exc), time.perf_counter() - start)


def stabilization_sweep(
    family, mode: str, d_max: int, workers: int = 1
) -> list[SweepRow]:
    """Run find_minimal_d over a labelled family; per-row errors do not abort.

    Rows come back in input order regardless of `workers`.
    """
    entries = list(family)
    if workers > 1 and len(entries) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_sweep_entry, label, form, mode, d_max)
                for label, form in entries
            ]
            return [f.result() for f in futures]
    return [_sweep_entry(label, form, mode, d_max) for label, form in entries]
