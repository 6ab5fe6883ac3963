"""Constant-coefficient principal symbols on R^(2n) and ellipticity certification.

The real coordinates pair up as x_j = (z_j + zbar_j)/2 and
y_j = (z_j - zbar_j)/(2i), turning an even-order real symbol into a scalar
Hermitian kernel.  When that kernel is circle-invariant and real-homogeneous
(i.e. bihomogeneous), ellipticity is certified constructively: the search for
a spanning holomorphic factorization of a norm-power multiple either succeeds
at some exponent d, or exhausts the bound.  An exact zero (or a sign change)
of the symbol on the unit sphere, found by exact rational sampling, upgrades
the negative outcome to a definite "not elliptic".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .factor import WeightedGramFactor
from .hermform import (
    BihermitianForm,
    HermitianMatrix,
    bidegree,
    evaluate_exact,
    is_hermitian_symmetric,
    scale,
)
from .multiindex import MultiIndex, check_multiindex, degree
from .scalars import ZERO, GaussianRational, as_gaussian
from .stabilize import StabilizationReport, find_minimal_d


@dataclass(eq=True)
class RealSymbol:
    """Polynomial with rational coefficients in the real variables x1..x_nvars."""

    nvars: int
    terms: dict[MultiIndex, Fraction]

    @classmethod
    def from_terms(cls, nvars: int, terms) -> "RealSymbol":
        if nvars < 1:
            raise ValueError("need at least one variable")
        items = terms.items() if hasattr(terms, "items") else terms
        out: dict[MultiIndex, Fraction] = {}
        for alpha, coeff in items:
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            alpha = check_multiindex(alpha)
            if len(alpha) != nvars:
                raise ValueError("exponent length differs from the variable count")
            acc = out.get(alpha, Fraction(0)) + coeff
            if acc == 0:
                out.pop(alpha, None)
            else:
                out[alpha] = acc
        return cls(nvars, out)

    def order(self) -> int:
        return max((degree(a) for a in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degrees = {degree(a) for a in self.terms}
        return len(degrees) <= 1


def symbol_add(p: RealSymbol, q: RealSymbol) -> RealSymbol:
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    return RealSymbol.from_terms(
        p.nvars, list(p.terms.items()) + list(q.terms.items())
    )


def symbol_multiply(p: RealSymbol, q: RealSymbol) -> RealSymbol:
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    acc: dict[MultiIndex, Fraction] = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            key = tuple(x + y for x, y in zip(a, b))
            acc[key] = acc.get(key, Fraction(0)) + ca * cb
    return RealSymbol.from_terms(p.nvars, acc)


_I_POWERS = (
    GaussianRational(Fraction(1)),
    GaussianRational(Fraction(0), Fraction(1)),
    GaussianRational(Fraction(-1)),
    GaussianRational(Fraction(0), Fraction(-1)),
)


def _pair_expansion(a: int, b: int) -> dict[tuple[int, int], GaussianRational]:
    """Coefficients of z^u zbar^v in x^a * y^b for one conjugate pair (x, y)."""
    x_part: dict[tuple[int, int], GaussianRational] = {}
    half = GaussianRational(Fraction(1, 2)) ** a
    for s in range(a + 1):
        x_part[(s, a - s)] = half * comb(a, s)
    y_part: dict[tuple[int, int], GaussianRational] = {}
    scale = GaussianRational(Fraction(1, 2)) ** b * _I_POWERS[(-b) % 4]
    for t in range(b + 1):
        sign = 1 if (b - t) % 2 == 0 else -1
        y_part[(t, b - t)] = scale * (comb(b, t) * sign)
    out: dict[tuple[int, int], GaussianRational] = {}
    for (u1, v1), c1 in x_part.items():
        for (u2, v2), c2 in y_part.items():
            key = (u1 + u2, v1 + v2)
            out[key] = out.get(key, ZERO) + c1 * c2
    return out


def real_to_complex(symbol: RealSymbol) -> BihermitianForm:
    """Rewrite a real symbol in the paired complex coordinates, exactly.

    Variables x_(2j-1), x_(2j) become the real and imaginary parts of z_j; the
    output is a scalar kernel, Hermitian-symmetric because the input has real
    coefficients.  Requires an even variable count.
    """
    if symbol.nvars % 2 != 0:
        raise ValueError("real-to-complex conversion needs an even variable count")
    n = symbol.nvars // 2
    acc: dict = {}
    for exponents, coeff in symbol.terms.items():
        partial: dict[tuple[MultiIndex, MultiIndex], GaussianRational] = {
            ((), ()): as_gaussian(coeff)
        }
        for j in range(n):
            pair = _pair_expansion(exponents[2 * j], exponents[2 * j + 1])
            nxt: dict[tuple[MultiIndex, MultiIndex], GaussianRational] = {}
            for (alpha, beta), c in partial.items():
                for (u, v), cp in pair.items():
                    key = (alpha + (u,), beta + (v,))
                    nxt[key] = nxt.get(key, ZERO) + c * cp
            partial = nxt
        for (alpha, beta), c in partial.items():
            key = (0, 0, alpha, beta)
            acc[key] = acc.get(key, ZERO) + c
    return BihermitianForm.from_terms(n, 1, acc)


def _complex_pair_expansion(u: int, v: int) -> dict[tuple[int, int], GaussianRational]:
    """Coefficients of x^a y^b in z^u zbar^v for one conjugate pair."""
    out: dict[tuple[int, int], GaussianRational] = {}
    for s in range(u + 1):
        cu = _I_POWERS[(u - s) % 4] * comb(u, s)
        for t in range(v + 1):
            cv = _I_POWERS[(-(v - t)) % 4] * comb(v, t)
            key = (s + t, (u - s) + (v - t))
            out[key] = out.get(key, ZERO) + cu * cv
    return out


def complex_to_real(form: BihermitianForm) -> RealSymbol:
    """Exact inverse of real_to_complex for scalar Hermitian-symmetric kernels."""
    if form.r != 1:
        raise ValueError("real-form conversion handles scalar kernels only")
    if not is_hermitian_symmetric(form):
        raise ValueError("real-form conversion requires a Hermitian-symmetric kernel")
    nvars = 2 * form.n
    acc: dict[MultiIndex, GaussianRational] = {}
    for (_, _, alpha, beta), coeff in form.support.items():
        partial: dict[MultiIndex, GaussianRational] = {(): coeff}
        for j in range(form.n):
            pair = _complex_pair_expansion(alpha[j], beta[j])
            nxt: dict[MultiIndex, GaussianRational] = {}
            for exps, c in partial.items():
                for (a, b), cp in pair.items():
                    key = exps + (a, b)
                    nxt[key] = nxt.get(key, ZERO) + c * cp
            partial = nxt
        for exps, c in partial.items():
            acc[exps] = acc.get(exps, ZERO) + c
    terms = {}
    for exps, c in acc.items():
        if c.is_zero():
            continue
        if c.im != 0:
            raise ValueError("conversion produced a non-real coefficient")
        terms[exps] = c.re
    return RealSymbol.from_terms(nvars, terms)


def is_complex_bihomogeneous(form: BihermitianForm) -> bool:
    """Circle invariance (|alpha| = |beta| per term) plus real homogeneity."""
    if form.r != 1:
        raise ValueError("bihomogeneity test handles scalar kernels only")
    return bidegree(form) is not None


def rational_sphere_point(params) -> tuple[GaussianRational, ...]:
    """Exact unit-sphere point in C^n from 2n-1 rational stereographic parameters."""
    params = [Fraction(p) for p in params]
    if len(params) % 2 != 1:
        raise ValueError("need an odd number of parameters (2n - 1)")
    norm2 = sum(p * p for p in params)
    denom = 1 + norm2
    coords = [2 * p / denom for p in params] + [(norm2 - 1) / denom]
    return tuple(
        GaussianRational(coords[2 * k], coords[2 * k + 1])
        for k in range(len(coords) // 2)
    )


def sphere_sample_points(n: int, extra: int = 60, seed: int = 7) -> list[tuple[GaussianRational, ...]]:
    """Deterministic exact sphere points: axes, a small grid, and seeded samples."""
    points = []
    for k in range(n):
        point = [ZERO] * n
        point[k] = GaussianRational(Fraction(1))
        points.append(tuple(point))
    m = 2 * n - 1
    values = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)]
    for i in range(m):
        for j in range(i, m):
            for vi in values:
                for vj in values:
                    w = [Fraction(0)] * m
                    w[i], w[j] = vi, vj
                    points.append(rational_sphere_point(w))
    rng = random.Random(seed)
    for _ in range(extra):
        w = [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(m)]
        points.append(rational_sphere_point(w))
    seen = set()
    unique = []
    for p in points:
        if p not in seen:
            seen.add(p)
            unique.append(p)
    return unique


@dataclass(eq=True)
class EllipticityReport:
    real_dim: int
    complex_dim: int
    order: int
    verdict: str  # "certified", "not_certified", or "not_elliptic"
    d: int | None
    e_matrix: HermitianMatrix | None
    factor: WeightedGramFactor | None
    witness_point: tuple[GaussianRational, ...] | None
    sign_pair: tuple | None
    sign_flipped: bool
    stabilization: StabilizationReport | None
    variety_condition: str = "not checked"


def _sample_symbol(form: BihermitianForm):
    """Exact sphere sampling: returns (zero_point, pos_point, neg_point)."""
    zero_point = pos_point = neg_point = None
    for point in sphere_sample_points(form.n):
        value = evaluate_exact(form, point, point)[0][0]
        if value.im != 0:
            raise ValueError("kernel is not real-valued on the diagonal")
        if value.re == 0 and zero_point is None:
            zero_point = point
        elif value.re > 0 and pos_point is None:
            pos_point = (point, value.re)
        elif value.re < 0 and neg_point is None:
            neg_point = (point, value.re)
        if zero_point and pos_point and neg_point:
            break
    return zero_point, pos_point, neg_point


def certify_elliptic_form(form: BihermitianForm, d_max: int) -> EllipticityReport:
    """Core ellipticity certification for a scalar complex-bihomogeneous kernel."""
    if form.r != 1:
        raise ValueError("ellipticity certification handles scalar symbols only")
    if not is_hermitian_symmetric(form):
        raise ValueError("symbol kernel must be Hermitian-symmetric (real-valued)")
    if not is_complex_bihomogeneous(form):
        raise ValueError("symbol is not complex-bihomogeneous; certification does not apply")
    m = bidegree(form)
    base = EllipticityReport(
        real_dim=2 * form.n,
        complex_dim=form.n,
        order=2 * (m or 0),
        verdict="not_certified",
        d=None,
        e_matrix=None,
        factor=None,
        witness_point=None,
        sign_pair=None,
        sign_flipped=False,
        stabilization=None,
    )
    zero_point, pos_point, neg_point = _sample_symbol(form)
    if zero_point is not None:
        base.verdict = "not_elliptic"
        base.witness_point = zero_point
        return base
    if pos_point is not None and neg_point is not None:
        # Exact values of opposite sign on the connected unit sphere force a zero.
        base.verdict = "not_elliptic"
        base.sign_pair = (pos_point, neg_point)
        return base
    work = form
    if neg_point is not None and pos_point is None:
        work = scale(form, -1)
        base.sign_flipped = True
    report = find_minimal_d(work, "strict", d_max)
    base.stabilization = report
    if report.found():
        base.verdict = "certified"
        base.d = report.d_min
        base.e_matrix = report.steps[-1].certificate.matrix
        base.factor = report.factor
    return base


def certify_elliptic(symbol: RealSymbol, d_max: int) -> EllipticityReport:
    """Certify ellipticity of an even-order homogeneous real symbol.

    Raises ValueError when the symbol is inhomogeneous, of odd order or odd
    variable count, or when its complex form is not bihomogeneous.
    """
    if not symbol.is_homogeneous():
        raise ValueError("principal symbol must be homogeneous")
    if symbol.order() % 2 != 0:
        raise ValueError("principal symbol must have even order")
    form = real_to_complex(symbol)
    return certify_elliptic_form(form, d_max)


def format_diff_operator_row(row, weight: Fraction | None = None) -> str:
    """Render a holomorphic row as a constant-coefficient d/dz operator."""
    parts = []
    for poly in row:
        for alpha in sorted(poly, key=lambda a: tuple(-x for x in a)):
            coeff = poly[alpha]
            mono = "".join(
                f"Dz{k + 1}" + (f"^{a}" if a > 1 else "")
                for k, a in enumerate(alpha)
                if a > 0
            )
            mono = mono or "1"
            parts.append(f"({coeff})*{mono}")
    body = " + ".join(parts) if parts else "0"
    if weight is not None and weight != 1:
        return f"[weight {weight}] {body}"
    return body
