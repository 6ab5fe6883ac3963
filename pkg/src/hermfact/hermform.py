"""Hermitian polynomial kernels F(z, wbar), holomorphic polynomial matrices, and
their exact coefficient matrices.

A kernel is stored sparsely as a map (i, j, alpha, beta) -> coefficient for the
term F_ij contributing coefficient * z^alpha * wbar^beta.  Row/column indices
i, j are 0-based internally.  A kernel is *bihomogeneous of bidegree m* when
every stored term has |alpha| = |beta| = m; otherwise it can still be handled
in "generalized" mode, where the coefficient matrix runs over all monomials up
to the maximum degree present.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .multiindex import (
    MultiIndex,
    check_multiindex,
    degree,
    dim_homogeneous,
    enumerate_degree,
)
from .scalars import ZERO, GaussianRational, as_gaussian

TermKey = tuple[int, int, MultiIndex, MultiIndex]
Poly = dict[MultiIndex, GaussianRational]


@dataclass(eq=True)
class BihermitianForm:
    """Sparse r-by-r matrix of polynomials in (z, wbar); treated as immutable."""

    n: int
    r: int
    support: dict[TermKey, GaussianRational]

    @classmethod
    def from_terms(cls, n: int, r: int, terms) -> "BihermitianForm":
        """Build a form from (i, j, alpha, beta) -> coefficient items, dropping zeros."""
        if n < 1 or r < 1:
            raise ValueError("dimension and matrix size must be >= 1")
        items = terms.items() if hasattr(terms, "items") else terms
        support: dict[TermKey, GaussianRational] = {}
        for (i, j, alpha, beta), coeff in items:
            coeff = as_gaussian(coeff)
            if coeff.is_zero():
                continue
            if not (0 <= i < r and 0 <= j < r):
                raise ValueError(f"matrix index out of range: ({i}, {j})")
            alpha = check_multiindex(alpha)
            beta = check_multiindex(beta)
            if len(alpha) != n or len(beta) != n:
                raise ValueError("multi-index length differs from ambient dimension")
            key = (i, j, alpha, beta)
            prev = support.get(key)
            coeff = coeff if prev is None else prev + coeff
            if coeff.is_zero():
                support.pop(key, None)
            else:
                support[key] = coeff
        return cls(n, r, support)

    @classmethod
    def zero(cls, n: int, r: int = 1) -> "BihermitianForm":
        return cls(n, r, {})

    def coefficient(self, i: int, j: int, alpha, beta) -> GaussianRational:
        return self.support.get((i, j, tuple(alpha), tuple(beta)), ZERO)


@dataclass(eq=True)
class HoloPolyMatrix:
    """s-by-r matrix of holomorphic polynomials, with optional positive row weights.

    Row weights scale each row's rank-one contribution in `gram`; they are kept
    as exact rationals so that square roots never enter the exact pipeline.
    """

    n: int
    ncols: int
    rows: tuple[tuple[Poly, ...], ...]
    weights: tuple[Fraction, ...] | None = None

    @classmethod
    def from_rows(cls, n: int, rows, weights=None, ncols=None) -> "HoloPolyMatrix":
        if n < 1:
            raise ValueError("dimension must be >= 1")
        norm_rows = []
        width = ncols
        for row in rows:
            norm_row = []
            for poly in row:
                items = poly.items() if hasattr(poly, "items") else poly
                entry: Poly = {}
                for alpha, coeff in items:
                    coeff = as_gaussian(coeff)
                    if coeff.is_zero():
                        continue
                    alpha = check_multiindex(alpha)
                    if len(alpha) != n:
                        raise ValueError("multi-index length differs from ambient dimension")
                    entry[alpha] = entry.get(alpha, ZERO) + coeff
                norm_row.append({a: c for a, c in entry.items() if not c.is_zero()})
            if width is None:
                width = len(norm_row)
            elif len(norm_row) != width:
                raise ValueError("ragged rows in holomorphic matrix")
            norm_rows.append(tuple(norm_row))
        if width is None or width == 0:
            raise ValueError("holomorphic matrix needs at least one column")
        if weights is not None:
            weights = tuple(Fraction(w) for w in weights)
            if len(weights) != len(norm_rows):
                raise ValueError("one weight per row required")
            if any(w <= 0 for w in weights):
                raise ValueError("row weights must be positive")
            if not weights:
                weights = None
        return cls(n, width, tuple(norm_rows), weights)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def homogeneous_degree(self) -> int | None:
        """Common degree of every monomial in every entry, or None if mixed/empty."""
        deg = None
        for row in self.rows:
            for poly in row:
                for alpha in poly:
                    d = degree(alpha)
                    if deg is None:
                        deg = d
                    elif deg != d:
                        return None
        return deg


@dataclass(eq=True)
class HermitianMatrix:
    """Dense Hermitian matrix over the Gaussian rationals."""

    entries: tuple[tuple[GaussianRational, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "HermitianMatrix":
        entries = tuple(tuple(as_gaussian(x) for x in row) for row in rows)
        size = len(entries)
        for row in entries:
            if len(row) != size:
                raise ValueError("matrix must be square")
        for k in range(size):
            if entries[k][k].im != 0:
                raise ValueError(f"diagonal entry {k} is not real")
            for l in range(k):
                if entries[k][l] != entries[l][k].conjugate():
                    raise ValueError(f"entries ({k},{l}) and ({l},{k}) are not conjugate")
        return cls(entries)

    @classmethod
    def diagonal(cls, values) -> "HermitianMatrix":
        vals = [as_gaussian(v) for v in values]
        size = len(vals)
        return cls.from_rows(
            [[vals[k] if k == l else ZERO for l in range(size)] for k in range(size)]
        )

    @classmethod
    def identity(cls, size: int) -> "HermitianMatrix":
        return cls.diagonal([1] * size)

    @property
    def size(self) -> int:
        return len(self.entries)

    def at(self, k: int, l: int) -> GaussianRational:
        return self.entries[k][l]


@dataclass(eq=True, frozen=True)
class CoefficientBasis:
    """Ordered combined index (i, alpha) for a coefficient matrix.

    `pairs[k]` is the (matrix row index, monomial) labelling coordinate k; the
    r-index is major, monomials follow the canonical graded order.
    """

    n: int
    r: int
    bidegree: int | None
    pairs: tuple[tuple[int, MultiIndex], ...]

    def index(self, i: int, alpha: MultiIndex) -> int:
        return self._lookup[(i, alpha)]

    @property
    def _lookup(self):
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = {pair: k for k, pair in enumerate(self.pairs)}
            self.__dict__["_lookup_cache"] = cache
        return cache


def is_hermitian_symmetric(form: BihermitianForm) -> bool:
    """True iff coefficient(i, j, a, b) == conj(coefficient(j, i, b, a)) throughout.

    Equivalent to F(z, zbar) taking Hermitian matrix values (real values for
    r = 1) at every point.
    """
    for (i, j, alpha, beta), coeff in form.support.items():
        partner = form.support.get((j, i, beta, alpha))
        if partner is None or partner.conjugate() != coeff:
            return False
    return True


def bidegree(form: BihermitianForm) -> int | None:
    """The common m with |alpha| = |beta| = m over all terms; None if mixed.

    The zero form is reported as bidegree 0.
    """
    m = None
    for (_, _, alpha, beta) in form.support:
        da, db = degree(alpha), degree(beta)
        if da != db:
            return None
        if m is None:
            m = da
        elif m != da:
            return None
    return 0 if m is None else m


def max_degree(form: BihermitianForm) -> int:
    """Largest |alpha| or |beta| appearing in the support (0 for the zero form)."""
    out = 0
    for (_, _, alpha, beta) in form.support:
        out = max(out, degree(alpha), degree(beta))
    return out


def add(f: BihermitianForm, g: BihermitianForm) -> BihermitianForm:
    if f.n != g.n or f.r != g.r:
        raise ValueError("shape mismatch in kernel addition")
    terms = dict(f.support)
    acc: list = list(terms.items()) + list(g.support.items())
    return BihermitianForm.from_terms(f.n, f.r, acc)


def scale(f: BihermitianForm, c) -> BihermitianForm:
    c = as_gaussian(c)
    return BihermitianForm.from_terms(
        f.n, f.r, [(key, coeff * c) for key, coeff in f.support.items()]
    )


def subtract(f: BihermitianForm, g: BihermitianForm) -> BihermitianForm:
    return add(f, scale(g, -1))


def kernel_multiply(f: BihermitianForm, g: BihermitianForm) -> BihermitianForm:
    """Kernel product: coefficient convolution in z and in wbar separately.

    One factor must be scalar (r = 1); scalar*scalar and scalar*matrix are the
    supported shapes.  Hermitian symmetry is preserved when both factors have it.
    """
    if f.n != g.n:
        raise ValueError("dimension mismatch in kernel product")
    if f.r != 1 and g.r != 1:
        raise ValueError("kernel product needs a scalar factor")
    scalar, matrix = (f, g) if f.r == 1 else (g, f)
    acc: dict[TermKey, GaussianRational] = {}
    for (_, _, a1, b1), c1 in scalar.support.items():
        for (i, j, a2, b2), c2 in matrix.support.items():
            alpha = tuple(x + y for x, y in zip(a1, a2))
            beta = tuple(x + y for x, y in zip(b1, b2))
            key = (i, j, alpha, beta)
            acc[key] = acc.get(key, ZERO) + c1 * c2
    return BihermitianForm.from_terms(f.n, matrix.r, acc)


def gram(a: HoloPolyMatrix) -> BihermitianForm:
    """The r-by-r kernel F_ij(z, wbar) = sum_k w_k * A_ki(z) * conj(A_kj(w)).

    Row weights w_k default to 1.  The result is always Hermitian-symmetric,
    and its coefficient matrix is positive semidefinite by construction.
    """
    s, r = a.shape
    weights = a.weights if a.weights is not None else tuple(Fraction(1) for _ in range(s))
    acc: dict[TermKey, GaussianRational] = {}
    for k in range(s):
        w = as_gaussian(weights[k])
        for i in range(r):
            for j in range(r):
                for alpha, ca in a.rows[k][i].items():
                    for beta, cb in a.rows[k][j].items():
                        key = (i, j, alpha, beta)
                        acc[key] = acc.get(key, ZERO) + w * ca * cb.conjugate()
    return BihermitianForm.from_terms(a.n, r, acc)


def euclidean_pairing(n: int) -> BihermitianForm:
    """The kernel <z, w> = sum_k z_k * wbar_k."""
    unit = [0] * n
    terms = {}
    for k in range(n):
        e = tuple(unit[:k] + [1] + unit[k + 1 :])
        terms[(0, 0, e, e)] = 1
    return BihermitianForm.from_terms(n, 1, terms)


def _basis_pairs(n: int, r: int, degrees) -> tuple[tuple[int, MultiIndex], ...]:
    monomials = []
    for d in degrees:
        monomials.extend(enumerate_degree(n, d))
    return tuple((i, alpha) for i in range(r) for alpha in monomials)


def coefficient_basis(form: BihermitianForm, mode: str = "auto") -> CoefficientBasis:
    """Combined (i, alpha) basis for the form's coefficient matrix.

    mode: "bidegree" demands a single bidegree m and uses the degree-m basis;
    "generalized" uses all monomials up to the maximum degree in the support;
    "auto" picks "bidegree" when it applies and "generalized" otherwise.
    """
    m = bidegree(form)
    if mode == "auto":
        mode = "bidegree" if m is not None else "generalized"
    if mode == "bidegree":
        if m is None:
            raise ValueError("form has mixed bidegrees; use generalized mode")
        return CoefficientBasis(form.n, form.r, m, _basis_pairs(form.n, form.r, [m]))
    if mode == "generalized":
        cap = max_degree(form)
        return CoefficientBasis(
            form.n, form.r, None, _basis_pairs(form.n, form.r, range(cap + 1))
        )
    raise ValueError(f"unknown coefficient basis mode: {mode}")


def coefficient_matrix(
    form: BihermitianForm, mode: str = "auto"
) -> tuple[HermitianMatrix, CoefficientBasis]:
    """Hermitian matrix M with M[(i,alpha)][(j,beta)] = coefficient(i, j, alpha, beta).

    The quadratic form H* M H evaluates the kernel's coefficient pairing:
    positivity of M is exactly expressibility of the kernel as a weighted sum
    of rank-one holomorphic squares.  Requires a Hermitian-symmetric input.
    """
    if not is_hermitian_symmetric(form):
        raise ValueError("coefficient matrix requires a Hermitian-symmetric form")
    basis = coefficient_basis(form, mode)
    size = len(basis.pairs)
    rows = [[ZERO] * size for _ in range(size)]
    lookup = basis._lookup
    for (i, j, alpha, beta), coeff in form.support.items():
        rows[lookup[(i, alpha)]][lookup[(j, beta)]] = coeff
    return HermitianMatrix.from_rows(rows), basis


def from_coefficient_matrix(
    matrix: HermitianMatrix, n: int, m: int, r: int
) -> BihermitianForm:
    """Inverse of coefficient_matrix on the bidegree-m basis; exact round trip."""
    expected = r * dim_homogeneous(n, m)
    if matrix.size != expected:
        raise ValueError(
            f"matrix size {matrix.size} does not match r*dim = {expected}"
        )
    pairs = _basis_pairs(n, r, [m])
    terms = {}
    for k, (i, alpha) in enumerate(pairs):
        for l, (j, beta) in enumerate(pairs):
            c = matrix.at(k, l)
            if not c.is_zero():
                terms[(i, j, alpha, beta)] = c
    return BihermitianForm.from_terms(n, r, terms)


def _monomial_value(point, alpha: MultiIndex):
    value = None
    for z, a in zip(point, alpha):
        if a == 0:
            continue
        p = z**a
        value = p if value is None else value * p
    return value


def evaluate_exact(form: BihermitianForm, z, w) -> list[list[GaussianRational]]:
    """Exact value of F(z, wbar) at Gaussian-rational points z, w."""
    z = tuple(as_gaussian(c) for c in z)
    w = tuple(as_gaussian(c) for c in w)
    if len(z) != form.n or len(w) != form.n:
        raise ValueError("point length differs from ambient dimension")
    out = [[ZERO] * form.r for _ in range(form.r)]
    for (i, j, alpha, beta), coeff in form.support.items():
        term = coeff
        za = _monomial_value(z, alpha)
        if za is not None:
            term = term * za
        wb = _monomial_value(w, beta)
        if wb is not None:
            term = term * wb.conjugate()
        out[i][j] = out[i][j] + term
    return out


def evaluate(form: BihermitianForm, z, w) -> list[list[complex]]:
    """Floating-point value of F(z, wbar); z and w are complex n-vectors."""
    z = tuple(complex(c) for c in z)
    w = tuple(complex(c) for c in w)
    if len(z) != form.n or len(w) != form.n:
        raise ValueError("point length differs from ambient dimension")
    out = [[0j] * form.r for _ in range(form.r)]
    for (i, j, alpha, beta), coeff in form.support.items():
        term = complex(coeff)
        for zk, a in zip(z, alpha):
            if a:
                term *= zk**a
        for wk, b in zip(w, beta):
            if b:
                term *= (wk**b).conjugate()
        out[i][j] += term
    return out


def evaluate_holo_exact(a: HoloPolyMatrix, z) -> list[list[GaussianRational]]:
    """Exact s-by-r value of a holomorphic polynomial matrix at z."""
    z = tuple(as_gaussian(c) for c in z)
    if len(z) != a.n:
        raise ValueError("point length differs from ambient dimension")
    s, r = a.shape
    out = [[ZERO] * r for _ in range(s)]
    for k in range(s):
        for i in range(r):
            for alpha, coeff in a.rows[k][i].items():
                term = coeff
                mv = _monomial_value(z, alpha)
                if mv is not None:
                    term = term * mv
                out[k][i] = out[k][i] + term
    return out
