"""Shared fixtures: canonical kernels, random instance builders, and the
independent brute-force oracles the tests freeze expected values from."""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from hermfact import (
    BihermitianForm,
    GaussianRational,
    HermitianMatrix,
    HoloPolyMatrix,
    enumerate_degree,
)

# ---------------------------------------------------------------------------
# canonical instances


def quartic_family(c) -> BihermitianForm:
    """|z1|^4 + c*|z1 z2|^2 + |z2|^4 as a kernel on C^2."""
    return BihermitianForm.from_terms(
        2,
        1,
        {
            (0, 0, (2, 0), (2, 0)): 1,
            (0, 0, (1, 1), (1, 1)): GaussianRational(Fraction(c)),
            (0, 0, (0, 2), (0, 2)): 1,
        },
    )


def diagonal_quartic() -> BihermitianForm:
    """|z1|^4 + |z2|^4: semidefinite-factorable but with no cross term."""
    return quartic_family(0)


def square_difference() -> BihermitianForm:
    """(|z1|^2 - |z2|^2)^2, whose zero set is not an analytic variety."""
    return quartic_family(-2)


# ---------------------------------------------------------------------------
# independent oracles


def binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def oracle_quartic_entries(c, d: int) -> list[Fraction]:
    """Diagonal of the d-shifted coefficient matrix of quartic_family(c).

    Independent of the package: the shifted kernel stays diagonal in the
    monomial basis and its entry at position k is
    binom(d, k) + c*binom(d, k-1) + binom(d, k-2).
    """
    c = Fraction(c)
    return [binom(d, k) + c * binom(d, k - 1) + binom(d, k - 2) for k in range(d + 3)]


def oracle_quartic_dmin(c, mode: str = "strict", d_max: int = 64) -> int | None:
    for d in range(d_max + 1):
        entries = oracle_quartic_entries(c, d)
        if mode == "strict":
            if all(e > 0 for e in entries):
                return d
        else:
            if all(e >= 0 for e in entries):
                return d
    return None


def oracle_diagonal_shift_entries(coeffs: dict[tuple[int, int], Fraction], d: int):
    """Closed-form convolution for diagonal scalar kernels on C^2.

    coeffs maps (a, b) with a + b = m to the coefficient of |z1|^(2a)|z2|^(2b);
    position k of the shifted matrix (monomial z1^(m+d-k) z2^k) receives
    sum over (a, b) of coeff * binom(d, k - b).
    """
    m = next(iter(coeffs))[0] + next(iter(coeffs))[1]
    return [
        sum(coeff * binom(d, k - b) for (a, b), coeff in coeffs.items())
        for k in range(m + d + 1)
    ]


def quadratic_value(matrix: HermitianMatrix, vec) -> GaussianRational:
    """Independent v* M v, written out longhand."""
    acc = GaussianRational()
    for i, vi in enumerate(vec):
        for j, vj in enumerate(vec):
            acc = acc + vi.conjugate() * matrix.at(i, j) * vj
    return acc


# ---------------------------------------------------------------------------
# random instance builders (all deterministic through a caller-provided rng)


def rand_fraction(rng: random.Random, height: int = 6) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def rand_gauss(rng: random.Random, height: int = 6) -> GaussianRational:
    return GaussianRational(rand_fraction(rng, height), rand_fraction(rng, height))


def rand_hermitian_matrix(rng: random.Random, size: int, height: int = 9) -> HermitianMatrix:
    rows = [[None] * size for _ in range(size)]
    for k in range(size):
        rows[k][k] = GaussianRational(rand_fraction(rng, height))
        for l in range(k):
            c = rand_gauss(rng, height)
            rows[k][l] = c
            rows[l][k] = c.conjugate()
    return HermitianMatrix.from_rows(rows)


def combined_pairs(n: int, r: int, m: int):
    return [(i, alpha) for i in range(r) for alpha in enumerate_degree(n, m)]


def rows_from_vectors(vectors, n: int, r: int, m: int, weights=None) -> HoloPolyMatrix:
    pairs = combined_pairs(n, r, m)
    rows = []
    for vec in vectors:
        polys = [dict() for _ in range(r)]
        for coeff, (i, alpha) in zip(vec, pairs):
            if not coeff.is_zero():
                polys[i][alpha] = coeff
        rows.append(polys)
    return HoloPolyMatrix.from_rows(n, rows, weights, ncols=r)


def rand_holo_matrix(
    rng: random.Random, n: int, m: int, s: int, r: int, height: int = 4, weighted: bool = False
) -> HoloPolyMatrix:
    size = len(combined_pairs(n, r, m))
    vectors = [
        [rand_gauss(rng, height) if rng.random() < 0.7 else GaussianRational() for _ in range(size)]
        for _ in range(s)
    ]
    if all(c.is_zero() for vec in vectors for c in vec):
        vectors[0][0] = GaussianRational(Fraction(1))
    weights = None
    if weighted:
        weights = [Fraction(rng.randint(1, height), rng.randint(1, height)) for _ in range(s)]
    return rows_from_vectors(vectors, n, r, m, weights)


def rand_pd_matrix(rng: random.Random, n: int, m: int, r: int, height: int = 3) -> HoloPolyMatrix:
    """Rows forming a unit lower-triangular coefficient matrix: gram is PD."""
    size = len(combined_pairs(n, r, m))
    one = GaussianRational(Fraction(1))
    vectors = []
    for k in range(size):
        vec = [rand_gauss(rng, height) if l < k else (one if l == k else GaussianRational()) for l in range(size)]
        vectors.append(vec)
    weights = [Fraction(rng.randint(1, height)) for _ in range(size)]
    return rows_from_vectors(vectors, n, r, m, weights)


def rand_hermsym_form(
    rng: random.Random, n: int, r: int, m: int, terms: int = 6, height: int = 5
) -> BihermitianForm:
    """Random Hermitian-symmetric bidegree-m form: H + H^dagger termwise."""
    monomials = enumerate_degree(n, m)
    raw = {}
    for _ in range(terms):
        key = (
            rng.randrange(r),
            rng.randrange(r),
            rng.choice(monomials),
            rng.choice(monomials),
        )
        raw[key] = raw.get(key, GaussianRational()) + rand_gauss(rng, height)
    sym = {}
    for (i, j, alpha, beta), coeff in raw.items():
        sym[(i, j, alpha, beta)] = sym.get((i, j, alpha, beta), GaussianRational()) + coeff
        sym[(j, i, beta, alpha)] = sym.get((j, i, beta, alpha), GaussianRational()) + coeff.conjugate()
    return BihermitianForm.from_terms(n, r, sym.items())


def rand_psd_form(rng: random.Random, n: int, m: int, r: int) -> BihermitianForm:
    from hermfact import gram

    size = len(combined_pairs(n, r, m))
    s = rng.randint(1, size)
    return gram(rand_holo_matrix(rng, n, m, s, r, weighted=True))


def rand_pd_form(rng: random.Random, n: int, m: int, r: int) -> BihermitianForm:
    from hermfact import gram

    return gram(rand_pd_matrix(rng, n, m, r))


def rand_rational_point(rng: random.Random, n: int, height: int = 5):
    return tuple(rand_gauss(rng, height) for _ in range(n))
