"""Multi-index bookkeeping: graded monomial bases and exact combinatorial weights.

A multi-index is a plain tuple of nonnegative ints, one entry per complex
variable.  The enumeration order fixed here (lexicographically descending
within a fixed total degree, z1-major) is the canonical basis order used by
every matrix in the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

MultiIndex = tuple[int, ...]


def check_multiindex(alpha) -> MultiIndex:
    """Validate and return alpha as a tuple of nonnegative ints."""
    alpha = tuple(alpha)
    if len(alpha) < 1:
        raise ValueError("multi-index must have at least one entry")
    for a in alpha:
        if not isinstance(a, int) or a < 0:
            raise ValueError(f"multi-index entries must be nonnegative ints: {alpha}")
    return alpha


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


@lru_cache(maxsize=None)
def enumerate_degree(n: int, m: int) -> tuple[MultiIndex, ...]:
    """All multi-indices of length n with total degree m, lexicographically descending.

    >>> enumerate_degree(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if m < 0:
        raise ValueError("degree must be >= 0")
    if n == 1:
        return ((m,),)
    out = []
    for first in range(m, -1, -1):
        for rest in enumerate_degree(n - 1, m - first):
            out.append((first,) + rest)
    return tuple(out)


def dim_homogeneous(n: int, m: int) -> int:
    """Number of degree-m monomials in n variables, binom(n+m-1, m)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if m < 0:
        raise ValueError("degree must be >= 0")
    return comb(n + m - 1, m)


def multinomial(d: int, gamma: MultiIndex) -> int:
    """d! / gamma!, the expansion weight of the monomial z^gamma in a d-th power.

    Exact integer; requires |gamma| = d.
    """
    gamma = check_multiindex(gamma)
    if degree(gamma) != d:
        raise ValueError(f"multinomial degree mismatch: |{gamma}| != {d}")
    out = factorial(d)
    for g in gamma:
        out //= factorial(g)
    return out


def monomial_norm_reduced(alpha: MultiIndex) -> Fraction:
    """Reduced squared L2 norm of z^alpha on the unit ball: alpha! * n! / (n+|alpha|)!.

    The transcendental common factor pi^n/n! is dropped throughout the
    package; positivity is invariant under that positive rescaling.
    """
    alpha = check_multiindex(alpha)
    n = len(alpha)
    num = factorial(n)
    for a in alpha:
        num *= factorial(a)
    return Fraction(num, factorial(n + degree(alpha)))


def bergman_coefficient_reduced(n: int, d: int) -> int:
    """Reduced degree-d expansion coefficient of the ball kernel (1 - <z,w>)^-(n+1).

    Equals binom(n+d, n); the full constant carries an extra n!/pi^n.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if d < 0:
        raise ValueError("degree must be >= 0")
    return comb(n + d, n)
