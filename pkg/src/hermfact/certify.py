"""Exact inertia certificates for Hermitian matrices over the Gaussian rationals.

The decision procedure is a pivoted congruence diagonalization: at each step
the largest-magnitude (rational comparison) real diagonal entry of the trailing
block is chosen as a 1x1 pivot and eliminated.  When the trailing block has an
all-zero diagonal but is nonzero — which certifies indefiniteness on the spot —
a unit row combination first creates a positive diagonal entry so the
diagonalization can always run to completion with exact inertia.

The certificate records the accumulated congruence W together with its exact
inverse, so that W * M * W^adj = D can be re-checked by plain matrix
multiplication; the inertia of M equals the sign counts of D by congruence
invariance.  For inputs where plain diagonal pivoting suffices, W is a
permuted unit triangular transform, i.e. the classical pivoted LDL*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .hermform import HermitianMatrix
from .scalars import ONE, ZERO, GaussianRational

Vector = tuple[GaussianRational, ...]
MatrixRows = tuple[Vector, ...]


def mat_mul(a, b) -> MatrixRows:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
    for i in range(rows):
        row = []
        ai = a[i]
        for j in range(cols):
            acc = ZERO
            for k in range(inner):
                x = ai[k]
                y = b[k][j]
                if x.is_zero() or y.is_zero():
                    continue
                acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_adjoint(a) -> MatrixRows:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    return tuple(tuple(a[i][j].conjugate() for i in range(rows)) for j in range(cols))


def mat_identity(size: int) -> MatrixRows:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size)
    )


def _primitive(vec: list[GaussianRational]) -> Vector:
    # Scale by a positive rational so entries are Gaussian integers with content 1,
    # then fix the overall real sign; keeps witnesses small and deterministic.
    denom = 1
    for c in vec:
        denom = denom * c.re.denominator // gcd(denom, c.re.denominator)
        denom = denom * c.im.denominator // gcd(denom, c.im.denominator)
    numer = 0
    for c in vec:
        numer = gcd(numer, abs(c.re.numerator * (denom // c.re.denominator)))
        numer = gcd(numer, abs(c.im.numerator * (denom // c.im.denominator)))
    factor = GaussianRational(Fraction(denom, numer if numer else 1))
    scaled = [c * factor for c in vec]
    for c in scaled:
        if not c.is_zero():
            if c.re < 0 or (c.re == 0 and c.im < 0):
                scaled = [-x for x in scaled]
            break
    return tuple(scaled)


@dataclass(eq=True)
class SignatureCertificate:
    """Checkable congruence record: transform * matrix * transform^adj = diag."""

    matrix: HermitianMatrix
    n_pos: int
    n_neg: int
    n_zero: int
    permutation: tuple[int, ...]
    transform: MatrixRows
    transform_inv: MatrixRows
    diag: tuple[Fraction, ...]
    witness: Vector | None

    @property
    def size(self) -> int:
        return self.matrix.size

    def is_positive_definite(self) -> bool:
        return self.n_pos == self.size

    def is_positive_semidefinite(self) -> bool:
        return self.n_neg == 0

    def verify(self) -> tuple[bool, str]:
        """Re-check every claim by exact arithmetic; returns (ok, reason)."""
        n = self.size
        if self.n_pos + self.n_neg + self.n_zero != n:
            return False, "inertia counts do not sum to the size"
        if sorted(self.permutation) != list(range(n)):
            return False, "permutation is not a permutation"
        if len(self.diag) != n or len(self.transform) != n or len(self.transform_inv) != n:
            return False, "component sizes disagree"
        ident = mat_identity(n)
        if mat_mul(self.transform, self.transform_inv) != ident:
            return False, "transform inverse is wrong"
        product = mat_mul(
            mat_mul(self.transform, self.matrix.entries), mat_adjoint(self.transform)
        )
        for i in range(n):
            for j in range(n):
                want = GaussianRational(self.diag[i]) if i == j else ZERO
                if product[i][j] != want:
                    return False, f"congruence identity fails at ({i},{j})"
        pos = sum(1 for d in self.diag if d > 0)
        neg = sum(1 for d in self.diag if d < 0)
        if (pos, neg) != (self.n_pos, self.n_neg):
            return False, "inertia does not match the diagonal signs"
        if self.n_neg > 0 and self.witness is None:
            return False, "negative inertia without witness"
        if self.witness is not None:
            value = _quadratic_value(self.matrix, self.witness)
            if not (value.im == 0 and value.re < 0):
                return False, "witness value is not negative"
        return True, "ok"


def _quadratic_value(matrix: HermitianMatrix, vec) -> GaussianRational:
    acc = ZERO
    for i, vi in enumerate(vec):
        if vi.is_zero():
            continue
        for j, vj in enumerate(vec):
            if vj.is_zero():
                continue
            acc = acc + vi.conjugate() * matrix.at(i, j) * vj
    return acc


def ldl_signature(matrix: HermitianMatrix) -> SignatureCertificate:
    """Exact pivoted diagonalization with inertia and an indefiniteness witness.

    Pivot rule: largest-magnitude real diagonal entry of the trailing block,
    lowest index on ties.  An all-zero trailing diagonal with a nonzero
    off-diagonal entry a at (t, u) proves indefiniteness; row u gains
    conj(a) * row t, creating the positive diagonal entry 2|a|^2, and the
    elimination continues.
    """
    if not isinstance(matrix, HermitianMatrix):
        matrix = HermitianMatrix.from_rows(matrix)
    n = matrix.size
    s = [list(row) for row in matrix.entries]
    w = [list(row) for row in mat_identity(n)]
    winv = [list(row) for row in mat_identity(n)]
    perm = list(range(n))
    diag: list[Fraction] = []

    def swap(k: int, t: int) -> None:
        if k == t:
            return
        s[k], s[t] = s[t], s[k]
        for row in s:
            row[k], row[t] = row[t], row[k]
        w[k], w[t] = w[t], w[k]
        for row in winv:
            row[k], row[t] = row[t], row[k]
        perm[k], perm[t] = perm[t], perm[k]

    def add_row(u: int, t: int, c: GaussianRational) -> None:
        # Congruence by E = I + c e_u e_t^T: row u += c row t, col u += conj(c) col t.
        cc = c.conjugate()
        su, st = s[u], s[t]
        for j in range(n):
            if not st[j].is_zero():
                su[j] = su[j] + c * st[j]
        for row in s:
            if not row[t].is_zero():
                row[u] = row[u] + cc * row[t]
        wu, wt = w[u], w[t]
        for j in range(n):
            if not wt[j].is_zero():
                wu[j] = wu[j] + c * wt[j]
        for row in winv:
            if not row[u].is_zero():
                row[t] = row[t] - c * row[u]

    k = 0
    while k < n:
        best = None
        best_abs = Fraction(0)
        for t in range(k, n):
            dtt = s[t][t]
            if dtt.im != 0:
                raise ValueError("matrix is not Hermitian: complex diagonal entry")
            mag = abs(dtt.re)
            if mag > best_abs:
                best, best_abs = t, mag
        if best is None:
            hollow = None
            for t in range(k, n):
                for u in range(t + 1, n):
                    if not s[t][u].is_zero():
                        hollow = (t, u)
                        break
                if hollow:
                    break
            if hollow is None:
                diag.extend([Fraction(0)] * (n - k))
                break
            t, u = hollow
            add_row(u, t, s[t][u].conjugate())
            continue
        swap(k, best)
        d = s[k][k].re
        diag.append(d)
        for i in range(k + 1, n):
            if s[i][k].is_zero():
                continue
            add_row(i, k, -(s[i][k] / d))
        k += 1

    n_pos = sum(1 for d in diag if d > 0)
    n_neg = sum(1 for d in diag if d < 0)
    n_zero = n - n_pos - n_neg

    witness = None
    if n_neg > 0:
        idx = next(i for i, d in enumerate(diag) if d < 0)
        witness = _primitive([w[idx][j].conjugate() for j in range(n)])

    return SignatureCertificate(
        matrix=matrix,
        n_pos=n_pos,
        n_neg=n_neg,
        n_zero=n_zero,
        permutation=tuple(perm),
        transform=tuple(tuple(row) for row in w),
        transform_inv=tuple(tuple(row) for row in winv),
        diag=tuple(diag),
        witness=witness,
    )


def is_positive_definite(matrix: HermitianMatrix) -> tuple[bool, SignatureCertificate]:
    cert = ldl_signature(matrix)
    return cert.is_positive_definite(), cert


def is_positive_semidefinite(
    matrix: HermitianMatrix,
) -> tuple[bool, SignatureCertificate]:
    cert = ldl_signature(matrix)
    return cert.is_positive_semidefinite(), cert


def gram_decomposition(
    matrix: HermitianMatrix,
) -> tuple[list[tuple[Fraction, Vector]], list[tuple[Fraction, Vector]]]:
    """Write M = sum a_k u_k u_k^adj - sum b_l v_l v_l^adj exactly, a_k, b_l > 0.

    The vectors are the columns of the inverse transform in pivot order, so the
    positive part has exactly n_pos terms and the negative part n_neg.
    """
    cert = ldl_signature(matrix)
    positives: list[tuple[Fraction, Vector]] = []
    negatives: list[tuple[Fraction, Vector]] = []
    for k, d in enumerate(cert.diag):
        if d == 0:
            continue
        column = tuple(cert.transform_inv[row][k] for row in range(cert.size))
        if d > 0:
            positives.append((d, column))
        else:
            negatives.append((-d, column))
    return positives, negatives
