"""Rank norms rk(g - id) on matrix groups and three contraction projections:
the upper-triangular block projection, the SPD principal-minor projection and
the SO(n) elementary-rotation projection.

Two independent rank backends: fraction-free (Bareiss) elimination for exact
inputs, singular-value thresholding for orthogonal ones.  The naive Fraction
elimination is kept as a second oracle and never removed.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .perms import Permutation


class SingularError(ValueError):
    pass


class NotTriangularError(ValueError):
    pass


class NotSymmetricError(ValueError):
    pass


class NotPositiveDefiniteError(ValueError):
    pass


class NotUnitError(ValueError):
    pass


class NotOrthogonalError(ValueError):
    pass


class NotSpecialError(ValueError):
    pass


Entry = "int | Fraction"


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return Fraction(a) / Fraction(b)


class RationalMatrix:
    """A square matrix over the rationals (entries int or Fraction), immutable."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(x for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"RationalMatrix({self.rows!r})"

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        cols = list(zip(*other.rows))
        return RationalMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)))

    def minus_identity(self) -> "RationalMatrix":
        return RationalMatrix(
            tuple(
                tuple(x - 1 if i == j else x for j, x in enumerate(row))
                for i, row in enumerate(self.rows)
            )
        )

    def leading(self, k: int) -> "RationalMatrix":
        return RationalMatrix(tuple(row[:k] for row in self.rows[:k]))

    def is_upper_triangular(self) -> bool:
        return all(
            self.rows[i][j] == 0 for i in range(self.n) for j in range(i)
        )

    def is_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def inverse(self) -> "RationalMatrix":
        """Gauss-Jordan inverse; integer entries survive when divisions are exact."""
        n = self.n
        aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows)]
        for c in range(n):
            piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if piv is None:
                raise SingularError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            pivot = aug[c][c]
            aug[c] = [_div(x, pivot) for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c] != 0:
                    factor = aug[i][c]
                    aug[i] = [x - factor * y for x, y in zip(aug[i], aug[c])]
        return RationalMatrix(tuple(tuple(row[n:]) for row in aug))


def bareiss_rank(rows) -> int:
    """Fraction-free elimination rank; rational rows are scaled to integers first."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    for i, row in enumerate(m):
        if any(isinstance(x, Fraction) for x in row):
            scale = 1
            for x in row:
                if isinstance(x, Fraction):
                    scale = scale * x.denominator // _gcd(scale, x.denominator)
            m[i] = [int(x * scale) for x in row]
    n, cols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, n):
            mic = m[i][c]
            mrc = m[r][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, cols):
                row_i[j] = (row_i[j] * mrc - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = m[r][c]
        r += 1
        if r == n:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def gauss_rank(rows) -> int:
    """Naive Fraction elimination; the independent oracle for bareiss_rank."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    n, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pivot = m[r][c]
        for i in range(r + 1, n):
            if m[i][c] != 0:
                factor = m[i][c] / pivot
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == n:
            break
    return r


def bareiss_determinant(rows) -> "int | Fraction":
    """Exact determinant; fraction-free once rows are integer."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    denominator = 1
    for i, row in enumerate(m):
        if any(isinstance(x, Fraction) for x in row):
            scale = 1
            for x in row:
                if isinstance(x, Fraction):
                    scale = scale * x.denominator // _gcd(scale, x.denominator)
            m[i] = [int(x * scale) for x in row]
            denominator *= scale
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            mic, mcc = m[i][c], m[c][c]
            row_i, row_c = m[i], m[c]
            for j in range(c + 1, n):
                row_i[j] = (row_i[j] * mcc - mic * row_c[j]) // prev
            row_i[c] = 0
        prev = m[c][c]
    det = sign * m[n - 1][n - 1]
    return det if denominator == 1 else Fraction(det, denominator)


@dataclass(frozen=True)
class RankNormValue:
    """rk(g - id) with the backend that produced it."""

    value: int
    method: str  # "exact-elimination" | "singular-threshold"
    threshold: float | None = None
    smallest_retained: float | None = None
    largest_discarded: float | None = None
    largest: float | None = None

    def borderline(self, margin: float = 10.0) -> bool:
        """Is the smallest retained singular value within margin * tau of the cut?"""
        if self.threshold is None or self.smallest_retained is None:
            return False
        scale = max(1.0, self.largest or 0.0)
        return self.smallest_retained < margin * self.threshold * scale


def rank_norm_exact(g: RationalMatrix) -> RankNormValue:
    """Exact rank of g - id by fraction-free elimination; g must be invertible."""
    if bareiss_rank(g.rows) != g.n:
        raise SingularError("rank norm is defined on invertible matrices")
    return RankNormValue(bareiss_rank(g.minus_identity().rows), "exact-elimination")


class FloatMatrix:
    """A square float64 matrix; orthogonality is asserted where claimed."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("matrix must be square")
        self.data = arr

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def assert_orthogonal(self, tol: float = 1e-8) -> None:
        gap = np.abs(self.data.T @ self.data - np.eye(self.n)).max()
        if gap > tol:
            raise NotOrthogonalError(f"|g^T g - I|_max = {gap:.3e} > {tol:.0e}")

    def assert_special(self, tol: float = 1e-6) -> None:
        det = np.linalg.det(self.data)
        if abs(det - 1.0) > tol:
            raise NotSpecialError(f"det = {det:.6f} != +1")


def numeric_rank(array, tau: float = 1e-8) -> RankNormValue:
    """Thresholded singular-value rank of a raw array (not shifted by id)."""
    sv = np.linalg.svd(np.asarray(array, dtype=float), compute_uv=False)
    cutoff = tau * max(1.0, float(sv[0]) if sv.size else 1.0)
    kept = sv[sv > cutoff]
    dropped = sv[sv <= cutoff]
    return RankNormValue(
        int(kept.size),
        "singular-threshold",
        threshold=tau,
        smallest_retained=float(kept[-1]) if kept.size else None,
        largest_discarded=float(dropped[0]) if dropped.size else None,
        largest=float(sv[0]) if sv.size else None,
    )


def rank_norm_numeric(g: FloatMatrix, tau: float = 1e-8) -> RankNormValue:
    """Singular values of g - id above tau * max(1, largest singular value)."""
    return numeric_rank(g.data - np.eye(g.n), tau)


# --- the three projections -----------------------------------------------------


def triangular_project(g: RationalMatrix) -> RationalMatrix:
    """Top-left block of an invertible upper-triangular matrix.

    A group homomorphism B_n -> B_{n-1} with rk(p(g) g^{-1} - id) <= 1.
    """
    if not g.is_upper_triangular():
        raise NotTriangularError("not upper triangular")
    if any(g.rows[i][i] == 0 for i in range(g.n)):
        raise SingularError("zero diagonal entry")
    return g.leading(g.n - 1)


def spd_project(a: RationalMatrix) -> RationalMatrix:
    """Leading principal submatrix of a symmetric positive definite matrix."""
    if not a.is_symmetric():
        raise NotSymmetricError("not symmetric")
    for k in range(1, a.n + 1):
        if bareiss_determinant(a.leading(k).rows) <= 0:
            raise NotPositiveDefiniteError(f"leading {k}x{k} minor is not positive")
    return a.leading(a.n - 1)


def elementary_rotation(x, n: int | None = None) -> FloatMatrix:
    """The rotation R_x fixing the complement of span{x, e_n} with R_x x = e_n.

    R_{e_n} is the identity; for x = -e_n the choice is the half-turn of the
    (e_{n-1}, e_n) plane, which the general position formula cannot decide.
    """
    x = np.array(x, dtype=float).ravel()
    if n is None:
        n = x.size
    if x.size != n:
        raise ValueError("vector length does not match the dimension")
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise NotUnitError(f"|x| = {np.linalg.norm(x)!r} is not 1 within 1e-12")
    e = np.zeros(n)
    e[n - 1] = 1.0
    c = float(x @ e)
    residual = x - c * e
    s = float(np.linalg.norm(residual))
    if s < 1e-12:
        if c > 0:
            return FloatMatrix(np.eye(n))
        if n < 2:
            raise ValueError("cannot rotate -e_1 inside SO(1)")
        r = np.eye(n)
        r[n - 2, n - 2] = -1.0
        r[n - 1, n - 1] = -1.0
        return FloatMatrix(r)
    u = residual / s
    r = np.eye(n)
    r += (c - 1.0) * (np.outer(u, u) + np.outer(e, e))
    r += s * (np.outer(e, u) - np.outer(u, e))
    return FloatMatrix(r)


def so_project(g: FloatMatrix, tau: float = 1e-8) -> FloatMatrix:
    """R_{g(e_n)} g with the last row and column stripped; lands in SO(n-1)."""
    g.assert_orthogonal(max(tau, 1e-8))
    g.assert_special()
    image = g.data[:, g.n - 1]
    rot = elementary_rotation(image / np.linalg.norm(image), g.n)
    fixed = rot.data @ g.data
    if abs(fixed[g.n - 1, g.n - 1] - 1.0) > 1e-8:
        raise NotOrthogonalError("projection failed to fix e_n")
    return FloatMatrix(fixed[: g.n - 1, : g.n - 1])


def verify_rank_parity(g: FloatMatrix, tau: float = 1e-8) -> bool:
    """rk(g - id) is even on SO(n): non-trivial rotation planes come in 2s."""
    g.assert_orthogonal(max(tau, 1e-8))
    g.assert_special()
    return rank_norm_numeric(g, tau).value % 2 == 0


def embed(mat: FloatMatrix | RationalMatrix, n: int):
    """Direct sum with an identity block, up to dimension n."""
    if isinstance(mat, RationalMatrix):
        rows = [
            tuple(row) + tuple(0 for _ in range(n - mat.n)) for row in mat.rows
        ]
        for i in range(mat.n, n):
            rows.append(tuple(1 if j == i else 0 for j in range(n)))
        return RationalMatrix(rows)
    out = np.eye(n)
    out[: mat.n, : mat.n] = mat.data
    return FloatMatrix(out)


def permutation_matrix(sigma: Permutation, n: int) -> RationalMatrix:
    """P[i][j] = 1 when sigma(i+1) = j+1; rk(P - id) equals the transposition norm."""
    return RationalMatrix(
        tuple(
            tuple(1 if sigma(i + 1) == j + 1 else 0 for j in range(n))
            for i in range(n)
        )
    )


# --- random instances (seeded by the caller) -------------------------------------


def random_unit_triangular(rng: np.random.Generator, n: int, spread: int = 2) -> RationalMatrix:
    """Upper triangular, integer entries, diagonal +-1: inverses stay integral."""
    rows = []
    for i in range(n):
        row = [0] * i + [int(rng.choice((-1, 1)))]
        row += [int(rng.integers(-spread, spread + 1)) for _ in range(n - i - 1)]
        rows.append(tuple(row))
    return RationalMatrix(rows)


def random_rational_triangular(rng: np.random.Generator, n: int) -> RationalMatrix:
    """Upper triangular with fractional diagonal entries; exercises Fractions."""
    choices = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3, 2))
    rows = []
    for i in range(n):
        row = [Fraction(0)] * i + [choices[int(rng.integers(0, len(choices)))]]
        row += [Fraction(int(rng.integers(-2, 3))) for _ in range(n - i - 1)]
        rows.append(tuple(row))
    return RationalMatrix(rows)


def random_spd(rng: np.random.Generator, n: int, spread: int = 2) -> RationalMatrix:
    m = RationalMatrix(
        tuple(
            tuple(int(rng.integers(-spread, spread + 1)) for _ in range(n))
            for _ in range(n)
        )
    )
    return (m.transpose() @ m) - RationalMatrix(
        tuple(tuple(-1 if i == j else 0 for j in range(n)) for i in range(n))
    )


def random_so(rng: np.random.Generator, n: int) -> FloatMatrix:
    """QR of a Gaussian matrix, sign-fixed, determinant +1."""
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, -1] = -q[:, -1]
    return FloatMatrix(q)


# --- CSV interchange ---------------------------------------------------------------


def write_rational_csv(mat: RationalMatrix, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in mat.rows:
            writer.writerow([str(Fraction(x)) for x in row])


def read_rational_csv(path) -> RationalMatrix:
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if row:
                rows.append(tuple(Fraction(x) for x in row))
    return RationalMatrix(rows)


def write_float_csv(mat: FloatMatrix, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in mat.data:
            writer.writerow([repr(float(x)) for x in row])


def read_float_csv(path) -> FloatMatrix:
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if row:
                rows.append([float(x) for x in row])
    return FloatMatrix(rows)
