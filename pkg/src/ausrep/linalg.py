"""Dense exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  All
routines are exact: arithmetic is mod-p throughout, and every returned
basis is in canonical reduced row echelon form so results are
reproducible bit-for-bit across runs.

Conventions used by the whole package:
  * vectors are 1-d arrays, treated as columns by ``solve``/``matmul``;
  * a basis of a subspace is a 2-d array with one basis vector per row;
  * the canonical basis of any subspace is the RREF of its row span.

Intermediate products stay below 2**63 for p < 2**21 and dimensions up
to the ``MAX_DIM`` cap, so no overflow handling is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 101

# Reject anything beyond desk scale before allocating.
MAX_DIM = 10_000


class SizeCapError(ValueError):
    """A vector space exceeded the supported dimension cap."""


def check_dim(n: int) -> int:
    if n > MAX_DIM:
        raise SizeCapError(f"dimension {n} exceeds the cap of {MAX_DIM}")
    return n


def fpmat(entries, p: int) -> np.ndarray:
    """Coerce ``entries`` to a 2-d int64 matrix reduced mod p."""
    a = np.asarray(entries, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    check_dim(max(a.shape, default=0))
    return np.mod(a, p)

def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((check_dim(rows), check_dim(cols)), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(check_dim(n), dtype=np.int64)


def inv_scalar(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError("division by zero in F_p")
    return pow(x, p - 2, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.mod(a @ b, p)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Canonical reduced row echelon form of ``m``.

    Returns ``(r, pivots)`` where ``pivots`` are the pivot column
    indices in increasing order; ``len(pivots)`` is the rank.  Zero rows
    are kept (same shape as the input), pivot entries are 1 and pivot
    columns are otherwise zero, which makes the output canonical: two
    row-equivalent matrices have identical RREF.
    """
    a = np.mod(np.asarray(m, dtype=np.int64), p).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * inv_scalar(int(a[r, c]), p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def row_space(m: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (RREF rows) of the row span of ``m``."""
    r, piv = rref(m, p)
    return r[: len(piv)]


def kernel(m: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis of the right null space {v : m v = 0}.

    Rows of the result are the basis vectors; the basis is the RREF of
    the standard free-variable solutions, hence canonical.
    """
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in piv]
    if not free:
        return np.zeros((0, cols), dtype=np.int64)
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-int(r[i, f])) % p
    return row_space(basis, p)


def image(m: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis of the column space of ``m`` (rows = vectors)."""
    return row_space(np.asarray(m, dtype=np.int64).T, p)


def solve(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``m x = b`` or None if inconsistent.

    Deterministic: free variables are set to 0.  ``b`` may be a vector
    or a matrix of stacked right-hand-side columns.
    """
    m = np.asarray(m, dtype=np.int64)
    b = np.mod(np.asarray(b, dtype=np.int64), p)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    if b.shape[0] != m.shape[0]:
        raise ValueError(f"shape mismatch: {m.shape} vs rhs {b.shape}")
    aug = np.hstack([m, b])
    r, piv = rref(aug, p)
    ncols = m.shape[1]
    if any(c >= ncols for c in piv):
        return None
    x = np.zeros((ncols, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, ncols:]
    return x[:, 0] if vec else x


def invert(m: np.ndarray, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n, k = m.shape
    if n != k:
        raise ValueError("only square matrices are invertible")
    x = solve(m, eye(n), p)
    if x is None or rank(m, p) != n:
        raise ValueError("matrix is singular")
    return x


def is_invertible(m: np.ndarray, p: int) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n held by its canonical RREF row basis."""

    ambient_dim: int
    basis: np.ndarray  # shape (dim, ambient_dim), canonical RREF
    p: int

    @staticmethod
    def from_rows(rows: np.ndarray, ambient_dim: int, p: int) -> "Subspace":
        if ambient_dim == 0:
            return Subspace(0, np.zeros((0, 0), dtype=np.int64), p)
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, ambient_dim)
        return Subspace(ambient_dim, row_space(rows, p), p)

    @staticmethod
    def zero(ambient_dim: int, p: int) -> "Subspace":
        return Subspace(ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), p)

    @staticmethod
    def full(ambient_dim: int, p: int) -> "Subspace":
        return Subspace(ambient_dim, eye(ambient_dim), p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v: np.ndarray) -> bool:
        v = np.mod(np.asarray(v, dtype=np.int64), self.p).reshape(-1)
        if not self.dim:
            return not v.any()
        c = self.coords(v.reshape(1, -1))
        return c is not None

    def coords(self, vectors: np.ndarray) -> np.ndarray | None:
        """Coordinates of row ``vectors`` in the canonical basis, or None.

        Reading off pivot columns is enough because the basis is RREF;
        membership is then verified exactly.
        """
        vectors = np.mod(np.asarray(vectors, dtype=np.int64), self.p)
        if self.dim == 0:
            return None if vectors.any() else np.zeros((vectors.shape[0], 0), dtype=np.int64)
        _, piv = rref(self.basis, self.p)
        c = vectors[:, piv]
        if np.mod(c @ self.basis, self.p).tolist() != vectors.tolist():
            return None
        return c

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace.from_rows(
            np.vstack([self.basis, other.basis]), self.ambient_dim, self.p
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the null space of the stacked bases."""
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        stacked = np.vstack([self.basis, (-other.basis) % self.p]).T
        null = kernel(stacked, self.p)
        vecs = np.mod(null[:, : self.dim] @ self.basis, self.p)
        return Subspace.from_rows(vecs, self.ambient_dim, self.p)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis.tolist() == other.basis.tolist()
        )


def preimage(m: np.ndarray, target: Subspace, p: int) -> Subspace:
    """{v : m v in target} as a subspace of the domain."""
    m = np.asarray(m, dtype=np.int64)
    q = quotient(target.ambient_dim, target, p)
    return Subspace.from_rows(kernel(matmul(q.projection, m, p), p), m.shape[1], p)


@dataclass(frozen=True)
class Quotient:
    """A quotient F_p^n / killed with an explicit projection/section pair.

    ``projection @ section = id`` on the quotient and the kernel of the
    projection is exactly ``killed``.  Coset representatives are chosen
    on the non-pivot coordinates of ``killed``.
    """

    ambient_dim: int
    killed: Subspace
    projection: np.ndarray  # (q, n)
    section: np.ndarray  # (n, q)
    p: int

    @property
    def dim(self) -> int:
        return self.projection.shape[0]


def quotient(ambient_dim: int, killed: Subspace, p: int) -> Quotient:
    if killed.ambient_dim != ambient_dim:
        raise ValueError("killed subspace lives in a different ambient space")
    _, piv = rref(killed.basis, p)
    free = [c for c in range(ambient_dim) if c not in piv]
    q = len(free)
    proj = np.zeros((q, ambient_dim), dtype=np.int64)
    sect = np.zeros((ambient_dim, q), dtype=np.int64)
    for k, f in enumerate(free):
        proj[k, f] = 1
        sect[f, k] = 1
    # subtract the pivot-coordinate contribution of each killed basis row
    for i, c in enumerate(piv):
        proj[:, c] = (proj[:, c] - killed.basis[i, free]) % p
    return Quotient(ambient_dim, killed, proj, sect, p)


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(check_dim(rows), check_dim(cols)), dtype=np.int64)


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    blocks = [np.asarray(b, dtype=np.int64) for b in blocks]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def vec(m: np.ndarray) -> np.ndarray:
    """Column-major vectorization; the package-wide flattening order."""
    return np.asarray(m, dtype=np.int64).flatten(order="F")


def unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return np.asarray(v, dtype=np.int64).reshape((rows, cols), order="F")
