"""Finite-dimensional representations of a bound quiver and their maps.

A representation assigns to each vertex a space F_p^d and to each arrow
a matrix of shape (target_dim, source_dim); every relation of the quiver
must evaluate to zero.  Morphisms are vertex-indexed block families
commuting with all arrow matrices.  Hom spaces carry the canonical basis
obtained by vectorizing each block column-major, stacking the vertex
blocks in vertex order and taking RREF rows of the solution space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ausrep import linalg as la
from ausrep.quiver import BoundQuiver, PathAlgebra


class RepError(ValueError):
    pass


def solve_commuting(shapes, equations, p):
    """Canonical basis of block families satisfying linear commuting laws.

    ``shapes[i] = (rows_i, cols_i)`` and each equation ``(i, A, j, B)``
    demands ``f_i @ A == B @ f_j``.  Returns a list of solutions, each a
    list of blocks, forming the canonical (RREF) basis of the space.
    """
    sizes = [r * c for r, c in shapes]
    offsets = np.cumsum([0] + sizes)
    total = int(offsets[-1])
    rows = []
    for i, a, j, b in equations:
        ri, _ = shapes[i]
        rj, cj = shapes[j]
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        block = np.zeros((ri * a.shape[1], total), dtype=np.int64)
        block[:, offsets[i] : offsets[i + 1]] = np.kron(a.T, la.eye(ri))
        block[:, offsets[j] : offsets[j + 1]] -= np.kron(la.eye(cj), b)
        rows.append(block % p)
    if rows:
        mat = np.vstack(rows)
        null = la.kernel(mat, p)
    else:
        null = la.eye(total)
    out = []
    for v in null:
        out.append(
            [
                la.unvec(v[offsets[k] : offsets[k + 1]], *shapes[k])
                for k in range(len(shapes))
            ]
        )
    return out


def flatten_blocks(blocks) -> np.ndarray:
    parts = [la.vec(b) for b in blocks]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


@dataclass(frozen=True)
class Rep:
    quiver: BoundQuiver
    dims: tuple[int, ...]
    mats: tuple[np.ndarray, ...]  # one per arrow, shape (tgt_dim, src_dim)

    def __post_init__(self):
        qv = self.quiver
        if len(self.dims) != qv.n_vertices or len(self.mats) != len(qv.arrows):
            raise RepError("dimension data does not match the quiver")
        la.check_dim(sum(self.dims))
        for a, m in zip(qv.arrows, self.mats):
            if m.shape != (self.dims[a.tgt], self.dims[a.src]):
                raise RepError(f"matrix of arrow {a.name!r} has shape {m.shape}")
        for rel in qv.relations:
            acc = None
            for coef, path in rel:
                term = self._path_matrix(path)
                acc = term * coef if acc is None else (acc + coef * term)
            if acc is not None and np.mod(acc, qv.p).any():
                raise RepError("a relation does not vanish on this representation")

    def _path_matrix(self, path) -> np.ndarray:
        u = self.quiver.arrows[path[0]].src
        m = la.eye(self.dims[u])
        for ai in path:
            m = la.matmul(self.mats[ai], m, self.quiver.p)
        return m

    @property
    def p(self) -> int:
        return self.quiver.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other):
        return (
            isinstance(other, Rep)
            and self.quiver is other.quiver
            and self.dims == other.dims
            and all(a.tolist() == b.tolist() for a, b in zip(self.mats, other.mats))
        )

    def __hash__(self):
        return hash((id(self.quiver), self.dims))


def zero_rep(quiver: BoundQuiver) -> Rep:
    dims = tuple(0 for _ in quiver.vertices)
    mats = tuple(la.zeros(0, 0) for _ in quiver.arrows)
    return Rep(quiver, dims, mats)


def simple_rep(quiver: BoundQuiver, vertex: int) -> Rep:
    dims = tuple(1 if v == vertex else 0 for v in range(quiver.n_vertices))
    mats = tuple(
        la.zeros(dims[a.tgt], dims[a.src]) for a in quiver.arrows
    )
    return Rep(quiver, dims, mats)


def projective_rep(pa: PathAlgebra, vertex: int) -> Rep:
    """The regular summand at ``vertex``: space at u spanned by the path
    classes vertex -> u, arrows acting by concatenation."""
    qv = pa.quiver
    dims = tuple(pa.basis_dim(vertex, u) for u in range(qv.n_vertices))
    mats = []
    for a in qv.arrows:
        m = la.zeros(dims[a.tgt], dims[a.src])
        arrow_cls = pa.class_of_path((qv.arrow_index(a.name),))
        for k in range(dims[a.src]):
            e = np.zeros(dims[a.src], dtype=np.int64)
            e[k] = 1
            m[:, k] = pa.multiply(vertex, a.src, e, a.tgt, arrow_cls)
        mats.append(m)
    return Rep(qv, dims, tuple(mats))


def dual_rep(x: Rep) -> Rep:
    """Vector-space dual: a representation of the opposite quiver."""
    qv = x.quiver.opposite()
    mats = tuple(m.T.copy() for m in x.mats)
    return Rep(qv, x.dims, mats)


def injective_rep(pa_op: PathAlgebra, quiver: BoundQuiver, vertex: int) -> Rep:
    """Dual of the opposite-algebra regular summand at ``vertex``."""
    d = dual_rep(projective_rep(pa_op, vertex))
    # dual_rep built its own opposite quiver object; rebase onto ours.
    return Rep(quiver, d.dims, d.mats)


def direct_sum(xs: list[Rep], quiver: BoundQuiver | None = None) -> Rep:
    if not xs:
        if quiver is None:
            raise RepError("empty direct sum needs an explicit quiver")
        return zero_rep(quiver)
    qv = xs[0].quiver
    dims = tuple(sum(x.dims[v] for x in xs) for v in range(qv.n_vertices))
    mats = tuple(
        la.block_diag([x.mats[i] for x in xs]) for i in range(len(qv.arrows))
    )
    return Rep(qv, dims, mats)


def summand_inclusions(xs: list[Rep]) -> list["RepMap"]:
    """Canonical inclusions X_k -> direct_sum(xs)."""
    total = direct_sum(xs)
    out = []
    qv = total.quiver
    for k, x in enumerate(xs):
        blocks = []
        for v in range(qv.n_vertices):
            b = la.zeros(total.dims[v], x.dims[v])
            off = sum(y.dims[v] for y in xs[:k])
            b[off : off + x.dims[v]] = la.eye(x.dims[v])
            blocks.append(b)
        out.append(RepMap(x, total, tuple(blocks)))
    return out


@dataclass(frozen=True)
class RepMap:
    source: Rep
    target: Rep
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        qv = self.source.quiver
        if self.target.quiver is not qv and self.target.quiver != qv:
            raise RepError("source and target live over different quivers")
        for v in range(qv.n_vertices):
            want = (self.target.dims[v], self.source.dims[v])
            if self.blocks[v].shape != want:
                raise RepError(f"block at vertex {v} has shape {self.blocks[v].shape}, want {want}")
        for i, a in enumerate(qv.arrows):
            lhs = la.matmul(self.blocks[a.tgt], self.source.mats[i], qv.p)
            rhs = la.matmul(self.target.mats[i], self.blocks[a.src], qv.p)
            if lhs.tolist() != rhs.tolist():
                raise RepError(f"map does not commute with arrow {a.name!r}")

    @property
    def p(self) -> int:
        return self.source.p

    def compose(self, other: "RepMap") -> "RepMap":
        """self after other."""
        if other.target.dims != self.source.dims:
            raise RepError("composition shape mismatch")
        blocks = tuple(
            la.matmul(a, b, self.p) for a, b in zip(self.blocks, other.blocks)
        )
        return RepMap(other.source, self.target, blocks)

    def add(self, other: "RepMap") -> "RepMap":
        blocks = tuple((a + b) % self.p for a, b in zip(self.blocks, other.blocks))
        return RepMap(self.source, self.target, blocks)

    def scale(self, c: int) -> "RepMap":
        blocks = tuple((a * (c % self.p)) % self.p for a in self.blocks)
        return RepMap(self.source, self.target, blocks)

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def flatten(self) -> np.ndarray:
        return flatten_blocks(self.blocks)


def zero_map(source: Rep, target: Rep) -> RepMap:
    blocks = tuple(
        la.zeros(target.dims[v], source.dims[v])
        for v in range(source.quiver.n_vertices)
    )
    return RepMap(source, target, blocks)


def identity_map(x: Rep) -> RepMap:
    return RepMap(x, x, tuple(la.eye(d) for d in x.dims))


def map_from_coeffs(basis: list[RepMap], coeffs, source: Rep, target: Rep) -> RepMap:
    out = zero_map(source, target)
    for c, b in zip(coeffs, basis):
        if c % source.p:
            out = out.add(b.scale(int(c)))
    return out


def hom_space(x: Rep, y: Rep) -> list[RepMap]:
    """Canonical basis of Hom(x, y) as a list of RepMaps."""
    qv = x.quiver
    shapes = [(y.dims[v], x.dims[v]) for v in range(qv.n_vertices)]
    eqs = [
        (a.tgt, x.mats[i], a.src, y.mats[i]) for i, a in enumerate(qv.arrows)
    ]
    sols = solve_commuting(shapes, eqs, qv.p)
    return [RepMap(x, y, tuple(blocks)) for blocks in sols]


def hom_coords(basis: list[RepMap], f: RepMap) -> np.ndarray:
    """Coordinates of ``f`` in the canonical hom basis."""
    if not basis:
        if f.is_zero():
            return np.zeros(0, dtype=np.int64)
        raise RepError("nonzero map in a zero hom space")
    mat = np.vstack([b.flatten() for b in basis])
    sub = la.Subspace.from_rows(mat, mat.shape[1], f.p)
    # the canonical basis is already RREF, so coords read off pivots
    c = sub.coords(f.flatten().reshape(1, -1))
    if c is None:
        raise RepError("map is not in the span of the given basis")
    return c[0]


def is_mono(f: RepMap) -> bool:
    return all(
        la.rank(b, f.p) == b.shape[1] for b in f.blocks
    )


def is_epi(f: RepMap) -> bool:
    return all(
        la.rank(b, f.p) == b.shape[0] for b in f.blocks
    )


def kernel_rep(f: RepMap) -> tuple[Rep, RepMap]:
    """Vertexwise kernel with induced arrow maps and its inclusion."""
    qv = f.source.quiver
    p = f.p
    bases = [la.kernel(f.blocks[v], p) for v in range(qv.n_vertices)]
    dims = tuple(b.shape[0] for b in bases)
    mats = []
    for i, a in enumerate(qv.arrows):
        img = la.matmul(f.source.mats[i], bases[a.src].T, p)
        sub = la.Subspace.from_rows(bases[a.tgt], f.source.dims[a.tgt], p)
        coords = sub.coords(img.T)
        if coords is None:
            raise RepError("kernel is not arrow-stable; map was not a morphism")
        mats.append(coords.T.copy())
    ker = Rep(qv, dims, tuple(mats))
    incl = RepMap(ker, f.source, tuple(b.T.copy() for b in bases))
    return ker, incl


def cokernel_rep(f: RepMap) -> tuple[Rep, RepMap]:
    """Vertexwise cokernel with induced arrow maps and its projection."""
    qv = f.target.quiver
    p = f.p
    quots = []
    for v in range(qv.n_vertices):
        img = la.Subspace.from_rows(
            la.image(f.blocks[v], p), f.target.dims[v], p
        )
        quots.append(la.quotient(f.target.dims[v], img, p))
    dims = tuple(q.dim for q in quots)
    mats = []
    for i, a in enumerate(qv.arrows):
        m = la.matmul(
            quots[a.tgt].projection,
            la.matmul(f.target.mats[i], quots[a.src].section, p),
            p,
        )
        mats.append(m)
    cok = Rep(qv, dims, tuple(mats))
    proj = RepMap(f.target, cok, tuple(q.projection for q in quots))
    return cok, proj


def radical_rep(x: Rep) -> tuple[Rep, RepMap]:
    """The arrow-generated subrepresentation J·x with its inclusion."""
    qv = x.quiver
    p = x.p
    bases = []
    for v in range(qv.n_vertices):
        rows = [
            la.matmul(x.mats[i], la.eye(x.dims[a.src]), p).T
            for i, a in enumerate(qv.arrows)
            if a.tgt == v
        ]
        if rows:
            bases.append(la.row_space(np.vstack(rows), p))
        else:
            bases.append(np.zeros((0, x.dims[v]), dtype=np.int64))
    return sub_rep(x, bases)


def sub_rep(x: Rep, bases: list[np.ndarray]) -> tuple[Rep, RepMap]:
    """Subrepresentation on given vertexwise row bases (must be stable)."""
    qv = x.quiver
    p = x.p
    bases = [la.row_space(b, p) for b in bases]
    dims = tuple(b.shape[0] for b in bases)
    mats = []
    for i, a in enumerate(qv.arrows):
        img = la.matmul(x.mats[i], bases[a.src].T, p)
        sub = la.Subspace.from_rows(bases[a.tgt], x.dims[a.tgt], p)
        coords = sub.coords(img.T)
        if coords is None:
            raise RepError("the given subspaces are not arrow-stable")
        mats.append(coords.T.copy())
    s = Rep(qv, dims, tuple(mats))
    incl = RepMap(s, x, tuple(b.T.copy() for b in bases))
    return s, incl


def socle_rep(x: Rep) -> tuple[Rep, RepMap]:
    """Largest semisimple subrepresentation: vectors killed by every arrow."""
    qv = x.quiver
    p = x.p
    bases = []
    for v in range(qv.n_vertices):
        space = la.Subspace.full(x.dims[v], p)
        for i, a in enumerate(qv.arrows):
            if a.src == v:
                space = space.intersect(
                    la.Subspace.from_rows(la.kernel(x.mats[i], p), x.dims[v], p)
                )
        bases.append(space.basis)
    return sub_rep(x, bases)


def loewy_length(x: Rep) -> int:
    n = 0
    cur = x
    while not cur.is_zero():
        cur, _ = radical_rep(cur)
        n += 1
        if n > la.MAX_DIM:
            raise RepError("radical series does not terminate")
    return n


def certify_iso(x: Rep, y: Rep, trials: int = 64, seed: int = 0) -> RepMap | None:
    """A verified isomorphism x -> y, or None if none was found.

    Dimension vectors rule most pairs out immediately; otherwise basis
    homs and seeded random combinations are tested for invertibility.
    A None is *not* a proof of non-isomorphism.
    """
    if x.dims != y.dims:
        return None
    if x.total_dim == 0:
        return zero_map(x, y)
    basis = hom_space(x, y)
    if not basis:
        return None
    p = x.p
    for b in basis:
        if all(la.is_invertible(blk, p) for blk in b.blocks):
            return b
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        coeffs = rng.integers(0, p, size=len(basis))
        f = map_from_coeffs(basis, coeffs, x, y)
        if all(la.is_invertible(blk, p) for blk in f.blocks):
            return f
    return None
