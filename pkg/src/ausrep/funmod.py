"""Modules over a BasedAlgebra, stored as contravariant functor data.

A module assigns a space F_p^{d_X} to every point X and to every basis
element b in the (X, Y) block a matrix of shape (d_X, d_Y) mapping the
Y component into the X component.  Coherence with the stored (plain
composition) structure constants is ``action(a.b) = action(b) @
action(a)``, which is exactly the left-module condition over the
opposite endomorphism algebra.

Module maps are families of per-point blocks commuting with every
action; commuting with the idempotents and a rad/rad^2 generating set
is equivalent and is what the solver and validators use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ausrep import linalg as la
from ausrep.algebra import BasedAlgebra, opposite as _opposite
from ausrep.reps import solve_commuting


class ModuleError(ValueError):
    pass


def op_algebra(a: BasedAlgebra) -> BasedAlgebra:
    """Cached opposite so double duals land on the original object."""
    other = getattr(a, "_op_cache", None)
    if other is None:
        other = _opposite(a)
        a._op_cache = other
        other._op_cache = a
    return other


class FunMod:
    def __init__(self, algebra: BasedAlgebra, spaces, actions, check: bool = True):
        self.algebra = algebra
        self.spaces = tuple(int(d) for d in spaces)
        self.actions = list(actions)
        la.check_dim(sum(self.spaces))
        if len(self.spaces) != algebra.n_points or len(self.actions) != algebra.dim:
            raise ModuleError("module data does not match the algebra")
        for g, el in enumerate(algebra.elements):
            want = (self.spaces[el.src], self.spaces[el.tgt])
            if self.actions[g].shape != want:
                raise ModuleError(
                    f"action of {el.label} has shape {self.actions[g].shape}, want {want}"
                )
        if check:
            for x, g in enumerate(algebra.idempotent):
                if self.actions[g].tolist() != la.eye(self.spaces[x]).tolist():
                    raise ModuleError("identity element does not act as identity")

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def total_dim(self) -> int:
        return sum(self.spaces)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def action_of(self, src: int, tgt: int, coords) -> np.ndarray:
        """Action matrix of a block coefficient vector."""
        out = la.zeros(self.spaces[src], self.spaces[tgt])
        for c, g in zip(coords, self.algebra.block_indices(src, tgt)):
            if c % self.p:
                out = (out + int(c) * self.actions[g]) % self.p
        return out

    def validate(self) -> None:
        """Exhaustive coherence with the structure constants."""
        a = self.algebra
        for (g1, g2), vec in a.mult.items():
            e1, e2 = a.elements[g1], a.elements[g2]
            lhs = self.action_of(e2.src, e1.tgt, vec)
            rhs = la.matmul(self.actions[g2], self.actions[g1], self.p)
            if lhs.tolist() != rhs.tolist():
                raise ModuleError(
                    f"actions of {e1.label} and {e2.label} violate the structure constants"
                )
        for g1 in range(a.dim):
            for g2 in range(a.dim):
                if a.elements[g1].src == a.elements[g2].tgt and (g1, g2) not in a.mult:
                    rhs = la.matmul(self.actions[g2], self.actions[g1], self.p)
                    if rhs.any():
                        raise ModuleError("nonzero action of a vanishing composite")


class FunMap:
    def __init__(self, source: FunMod, target: FunMod, blocks, check: bool = True):
        if source.algebra is not target.algebra:
            raise ModuleError("source and target live over different algebras")
        self.source = source
        self.target = target
        self.blocks = list(blocks)
        for x in range(source.algebra.n_points):
            want = (target.spaces[x], source.spaces[x])
            if self.blocks[x].shape != want:
                raise ModuleError(f"block at point {x} has shape {self.blocks[x].shape}, want {want}")
        if check:
            a = source.algebra
            for g in a.generators():
                el = a.elements[g]
                lhs = la.matmul(self.blocks[el.src], source.actions[g], a.p)
                rhs = la.matmul(target.actions[g], self.blocks[el.tgt], a.p)
                if lhs.tolist() != rhs.tolist():
                    raise ModuleError(f"map does not commute with {el.label}")

    @property
    def p(self) -> int:
        return self.source.p

    def compose(self, other: "FunMap") -> "FunMap":
        blocks = [la.matmul(a, b, self.p) for a, b in zip(self.blocks, other.blocks)]
        return FunMap(other.source, self.target, blocks, check=False)

    def add(self, other: "FunMap") -> "FunMap":
        return FunMap(
            self.source,
            self.target,
            [(a + b) % self.p for a, b in zip(self.blocks, other.blocks)],
            check=False,
        )

    def scale(self, c: int) -> "FunMap":
        return FunMap(
            self.source, self.target, [(b * (c % self.p)) % self.p for b in self.blocks], check=False
        )

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def is_mono(self) -> bool:
        return all(la.rank(b, self.p) == b.shape[1] for b in self.blocks)

    def is_epi(self) -> bool:
        return all(la.rank(b, self.p) == b.shape[0] for b in self.blocks)

    def is_iso(self) -> bool:
        return all(la.is_invertible(b, self.p) for b in self.blocks)

    def inverse(self) -> "FunMap":
        return FunMap(
            self.target, self.source, [la.invert(b, self.p) for b in self.blocks], check=False
        )

    def flatten(self) -> np.ndarray:
        parts = [la.vec(b) for b in self.blocks]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def zero_module(a: BasedAlgebra) -> FunMod:
    spaces = [0] * a.n_points
    actions = [la.zeros(0, 0) for _ in range(a.dim)]
    return FunMod(a, spaces, actions, check=False)


def zero_map(m: FunMod, n: FunMod) -> FunMap:
    return FunMap(
        m, n, [la.zeros(n.spaces[x], m.spaces[x]) for x in range(m.algebra.n_points)], check=False
    )


def identity_mmap(m: FunMod) -> FunMap:
    return FunMap(m, m, [la.eye(d) for d in m.spaces], check=False)


def map_from_coeffs(basis: list[FunMap], coeffs, m: FunMod, n: FunMod) -> FunMap:
    out = zero_map(m, n)
    for c, b in zip(coeffs, basis):
        if c % m.p:
            out = out.add(b.scale(int(c)))
    return out


def simple_module(a: BasedAlgebra, x: int) -> FunMod:
    spaces = [1 if y == x else 0 for y in range(a.n_points)]
    actions = []
    for g, el in enumerate(a.elements):
        m = la.zeros(spaces[el.src], spaces[el.tgt])
        if g == a.idempotent[x]:
            m = la.eye(1)
        actions.append(m)
    return FunMod(a, spaces, actions)


def proj_of_point(a: BasedAlgebra, x: int) -> FunMod:
    """The representable projective at x: component at W is the (W, x)
    block, basis elements act by pre-composition via the structure
    constants."""
    spaces = [len(a.block_indices(w, x)) for w in range(a.n_points)]
    actions = []
    for g, el in enumerate(a.elements):
        m = la.zeros(spaces[el.src], spaces[el.tgt])
        for col, h in enumerate(a.block_indices(el.tgt, x)):
            vec = a.product(h, g)
            if vec is not None:
                m[:, col] = vec
        actions.append(m)
    return FunMod(a, spaces, actions)


def dual_module(m: FunMod) -> FunMod:
    """Vector-space dual, a module over the opposite algebra."""
    return FunMod(
        op_algebra(m.algebra),
        m.spaces,
        [b.T.copy() for b in m.actions],
        check=False,
    )


def dual_map(f: FunMap) -> FunMap:
    return FunMap(
        dual_module(f.target), dual_module(f.source), [b.T.copy() for b in f.blocks], check=False
    )


def inj_of_point(a: BasedAlgebra, x: int) -> FunMod:
    return dual_module(proj_of_point(op_algebra(a), x))


def direct_sum_modules(mods: list[FunMod], a: BasedAlgebra | None = None) -> FunMod:
    if not mods:
        if a is None:
            raise ModuleError("empty direct sum needs an explicit algebra")
        return zero_module(a)
    a = mods[0].algebra
    spaces = [sum(m.spaces[x] for m in mods) for x in range(a.n_points)]
    actions = [
        la.block_diag([m.actions[g] for m in mods]) for g in range(a.dim)
    ]
    return FunMod(a, spaces, actions, check=False)


def summand_inclusions(mods: list[FunMod]) -> list[FunMap]:
    total = direct_sum_modules(mods)
    a = total.algebra
    out = []
    for k, m in enumerate(mods):
        blocks = []
        for x in range(a.n_points):
            b = la.zeros(total.spaces[x], m.spaces[x])
            off = sum(mm.spaces[x] for mm in mods[:k])
            b[off : off + m.spaces[x]] = la.eye(m.spaces[x])
            blocks.append(b)
        out.append(FunMap(m, total, blocks, check=False))
    return out


def yoneda_map(a: BasedAlgebra, x: int, m: FunMod, v: np.ndarray) -> FunMap:
    """The map proj_of_point(x) -> m sending the identity generator to
    the element v of the x component."""
    p = proj_of_point(a, x)
    v = np.mod(np.asarray(v, dtype=np.int64), a.p)
    blocks = []
    for w in range(a.n_points):
        cols = []
        for h in a.block_indices(w, x):
            cols.append(la.matmul(m.actions[h], v.reshape(-1, 1), a.p)[:, 0])
        blocks.append(
            np.stack(cols, axis=1) if cols else la.zeros(m.spaces[w], 0)
        )
    return FunMap(p, m, blocks, check=False)


def hom(m: FunMod, n: FunMod) -> list[FunMap]:
    """Canonical basis of the module maps m -> n.

    Solves the commuting equations against a rad/rad^2 generating set;
    commuting with those actions extends to the whole algebra.
    """
    if m.algebra is not n.algebra:
        raise ModuleError("hom between modules over different algebras")
    a = m.algebra
    shapes = [(n.spaces[x], m.spaces[x]) for x in range(a.n_points)]
    eqs = []
    for g in a.generators():
        el = a.elements[g]
        eqs.append((el.src, m.actions[g], el.tgt, n.actions[g]))
    sols = solve_commuting(shapes, eqs, a.p)
    return [FunMap(m, n, blocks, check=False) for blocks in sols]


def hom_coords(basis: list[FunMap], f: FunMap) -> np.ndarray:
    if not basis:
        if f.is_zero():
            return np.zeros(0, dtype=np.int64)
        raise ModuleError("nonzero map in a zero hom space")
    mat = np.vstack([b.flatten() for b in basis])
    sub = la.Subspace.from_rows(mat, mat.shape[1], f.p)
    c = sub.coords(f.flatten().reshape(1, -1))
    if c is None:
        raise ModuleError("map is not in the span of the basis")
    return c[0]


# -- sub and quotient modules --------------------------------------------


def _as_rows(b, cols: int) -> np.ndarray:
    b = np.asarray(b, dtype=np.int64)
    if cols == 0 or b.size == 0:
        return np.zeros((0, cols), dtype=np.int64)
    return b.reshape(-1, cols)


def saturate_subspaces(m: FunMod, bases: list[np.ndarray]) -> list[np.ndarray]:
    """Close per-point row spans under the generator actions."""
    a = m.algebra
    p = a.p
    bases = [la.row_space(_as_rows(b, m.spaces[x]), p) for x, b in enumerate(bases)]
    changed = True
    while changed:
        changed = False
        for g in a.generators():
            el = a.elements[g]
            if not bases[el.tgt].size:
                continue
            img = la.matmul(m.actions[g], bases[el.tgt].T, p).T
            combined = la.row_space(np.vstack([bases[el.src], img]), p)
            if combined.shape[0] != bases[el.src].shape[0]:
                bases[el.src] = combined
                changed = True
    return bases


def sub_module(m: FunMod, bases: list[np.ndarray], saturate: bool = False) -> tuple[FunMod, FunMap]:
    """Submodule on the given per-point row bases with its inclusion."""
    a = m.algebra
    p = a.p
    if saturate:
        bases = saturate_subspaces(m, bases)
    else:
        bases = [la.row_space(_as_rows(b, m.spaces[x]), p) for x, b in enumerate(bases)]
    subs = [la.Subspace.from_rows(b, m.spaces[x], p) for x, b in enumerate(bases)]
    spaces = [b.shape[0] for b in bases]
    actions = []
    for g, el in enumerate(a.elements):
        img = la.matmul(m.actions[g], bases[el.tgt].T, p)
        coords = subs[el.src].coords(img.T)
        if coords is None:
            raise ModuleError("subspaces are not action-stable")
        actions.append(coords.T.copy())
    s = FunMod(a, spaces, actions, check=False)
    incl = FunMap(s, m, [b.T.copy() for b in bases], check=False)
    return s, incl


def quotient_module(m: FunMod, bases: list[np.ndarray], saturate: bool = False) -> tuple[FunMod, FunMap]:
    """Quotient by the submodule spanned by the given rows, with its
    projection."""
    a = m.algebra
    p = a.p
    if saturate:
        bases = saturate_subspaces(m, bases)
    quots = [
        la.quotient(
            m.spaces[x],
            la.Subspace.from_rows(_as_rows(bases[x], m.spaces[x]), m.spaces[x], p),
            p,
        )
        for x in range(a.n_points)
    ]
    spaces = [q.dim for q in quots]
    actions = []
    for g, el in enumerate(a.elements):
        actions.append(
            la.matmul(
                quots[el.src].projection,
                la.matmul(m.actions[g], quots[el.tgt].section, p),
                p,
            )
        )
    q = FunMod(a, spaces, actions, check=False)
    proj = FunMap(m, q, [qq.projection for qq in quots])
    return q, proj


def kernel_map(f: FunMap) -> tuple[FunMod, FunMap]:
    bases = [la.kernel(b, f.p) for b in f.blocks]
    return sub_module(f.source, bases)


def image_map(f: FunMap) -> tuple[FunMod, FunMap]:
    bases = [la.image(b, f.p) for b in f.blocks]
    return sub_module(f.target, bases)


def cokernel_map(f: FunMap) -> tuple[FunMod, FunMap]:
    bases = [la.image(b, f.p) for b in f.blocks]
    return quotient_module(f.target, bases)


def radical_submodule(m: FunMod) -> tuple[FunMod, FunMap]:
    """Sum of the images of all radical actions; a structural submodule."""
    a = m.algebra
    bases = []
    for x in range(a.n_points):
        rows = [la.zeros(0, m.spaces[x])]
        for g in a.radical:
            if a.elements[g].src == x:
                rows.append(m.actions[g].T)
        bases.append(np.vstack(rows))
    return sub_module(m, bases)


def top_quotient(m: FunMod) -> tuple[FunMod, FunMap]:
    _, rad_incl = radical_submodule(m)
    return quotient_module(m, [b.T for b in rad_incl.blocks])


def socle_submodule(m: FunMod) -> tuple[FunMod, FunMap]:
    a = m.algebra
    p = a.p
    bases = []
    for x in range(a.n_points):
        space = la.Subspace.full(m.spaces[x], p)
        for g in a.radical:
            if a.elements[g].tgt == x:
                space = space.intersect(
                    la.Subspace.from_rows(la.kernel(m.actions[g], p), m.spaces[x], p)
                )
        bases.append(space.basis)
    return sub_module(m, bases)


def generated_submodule(m: FunMod, vectors: dict[int, np.ndarray]) -> tuple[FunMod, FunMap]:
    """Submodule generated by given row vectors per point."""
    bases = []
    for x in range(m.algebra.n_points):
        v = vectors.get(x)
        bases.append(la.zeros(0, m.spaces[x]) if v is None else _as_rows(v, m.spaces[x]))
    return sub_module(m, bases, saturate=True)


def modules_equal(m: FunMod, n: FunMod) -> bool:
    return (
        m.algebra is n.algebra
        and m.spaces == n.spaces
        and all(a.tolist() == b.tolist() for a, b in zip(m.actions, n.actions))
    )
