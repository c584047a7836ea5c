"""Based structure-constant algebras with a structurally known radical.

A BasedAlgebra is a finite-dimensional algebra given by a labeled basis
graded over ordered pairs of "points" (the primitive idempotents): the
basis of the (X, Y) block consists of maps X -> Y, products are stored
as plain composition (a in (Y,Z)) * (b in (X,Y)) = a.b in (X,Z), and a
distinguished subset spans the radical.  Module categories act on these
data contravariantly, which realises the opposite-endomorphism-algebra
convention without ever reversing the stored constants.

The endomorphism algebra of a catalog's additive generator is built
here, together with the two-sided ideal of maps factoring through the
projective entries and the induced stable quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ausrep import linalg as la
from ausrep import reps
from ausrep.catalog import Catalog
from ausrep.reps import RepMap


class AlgebraError(ValueError):
    pass


class LambdaMethodError(AlgebraError):
    """End(X)/rad is not the prime field; the catalog is unsupported."""


@dataclass(frozen=True)
class BasisElement:
    src: int
    tgt: int
    k: int
    label: str


class BasedAlgebra:
    """Structure constants over a pair-graded labeled basis.

    ``mult[(a, b)]`` is the coefficient vector of the composite a.b on
    the block basis of (src_b, tgt_a); pairs with src_a != tgt_b or a
    zero product may be absent.
    """

    def __init__(self, name, points, elements, idempotent, radical, mult, p):
        self.name = name
        self.points: list[str] = list(points)
        self.elements: list[BasisElement] = list(elements)
        self.idempotent: list[int] = list(idempotent)
        self.radical: list[int] = sorted(radical)
        self.mult: dict[tuple[int, int], np.ndarray] = mult
        self.p = p
        self.block: dict[tuple[int, int], list[int]] = {}
        for g, el in enumerate(self.elements):
            self.block.setdefault((el.src, el.tgt), []).append(g)
        self._gens: list[int] | None = None

    @property
    def dim(self) -> int:
        return len(self.elements)

    @property
    def n_points(self) -> int:
        return len(self.points)

    def block_indices(self, src: int, tgt: int) -> list[int]:
        return self.block.get((src, tgt), [])

    def product(self, a: int, b: int) -> np.ndarray | None:
        """Composite of basis elements as a block coefficient vector, or
        None when the pair is not composable / the product is zero."""
        if self.elements[a].src != self.elements[b].tgt:
            return None
        return self.mult.get((a, b))

    def product_full(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two full coefficient vectors."""
        out = np.zeros(self.dim, dtype=np.int64)
        for a in np.nonzero(x)[0]:
            for b in np.nonzero(y)[0]:
                vec = self.product(int(a), int(b))
                if vec is None:
                    continue
                blk = self.block_indices(self.elements[int(b)].src, self.elements[int(a)].tgt)
                out[blk] = (out[blk] + int(x[a]) * int(y[b]) * vec) % self.p
        return out

    def unit(self) -> np.ndarray:
        u = np.zeros(self.dim, dtype=np.int64)
        u[self.idempotent] = 1
        return u

    def idempotent_vector(self, pts) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[[self.idempotent[x] for x in pts]] = 1
        return v

    def radical_in_block(self, src: int, tgt: int) -> list[int]:
        rset = set(self.radical)
        return [g for g in self.block_indices(src, tgt) if g in rset]

    # -- generators: radical elements spanning rad/rad^2 ------------------

    def generators(self) -> list[int]:
        """Basis elements spanning rad/rad^2; together with the
        idempotents they generate the algebra, so commuting with their
        actions suffices for module maps."""
        if self._gens is None:
            rad2 = self._radical_square_components()
            gens: list[int] = []
            for key in sorted(self.block):
                radl = self.radical_in_block(*key)
                if not radl:
                    continue
                blk = self.block_indices(*key)
                pos = {g: i for i, g in enumerate(blk)}
                span = rad2.get(key, la.Subspace.zero(len(blk), self.p))
                for g in radl:
                    v = np.zeros(len(blk), dtype=np.int64)
                    v[pos[g]] = 1
                    if not span.contains(v):
                        gens.append(g)
                        span = span.add(la.Subspace.from_rows(v, len(blk), self.p))
            self._gens = gens
        return self._gens

    def _radical_square_components(self) -> dict[tuple[int, int], la.Subspace]:
        rows: dict[tuple[int, int], list[np.ndarray]] = {}
        for a in self.radical:
            for b in self.radical:
                vec = self.product(a, b)
                if vec is None or not vec.any():
                    continue
                key = (self.elements[b].src, self.elements[a].tgt)
                rows.setdefault(key, []).append(vec)
        return {
            key: la.Subspace.from_rows(
                np.vstack(rl), len(self.block_indices(*key)), self.p
            )
            for key, rl in rows.items()
        }

    def gabriel_arrow_counts(self) -> dict[tuple[int, int], int]:
        """Arrow multiplicities of the Gabriel quiver.

        An arrow X -> Y for every element of rad/rad^2 in the stored
        block (Y, X): the block holds maps Y -> X of the underlying
        hom-category, and the algebra is its opposite.
        """
        rad2 = self._radical_square_components()
        out = {}
        for (src, tgt), _ in self.block.items():
            nrad = len(self.radical_in_block(src, tgt))
            if not nrad:
                continue
            n2 = rad2.get((src, tgt), None)
            count = nrad - (n2.dim if n2 else 0)
            if count:
                out[(tgt, src)] = count
        return out

    def to_dot(self) -> str:
        lines = ["digraph gabriel {"]
        for i, name in enumerate(self.points):
            lines.append(f'  v{i} [label="{name}"];')
        for (x, y), n in sorted(self.gabriel_arrow_counts().items()):
            for _ in range(n):
                lines.append(f"  v{x} -> v{y};")
        lines.append("}")
        return "\n".join(lines)

    # -- sanity -----------------------------------------------------------

    def check_associativity(self) -> None:
        """Exhaustive check of (a.b).c == a.(b.c) on composable triples."""

        def expand(vec_block, src, tgt):
            full = np.zeros(self.dim, dtype=np.int64)
            if vec_block is not None:
                full[self.block_indices(src, tgt)] = vec_block
            return full

        for a in range(self.dim):
            ea = self.elements[a]
            for b in range(self.dim):
                eb = self.elements[b]
                if ea.src != eb.tgt:
                    continue
                ab = expand(self.product(a, b), eb.src, ea.tgt)
                for c in range(self.dim):
                    ec = self.elements[c]
                    if eb.src != ec.tgt:
                        continue
                    bc = expand(self.product(b, c), ec.src, eb.tgt)
                    left = self.product_full(ab, _unit_vec(self, c))
                    right = self.product_full(_unit_vec(self, a), bc)
                    if left.tolist() != right.tolist():
                        raise AlgebraError(
                            f"associativity fails on ({ea.label}, {eb.label}, {ec.label})"
                        )

    def check_unit_and_grading(self) -> None:
        for g, el in enumerate(self.elements):
            ev = np.zeros(self.dim, dtype=np.int64)
            ev[g] = 1
            left = self.product_full(self.idempotent_vector([el.tgt]), ev)
            right = self.product_full(ev, self.idempotent_vector([el.src]))
            if left.tolist() != ev.tolist() or right.tolist() != ev.tolist():
                raise AlgebraError(f"idempotent sandwich fails on {el.label}")


# -- the endomorphism algebra of the additive generator ------------------


class GammaRealization:
    """The based algebra of all maps between catalog entries, with the
    adapted basis kept as actual representation maps."""

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self.p = catalog.p
        n = len(catalog)
        self.pair_maps: dict[tuple[int, int], list[RepMap]] = {}
        diag_data = {}
        for i in range(n):
            for j in range(n):
                basis = catalog.hom(i, j)
                if i == j:
                    adapted, lam = _adapt_endo_basis(catalog.rep(i), basis)
                    self.pair_maps[(i, j)] = adapted
                    diag_data[i] = lam
                else:
                    self.pair_maps[(i, j)] = basis
        elements, idempotent, radical = [], [], []
        for i in range(n):
            for j in range(n):
                for k in range(len(self.pair_maps[(i, j)])):
                    g = len(elements)
                    elements.append(
                        BasisElement(i, j, k, f"{catalog.entries[i].name}->{catalog.entries[j].name}#{k}")
                    )
                    if i == j and k == 0:
                        idempotent.append(g)
                    else:
                        radical.append(g)
        block: dict[tuple[int, int], list[int]] = {}
        for g, el in enumerate(elements):
            block.setdefault((el.src, el.tgt), []).append(g)
        mult = {}
        for (y1, z) in sorted(self.pair_maps):
            for (x, y2) in sorted(self.pair_maps):
                if y1 != y2:
                    continue
                amaps = self.pair_maps[(y1, z)]
                bmaps = self.pair_maps[(x, y2)]
                if not amaps or not bmaps:
                    continue
                for ka, am in enumerate(amaps):
                    for kb, bm in enumerate(bmaps):
                        comp = am.compose(bm)
                        coords = self.express(x, z, comp)
                        if coords.any():
                            ga = block[(y1, z)][ka]
                            gb = block[(x, y2)][kb]
                            mult[(ga, gb)] = coords
        self.algebra = BasedAlgebra(
            f"end({len(catalog)} entries)", catalog.names(), elements, idempotent, radical, mult, self.p
        )

    def express(self, i: int, j: int, f: RepMap) -> np.ndarray:
        """Coordinates of f on the adapted basis of the (i, j) block."""
        basis = self.pair_maps[(i, j)]
        if not basis:
            if not f.is_zero():
                raise AlgebraError("nonzero map in an empty hom block")
            return np.zeros(0, dtype=np.int64)
        cols = np.stack([b.flatten() for b in basis], axis=1)
        x = la.solve(cols, f.flatten(), self.p)
        if x is None or np.mod(cols @ x, self.p).tolist() != f.flatten().tolist():
            raise AlgebraError("map does not lie in its hom block")
        return x

    def element_map(self, i: int, j: int, coords) -> RepMap:
        return reps.map_from_coeffs(
            self.pair_maps[(i, j)], coords, self.catalog.rep(i), self.catalog.rep(j)
        )


def _adapt_endo_basis(rep, basis):
    """Basis of End(X) as [identity] + canonical basis of ker(lambda).

    Every endomorphism of an indecomposable with prime-field residue
    ring is scalar + nilpotent; lambda is that scalar, found from the
    trace when possible and verified by a nilpotency check.
    """
    p = rep.p
    d = rep.total_dim
    if d == 0:
        return list(basis), None
    lam = np.zeros(len(basis), dtype=np.int64)
    for i, f in enumerate(basis):
        lam[i] = _scalar_part(f, d, p)
    ident = reps.identity_map(rep)
    coords_id = reps.hom_coords(basis, ident)
    # lambda(identity) must be 1; lambda is linear on coordinates
    mat = lam.reshape(1, -1)
    ker = la.kernel(mat, p)
    adapted = [ident] + [
        reps.map_from_coeffs(basis, row, rep, rep) for row in ker
    ]
    if len(adapted) != len(basis):
        raise LambdaMethodError("endomorphism ring has no prime-field scalar part")
    if int((mat @ coords_id)[0] % p) != 1:
        raise LambdaMethodError("identity has vanishing scalar part")
    return adapted, lam


def _scalar_part(f: RepMap, d: int, p: int) -> int:
    """The single eigenvalue of an endomorphism, with the characteristic
    polynomial shape (t - lambda)^d verified via nilpotency."""
    total = la.block_diag(list(f.blocks))
    if d % p != 0:
        tr = int(np.trace(total)) % p
        cand = [tr * la.inv_scalar(d % p, p) % p]
    else:
        if p > 1009:
            raise LambdaMethodError("cannot scan eigenvalues for a prime this large")
        cand = list(range(p))
    for mu in cand:
        m = (total - mu * la.eye(d)) % p
        if _is_nilpotent(m, p):
            return mu
    raise LambdaMethodError(
        "an endomorphism has no single-eigenvalue characteristic polynomial"
    )


def _is_nilpotent(m: np.ndarray, p: int) -> bool:
    d = m.shape[0]
    power = m
    steps = 1
    while steps < d:
        power = la.matmul(power, power, p)
        steps *= 2
        if not power.any():
            return True
    return not power.any()


def build_gamma(catalog: Catalog) -> GammaRealization:
    return GammaRealization(catalog)


def projective_idempotent(real: GammaRealization) -> np.ndarray:
    """Sum of the identity idempotents of the projective(-injective)
    entries; requires a self-injective catalog."""
    if not real.catalog.is_self_injective():
        raise AlgebraError("catalog is not self-injective")
    return real.algebra.idempotent_vector(real.catalog.projective_indices())


@dataclass
class IdealBasis:
    algebra: BasedAlgebra
    span: la.Subspace
    presaturated: bool

    @property
    def dim(self) -> int:
        return self.span.dim

    def component(self, src: int, tgt: int) -> la.Subspace:
        blk = self.algebra.block_indices(src, tgt)
        rows = self.span.basis[:, blk] if self.span.dim else np.zeros((0, len(blk)), dtype=np.int64)
        return la.Subspace.from_rows(rows, len(blk), self.algebra.p)


def two_sided_ideal(algebra: BasedAlgebra, e: np.ndarray) -> IdealBasis:
    """Linear span of a.e.b over basis elements a, b, then saturated
    under one-sided multiplications until stable."""
    p = algebra.p
    rows = [e.copy()]
    left = [algebra.product_full(_unit_vec(algebra, a), e) for a in range(algebra.dim)]
    for v in left:
        if v.any():
            rows.append(v)
        for b in range(algebra.dim):
            w = algebra.product_full(v, _unit_vec(algebra, b))
            if w.any():
                rows.append(w)
    for b in range(algebra.dim):
        w = algebra.product_full(e, _unit_vec(algebra, b))
        if w.any():
            rows.append(w)
    span = la.Subspace.from_rows(np.vstack(rows) if rows else np.zeros((0, algebra.dim), dtype=np.int64), algebra.dim, p)
    # saturation loop over a generating multiplier set; the two-sided
    # sweep above already suffices, but stability is verified, not assumed
    multipliers = algebra.generators() + algebra.idempotent
    presaturated = True
    while True:
        new_rows = []
        for v in span.basis:
            for g in multipliers:
                gv = _unit_vec(algebra, g)
                for w in (algebra.product_full(gv, v), algebra.product_full(v, gv)):
                    if w.any() and not span.contains(w):
                        new_rows.append(w)
        if not new_rows:
            break
        presaturated = False
        span = span.add(la.Subspace.from_rows(np.vstack(new_rows), algebra.dim, p))
    return IdealBasis(algebra, span, presaturated)


def _unit_vec(algebra: BasedAlgebra, g: int) -> np.ndarray:
    v = np.zeros(algebra.dim, dtype=np.int64)
    v[g] = 1
    return v


class QuotientAlgebra:
    """A quotient BasedAlgebra together with per-block lift/reduce maps."""

    def __init__(self, algebra: BasedAlgebra, ideal: IdealBasis):
        if ideal.algebra is not algebra:
            raise AlgebraError("ideal belongs to a different algebra")
        p = algebra.p
        comps = {key: ideal.component(*key) for key in algebra.block}
        if sum(c.dim for c in comps.values()) != ideal.dim:
            raise AlgebraError("ideal is not graded by the idempotent blocks")
        survivors = []
        for x in range(algebra.n_points):
            blk = algebra.block_indices(x, x)
            idpos = blk.index(algebra.idempotent[x])
            comp = comps.get((x, x), la.Subspace.zero(len(blk), p))
            idvec = np.zeros(len(blk), dtype=np.int64)
            idvec[idpos] = 1
            if not comp.contains(idvec):
                if comp.dim and comp.basis[:, idpos].any():
                    raise AlgebraError("ideal meets an idempotent line non-trivially")
                survivors.append(x)
        self.survivors = survivors
        self.point_back = {new: old for new, old in enumerate(survivors)}
        self.point_fwd = {old: new for new, old in enumerate(survivors)}
        # per surviving block: quotient of the block coordinate space
        self.block_quot: dict[tuple[int, int], la.Quotient] = {}
        elements, idempotent, radical = [], [], []
        for xi, x in enumerate(survivors):
            for yi, y in enumerate(survivors):
                blk = algebra.block_indices(x, y)
                comp = comps.get((x, y), la.Subspace.zero(len(blk), p))
                if x == y:
                    q = _adapted_corner_quotient(algebra, comp, x)
                else:
                    q = la.quotient(len(blk), comp, p)
                self.block_quot[(x, y)] = q
                for k in range(q.dim):
                    g = len(elements)
                    elements.append(
                        BasisElement(xi, yi, k, f"{algebra.points[x]}->{algebra.points[y]}~{k}")
                    )
                    if x == y and k == 0:
                        idempotent.append(g)
                    else:
                        radical.append(g)
        block: dict[tuple[int, int], list[int]] = {}
        for g, el in enumerate(elements):
            block.setdefault((el.src, el.tgt), []).append(g)
        mult = {}
        for (y1, z) in list(self.block_quot):
            for (x, y2) in list(self.block_quot):
                if y1 != y2:
                    continue
                qa = self.block_quot[(y1, z)]
                qb = self.block_quot[(x, y2)]
                if qa.dim == 0 or qb.dim == 0:
                    continue
                ga = block[(self.point_fwd[y1], self.point_fwd[z])]
                gb = block[(self.point_fwd[x], self.point_fwd[y2])]
                for ka in range(qa.dim):
                    fa = self._lift_block(algebra, (y1, z), qa.section[:, ka])
                    for kb in range(qb.dim):
                        fb = self._lift_block(algebra, (x, y2), qb.section[:, kb])
                        full = algebra.product_full(fa, fb)
                        blk_xz = algebra.block_indices(x, z)
                        vec = full[blk_xz]
                        red = la.matmul(
                            self.block_quot[(x, z)].projection, vec.reshape(-1, 1), p
                        )[:, 0]
                        if red.any():
                            mult[(ga[ka], gb[kb])] = red
        self.algebra = BasedAlgebra(
            f"{algebra.name}/ideal({ideal.dim})",
            [algebra.points[x] for x in survivors],
            elements,
            idempotent,
            radical,
            mult,
            p,
        )
        self.parent = algebra
        # dimension-count identity for the induced radical
        assert self.algebra.dim - len(survivors) == len(self.algebra.radical)

    def _lift_block(self, algebra, key, blockvec) -> np.ndarray:
        full = np.zeros(algebra.dim, dtype=np.int64)
        full[algebra.block_indices(*key)] = blockvec
        return full

    def reduce_block(self, x: int, y: int, vec: np.ndarray) -> np.ndarray:
        """Parent block coordinates -> quotient block coordinates."""
        q = self.block_quot[(x, y)]
        return la.matmul(q.projection, np.asarray(vec).reshape(-1, 1), self.algebra.p)[:, 0]

    def lift_block(self, x: int, y: int, vec: np.ndarray) -> np.ndarray:
        q = self.block_quot[(x, y)]
        return la.matmul(q.section, np.asarray(vec).reshape(-1, 1), self.algebra.p)[:, 0]


def _adapted_corner_quotient(algebra: BasedAlgebra, comp: la.Subspace, x: int) -> la.Quotient:
    """Quotient of a diagonal block keeping the identity as basis
    element 0; the ideal component lies inside the radical part."""
    p = algebra.p
    blk = algebra.block_indices(x, x)
    n = len(blk)
    idpos = blk.index(algebra.idempotent[x])
    base = la.quotient(n, comp, p)
    if base.dim == 0:
        raise AlgebraError("identity died in a surviving corner")
    idvec = np.zeros(n, dtype=np.int64)
    idvec[idpos] = 1
    idq = la.matmul(base.projection, idvec.reshape(-1, 1), p)[:, 0]
    # change basis in the quotient so the identity class is coordinate 0
    cols = [idq]
    for i in range(base.dim):
        e = np.zeros(base.dim, dtype=np.int64)
        e[i] = 1
        cols.append(e)
    mat = np.stack(cols, axis=1)
    keep = [0]
    span = la.Subspace.from_rows(idq, base.dim, p)
    for i in range(1, mat.shape[1]):
        if not span.contains(mat[:, i]):
            span = span.add(la.Subspace.from_rows(mat[:, i], base.dim, p))
            keep.append(i)
        if len(keep) == base.dim:
            break
    change = mat[:, keep]  # new-basis columns in old quotient coords
    inv = la.invert(change, p)
    projection = la.matmul(inv, base.projection, p)
    section = la.matmul(base.section, change, p)
    return la.Quotient(n, comp, projection, section, p)


def quotient_algebra(algebra: BasedAlgebra, ideal: IdealBasis) -> QuotientAlgebra:
    return QuotientAlgebra(algebra, ideal)


def opposite(algebra: BasedAlgebra) -> BasedAlgebra:
    """Same basis with reversed grading and reversed products; involutive."""
    elements = [
        BasisElement(el.tgt, el.src, el.k, el.label + "^op") for el in algebra.elements
    ]
    mult = {(b, a): v for (a, b), v in algebra.mult.items()}
    return BasedAlgebra(
        algebra.name + "^op",
        algebra.points,
        elements,
        algebra.idempotent,
        algebra.radical,
        mult,
        algebra.p,
    )
