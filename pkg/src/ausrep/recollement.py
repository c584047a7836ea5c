"""The idempotent recollement of the endomorphism-algebra module
category.

For a self-injective catalog the identities of the projective entries
sum to an idempotent e; the quotient by the ideal it generates is the
stable endomorphism algebra.  This module implements the six functors
of the induced recollement

    stable-mod  <--(reduce / inflate / annihilated_part)-->  end-mod
    end-mod     <--(tensor_embed / underlying_rep / hom_embed)-->  base-mod

together with the comparison map tensor_embed -> hom_embed, its image
(the intermediate extension) and the canonical tilting module it
produces on the additive generator.
"""

from __future__ import annotations

import numpy as np

from ausrep import algebra as alg
from ausrep import funmod as fm
from ausrep import homological as hl
from ausrep import linalg as la
from ausrep import reps
from ausrep.catalog import Catalog
from ausrep.funmod import FunMap, FunMod
from ausrep.reps import Rep, RepMap


class GammaContext:
    """Catalog plus its endomorphism algebra; enough for the module
    functors that do not need self-injectivity."""

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self.real = alg.build_gamma(catalog)
        self.gamma = self.real.algebra
        self.p = catalog.p
        self._hom_to: dict[tuple[int, Rep], list[RepMap]] = {}

    def hom_entry_to(self, i: int, m: Rep) -> list[RepMap]:
        key = (i, id(m))
        if key not in self._hom_to:
            self._hom_to[key] = reps.hom_space(self.catalog.rep(i), m)
        return self._hom_to[key]

    # -- representable modules -----------------------------------------

    def proj_module(self, m: Rep) -> FunMod:
        """The representable module of maps into m, with basis elements
        acting by pre-composition."""
        n = len(self.catalog)
        bases = [self.hom_entry_to(i, m) for i in range(n)]
        spaces = [len(b) for b in bases]
        actions = []
        for g, el in enumerate(self.gamma.elements):
            bmap = self.real.pair_maps[(el.src, el.tgt)][el.k]
            mat = la.zeros(spaces[el.src], spaces[el.tgt])
            for col, h in enumerate(bases[el.tgt]):
                mat[:, col] = reps.hom_coords(bases[el.src], h.compose(bmap))
            actions.append(mat)
        return FunMod(self.gamma, spaces, actions, check=False)

    def proj_map(self, f: RepMap) -> FunMap:
        """Post-composition map between representable modules."""
        src = self.proj_module(f.source)
        tgt = self.proj_module(f.target)
        blocks = []
        for i in range(len(self.catalog)):
            bsrc = self.hom_entry_to(i, f.source)
            btgt = self.hom_entry_to(i, f.target)
            mat = la.zeros(len(btgt), len(bsrc))
            for col, h in enumerate(bsrc):
                mat[:, col] = reps.hom_coords(btgt, f.compose(h))
            blocks.append(mat)
        return FunMap(src, tgt, blocks, check=False)

    def inj_module(self, m: Rep) -> FunMod:
        """The dual-representable module of maps out of m: transposed
        post-composition actions."""
        n = len(self.catalog)
        bases = [reps.hom_space(m, self.catalog.rep(i)) for i in range(n)]
        spaces = [len(b) for b in bases]
        actions = []
        for g, el in enumerate(self.gamma.elements):
            bmap = self.real.pair_maps[(el.src, el.tgt)][el.k]
            mat = la.zeros(spaces[el.tgt], spaces[el.src])
            for col, h in enumerate(bases[el.src]):
                mat[:, col] = reps.hom_coords(bases[el.tgt], bmap.compose(h))
            actions.append(mat.T.copy())
        return FunMod(self.gamma, spaces, actions, check=False)

    def simple(self, i: int) -> FunMod:
        return fm.simple_module(self.gamma, i)


class StableContext(GammaContext):
    """Adds the idempotent, its ideal and the stable quotient; the
    catalog must be self-injective."""

    def __init__(self, catalog: Catalog):
        super().__init__(catalog)
        self.e = alg.projective_idempotent(self.real)
        self.ideal = alg.two_sided_ideal(self.gamma, self.e)
        self.stable = alg.quotient_algebra(self.gamma, self.ideal)
        self.gammabar = self.stable.algebra
        self._tilting: FunMod | None = None
        self._vertex_entry: list[tuple[int, RepMap]] | None = None

    # -- the stable side: reduce / inflate / annihilated part -----------

    def _restrict_to_stable(self, m: FunMod) -> FunMod:
        """Reinterpret a module killed by the ideal as a stable-algebra
        module; components at dead points must vanish."""
        for x in range(self.gamma.n_points):
            if x not in self.stable.point_fwd and m.spaces[x]:
                raise fm.ModuleError("module is not killed at the dead points")
        spaces = [m.spaces[self.stable.point_back[i]] for i in range(self.gammabar.n_points)]
        actions = []
        for g, el in enumerate(self.gammabar.elements):
            x = self.stable.point_back[el.src]
            y = self.stable.point_back[el.tgt]
            lift = self.stable.lift_block(x, y, _unit(self.gammabar, g, el))
            actions.append(m.action_of(x, y, lift))
        return FunMod(self.gammabar, spaces, actions, check=False)

    def reduce(self, m: FunMod) -> FunMod:
        """Tensoring with the stable algebra: quotient by the submodule
        generated by the components at the projective points."""
        return self.reduce_with_projection(m)[0]

    def reduce_with_projection(self, m: FunMod) -> tuple[FunMod, FunMap]:
        dead = [x for x in range(self.gamma.n_points) if x not in self.stable.point_fwd]
        vectors = {x: la.eye(m.spaces[x]) for x in dead if m.spaces[x]}
        _, incl = fm.generated_submodule(m, vectors)
        quot, projection = fm.quotient_module(m, [b.T for b in incl.blocks])
        return self._restrict_to_stable(quot), projection

    def reduce_map(self, f: FunMap) -> FunMap:
        msrc, psrc = self.reduce_with_projection(f.source)
        mtgt, ptgt = self.reduce_with_projection(f.target)
        blocks = []
        for i in range(self.gammabar.n_points):
            x = self.stable.point_back[i]
            sect = _section_of(psrc, x, f.p)
            blocks.append(la.matmul(ptgt.blocks[x], la.matmul(f.blocks[x], sect, f.p), f.p))
        return FunMap(msrc, mtgt, blocks, check=False)

    def inflate(self, mbar: FunMod) -> FunMod:
        """Inclusion of the stable module category: zero at the dead
        points, parent actions through the quotient."""
        spaces = [0] * self.gamma.n_points
        for i in range(self.gammabar.n_points):
            spaces[self.stable.point_back[i]] = mbar.spaces[i]
        actions = []
        for g, el in enumerate(self.gamma.elements):
            if el.src in self.stable.point_fwd and el.tgt in self.stable.point_fwd:
                blk = self.gamma.block_indices(el.src, el.tgt)
                vec = np.zeros(len(blk), dtype=np.int64)
                vec[blk.index(g)] = 1
                red = self.stable.reduce_block(el.src, el.tgt, vec)
                actions.append(
                    mbar.action_of(self.stable.point_fwd[el.src], self.stable.point_fwd[el.tgt], red)
                )
            else:
                actions.append(la.zeros(spaces[el.src], spaces[el.tgt]))
        return FunMod(self.gamma, spaces, actions, check=False)

    def annihilated_part(self, m: FunMod) -> FunMod:
        """The largest submodule killed by the ideal: intersection of
        the kernels of all ideal-element actions."""
        p = self.p
        bases = []
        for x in range(self.gamma.n_points):
            space = la.Subspace.full(m.spaces[x], p)
            for w in range(self.gamma.n_points):
                comp = self.ideal.component(w, x)
                for row in comp.basis:
                    mat = m.action_of(w, x, row)
                    space = space.intersect(
                        la.Subspace.from_rows(la.kernel(mat, p), m.spaces[x], p)
                    )
            bases.append(space.basis)
        sub, _ = fm.sub_module(m, bases)
        return self._restrict_to_stable(sub)

    # -- the base side: underlying rep, tensor and hom embeddings -------

    def _vertex_data(self, v: int) -> tuple[int, RepMap]:
        if self._vertex_entry is None:
            self._vertex_entry = [None] * self.catalog.quiver.n_vertices
        if self._vertex_entry[v] is None:
            self._vertex_entry[v] = self.catalog.projective_entry_of_vertex(v)
        return self._vertex_entry[v]

    def _arrow_element(self, arrow_idx: int) -> tuple[int, int, np.ndarray]:
        """Right multiplication by an arrow, written on the catalog pair
        basis: a coefficient vector in the block (entry of P(tgt),
        entry of P(src))."""
        qv = self.catalog.quiver
        a = qv.arrows[arrow_idx]
        rho = self.catalog.right_multiplication(arrow_idx)
        i_tgt, w_tgt = self._vertex_data(a.tgt)
        i_src, w_src = self._vertex_data(a.src)
        # conjugate P(tgt) -> P(src) onto the catalog entries
        w_tgt_inv = RepMap(
            w_tgt.target, w_tgt.source, tuple(la.invert(b, self.p) for b in w_tgt.blocks)
        )
        translated = w_src.compose(rho).compose(w_tgt_inv)
        coords = self.real.express(i_tgt, i_src, translated)
        return i_tgt, i_src, coords

    def underlying_rep(self, m: FunMod) -> Rep:
        """Evaluation at the idempotent: the components at the projective
        entries assembled into a representation, arrows acting through
        right multiplication on the regular module."""
        qv = self.catalog.quiver
        dims = []
        for v in range(qv.n_vertices):
            idx, _ = self._vertex_data(v)
            dims.append(m.spaces[idx])
        mats = []
        for ai, a in enumerate(qv.arrows):
            i_tgt, i_src, coords = self._arrow_element(ai)
            mats.append(m.action_of(i_tgt, i_src, coords))
        return Rep(qv, tuple(dims), tuple(mats))

    def hom_embed(self, m: Rep) -> FunMod:
        """Right adjoint of evaluation, realized as the representable
        module; the adjunction is verified by the test suites."""
        return self.proj_module(m)

    def _path_operator(self, m: Rep, v: int, w: int, k: int) -> np.ndarray:
        """Action of the k-th basis class of paths v -> w on m."""
        pa = self.catalog.path_algebra
        out = la.zeros(m.dims[w], m.dims[v])
        for coef, path in pa.representative_path(v, w, k):
            term = la.eye(m.dims[v])
            for ai in path:
                term = la.matmul(m.mats[ai], term, self.p)
            out = (out + coef * term) % self.p
        return out

    def tensor_embed_data(self, m: Rep):
        """The tensor lift of a representation: per entry the coequalizer
        of the bilinear relations on sum_v Hom(X, P(v)) (x) m_v."""
        qv = self.catalog.quiver
        n = len(self.catalog)
        homs = {}
        for i in range(n):
            for v in range(qv.n_vertices):
                homs[(i, v)] = reps.hom_space(self.catalog.rep(i), self.catalog.vertex_projective(v))
        offs = {}
        amb = {}
        for i in range(n):
            off = [0]
            for v in range(qv.n_vertices):
                off.append(off[-1] + len(homs[(i, v)]) * m.dims[v])
            offs[i] = off
            amb[i] = off[-1]
        quots = {}
        for i in range(n):
            rows = []
            for ai, a in enumerate(qv.arrows):
                u, v = a.src, a.tgt
                rho = self.catalog.right_multiplication(ai)  # P(v) -> P(u)
                for gi, g in enumerate(homs[(i, v)]):
                    ga = rho.compose(g)
                    ga_coords = reps.hom_coords(homs[(i, u)], ga)
                    for xk in range(m.dims[u]):
                        row = np.zeros(amb[i], dtype=np.int64)
                        # (g.a) (x) x in the u block
                        for hj, cval in enumerate(ga_coords):
                            if cval:
                                row[offs[i][u] + hj * m.dims[u] + xk] = cval
                        # minus g (x) (a.x) in the v block
                        ax = m.mats[ai][:, xk]
                        for mj, cval in enumerate(ax):
                            if cval:
                                pos = offs[i][v] + gi * m.dims[v] + mj
                                row[pos] = (row[pos] - int(cval)) % self.p
                        if row.any():
                            rows.append(row)
            killed = la.Subspace.from_rows(
                np.vstack(rows) if rows else la.zeros(0, amb[i]), amb[i], self.p
            )
            quots[i] = la.quotient(amb[i], killed, self.p)
        return homs, offs, quots

    def tensor_embed(self, m: Rep) -> FunMod:
        homs, offs, quots = self.tensor_embed_data(m)
        return self._tensor_module(m, homs, offs, quots)

    def _tensor_module(self, m, homs, offs, quots) -> FunMod:
        qv = self.catalog.quiver
        n = len(self.catalog)
        spaces = [quots[i].dim for i in range(n)]
        actions = []
        for g, el in enumerate(self.gamma.elements):
            bmap = self.real.pair_maps[(el.src, el.tgt)][el.k]
            i, j = el.src, el.tgt
            amb_i = quots[i].projection.shape[1]
            amb_j = quots[j].projection.shape[1]
            mat = la.zeros(amb_i, amb_j)
            for v in range(qv.n_vertices):
                for gi, gg in enumerate(homs[(j, v)]):
                    comp = gg.compose(bmap)
                    coords = reps.hom_coords(homs[(i, v)], comp)
                    for hj, cval in enumerate(coords):
                        if cval:
                            for xk in range(m.dims[v]):
                                mat[offs[i][v] + hj * m.dims[v] + xk,
                                    offs[j][v] + gi * m.dims[v] + xk] = cval
            actions.append(
                la.matmul(quots[i].projection, la.matmul(mat, quots[j].section, self.p), self.p)
            )
        return FunMod(self.gamma, spaces, actions, check=False)

    def comparison_map(self, m: Rep) -> FunMap:
        """The natural map from the tensor lift to the hom lift sending
        g (x) x to evaluation-then-act."""
        homs, offs, quots = self.tensor_embed_data(m)
        src = self._tensor_module(m, homs, offs, quots)
        tgt = self.proj_module(m)
        qv = self.catalog.quiver
        blocks = []
        for i in range(len(self.catalog)):
            target_basis = self.hom_entry_to(i, m)
            amb = quots[i].projection.shape[1]
            mat = la.zeros(len(target_basis), amb)
            x_rep = self.catalog.rep(i)
            for v in range(qv.n_vertices):
                hs = homs[(i, v)]
                pv = self.catalog.vertex_projective(v)
                for hi, g in enumerate(hs):
                    for xk in range(m.dims[v]):
                        blocks_map = []
                        for w in range(qv.n_vertices):
                            out = la.zeros(m.dims[w], x_rep.dims[w])
                            for r in range(pv.dims[w]):
                                op = self._path_operator(m, v, w, r)
                                out = (out + np.outer(op[:, xk], g.blocks[w][r, :])) % self.p
                            blocks_map.append(out)
                        f = RepMap(x_rep, m, tuple(blocks_map))
                        col = offs[i][v] + hi * m.dims[v] + xk
                        mat[:, col] = reps.hom_coords(target_basis, f)
            blocks.append(la.matmul(mat, quots[i].section, self.p))
        return FunMap(src, tgt, blocks)

    def intermediate_extension(self, m: Rep) -> FunMod:
        gamma_m = self.comparison_map(m)
        img, _ = fm.image_map(gamma_m)
        return img

    def tilting_module(self) -> FunMod:
        if self._tilting is None:
            self._tilting = self.intermediate_extension(self.catalog.additive_generator())
        return self._tilting


def _unit(a, g, el):
    blk = a.block_indices(el.src, el.tgt)
    vec = np.zeros(len(blk), dtype=np.int64)
    vec[blk.index(g)] = 1
    return vec


def _section_of(projection_map: FunMap, x: int, p: int) -> np.ndarray:
    sect = la.solve(projection_map.blocks[x], la.eye(projection_map.blocks[x].shape[0]), p)
    if sect is None:
        raise fm.ModuleError("projection block is not onto")
    return sect


# -- tilting checks --------------------------------------------------------


def is_rigid(x: FunMod) -> bool:
    return hl.ext1(x, x).dim == 0


def summand_count(x: FunMod, trials: int = 64, seed: int = 0) -> int:
    from ausrep.decompose import fitting_decompose

    return len(fitting_decompose(x, trials=trials, seed=seed))


def is_tilting(x: FunMod, trials: int = 64, seed: int = 0) -> bool:
    return (
        hl.pd_leq(x, 1)
        and is_rigid(x)
        and summand_count(x, trials, seed) == x.algebra.n_points
    )


def is_cotilting(x: FunMod, trials: int = 64, seed: int = 0) -> bool:
    return (
        hl.id_leq(x, 1)
        and is_rigid(x)
        and summand_count(x, trials, seed) == x.algebra.n_points
    )
