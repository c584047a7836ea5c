"""Functors from the morphism category into module categories.

Objects of the morphism category are arbitrary maps between
representations; the submodule category is the full subcategory of
monomorphisms.  The central constructions:

  * ``module_of``: cokernel of the induced map of representables; kills
    exactly identity-type and (M -> 0)-type objects.
  * ``cokernel_pair``: the quotient functor from monos to epis.
  * ``sub_stable`` / ``quot_stable``: the two compositions into the
    stable module category, with functorial companions on morphisms.
  * constructive dense lifts, factorization witnesses through finite
    generator lists, and the syzygy comparison between the two
    compositions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ausrep import decompose as dec
from ausrep import funmod as fm
from ausrep import homological as hl
from ausrep import linalg as la
from ausrep import reps
from ausrep.funmod import FunMap, FunMod
from ausrep.recollement import GammaContext, StableContext
from ausrep.reps import Rep, RepMap


class NotMonoError(ValueError):
    pass


class FactorBoundExceeded(RuntimeError):
    pass


class UndeterminedError(RuntimeError):
    """A randomized certification ran out of trials."""


@dataclass(frozen=True)
class T2Object:
    f: RepMap

    @property
    def sub(self) -> Rep:
        return self.f.source

    @property
    def quot(self) -> Rep:
        return self.f.target

    @property
    def dims(self):
        return (self.f.source.dims, self.f.target.dims)


def mono_pair(f: RepMap) -> T2Object:
    if not reps.is_mono(f):
        raise NotMonoError("map is not a monomorphism")
    return T2Object(f)


@dataclass(frozen=True)
class T2Map:
    source: T2Object
    target: T2Object
    g1: RepMap
    g0: RepMap

    def __post_init__(self):
        lhs = self.target.f.compose(self.g1)
        rhs = self.g0.compose(self.source.f)
        if not all(a.tolist() == b.tolist() for a, b in zip(lhs.blocks, rhs.blocks)):
            raise ValueError("square does not commute")

    def compose(self, other: "T2Map") -> "T2Map":
        return T2Map(
            other.source, self.target, self.g1.compose(other.g1), self.g0.compose(other.g0)
        )

    def flatten(self) -> np.ndarray:
        return np.concatenate([self.g1.flatten(), self.g0.flatten()])

    def is_zero(self) -> bool:
        return self.g1.is_zero() and self.g0.is_zero()


def identity_t2(x: T2Object) -> T2Map:
    return T2Map(x, x, reps.identity_map(x.sub), reps.identity_map(x.quot))


def t2_direct_sum(xs: list[T2Object]) -> tuple[T2Object, list[T2Map]]:
    subs = [x.sub for x in xs]
    quots = [x.quot for x in xs]
    big_sub = reps.direct_sum(subs)
    big_quot = reps.direct_sum(quots)
    blocks = tuple(
        la.block_diag([x.f.blocks[v] for x in xs])
        for v in range(big_sub.quiver.n_vertices)
    )
    total = T2Object(RepMap(big_sub, big_quot, blocks))
    incls = []
    sub_inc = reps.summand_inclusions(subs)
    quot_inc = reps.summand_inclusions(quots)
    for k, x in enumerate(xs):
        incls.append(T2Map(x, total, sub_inc[k], quot_inc[k]))
    return total, incls


def hom_t2(x: T2Object, y: T2Object) -> list[T2Map]:
    """Canonical basis of commuting squares from x to y."""
    p = x.f.p
    h1 = reps.hom_space(x.sub, y.sub)
    h0 = reps.hom_space(x.quot, y.quot)
    cols = []
    for h in h1:
        cols.append(y.f.compose(h).flatten())
    for h in h0:
        cols.append((-h.compose(x.f).flatten()) % p)
    if not cols:
        return []
    mat = np.stack(cols, axis=1) % p
    null = la.kernel(mat.astype(np.int64), p)
    out = []
    for row in null:
        c1 = row[: len(h1)]
        c0 = row[len(h1) :]
        out.append(
            T2Map(
                x,
                y,
                reps.map_from_coeffs(h1, c1, x.sub, y.sub),
                reps.map_from_coeffs(h0, c0, x.quot, y.quot),
            )
        )
    return out


def t2_iso(x: T2Object, y: T2Object, trials: int = 64, seed: int = 0) -> T2Map | None:
    """A certified isomorphism of morphism-category objects, or None."""
    if x.dims != y.dims:
        return None
    basis = hom_t2(x, y)
    if not basis:
        return None if x.sub.total_dim + x.quot.total_dim else identity_t2(x)
    p = x.f.p
    rng = np.random.default_rng(seed)
    candidates = list(basis)
    for _ in range(trials):
        coeffs = rng.integers(0, p, size=len(basis))
        g1 = reps.map_from_coeffs([b.g1 for b in basis], coeffs, x.sub, y.sub)
        g0 = reps.map_from_coeffs([b.g0 for b in basis], coeffs, x.quot, y.quot)
        candidates.append(T2Map(x, y, g1, g0))
    for cand in candidates:
        if all(la.is_invertible(b, p) for b in cand.g1.blocks) and all(
            la.is_invertible(b, p) for b in cand.g0.blocks
        ):
            return cand
    return None


# -- the module functor and the cokernel pair ------------------------------


def cokernel_pair(x: T2Object) -> T2Object:
    """Sends a mono to the pair (target -> target/source)."""
    if not reps.is_mono(x.f):
        raise NotMonoError("cokernel pair is defined on monomorphisms")
    _, proj = reps.cokernel_rep(x.f)
    return T2Object(proj)


def cokernel_pair_map(psi: T2Map) -> T2Map:
    ex = cokernel_pair(psi.source)
    ey = cokernel_pair(psi.target)
    p = psi.g0.p
    induced_blocks = []
    for v in range(psi.g0.source.quiver.n_vertices):
        sect = la.solve(ex.f.blocks[v], la.eye(ex.f.blocks[v].shape[0]), p)
        induced_blocks.append(
            la.matmul(ey.f.blocks[v], la.matmul(psi.g0.blocks[v], sect, p), p)
        )
    induced = RepMap(ex.quot, ey.quot, tuple(induced_blocks))
    return T2Map(ex, ey, psi.g0, induced)


def module_of(ctx: GammaContext, x: T2Object) -> FunMod:
    """Cokernel of the induced map of representable modules."""
    return module_of_with_projection(ctx, x)[0]


def module_of_with_projection(ctx: GammaContext, x: T2Object) -> tuple[FunMod, FunMap]:
    phi = ctx.proj_map(x.f)
    return fm.cokernel_map(phi)


def module_of_map(ctx: GammaContext, psi: T2Map) -> FunMap:
    ax, proj_x = module_of_with_projection(ctx, psi.source)
    ay, proj_y = module_of_with_projection(ctx, psi.target)
    mid = ctx.proj_map(psi.g0)
    p = ctx.p
    blocks = []
    for i in range(len(ctx.catalog)):
        sect = la.solve(proj_x.blocks[i], la.eye(proj_x.blocks[i].shape[0]), p)
        blocks.append(la.matmul(proj_y.blocks[i], la.matmul(mid.blocks[i], sect, p), p))
    return FunMap(ax, ay, blocks, check=False)


# -- the two compositions into the stable category -------------------------


def sub_stable(ctx: StableContext, x: T2Object) -> FunMod:
    """Stable module of a mono through the inclusion functor."""
    if not reps.is_mono(x.f):
        raise NotMonoError("defined on the submodule category")
    return ctx.reduce(module_of(ctx, x))


def quot_stable(ctx: StableContext, x: T2Object) -> FunMod:
    """Stable module of a mono through the cokernel-pair functor."""
    return ctx.reduce(module_of(ctx, cokernel_pair(x)))


def sub_stable_map(ctx: StableContext, psi: T2Map) -> FunMap:
    return ctx.reduce_map(module_of_map(ctx, psi))


def quot_stable_map(ctx: StableContext, psi: T2Map) -> FunMap:
    return ctx.reduce_map(module_of_map(ctx, cokernel_pair_map(psi)))


# -- kernel subcategories ---------------------------------------------------


def injective_envelope_rep(ctx: StableContext, m: Rep) -> RepMap:
    """A monomorphism from m into a minimal sum of vertex injectives."""
    cat = ctx.catalog
    p = cat.p
    soc, soc_incl = reps.socle_rep(m)
    copies = []
    socle_targets = []
    for v in range(cat.quiver.n_vertices):
        iv = cat.vertex_injective(v)
        s_iv, s_incl = reps.socle_rep(iv)
        for _ in range(soc.dims[v]):
            copies.append(iv)
            socle_targets.append((v, s_incl))
    if not copies:
        if m.is_zero():
            return reps.zero_map(m, reps.zero_rep(cat.quiver))
        raise ValueError("nonzero module with zero socle")
    big = reps.direct_sum(copies)
    incls = reps.summand_inclusions(copies)
    # the desired restriction to the socle: k-th socle vector at v goes to
    # the socle line of the k-th copy of the injective at v
    target = reps.zero_map(soc, big)
    counters = {v: 0 for v in range(cat.quiver.n_vertices)}
    copy_idx = 0
    for v in range(cat.quiver.n_vertices):
        for k in range(soc.dims[v]):
            s_vec = np.zeros(soc.dims[v], dtype=np.int64)
            s_vec[k] = 1
            _, s_incl = socle_targets[copy_idx][0], socle_targets[copy_idx][1]
            col = s_incl.blocks[v][:, 0]
            blocks = [b.copy() for b in target.blocks]
            blocks[v][:, k] = (
                blocks[v][:, k] + incls[copy_idx].blocks[v] @ col
            ) % p
            target = RepMap(soc, big, tuple(blocks))
            copy_idx += 1
    basis = reps.hom_space(m, big)
    if not basis:
        raise ValueError("no maps into the injective hull")
    cols = np.stack([b.compose(soc_incl).flatten() for b in basis], axis=1)
    sol = la.solve(cols, target.flatten(), p)
    if sol is None:
        raise ValueError("socle inclusion does not extend")
    g = reps.map_from_coeffs(basis, sol, m, big)
    if not reps.is_mono(g):
        raise ValueError("extended map is not injective")
    return g


def sub_kernel_generators(ctx: StableContext) -> list[tuple[str, T2Object]]:
    """Generators killed by the mono-side functor: the identity on the
    additive generator, envelopes into projective-injectives, and the
    inclusions of the projective-injectives themselves."""
    cat = ctx.catalog
    e_rep = cat.additive_generator()
    gens = [("id(E)", T2Object(reps.identity_map(e_rep)))]
    for i, entry in enumerate(cat.entries):
        gens.append((f"env({entry.name})", T2Object(injective_envelope_rep(ctx, entry.rep))))
    for i in cat.projective_indices():
        zero = reps.zero_rep(cat.quiver)
        gens.append(
            (f"0->{cat.entries[i].name}", T2Object(reps.zero_map(zero, cat.rep(i))))
        )
    return gens


def quot_kernel_generators(ctx: StableContext) -> list[tuple[str, T2Object]]:
    cat = ctx.catalog
    e_rep = cat.additive_generator()
    zero = reps.zero_rep(cat.quiver)
    return [
        ("id(E)", T2Object(reps.identity_map(e_rep))),
        ("0->E", T2Object(reps.zero_map(zero, e_rep))),
    ]


def module_kernel_generators(ctx: GammaContext) -> list[tuple[str, T2Object]]:
    """Generators of the kernel of the module functor itself."""
    cat = ctx.catalog
    e_rep = cat.additive_generator()
    zero = reps.zero_rep(cat.quiver)
    return [
        ("id(E)", T2Object(reps.identity_map(e_rep))),
        ("E->0", T2Object(reps.zero_map(e_rep, zero))),
    ]


def indecomposable_classes_of_add(objects: list[T2Object], trials: int = 64, seed: int = 0) -> list[T2Object]:
    """Distinct iso classes among the indecomposable pieces of the given
    objects; summands are the obvious ones for the generator shapes used
    here (identity pairs, envelopes, zero-source pairs)."""
    pieces: list[T2Object] = []
    for x in objects:
        pieces.append(x)
    out: list[T2Object] = []
    for x in pieces:
        if any(t2_iso(x, y, trials=trials, seed=seed) is not None for y in out):
            continue
        out.append(x)
    return out


def sub_kernel_indecomposables(ctx: StableContext, trials: int = 64, seed: int = 0) -> list[T2Object]:
    cat = ctx.catalog
    pieces = []
    for i, entry in enumerate(cat.entries):
        pieces.append(T2Object(reps.identity_map(entry.rep)))
        pieces.append(T2Object(injective_envelope_rep(ctx, entry.rep)))
    zero = reps.zero_rep(cat.quiver)
    for i in cat.projective_indices():
        pieces.append(T2Object(reps.zero_map(zero, cat.rep(i))))
    return indecomposable_classes_of_add(pieces, trials, seed)


def quot_kernel_indecomposables(ctx: StableContext, trials: int = 64, seed: int = 0) -> list[T2Object]:
    cat = ctx.catalog
    zero = reps.zero_rep(cat.quiver)
    pieces = []
    for entry in cat.entries:
        pieces.append(T2Object(reps.identity_map(entry.rep)))
        pieces.append(T2Object(reps.zero_map(zero, entry.rep)))
    return indecomposable_classes_of_add(pieces, trials, seed)


# -- epimorphism criterion --------------------------------------------------


def epi_criterion(ctx: GammaContext, x: T2Object) -> bool:
    """No maps from any projective representable into the module of x."""
    ax = module_of(ctx, x)
    for i in ctx.catalog.projective_indices():
        if fm.hom(fm.proj_of_point(ctx.gamma, i), ax):
            return False
    return True


# -- factorization witnesses -------------------------------------------------


@dataclass
class FactorWitness:
    middle: T2Object
    into: T2Map
    out_of: T2Map

    def composite(self) -> T2Map:
        return self.out_of.compose(self.into)


MAX_FACTOR_DIM = 4000


def factor_through(phi: T2Map, gens: list[T2Object]) -> FactorWitness | None:
    """A factorization of phi through a finite sum of generators, or None.

    Uses the universal left approximation: one copy of each generator
    per basis element of the hom space from the source, which suffices
    whenever any factorization exists.
    """
    x, y = phi.source, phi.target
    p = phi.g0.p
    copies: list[T2Object] = []
    unit_maps: list[T2Map] = []
    for g in gens:
        for u in hom_t2(x, g):
            copies.append(g)
            unit_maps.append(u)
    if not copies:
        return None if not phi.is_zero() else _zero_witness(phi, gens)
    total = sum(c.sub.total_dim + c.quot.total_dim for c in copies)
    if total > MAX_FACTOR_DIM:
        raise FactorBoundExceeded(f"approximation object has dimension {total}")
    out_bases = [hom_t2(c, y) for c in copies]
    cols = []
    tags = []
    for k, basis in enumerate(out_bases):
        for j, b in enumerate(basis):
            cols.append(b.compose(unit_maps[k]).flatten())
            tags.append((k, j))
    if not cols:
        return None if not phi.is_zero() else _zero_witness(phi, gens)
    mat = np.stack(cols, axis=1)
    sol = la.solve(mat, phi.flatten(), p)
    if sol is None:
        return None
    w, incls = t2_direct_sum(copies)
    into = _stack_t2(unit_maps, incls, x, w)
    out_maps = []
    for k, basis in enumerate(out_bases):
        coeffs = [int(sol[t]) for t, (kk, _) in enumerate(tags) if kk == k]
        g1 = reps.map_from_coeffs([b.g1 for b in basis], coeffs, copies[k].sub, y.sub)
        g0 = reps.map_from_coeffs([b.g0 for b in basis], coeffs, copies[k].quot, y.quot)
        out_maps.append(T2Map(copies[k], y, g1, g0))
    out_of = _unstack_t2(out_maps, incls, w, y)
    witness = FactorWitness(w, into, out_of)
    if witness.composite().flatten().tolist() != phi.flatten().tolist():
        raise RuntimeError("factorization verification failed")
    return witness


def _zero_witness(phi: T2Map, gens: list[T2Object]) -> FactorWitness:
    zero_rep_ = reps.zero_rep(phi.source.sub.quiver)
    z = T2Object(reps.zero_map(zero_rep_, zero_rep_))
    into = T2Map(phi.source, z, reps.zero_map(phi.source.sub, zero_rep_), reps.zero_map(phi.source.quot, zero_rep_))
    out = T2Map(z, phi.target, reps.zero_map(zero_rep_, phi.target.sub), reps.zero_map(zero_rep_, phi.target.quot))
    return FactorWitness(z, into, out)


def _stack_t2(unit_maps: list[T2Map], incls: list[T2Map], x: T2Object, w: T2Object) -> T2Map:
    g1 = reps.zero_map(x.sub, w.sub)
    g0 = reps.zero_map(x.quot, w.quot)
    for u, inc in zip(unit_maps, incls):
        g1 = g1.add(inc.g1.compose(u.g1))
        g0 = g0.add(inc.g0.compose(u.g0))
    return T2Map(x, w, g1, g0)


def _unstack_t2(out_maps: list[T2Map], incls: list[T2Map], w: T2Object, y: T2Object) -> T2Map:
    p = y.f.p
    n_v = y.sub.quiver.n_vertices
    g1_blocks = [la.zeros(y.sub.dims[v], w.sub.dims[v]) for v in range(n_v)]
    g0_blocks = [la.zeros(y.quot.dims[v], w.quot.dims[v]) for v in range(n_v)]
    off_sub = [0] * n_v
    off_quot = [0] * n_v
    for om, inc in zip(out_maps, incls):
        for v in range(n_v):
            d1 = om.source.sub.dims[v]
            d0 = om.source.quot.dims[v]
            g1_blocks[v][:, off_sub[v] : off_sub[v] + d1] = om.g1.blocks[v]
            g0_blocks[v][:, off_quot[v] : off_quot[v] + d0] = om.g0.blocks[v]
            off_sub[v] += d1
            off_quot[v] += d0
    return T2Map(
        w,
        y,
        RepMap(w.sub, y.sub, tuple(g1_blocks)),
        RepMap(w.quot, y.quot, tuple(g0_blocks)),
    )


# -- constructive dense lifts -------------------------------------------------


def _rep_of_summand_points(ctx: GammaContext, points: list[int]) -> tuple[Rep, list[RepMap]]:
    summands = [ctx.catalog.rep(i) for i in points]
    if not summands:
        z = reps.zero_rep(ctx.catalog.quiver)
        return z, []
    return reps.direct_sum(summands), reps.summand_inclusions(summands)


def rep_map_from_funmap(ctx: GammaContext, d: FunMap, src_points: list[int], tgt_points: list[int]) -> RepMap:
    """Recover the representation map inducing a map of representable
    sums, reading generator images through the Yoneda identification."""
    cat = ctx.catalog
    src_rep, _ = _rep_of_summand_points(ctx, src_points)
    tgt_rep, tgt_incls = _rep_of_summand_points(ctx, tgt_points)
    p = ctx.p
    blocks = [la.zeros(tgt_rep.dims[v], src_rep.dims[v]) for v in range(cat.quiver.n_vertices)]
    src_offsets = {}
    pos = {x: 0 for x in range(ctx.gamma.n_points)}
    col_offset = [0] * cat.quiver.n_vertices
    for k, x in enumerate(src_points):
        gen = np.zeros(d.source.spaces[x], dtype=np.int64)
        gen[_generator_position(ctx, d.source, src_points, k)] = 1
        w = la.matmul(d.blocks[x], gen.reshape(-1, 1), p)[:, 0]
        # decode w: coordinates over the summands of the target at point x
        off = 0
        comp = reps.zero_map(cat.rep(x), tgt_rep)
        for kk, xx in enumerate(tgt_points):
            nloc = len(ctx.gamma.block_indices(x, xx))
            coords = w[off : off + nloc]
            off += nloc
            if coords.any():
                f = ctx.real.element_map(x, xx, coords)
                comp = comp.add(tgt_incls[kk].compose(f))
        src_entry = cat.rep(x)
        for v in range(cat.quiver.n_vertices):
            dloc = src_entry.dims[v]
            blocks[v][:, col_offset[v] : col_offset[v] + dloc] = comp.blocks[v]
        for v in range(cat.quiver.n_vertices):
            col_offset[v] += src_entry.dims[v]
    return RepMap(src_rep, tgt_rep, tuple(blocks))


def _generator_position(ctx: GammaContext, p_module: FunMod, points: list[int], k: int) -> int:
    """Coordinate of the identity generator of the k-th summand inside
    the point-``points[k]`` component of a sum of representables."""
    x = points[k]
    before = sum(
        len(ctx.gamma.block_indices(x, xx)) for xx in points[:k]
    )
    return before  # the identity is basis element 0 of the diagonal block


def dense_lift_sub(ctx: StableContext, mbar: FunMod, trials: int = 64, seed: int = 0) -> T2Object:
    """A mono whose sub-side stable module is certified isomorphic to
    mbar: pull the inflation back along a projective cover of its
    injective envelope and present the resulting torsionless module."""
    e_rep = ctx.catalog.additive_generator()
    if mbar.is_zero():
        return T2Object(reps.identity_map(e_rep))
    x = ctx.inflate(mbar)
    env, u = hl.injective_envelope(x)
    cover = hl.projective_cover(env)
    # pullback y = {(a, b) : u(a) = cover(b)} inside x (+) cover.projective
    big = fm.direct_sum_modules([x, cover.projective], ctx.gamma)
    blocks = [
        np.hstack([u.blocks[i], (-cover.map.blocks[i]) % ctx.p])
        for i in range(ctx.gamma.n_points)
    ]
    to_env = FunMap(big, env, blocks, check=False)
    y, _ = fm.kernel_map(to_env)
    pres = hl.minimal_presentation(y)
    if pres.cover1 is None:
        f = reps.zero_map(reps.zero_rep(ctx.catalog.quiver),
                          _rep_of_summand_points(ctx, pres.cover0.summand_points)[0])
    else:
        f = rep_map_from_funmap(
            ctx, pres.differential, pres.cover1.summand_points, pres.cover0.summand_points
        )
    pair = mono_pair(f)
    verdict = dec.iso_test(sub_stable(ctx, pair), mbar, trials=trials, seed=seed)
    if verdict.status == "undetermined":
        raise UndeterminedError("could not certify the dense lift")
    if not verdict.isomorphic:
        raise RuntimeError("dense lift construction produced a wrong module")
    return pair


def dense_lift_quot(ctx: StableContext, mbar: FunMod, trials: int = 64, seed: int = 0) -> T2Object:
    """A mono whose quotient-side stable module is certified isomorphic
    to mbar: present the inflation by representables; the presenting
    representation map is onto, and its kernel inclusion is the lift."""
    e_rep = ctx.catalog.additive_generator()
    if mbar.is_zero():
        return T2Object(reps.identity_map(e_rep))
    x = ctx.inflate(mbar)
    pres = hl.minimal_presentation(x)
    if pres.cover1 is None:
        g = reps.zero_map(reps.zero_rep(ctx.catalog.quiver),
                          _rep_of_summand_points(ctx, pres.cover0.summand_points)[0])
    else:
        g = rep_map_from_funmap(
            ctx, pres.differential, pres.cover1.summand_points, pres.cover0.summand_points
        )
    if not reps.is_epi(g):
        raise RuntimeError("presenting map of an evaluation-killed module must be onto")
    _, incl = reps.kernel_rep(g)
    pair = mono_pair(incl)
    verdict = dec.iso_test(quot_stable(ctx, pair), mbar, trials=trials, seed=seed)
    if verdict.status == "undetermined":
        raise UndeterminedError("could not certify the dense lift")
    if not verdict.isomorphic:
        raise RuntimeError("dense lift construction produced a wrong module")
    return pair


# -- the syzygy comparison -----------------------------------------------------


def syzygy_comparison(ctx: StableContext, x: T2Object, trials: int = 64, seed: int = 0) -> bool:
    """Both checks of the sub/quot comparison: the connecting short
    exact sequence with projective middle term, and the stable
    isomorphism between the sub-side module and the syzygy of the
    quot-side module."""
    if not reps.is_mono(x.f):
        raise NotMonoError("comparison is about the submodule category")
    p = ctx.p
    cok, gproj = reps.cokernel_rep(x.f)
    phi_f = ctx.proj_map(x.f)
    a_f, proj_f = fm.cokernel_map(phi_f)
    mid = ctx.proj_module(cok)
    phi_g = ctx.proj_map(gproj)
    # alpha eta (f) -> (E, N): descend (E, g) along the cokernel projection
    blocks = []
    for i in range(ctx.gamma.n_points):
        sect = la.solve(proj_f.blocks[i], la.eye(proj_f.blocks[i].shape[0]), p)
        blocks.append(la.matmul(phi_g.blocks[i], sect, p))
    abar = FunMap(a_f, mid, blocks, check=False)
    a_g, proj_g = fm.cokernel_map(phi_g)

    # exactness over the full algebra
    if not _exact_three(abar, proj_g):
        return False

    # reduce to the stable algebra and recheck, middle must be projective
    abar_red = ctx.reduce_map(abar)
    projg_red = ctx.reduce_map(proj_g)
    mid_red = ctx.reduce(mid)
    if not hl.is_projective(mid_red):
        return False
    if not _exact_three(abar_red, projg_red):
        return False

    # stable comparison: strip the sub-side module, take the syzygy of
    # the quot-side module, certify the isomorphism
    f_mod = ctx.reduce(a_f)
    g_mod = ctx.reduce(a_g)
    f_strip = dec.strip_projectives(f_mod, trials=trials, seed=seed)
    omega_g = dec.strip_projectives(hl.syzygy(g_mod), trials=trials, seed=seed)
    if f_strip.is_zero() and omega_g.is_zero():
        return True
    verdict = dec.iso_test(f_strip, omega_g, trials=trials, seed=seed)
    if verdict.status == "undetermined":
        raise UndeterminedError("stable comparison could not be certified")
    return verdict.isomorphic


def _exact_three(incl: FunMap, proj: FunMap) -> bool:
    """0 -> A -> B -> C -> 0 exactness for a given pair of maps."""
    p = incl.p
    if not incl.is_mono() or not proj.is_epi():
        return False
    if not proj.compose(incl).is_zero():
        return False
    for i in range(len(incl.blocks)):
        img = la.Subspace.from_rows(la.image(incl.blocks[i], p), incl.blocks[i].shape[0], p)
        ker = la.Subspace.from_rows(la.kernel(proj.blocks[i], p), proj.blocks[i].shape[1], p)
        if img != ker:
            return False
    return True


def fullness_check(ctx: StableContext, which: str, x: T2Object, y: T2Object) -> bool:
    """Image dimension of the hom space under the functor equals the hom
    dimension between the images."""
    basis = hom_t2(x, y)
    if which == "sub":
        fx, fy = sub_stable(ctx, x), sub_stable(ctx, y)
        images = [sub_stable_map(ctx, h) for h in basis]
    elif which == "quot":
        fx, fy = quot_stable(ctx, x), quot_stable(ctx, y)
        images = [quot_stable_map(ctx, h) for h in basis]
    else:
        raise ValueError(which)
    target_dim = len(fm.hom(fx, fy))
    if not images:
        return target_dim == 0
    flat = np.vstack([im.flatten() for im in images])
    if flat.shape[1] == 0:
        return target_dim == 0
    return la.rank(flat, ctx.p) == target_dim
