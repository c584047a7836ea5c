"""Minimal covers, syzygies, Ext^1 and the injective-side duals.

Projective covers are assembled from representable projectives along a
basis of the top; minimality (cover kernel inside the radical) is
asserted, not assumed.  All injective-side computations dualize through
the opposite algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ausrep import funmod as fm
from ausrep import linalg as la
from ausrep.algebra import BasedAlgebra
from ausrep.funmod import FunMap, FunMod


class HomologyError(ValueError):
    pass


@dataclass
class Cover:
    module: FunMod          # the covered module
    projective: FunMod      # direct sum of representable projectives
    summand_points: list[int]
    map: FunMap             # projective -> module, onto, kernel in radical


def top_multiplicities(m: FunMod) -> list[int]:
    top, _ = fm.top_quotient(m)
    return list(top.spaces)


def projective_cover(m: FunMod) -> Cover:
    a = m.algebra
    p = a.p
    _, proj_to_top = fm.top_quotient(m)
    points: list[int] = []
    columns: dict[int, list[np.ndarray]] = {x: [] for x in range(a.n_points)}
    for x in range(a.n_points):
        n_x = proj_to_top.target.spaces[x]
        if not n_x:
            continue
        # lift a basis of the top through the projection
        lift = la.solve(proj_to_top.blocks[x], la.eye(n_x), p)
        if lift is None:
            raise HomologyError("top projection is not onto")
        for k in range(n_x):
            points.append(x)
            columns[x].append(lift[:, k])
    summands = [fm.proj_of_point(a, x) for x in points]
    big = fm.direct_sum_modules(summands, a)
    blocks = []
    col_iters = {x: iter(columns[x]) for x in columns}
    gens = []
    for x in points:
        gens.append((x, next(col_iters[x])))
    for w in range(a.n_points):
        cols = []
        for x, v in gens:
            for h in a.block_indices(w, x):
                cols.append(la.matmul(m.actions[h], v.reshape(-1, 1), p)[:, 0])
        blocks.append(np.stack(cols, axis=1) if cols else la.zeros(m.spaces[w], 0))
    cover_map = FunMap(big, m, blocks, check=False)
    if not cover_map.is_epi():
        raise HomologyError("assembled cover map is not onto")
    _assert_minimal(cover_map)
    return Cover(m, big, points, cover_map)


def _assert_minimal(cover_map: FunMap) -> None:
    """Kernel of the cover must lie inside the radical of the cover."""
    a = cover_map.source.algebra
    rad_incl = fm.radical_submodule(cover_map.source)[1]
    for x in range(a.n_points):
        ker = la.kernel(cover_map.blocks[x], a.p)
        radspace = la.Subspace.from_rows(rad_incl.blocks[x].T, cover_map.source.spaces[x], a.p)
        for row in ker:
            if not radspace.contains(row):
                raise HomologyError("cover is not minimal")


def syzygy(m: FunMod) -> FunMod:
    if m.is_zero():
        return m
    cover = projective_cover(m)
    ker, _ = fm.kernel_map(cover.map)
    return ker


@dataclass
class Presentation:
    """Minimal start of a projective resolution: p1 -> p0 -> module -> 0
    with the syzygy and its inclusion into p0 kept explicit."""

    module: FunMod
    cover0: Cover
    omega: FunMod
    omega_incl: FunMap  # omega -> p0
    cover1: Cover | None  # cover of omega; None when omega = 0

    @property
    def differential(self) -> FunMap | None:
        if self.cover1 is None:
            return None
        return self.omega_incl.compose(self.cover1.map)


def minimal_presentation(m: FunMod) -> Presentation:
    cover0 = projective_cover(m)
    omega, incl = fm.kernel_map(cover0.map)
    cover1 = projective_cover(omega) if not omega.is_zero() else None
    return Presentation(m, cover0, omega, incl, cover1)


def pd_leq(m: FunMod, n: int) -> bool:
    """Projective dimension at most n, via n+1 minimal syzygies."""
    cur = m
    for _ in range(n + 1):
        if cur.is_zero():
            return True
        cur = syzygy(cur)
    return cur.is_zero()


def is_projective(m: FunMod) -> bool:
    return m.is_zero() or syzygy(m).is_zero()


def injective_envelope(m: FunMod) -> tuple[FunMod, FunMap]:
    """Envelope m -> I computed as the dual of a projective cover over
    the opposite algebra."""
    dm = fm.dual_module(m)
    cover = projective_cover(dm)
    env = fm.dual_module(cover.projective)
    env_map = FunMap(m, env, [b.T.copy() for b in cover.map.blocks], check=False)
    return env, env_map


def cosyzygy(m: FunMod) -> FunMod:
    if m.is_zero():
        return m
    return fm.dual_module(syzygy(fm.dual_module(m)))


def id_leq(m: FunMod, n: int) -> bool:
    return pd_leq(fm.dual_module(m), n)


def is_injective(m: FunMod) -> bool:
    return is_projective(fm.dual_module(m))


def is_self_injective_algebra(a: BasedAlgebra) -> bool:
    return all(is_injective(fm.proj_of_point(a, x)) for x in range(a.n_points))


def is_torsionless(m: FunMod) -> bool:
    """Submodule of a projective; equivalent to pd <= 1 over an algebra
    of dominant dimension >= 2 with global dimension <= 2."""
    return pd_leq(m, 1)


def is_divisible(m: FunMod) -> bool:
    return id_leq(m, 1)


def embeds_in_projective(m: FunMod) -> bool:
    """Independent oracle for torsionless-ness: the canonical evaluation
    map into representable projectives is injective."""
    a = m.algebra
    p = a.p
    blocks_per_point = [[] for _ in range(a.n_points)]
    for x in range(a.n_points):
        for f in fm.hom(m, fm.proj_of_point(a, x)):
            for w in range(a.n_points):
                blocks_per_point[w].append(f.blocks[w])
    for w in range(a.n_points):
        if m.spaces[w] == 0:
            continue
        if not blocks_per_point[w]:
            return False
        stacked = np.vstack(blocks_per_point[w])
        if la.rank(stacked, p) < m.spaces[w]:
            return False
    return True


def quotient_of_injective(m: FunMod) -> bool:
    """Independent oracle for divisibility, dual to embeds_in_projective."""
    return embeds_in_projective(fm.dual_module(m))


# -- Ext^1 ----------------------------------------------------------------


@dataclass
class Ext1:
    dim: int
    omega: FunMod
    omega_incl: FunMap
    cocycles: list[FunMap]  # maps omega -> N representing a basis of ext^1


def ext1(m: FunMod, n: FunMod) -> Ext1:
    """Ext^1(m, n) as the cokernel of Hom(P0, n) -> Hom(Omega m, n).

    The restriction map is computed in the canonical hom bases; the
    returned cocycles represent a basis of the cokernel.
    """
    pres = minimal_presentation(m)
    omega, incl = pres.omega, pres.omega_incl
    if omega.is_zero():
        return Ext1(0, omega, incl, [])
    hom_omega = fm.hom(omega, n)
    if not hom_omega:
        return Ext1(0, omega, incl, [])
    hom_p0 = fm.hom(pres.cover0.projective, n)
    rows = []
    for f in hom_p0:
        restricted = f.compose(incl)
        rows.append(fm.hom_coords(hom_omega, restricted))
    img = la.Subspace.from_rows(
        np.vstack(rows) if rows else la.zeros(0, len(hom_omega)), len(hom_omega), m.p
    )
    quot = la.quotient(len(hom_omega), img, m.p)
    cocycles = []
    for k in range(quot.dim):
        coeffs = quot.section[:, k]
        cocycles.append(fm.map_from_coeffs(hom_omega, coeffs, omega, n))
    return Ext1(quot.dim, omega, incl, cocycles)


def extension_from_cocycle(m: FunMod, n: FunMod, pres: Presentation, cocycle: FunMap) -> FunMod:
    """The middle term of 0 -> n -> E -> m -> 0 classified by a cocycle
    Omega(m) -> n: pushout of the cover sequence of m."""
    a = m.algebra
    p = a.p
    big = fm.direct_sum_modules([n, pres.cover0.projective], a)
    rows = []
    omega = pres.omega
    for x in range(a.n_points):
        block = la.zeros(omega.spaces[x], big.spaces[x])
        block[:, : n.spaces[x]] = cocycle.blocks[x].T
        block[:, n.spaces[x] :] = (-pres.omega_incl.blocks[x].T) % p
        rows.append(block)
    ext, _ = fm.quotient_module(big, rows)
    return ext
