"""Seeded random generators for representations, morphisms and modules.

Every sampler takes an explicit numpy Generator so suites are
reproducible; nothing here touches global state.
"""

from __future__ import annotations

import numpy as np

from ausrep import funmod as fm
from ausrep import linalg as la
from ausrep import reps
from ausrep.algebra import BasedAlgebra
from ausrep.catalog import Catalog
from ausrep.functors import T2Object, T2Map, hom_t2, mono_pair
from ausrep.funmod import FunMod
from ausrep.reps import Rep, RepMap


def random_entry_sum(cat: Catalog, rng: np.random.Generator, max_summands: int = 3) -> Rep:
    n = int(rng.integers(1, max_summands + 1))
    picks = [int(rng.integers(0, len(cat))) for _ in range(n)]
    return reps.direct_sum([cat.rep(i) for i in picks], cat.quiver)


def random_rep_map(cat: Catalog, rng: np.random.Generator, max_summands: int = 3) -> RepMap:
    x = random_entry_sum(cat, rng, max_summands)
    y = random_entry_sum(cat, rng, max_summands)
    basis = reps.hom_space(x, y)
    if not basis:
        return reps.zero_map(x, y)
    coeffs = rng.integers(0, cat.p, size=len(basis))
    return reps.map_from_coeffs(basis, coeffs, x, y)


def random_t2_object(cat: Catalog, rng: np.random.Generator, max_summands: int = 3) -> T2Object:
    return T2Object(random_rep_map(cat, rng, max_summands))


def random_mono(cat: Catalog, rng: np.random.Generator, max_summands: int = 3) -> T2Object:
    """Kernel inclusion of a random map between sums of entries."""
    f = random_rep_map(cat, rng, max_summands)
    _, incl = reps.kernel_rep(f)
    return mono_pair(incl)


def random_t2_morphism(x: T2Object, y: T2Object, rng: np.random.Generator) -> T2Map:
    basis = hom_t2(x, y)
    if not basis:
        return T2Map(
            x, y, reps.zero_map(x.sub, y.sub), reps.zero_map(x.quot, y.quot)
        )
    coeffs = rng.integers(0, x.f.p, size=len(basis))
    g1 = reps.map_from_coeffs([b.g1 for b in basis], coeffs, x.sub, y.sub)
    g0 = reps.map_from_coeffs([b.g0 for b in basis], coeffs, x.quot, y.quot)
    return T2Map(x, y, g1, g0)


def random_module(a: BasedAlgebra, rng: np.random.Generator, max_mult: int = 2, n_gens: int = 2) -> FunMod:
    """Random quotient of a random sum of representable projectives;
    every module arises this way."""
    big = _random_projective(a, rng, max_mult)
    vectors = _random_vectors(big, rng, n_gens)
    _, incl = fm.generated_submodule(big, vectors)
    quot, _ = fm.quotient_module(big, [b.T for b in incl.blocks])
    return quot


def random_submodule_of_projective(a: BasedAlgebra, rng: np.random.Generator, max_mult: int = 2, n_gens: int = 2) -> FunMod:
    big = _random_projective(a, rng, max_mult)
    vectors = _random_vectors(big, rng, n_gens)
    sub, _ = fm.generated_submodule(big, vectors)
    return sub


def random_quotient_of_injective(a: BasedAlgebra, rng: np.random.Generator, max_mult: int = 2, n_gens: int = 2) -> FunMod:
    parts = []
    mults = rng.integers(0, max_mult + 1, size=a.n_points)
    if not mults.any():
        mults[int(rng.integers(0, a.n_points))] = 1
    for x, m in enumerate(mults):
        parts.extend(fm.inj_of_point(a, x) for _ in range(int(m)))
    big = fm.direct_sum_modules(parts, a)
    vectors = _random_vectors(big, rng, n_gens)
    _, incl = fm.generated_submodule(big, vectors)
    quot, _ = fm.quotient_module(big, [b.T for b in incl.blocks])
    return quot


def _random_projective(a: BasedAlgebra, rng: np.random.Generator, max_mult: int) -> FunMod:
    mults = rng.integers(0, max_mult + 1, size=a.n_points)
    if not mults.any():
        mults[int(rng.integers(0, a.n_points))] = 1
    parts = []
    for x, m in enumerate(mults):
        parts.extend(fm.proj_of_point(a, x) for _ in range(int(m)))
    return fm.direct_sum_modules(parts, a)


def _random_vectors(big: FunMod, rng: np.random.Generator, n_gens: int) -> dict[int, np.ndarray]:
    vectors: dict[int, list[np.ndarray]] = {}
    n_points = big.algebra.n_points
    for _ in range(n_gens):
        x = int(rng.integers(0, n_points))
        if big.spaces[x]:
            vectors.setdefault(x, []).append(rng.integers(0, big.p, size=big.spaces[x]))
    return {x: np.vstack(v) for x, v in vectors.items()}
