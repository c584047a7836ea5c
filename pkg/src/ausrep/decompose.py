"""Isomorphism testing and Krull-Schmidt decomposition.

Isomorphism testing is randomized with an explicit Undetermined outcome,
never silently coerced to "not isomorphic".  Decomposition splits along
generalized eigenspaces of sampled endomorphisms (Fitting's lemma); a
leaf is declared indecomposable when every endomorphism basis element
and a batch of seeded random elements have a single eigenvalue.  Splits
are verified exactly; only leaf certificates are probabilistic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ausrep import funmod as fm
from ausrep import linalg as la
from ausrep.funmod import FunMap, FunMod


@dataclass
class IsoVerdict:
    status: str  # "isomorphic" | "not_isomorphic" | "undetermined"
    witness: FunMap | None = None
    reason: str | None = None

    @property
    def isomorphic(self) -> bool:
        return self.status == "isomorphic"


def iso_test(m: FunMod, n: FunMod, trials: int = 64, seed: int = 0) -> IsoVerdict:
    if m.algebra is not n.algebra:
        return IsoVerdict("not_isomorphic", reason="different algebras")
    if m.spaces != n.spaces:
        return IsoVerdict("not_isomorphic", reason="dimension vectors differ")
    if m.total_dim == 0:
        return IsoVerdict("isomorphic", witness=fm.zero_map(m, n))
    basis = fm.hom(m, n)
    if len(basis) != len(fm.hom(m, m)):
        return IsoVerdict("not_isomorphic", reason="hom dimensions differ")
    for f in basis:
        if f.is_iso():
            return IsoVerdict("isomorphic", witness=f)
    rng = np.random.default_rng(seed)
    p = m.p
    for _ in range(trials):
        f = fm.map_from_coeffs(basis, rng.integers(0, p, size=len(basis)), m, n)
        if f.is_iso():
            return IsoVerdict("isomorphic", witness=f)
    return IsoVerdict("undetermined", reason=f"no invertible found in {trials} trials")


# -- minimal polynomial roots over F_p -------------------------------------


def _poly_trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else c[:1]


def _poly_divmod(a: np.ndarray, b: np.ndarray, p: int):
    a = _poly_trim(a % p).astype(np.int64)
    b = _poly_trim(b % p).astype(np.int64)
    if len(b) == 1 and b[0] == 0:
        raise ZeroDivisionError
    q = np.zeros(max(len(a) - len(b) + 1, 1), dtype=np.int64)
    r = a.copy()
    inv_lead = la.inv_scalar(int(b[-1]), p)
    while len(r) >= len(b) and r.any():
        r = _poly_trim(r)
        if len(r) < len(b):
            break
        shift = len(r) - len(b)
        coef = int(r[-1]) * inv_lead % p
        q[shift] = coef
        r[shift : shift + len(b)] = (r[shift : shift + len(b)] - coef * b) % p
        r = r[:-1] if not r[-1] else r
    return _poly_trim(q), _poly_trim(r % p)


def _poly_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a, b = _poly_trim(a % p), _poly_trim(b % p)
    while b.any():
        _, r = _poly_divmod(a, b, p)
        a, b = b, r
    if a.any():
        a = a * la.inv_scalar(int(a[-1]), p) % p
    return a


def _poly_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return _poly_trim(np.convolve(a, b) % p)


def _poly_lcm(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    g = _poly_gcd(a, b, p)
    if len(g) == 1 and not g.any():
        return g
    q, _ = _poly_divmod(_poly_mul(a, b, p), g, p)
    return q


def _annihilator(mat: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """Monic polynomial of least degree with poly(mat) v = 0."""
    d = mat.shape[0]
    krylov = [v % p]
    for _ in range(d):
        krylov.append(la.matmul(mat, krylov[-1].reshape(-1, 1), p)[:, 0])
        stacked = np.stack(krylov, axis=0)
        null = la.kernel(stacked.T, p)
        if null.shape[0]:
            row = null[0]
            lead = len(row) - 1 - int(np.argmax(row[::-1] != 0))
            coeffs = row[: lead + 1] * la.inv_scalar(int(row[lead]), p) % p
            return _poly_trim(coeffs)
    raise RuntimeError("annihilator search exceeded the space dimension")


def minimal_polynomial(mat: np.ndarray, p: int, rng: np.random.Generator) -> np.ndarray:
    """Minimal polynomial, whp exact (lcm of random-vector annihilators
    until the degree stabilizes)."""
    d = mat.shape[0]
    if d == 0:
        return np.array([1], dtype=np.int64)
    poly = np.array([1], dtype=np.int64)
    stable = 0
    for _ in range(d + 3):
        v = rng.integers(0, p, size=d)
        ann = _annihilator(mat, v, p)
        new = _poly_lcm(poly, ann, p)
        if len(new) == len(poly):
            stable += 1
            if stable >= 2:
                break
        else:
            stable = 0
        poly = new
        if len(poly) == d + 1:
            break
    return poly


def eigenvalues(mat: np.ndarray, p: int, rng: np.random.Generator) -> list[int]:
    poly = minimal_polynomial(mat, p, rng)
    roots = []
    for mu in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * mu + int(c)) % p
        if acc == 0:
            roots.append(mu)
    return roots


def _total_matrix(f: FunMap) -> np.ndarray:
    return la.block_diag([b for b in f.blocks])


def _split_along(m: FunMod, f: FunMap, mu: int) -> tuple | None:
    """Fitting split along the generalized mu-eigenspace of f, verified
    by exact dimension counts; None if the split is trivial."""
    p = m.p
    power_blocks = []
    for b in f.blocks:
        d = b.shape[0]
        g = (b - mu * la.eye(d)) % p
        steps = 1
        while steps < max(m.total_dim, 1):
            g = la.matmul(g, g, p)
            steps *= 2
        power_blocks.append(g)
    ker_bases = [la.kernel(b, p) for b in power_blocks]
    im_bases = [la.image(b, p) for b in power_blocks]
    kdim = sum(b.shape[0] for b in ker_bases)
    if kdim == 0 or kdim == m.total_dim:
        return None
    part1, incl1 = fm.sub_module(m, ker_bases)
    part2, incl2 = fm.sub_module(m, im_bases)
    if part1.total_dim + part2.total_dim != m.total_dim:
        return None
    return (part1, incl1), (part2, incl2)


def fitting_decompose(m: FunMod, trials: int = 64, seed: int = 0) -> list[FunMod]:
    """Indecomposable-candidate summands of m, deterministic per seed."""
    rng = np.random.default_rng(seed)
    out: list[FunMod] = []
    stack = [m]
    while stack:
        cur = stack.pop()
        if cur.is_zero():
            continue
        split = _find_split(cur, trials, rng)
        if split is None:
            out.append(cur)
        else:
            (a, _), (b, _) = split
            stack.append(a)
            stack.append(b)
    out.sort(key=lambda x: (x.total_dim, x.spaces))
    return out


def _find_split(m: FunMod, trials: int, rng: np.random.Generator):
    basis = fm.hom(m, m)
    candidates = list(basis)
    p = m.p
    for _ in range(trials):
        coeffs = rng.integers(0, p, size=len(basis))
        candidates.append(fm.map_from_coeffs(basis, coeffs, m, m))
    for f in candidates:
        mat = _total_matrix(f)
        roots = eigenvalues(mat, p, rng)
        if len(roots) <= 1:
            continue
        for mu in roots:
            split = _split_along(m, f, mu)
            if split is not None:
                return split
    return None


def strip_projectives(m: FunMod, trials: int = 64, seed: int = 0) -> FunMod:
    """Split off representable projective summands until none is found.

    A summand P(x) is split off an idempotent f (g f)^{-1} g whenever a
    sampled pair f: P(x) -> m, g: m -> P(x) has invertible composite.
    """
    rng = np.random.default_rng(seed)
    a = m.algebra
    cur = m
    progress = True
    while progress and not cur.is_zero():
        progress = False
        for x in range(a.n_points):
            if cur.spaces[x] == 0:
                continue
            proj = fm.proj_of_point(a, x)
            homs_back = fm.hom(cur, proj)
            if not homs_back:
                continue
            found = None
            for _ in range(trials):
                v = rng.integers(0, a.p, size=cur.spaces[x])
                f = fm.yoneda_map(a, x, cur, v)
                g = fm.map_from_coeffs(
                    homs_back, rng.integers(0, a.p, size=len(homs_back)), cur, proj
                )
                comp = g.compose(f)
                if comp.is_iso():
                    found = (f, g, comp)
                    break
            if found is None:
                continue
            f, g, comp = found
            idem = f.compose(comp.inverse()).compose(g)
            complement = [(la.eye(cur.spaces[w]) - idem.blocks[w]) % a.p for w in range(a.n_points)]
            ker_bases = [la.image(c, a.p) for c in complement]
            cur, _ = fm.sub_module(cur, ker_bases)
            progress = True
            break
    return cur
