"""Catalogs: a bound quiver algebra plus its complete list of
indecomposable representations.

The catalog is the ground truth every later construction consumes: the
additive generator is the direct sum of all entries, multiplicities of
arbitrary representations are recovered from the Hom-Gram matrix, and
projectivity/injectivity flags are certified against the regular
representation and its dual built from the path-algebra basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ausrep import linalg as la
from ausrep import reps
from ausrep.quiver import BoundQuiver, PathAlgebra, make_quiver
from ausrep.reps import Rep, RepMap


class InvalidCatalog(ValueError):
    pass


@dataclass(frozen=True)
class Entry:
    name: str
    rep: Rep
    projective: bool
    injective: bool


class Catalog:
    def __init__(self, quiver: BoundQuiver, entries: list[Entry], claimed_complete: bool):
        self.quiver = quiver
        self.entries = list(entries)
        self.claimed_complete = claimed_complete
        self._hom: dict[tuple[int, int], list[RepMap]] = {}
        self._pa: PathAlgebra | None = None
        self._pa_op: PathAlgebra | None = None
        self._proj_of_vertex: list[tuple[int, RepMap]] | None = None

    # -- basics --------------------------------------------------------

    @property
    def p(self) -> int:
        return self.quiver.p

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def index_of(self, name: str) -> int:
        for i, e in enumerate(self.entries):
            if e.name == name:
                return i
        raise KeyError(name)

    def rep(self, i: int) -> Rep:
        return self.entries[i].rep

    def projective_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.entries) if e.projective]

    def additive_generator(self) -> Rep:
        """The direct sum of every entry, in catalog order."""
        return reps.direct_sum([e.rep for e in self.entries], self.quiver)

    def generator_inclusions(self) -> list[RepMap]:
        return reps.summand_inclusions([e.rep for e in self.entries])

    # -- hom caches ------------------------------------------------------

    def hom(self, i: int, j: int) -> list[RepMap]:
        key = (i, j)
        if key not in self._hom:
            self._hom[key] = reps.hom_space(self.entries[i].rep, self.entries[j].rep)
        return self._hom[key]

    def gram(self) -> np.ndarray:
        n = len(self.entries)
        g = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                g[i, j] = len(self.hom(i, j))
        return g

    def multiplicities(self, m: Rep) -> np.ndarray:
        """Krull-Schmidt multiplicity vector of ``m`` via the Gram system.

        Solves dim Hom(X_i, m) = sum_j n_j dim Hom(X_i, X_j) over the
        rationals; a non-integral or negative solution means the catalog
        is not valid (or ``m`` is not a module over the same algebra).
        """
        if not self.claimed_complete:
            raise InvalidCatalog("multiplicities need a claimed-complete catalog")
        h = [len(reps.hom_space(e.rep, m)) for e in self.entries]
        sol = _solve_rational(self.gram(), h)
        if sol is None:
            raise InvalidCatalog("singular Hom-Gram matrix")
        out = np.zeros(len(self.entries), dtype=np.int64)
        for i, x in enumerate(sol):
            if x.denominator != 1 or x < 0:
                raise InvalidCatalog(
                    f"non-integral or negative multiplicity {x} at entry {self.entries[i].name!r}"
                )
            out[i] = int(x)
        return out

    # -- path-algebra data ----------------------------------------------

    @property
    def path_algebra(self) -> PathAlgebra:
        if self._pa is None:
            self._pa = PathAlgebra(self.quiver)
        return self._pa

    @property
    def opposite_path_algebra(self) -> PathAlgebra:
        if self._pa_op is None:
            self._pa_op = PathAlgebra(self.quiver.opposite())
        return self._pa_op

    def vertex_projective(self, v: int) -> Rep:
        return reps.projective_rep(self.path_algebra, v)

    def vertex_injective(self, v: int) -> Rep:
        return reps.injective_rep(self.opposite_path_algebra, self.quiver, v)

    def regular_rep(self) -> Rep:
        return reps.direct_sum(
            [self.vertex_projective(v) for v in range(self.quiver.n_vertices)],
            self.quiver,
        )

    def dual_regular_rep(self) -> Rep:
        """The dual of the right regular module: direct sum of the
        indecomposable injectives."""
        return reps.direct_sum(
            [self.vertex_injective(v) for v in range(self.quiver.n_vertices)],
            self.quiver,
        )

    def projective_entry_of_vertex(self, v: int) -> tuple[int, RepMap]:
        """Catalog entry isomorphic to the vertex projective, with a
        certified isomorphism from the path-basis model onto it."""
        if self._proj_of_vertex is None:
            self._proj_of_vertex = [None] * self.quiver.n_vertices
        if self._proj_of_vertex[v] is None:
            pv = self.vertex_projective(v)
            mult = self.multiplicities(pv)
            if mult.sum() != 1:
                raise InvalidCatalog("vertex projective is not basic-indecomposable")
            idx = int(np.nonzero(mult)[0][0])
            w = reps.certify_iso(pv, self.entries[idx].rep, trials=256, seed=0)
            if w is None:
                raise InvalidCatalog(
                    f"could not certify the isomorphism onto entry {self.entries[idx].name!r}"
                )
            self._proj_of_vertex[v] = (idx, w)
        return self._proj_of_vertex[v]

    def certified_projective_set(self) -> set[int]:
        mult = self.multiplicities(self.regular_rep())
        if (mult > 1).any():
            raise InvalidCatalog("algebra is not basic")
        return {int(i) for i in np.nonzero(mult)[0]}

    def certified_injective_set(self) -> set[int]:
        mult = self.multiplicities(self.dual_regular_rep())
        if (mult > 1).any():
            raise InvalidCatalog("algebra is not basic")
        return {int(i) for i in np.nonzero(mult)[0]}

    def certify_flags(self) -> None:
        proj = self.certified_projective_set()
        inj = self.certified_injective_set()
        for i, e in enumerate(self.entries):
            if e.projective != (i in proj) or e.injective != (i in inj):
                raise InvalidCatalog(
                    f"stored flags of entry {e.name!r} disagree with the certified ones"
                )

    def is_self_injective(self) -> bool:
        """True when the projective entries coincide with the injective
        ones; stored flags are certified against the regular module and
        its dual first."""
        self.certify_flags()
        return self.certified_projective_set() == self.certified_injective_set()

    def nakayama_on_projective(self, i: int) -> int:
        """Index of the entry isomorphic to the dual of Hom(P, regular);
        sends each indecomposable projective to an indecomposable injective."""
        if not self.entries[i].projective:
            raise InvalidCatalog(f"entry {self.entries[i].name!r} is not flagged projective")
        nu = self._nakayama_image(self.entries[i].rep)
        mult = self.multiplicities(nu)
        if mult.sum() != 1:
            raise InvalidCatalog("Nakayama image of an indecomposable is not indecomposable")
        return int(np.nonzero(mult)[0][0])

    def _nakayama_image(self, m: Rep) -> Rep:
        """D Hom(m, regular) as a representation: component at u is the
        dual of Hom(m, P(u)), arrows act by the transposed right
        multiplications on the regular module."""
        qv = self.quiver
        p = self.p
        homs = [reps.hom_space(m, self.vertex_projective(u)) for u in range(qv.n_vertices)]
        dims = tuple(len(h) for h in homs)
        mats = []
        for a in qv.arrows:
            rho = self.right_multiplication(qv.arrow_index(a.name))
            t = la.zeros(len(homs[a.src]), len(homs[a.tgt]))
            for k, g in enumerate(homs[a.tgt]):
                t[:, k] = reps.hom_coords(homs[a.src], rho.compose(g))
            mats.append(t.T.copy())
        return Rep(qv, dims, tuple(mats))

    def right_multiplication(self, arrow_idx: int) -> RepMap:
        """Right multiplication by an arrow a: u -> w as a morphism of
        regular summands P(w) -> P(u)."""
        qv = self.quiver
        pa = self.path_algebra
        a = qv.arrows[arrow_idx]
        src_rep = self.vertex_projective(a.tgt)
        tgt_rep = self.vertex_projective(a.src)
        a_cls = pa.class_of_path((arrow_idx,))
        blocks = []
        for u in range(qv.n_vertices):
            b = la.zeros(tgt_rep.dims[u], src_rep.dims[u])
            for k in range(src_rep.dims[u]):
                e = np.zeros(src_rep.dims[u], dtype=np.int64)
                e[k] = 1
                b[:, k] = pa.multiply(a.src, a.tgt, a_cls, u, e)
            blocks.append(b)
        return RepMap(src_rep, tgt_rep, tuple(blocks))

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        names = self.names()
        if len(set(names)) != len(names):
            raise InvalidCatalog("duplicate entry names")
        n = len(self.entries)
        for i in range(n):
            for j in range(i + 1, n):
                if self._entries_isomorphic(i, j):
                    raise InvalidCatalog(
                        f"entries {names[i]!r} and {names[j]!r} are isomorphic"
                    )
        if self.claimed_complete:
            if _solve_rational(self.gram(), [0] * n) is None:
                raise InvalidCatalog("Hom-Gram matrix is singular over the rationals")

    def _entries_isomorphic(self, i: int, j: int) -> bool:
        """Deterministic: indecomposables with split endomorphism rings are
        isomorphic iff some canonical basis hom is invertible."""
        if self.entries[i].rep.dims != self.entries[j].rep.dims:
            return False
        p = self.p
        return any(
            all(la.is_invertible(b, p) for b in f.blocks) for f in self.hom(i, j)
        )


def _solve_rational(g: np.ndarray, h) -> list[Fraction] | None:
    """Exact solve of g x = h over Q; None when g is singular."""
    n = g.shape[0]
    a = [[Fraction(int(g[i, j])) for j in range(n)] + [Fraction(int(h[i]))] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


# -- the self-injective Nakayama family ---------------------------------


def nakayama_catalog(c: int, n_rad: int, p: int = la.DEFAULT_PRIME) -> Catalog:
    """Catalog of the cyclic-quiver algebra with c vertices modulo paths
    of length ``n_rad`` + 1: the c*(n_rad+1) uniserial modules, socle
    vertex j and Loewy length i, written [i]_j.
    """
    if c < 1 or n_rad < 1:
        raise InvalidCatalog("need cycle length >= 1 and radical bound >= 1")
    la.check_dim(c * (n_rad + 1))
    vertices = [str(j) for j in range(c)]
    arrows = [(f"a{j}", str(j), str((j + 1) % c)) for j in range(c)]
    relations = [
        [(1, [f"a{(j + t) % c}" for t in range(n_rad + 1)])] for j in range(c)
    ]
    qv = make_quiver(vertices, arrows, relations, p)
    entries = []
    for i in range(1, n_rad + 2):
        for j in range(c):
            entries.append(
                Entry(
                    f"[{i}]_{j}",
                    _uniserial(qv, c, i, j),
                    projective=(i == n_rad + 1),
                    injective=(i == n_rad + 1),
                )
            )
    return Catalog(qv, entries, claimed_complete=True)


def _uniserial(qv: BoundQuiver, c: int, length: int, socle: int) -> Rep:
    """Uniserial module with radical layers l = 0 (top) .. length-1
    (socle); layer l sits at vertex top+l, arrows push layer l to l+1."""
    top = (socle - length + 1) % c
    layers = [
        [l for l in range(length) if (top + l) % c == u] for u in range(c)
    ]
    dims = tuple(len(ls) for ls in layers)
    mats = []
    for a in qv.arrows:
        u = a.src
        m = la.zeros(dims[a.tgt], dims[u])
        for col, l in enumerate(layers[u]):
            if l + 1 < length:
                m[layers[a.tgt].index(l + 1), col] = 1
        mats.append(m)
    return Rep(qv, dims, tuple(mats))


# -- JSON wire format ----------------------------------------------------


def _mat_to_lists(m: np.ndarray) -> list:
    return [list(map(int, row)) for row in m]


def _mat_from_lists(data, rows: int, cols: int, p: int) -> np.ndarray:
    m = la.zeros(rows, cols)
    if rows == 0:
        if data not in ([], None):
            raise InvalidCatalog("matrix with zero rows must be encoded as []")
        return m
    if len(data) != rows or any(len(r) != cols for r in data):
        raise InvalidCatalog(f"matrix has wrong shape, expected {rows}x{cols}")
    if rows and cols:
        m[:, :] = np.mod(np.asarray(data, dtype=np.int64), p)
    return m


def catalog_to_json(cat: Catalog) -> dict:
    qv = cat.quiver
    rels = []
    for rel in qv.relations:
        rels.append(
            [
                {"coef": int(coef), "path": [qv.arrows[i].name for i in path]}
                for coef, path in rel
            ]
        )
    return {
        "prime": cat.p,
        "quiver": {
            "vertices": list(qv.vertices),
            "arrows": [
                {"id": a.name, "src": qv.vertices[a.src], "tgt": qv.vertices[a.tgt]}
                for a in qv.arrows
            ],
            "relations": rels,
        },
        "indecomposables": [
            {
                "name": e.name,
                "dims": {qv.vertices[v]: int(d) for v, d in enumerate(e.rep.dims)},
                "mats": {
                    a.name: _mat_to_lists(e.rep.mats[i])
                    for i, a in enumerate(qv.arrows)
                },
                "projective": e.projective,
                "injective": e.injective,
            }
            for e in cat.entries
        ],
        "claimed_complete": cat.claimed_complete,
    }


def catalog_from_json(data: dict) -> Catalog:
    try:
        p = int(data["prime"])
        qdata = data["quiver"]
        vertices = [str(v) for v in qdata["vertices"]]
        arrows = [(a["id"], a["src"], a["tgt"]) for a in qdata["arrows"]]
        relations = [
            [(term["coef"], term["path"]) for term in rel]
            for rel in qdata.get("relations", [])
        ]
        qv = make_quiver(vertices, arrows, relations, p)
        entries = []
        for ent in data["indecomposables"]:
            dims = tuple(int(ent["dims"].get(v, 0)) for v in vertices)
            mats = []
            for i, a in enumerate(qv.arrows):
                raw = ent["mats"].get(a.name, [])
                mats.append(_mat_from_lists(raw, dims[a.tgt], dims[a.src], p))
            rep = Rep(qv, dims, tuple(mats))
            entries.append(
                Entry(str(ent["name"]), rep, bool(ent["projective"]), bool(ent["injective"]))
            )
        claimed = bool(data["claimed_complete"])
    except (KeyError, TypeError, IndexError) as exc:
        raise InvalidCatalog(f"catalog JSON violates the schema: {exc}") from exc
    cat = Catalog(qv, entries, claimed)
    cat.validate()
    return cat


def load_catalog(path: str) -> Catalog:
    with open(path, "r", encoding="utf-8") as fh:
        return catalog_from_json(json.load(fh))


def save_catalog(cat: Catalog, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(catalog_to_json(cat), fh, indent=1, sort_keys=True)


def builtin_catalog(name: str) -> Catalog:
    from importlib import resources

    ref = resources.files("ausrep.data").joinpath(f"{name}.json")
    with ref.open("r", encoding="utf-8") as fh:
        return catalog_from_json(json.load(fh))
