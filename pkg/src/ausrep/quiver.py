"""Bound quivers and their path-algebra bases.

A bound quiver is a finite quiver with admissible relations: each
relation is a linear combination of parallel paths of a common length
>= 2.  Length-homogeneous relations keep the relation ideal graded, so
the algebra kQ/I can be computed degree by degree; the builder stops at
the first degree where nothing survives.

Paths are stored left-to-right, ``(a1, a2)`` meaning "first a1, then
a2"; on a representation that path acts by ``mat(a2) @ mat(a1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ausrep import linalg as la


class QuiverError(ValueError):
    pass


# A single relation: list of (coefficient, path) pairs, path = tuple of arrow ids.
Relation = list[tuple[int, tuple[str, ...]]]


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int  # vertex index
    tgt: int


@dataclass(frozen=True)
class BoundQuiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]  # paths by arrow index
    p: int

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        for rel in self.relations:
            self._check_relation(rel)

    def _check_relation(self, rel):
        if not rel:
            raise QuiverError("empty relation")
        sig = None
        for coef, path in rel:
            if len(path) < 2:
                raise QuiverError("relation paths must have length >= 2")
            for i in range(len(path) - 1):
                if self.arrows[path[i]].tgt != self.arrows[path[i + 1]].src:
                    raise QuiverError("relation contains a non-composable path")
            here = (self.arrows[path[0]].src, self.arrows[path[-1]].tgt, len(path))
            if sig is None:
                sig = here
            elif here != sig:
                raise QuiverError(
                    "relation terms must be parallel paths of one common length"
                )

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, name: str) -> int:
        return self.vertices.index(name)

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise QuiverError(f"unknown arrow {name!r}")

    def opposite(self) -> "BoundQuiver":
        arrows = tuple(Arrow(a.name, a.tgt, a.src) for a in self.arrows)
        rels = tuple(
            tuple((coef, tuple(reversed(path))) for coef, path in rel)
            for rel in self.relations
        )
        return BoundQuiver(self.vertices, arrows, rels, self.p)


def make_quiver(vertices, arrows, relations, p) -> BoundQuiver:
    """Build a BoundQuiver from name-based data.

    ``arrows`` is a list of (name, src_name, tgt_name); ``relations`` a
    list of relations, each a list of (coef, [arrow names]).
    """
    vtx = tuple(str(v) for v in vertices)
    idx = {v: i for i, v in enumerate(vtx)}
    arr = []
    for name, s, t in arrows:
        if str(s) not in idx or str(t) not in idx:
            raise QuiverError(f"arrow {name!r} references an unknown vertex")
        arr.append(Arrow(str(name), idx[str(s)], idx[str(t)]))
    arr = tuple(arr)
    aidx = {a.name: i for i, a in enumerate(arr)}
    rels = []
    for rel in relations:
        terms = []
        for coef, path in rel:
            try:
                terms.append((int(coef) % p, tuple(aidx[str(x)] for x in path)))
            except KeyError as exc:
                raise QuiverError(f"relation references unknown arrow {exc}") from exc
        rels.append(tuple(terms))
    return BoundQuiver(vtx, arr, tuple(rels), p)


MAX_PATH_DEGREE = 64


@dataclass
class PathClass:
    """A basis element of kQ/I: degree, endpoints and coefficients on the
    canonical coset representatives of that degree."""

    src: int
    tgt: int
    degree: int
    index: int  # position inside the (src, tgt, degree) block


class PathAlgebra:
    """Graded basis and multiplication for kQ/I.

    For every (src, tgt, degree) the surviving path classes are stored
    via a Quotient of the span of all degree-``degree`` paths src->tgt
    by the ideal component.  Products of basis classes are computed by
    concatenating representative paths and projecting.
    """

    def __init__(self, quiver: BoundQuiver):
        self.quiver = quiver
        self.p = quiver.p
        # paths[d][(u, v)] = list of paths (tuples of arrow indices)
        self._paths: list[dict[tuple[int, int], list[tuple[int, ...]]]] = []
        # quotient of the degree-d path span by the ideal component
        self._quot: list[dict[tuple[int, int], la.Quotient]] = []
        self._build()
        self._basis: list[PathClass] = []
        self.block: dict[tuple[int, int], list[int]] = {}
        for d in range(len(self._quot)):
            for (u, v), q in sorted(self._quot[d].items()):
                for k in range(q.dim):
                    self.block.setdefault((u, v), []).append(len(self._basis))
                    self._basis.append(PathClass(u, v, d, k))
        self.dim = len(self._basis)

    # -- construction -------------------------------------------------

    def _build(self):
        qv = self.quiver
        p = self.p
        paths0 = {(u, u): [()] for u in range(qv.n_vertices)}
        self._paths.append(paths0)
        self._quot.append(
            {key: la.quotient(1, la.Subspace.zero(1, p), p) for key in paths0}
        )
        by_rel_deg: dict[int, list] = {}
        for rel in qv.relations:
            d = len(rel[0][1])
            by_rel_deg.setdefault(d, []).append(rel)
        degree = 0
        while True:
            degree += 1
            if degree > MAX_PATH_DEGREE:
                raise QuiverError(
                    "path algebra is not visibly finite-dimensional "
                    f"(no vanishing degree below {MAX_PATH_DEGREE}); "
                    "check that the relations are admissible"
                )
            paths: dict[tuple[int, int], list[tuple[int, ...]]] = {}
            for (u, v), plist in self._paths[degree - 1].items():
                for ai, a in enumerate(qv.arrows):
                    if a.src != v:
                        continue
                    key = (u, a.tgt)
                    for pth in plist:
                        paths.setdefault(key, []).append(pth + (ai,))
            if not paths:
                self._paths.append({})
                self._quot.append({})
                break
            ideal = self._ideal_components(degree, paths, by_rel_deg)
            quot = {}
            alive = 0
            for key, plist in paths.items():
                killed = ideal.get(key, la.Subspace.zero(len(plist), p))
                q = la.quotient(len(plist), killed, p)
                quot[key] = q
                alive += q.dim
            self._paths.append(paths)
            self._quot.append(quot)
            if alive == 0:
                break

    def _ideal_components(self, degree, paths, by_rel_deg):
        """Span of pre * relation * post in the degree-``degree`` path space."""
        p = self.p
        rows: dict[tuple[int, int], list[np.ndarray]] = {}
        for rdeg, rels in by_rel_deg.items():
            if rdeg > degree:
                continue
            for rel in rels:
                r_src = self.quiver.arrows[rel[0][1][0]].src
                r_tgt = self.quiver.arrows[rel[0][1][-1]].tgt
                for pre_deg in range(degree - rdeg + 1):
                    post_deg = degree - rdeg - pre_deg
                    for (x, u), pres in self._paths[pre_deg].items():
                        if u != r_src:
                            continue
                        for (v, w), posts in self._paths[post_deg].items():
                            if v != r_tgt:
                                continue
                            plist = paths.get((x, w))
                            if plist is None:
                                continue
                            pos = {pth: i for i, pth in enumerate(plist)}
                            for pre in pres:
                                for post in posts:
                                    row = np.zeros(len(plist), dtype=np.int64)
                                    for coef, rpath in rel:
                                        full = pre + rpath + post
                                        row[pos[full]] = (row[pos[full]] + coef) % p
                                    rows.setdefault((x, w), []).append(row)
        out = {}
        for key, rlist in rows.items():
            out[key] = la.Subspace.from_rows(
                np.vstack(rlist), len(paths[key]), p
            )
        return out

    # -- basis bookkeeping --------------------------------------------

    def basis_dim(self, u: int, v: int) -> int:
        return len(self.block.get((u, v), []))

    def class_of_path(self, path: tuple[int, ...]) -> np.ndarray:
        """Coefficient vector of a path's class on the (src,tgt) block basis."""
        qv = self.quiver
        if path:
            u, v = qv.arrows[path[0]].src, qv.arrows[path[-1]].tgt
        else:
            raise QuiverError("use class_of_trivial for lazy paths")
        d = len(path)
        return self._class_in_block(u, v, d, path)

    def class_of_trivial(self, vertex: int) -> np.ndarray:
        return self._class_in_block(vertex, vertex, 0, ())

    def _class_in_block(self, u, v, d, path) -> np.ndarray:
        out = np.zeros(self.basis_dim(u, v), dtype=np.int64)
        if d >= len(self._paths):
            return out
        plist = self._paths[d].get((u, v))
        if plist is None or path not in plist:
            return out
        q = self._quot[d][(u, v)]
        coords = q.projection[:, plist.index(path)]
        for k, idx in enumerate(self.block[(u, v)]):
            pc = self._basis[idx]
            if pc.degree == d:
                out[k] = coords[pc.index]
        return out

    def representative_path(self, u: int, v: int, k: int) -> tuple[tuple[int, ...], ...]:
        """Paths (with coefficients implied by the section) representing basis
        class k of the (u, v) block; returns list of (coef, path)."""
        idx = self.block[(u, v)][k]
        pc = self._basis[idx]
        plist = self._paths[pc.degree][(u, v)]
        q = self._quot[pc.degree][(u, v)]
        col = q.section[:, pc.index]
        return tuple(
            (int(col[i]), plist[i]) for i in range(len(plist)) if col[i]
        )

    def multiply(self, u: int, v: int, vec1: np.ndarray, w: int, vec2: np.ndarray) -> np.ndarray:
        """Product (class in block (u,v)) * (class in block (v,w)) -> block (u,w).

        Left-to-right composition: first walk u->v, then v->w.
        """
        p = self.p
        out = np.zeros(self.basis_dim(u, w), dtype=np.int64)
        for i, ci in enumerate(vec1):
            if not ci:
                continue
            for coef1, path1 in self.representative_path(u, v, i):
                for j, cj in enumerate(vec2):
                    if not cj:
                        continue
                    for coef2, path2 in self.representative_path(v, w, j):
                        cls = self._class_in_block(
                            u, w, len(path1) + len(path2), path1 + path2
                        )
                        out = (out + int(ci) * int(cj) * coef1 * coef2 * cls) % p
        return out
