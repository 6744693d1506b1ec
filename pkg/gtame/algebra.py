"""Bound quiver algebras Λ = kQ/I realized over F_p.

Conventions:
    * Vertices are 0-based in Python and 1-based in files and on the CLI.
    * A path is a tuple of arrow indices composed like functions: the
      leftmost arrow is applied last, so ``beta*alpha`` is "alpha, then beta".
    * ``block(j, i)`` lists the basis paths from i to j, a basis of e_jΛe_i.
      The Cartan matrix is ``C[j, i] = len(block(j, i))``.
    * Morphisms between sums of indecomposable projectives act by right
      multiplication, see :class:`ProjectiveMap`.
"""

from __future__ import annotations

import hashlib
import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path as FilePath
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import MalformedRelation, NotAdmissible
from .linalg import DEFAULT_PRIME, PrimeField

if TYPE_CHECKING:
    from .representations import ModuleMorphism, Representation

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# File format
# ----------------------------------------------------------------------


class ArrowSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Unique arrow name")
    source: int = Field(ge=1, description="1-based source vertex")
    target: int = Field(ge=1, description="1-based target vertex")


class RelationTerm(BaseModel):
    model_config = ConfigDict(frozen=True)

    coeff: int = Field(description="Integer coefficient, reduced mod p")
    path: tuple[str, ...] = Field(description="Arrow names, leftmost applied last")


class AlgebraSpec(BaseModel):
    """Field-agnostic description of kQ/I with an explicit nilpotency bound.

    Example: for 1 -alpha-> 2 -beta-> 3 the relation beta∘alpha = 0 is
    ``[[{"coeff": 1, "path": ["beta", "alpha"]}]]``.
    """

    model_config = ConfigDict(frozen=True)

    vertices: int = Field(ge=1, description="Number of vertices n")
    arrows: tuple[ArrowSpec, ...] = ()
    relations: tuple[tuple[RelationTerm, ...], ...] = ()
    nilpotency: int = Field(ge=2, description="Every path of this length is zero")
    name: str | None = Field(default=None, description="Display name")

    @model_validator(mode="after")
    def _check_arrows(self) -> AlgebraSpec:
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for a in self.arrows:
            if a.source > self.vertices or a.target > self.vertices:
                raise ValueError(f"arrow {a.name} has an endpoint outside 1..{self.vertices}")
        return self

    @classmethod
    def load(cls, path: str | FilePath) -> AlgebraSpec:
        text = FilePath(path).read_text()
        spec = cls.model_validate_json(text)
        if spec.name is None:
            spec = spec.model_copy(update={"name": FilePath(path).stem})
        return spec

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(exclude={"name"}), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        """sha256 of the canonical document; independent of the display name."""
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


# ----------------------------------------------------------------------
# Paths
# ----------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Path:
    """A path of the quiver; ``arrows`` is empty for the idempotent e_source."""

    source: int
    target: int
    arrows: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def after(self, other: Path) -> Path:
        """self ∘ other: follow other, then self."""
        if other.target != self.source:
            raise ValueError("paths are not composable")
        return Path(other.source, self.target, self.arrows + other.arrows)


def _sort_key(p: Path) -> tuple:
    return (p.length, p.arrows, p.source, p.target)


# ----------------------------------------------------------------------
# The algebra
# ----------------------------------------------------------------------


class BoundQuiverAlgebra:
    """Path-basis realization with structure constants.

    ``struct[x, y, z]`` is the coefficient of basis element z in the product
    x∘y of basis elements x and y.
    """

    def __init__(
        self,
        spec: AlgebraSpec,
        field: PrimeField,
        basis: tuple[Path, ...],
        struct: np.ndarray,
        reduction: dict[Path, np.ndarray],
    ):
        self.spec = spec
        self.field = field
        self.n = spec.vertices
        self.m = spec.nilpotency
        self.basis = basis
        self.dim = len(basis)
        self.struct = struct
        self._reduction = reduction
        self.arrow_names = tuple(a.name for a in spec.arrows)
        self.arrow_source = tuple(a.source - 1 for a in spec.arrows)
        self.arrow_target = tuple(a.target - 1 for a in spec.arrows)

        index = {p: k for k, p in enumerate(basis)}
        self._index = index
        self.idempotents = tuple(index[Path(i, i)] for i in range(self.n))
        self.arrow_basis = tuple(
            index[Path(s, t, (a,))] for a, (s, t) in enumerate(zip(self.arrow_source, self.arrow_target))
        )
        self.basis_source = np.array([p.source for p in basis], dtype=np.int64)
        self.basis_target = np.array([p.target for p in basis], dtype=np.int64)
        self.basis_length = np.array([p.length for p in basis], dtype=np.int64)

        blocks: dict[tuple[int, int], list[int]] = defaultdict(list)
        for k, p in enumerate(basis):
            blocks[(p.target, p.source)].append(k)
        self._blocks = {
            (j, i): np.array(blocks.get((j, i), []), dtype=np.int64) for j in range(self.n) for i in range(self.n)
        }
        self.cartan = np.array(
            [[len(self._blocks[(j, i)]) for i in range(self.n)] for j in range(self.n)], dtype=np.int64
        )

        d = self.dim
        self.struct_x_yz = struct.reshape(d, d * d)
        self.struct_y_xz = struct.transpose(1, 0, 2).reshape(d, d * d)

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.name!r}, n={self.n}, dim={self.dim}, p={self.field.p})"

    @property
    def name(self) -> str:
        return self.spec.name or self.spec.digest()[:12]

    def over(self, prime: int) -> BoundQuiverAlgebra:
        """The same algebra realized over another prime field."""
        if prime == self.field.p:
            return self
        from .core import get_algebra, register_algebra

        register_algebra(self)
        return get_algebra(self.spec, prime)

    def block(self, j: int, i: int) -> np.ndarray:
        """Global indices of the basis of e_jΛe_i (paths from i to j)."""
        return self._blocks[(j, i)]

    def word(self, k: int) -> str:
        p = self.basis[k]
        if not p.arrows:
            return f"e{p.source + 1}"
        return "*".join(self.arrow_names[a] for a in p.arrows)

    def element(self, names: tuple[str, ...] | list[str], vertex: int | None = None) -> np.ndarray:
        """Coordinates of a path given by arrow names (or e_vertex when empty)."""
        if not names:
            if vertex is None:
                raise ValueError("an empty path needs its vertex")
            return self._unit(self.idempotents[vertex])
        lookup = {name: a for a, name in enumerate(self.arrow_names)}
        arrows = tuple(lookup[name] for name in names)
        path = Path(self.arrow_source[arrows[-1]], self.arrow_target[arrows[0]], arrows)
        if path.length >= self.m:
            return np.zeros(self.dim, dtype=np.int64)
        return self._reduction[path].copy()

    def _unit(self, k: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[k] = 1
        return v

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product x∘y of two algebra elements in basis coordinates."""
        outer = np.outer(self.field.reduce(x), self.field.reduce(y)) % self.field.p
        return self.field.matmul(outer.reshape(1, -1), self.struct.reshape(self.dim * self.dim, self.dim))[0]

    def check_associativity(self) -> bool:
        """(x∘y)∘z = x∘(y∘z) on all basis triples."""
        d = self.dim
        f = self.field
        s = self.struct.reshape(d * d, d)
        # left[(x,y), (z, w)] = Σ_u struct[x,y,u] struct[u,z,w]
        left = f.matmul(s, self.struct_x_yz)
        # right[(x), (y,z,w)] = Σ_u struct[y,z,u] struct[x,u,w]
        yz_u = s  # [(y,z), u]
        x_u_w = self.struct.transpose(1, 0, 2).reshape(d, d * d)  # [u, (x,w)]
        right = f.matmul(yz_u, x_u_w).reshape(d, d, d, d)  # [y,z,x,w]
        right = right.transpose(2, 0, 1, 3).reshape(d * d, d * d)
        return bool(np.array_equal(left, right))

    def projective_dims(self, types: tuple[int, ...]) -> np.ndarray:
        """Dimension vector of ⊕ P_t over t in types."""
        if not types:
            return np.zeros(self.n, dtype=np.int64)
        return self.cartan[:, list(types)].sum(axis=1)

    def injective_dims(self, types: tuple[int, ...]) -> np.ndarray:
        if not types:
            return np.zeros(self.n, dtype=np.int64)
        return self.cartan[list(types), :].sum(axis=0)

    def projective(self, i: int) -> Representation:
        """Λe_i as a representation."""
        return self.projective_sum((i,))

    def injective(self, i: int) -> Representation:
        """D(e_iΛ) as a representation."""
        return self.injective_sum((i,))

    def projective_sum(self, types: tuple[int, ...]) -> Representation:
        from .representations import Representation

        dims = tuple(int(v) for v in self.projective_dims(types))
        mats = []
        for a, (s, t) in enumerate(zip(self.arrow_source, self.arrow_target)):
            alpha = self.arrow_basis[a]
            mat = np.zeros((dims[t], dims[s]), dtype=np.int64)
            ro = co = 0
            for i in types:
                bs, bt = self.block(s, i), self.block(t, i)
                if bs.size and bt.size:
                    mat[ro : ro + bt.size, co : co + bs.size] = self.struct[alpha][np.ix_(bs, bt)].T
                ro += bt.size
                co += bs.size
            mats.append(mat)
        return Representation(self, dims, tuple(mats))

    def injective_sum(self, types: tuple[int, ...]) -> Representation:
        from .representations import Representation

        dims = tuple(int(v) for v in self.injective_dims(types))
        mats = []
        for a, (s, t) in enumerate(zip(self.arrow_source, self.arrow_target)):
            alpha = self.arrow_basis[a]
            mat = np.zeros((dims[t], dims[s]), dtype=np.int64)
            ro = co = 0
            for i in types:
                qs, qt = self.block(i, s), self.block(i, t)
                if qs.size and qt.size:
                    mat[ro : ro + qt.size, co : co + qs.size] = self.struct[np.ix_(qt, [alpha], qs)][:, 0, :]
                ro += qt.size
                co += qs.size
            mats.append(mat)
        return Representation(self, dims, tuple(mats))

    def hom_basis_projectives(self, j: int, i: int) -> list[ModuleMorphism]:
        """Right multiplications by the basis paths of e_jΛe_i, as maps P_j -> P_i."""
        from .representations import ModuleMorphism

        source, target = self.projective(j), self.projective(i)
        out = []
        for q in self.block(j, i):
            coeffs = np.zeros((1, 1, self.dim), dtype=np.int64)
            coeffs[0, 0, q] = 1
            pm = ProjectiveMap(self, (j,), (i,), coeffs)
            out.append(ModuleMorphism(source, target, tuple(pm.realize(k) for k in range(self.n))))
        return out

    def summary(self) -> dict:
        return {
            "name": self.name,
            "vertices": self.n,
            "dimension": self.dim,
            "cartan": self.cartan.tolist(),
            "projective_dims": [self.cartan[:, i].tolist() for i in range(self.n)],
            "injective_dims": [self.cartan[i, :].tolist() for i in range(self.n)],
            "basis": [self.word(k) for k in range(self.dim)],
        }


def _parse_relations(spec: AlgebraSpec, field: PrimeField) -> list[tuple[int, int, list[tuple[int, tuple[int, ...]]]]]:
    lookup = {a.name: k for k, a in enumerate(spec.arrows)}
    src = [a.source - 1 for a in spec.arrows]
    tgt = [a.target - 1 for a in spec.arrows]
    parsed = []
    for r, relation in enumerate(spec.relations, start=1):
        where = f"relation {r}"
        if not relation:
            raise MalformedRelation("relation has no terms", where)
        ends = set()
        terms = []
        for term in relation:
            unknown = [name for name in term.path if name not in lookup]
            if unknown:
                raise MalformedRelation(f"unknown arrow(s) {', '.join(unknown)}", where)
            arrows = tuple(lookup[name] for name in term.path)
            if len(arrows) < 2:
                raise MalformedRelation(
                    f"term {'*'.join(term.path) or '<empty>'} has length < 2; relations must lie in the square of the arrow ideal",
                    where,
                )
            for k in range(len(arrows) - 1):
                if src[arrows[k]] != tgt[arrows[k + 1]]:
                    raise MalformedRelation(f"term {'*'.join(term.path)} is not a path", where)
            ends.add((src[arrows[-1]], tgt[arrows[0]]))
            terms.append((term.coeff % field.p, arrows))
        if len(ends) != 1:
            raise MalformedRelation("terms are not parallel paths", where)
        (i, j) = ends.pop()
        parsed.append((i, j, terms))
    return parsed


def _enumerate_paths(spec: AlgebraSpec) -> list[Path]:
    n, m = spec.vertices, spec.nilpotency
    src = [a.source - 1 for a in spec.arrows]
    tgt = [a.target - 1 for a in spec.arrows]
    layer = [Path(i, i) for i in range(n)]
    paths = list(layer)
    for _ in range(m):
        layer = [Path(p.source, tgt[a], (a,) + p.arrows) for p in layer for a in range(len(src)) if src[a] == p.target]
        paths.extend(layer)
    return paths


def build_algebra(spec: AlgebraSpec, prime: int = DEFAULT_PRIME) -> BoundQuiverAlgebra:
    """Realize kQ/I over F_prime.

    Every path of length <= m is a column; the rows are all two-sided
    multiples u·r·v of the relations (terms longer than m dropped) plus a
    unit row for each path of length m. Row reduction per block with
    longest paths first leaves a basis of short normal words.

    Raises:
        MalformedRelation: a relation is empty, has unknown arrows, a term of
            length < 2, or non-parallel terms
        NotAdmissible: some path of length m is not implied zero by the
            relations
    """
    field = PrimeField(prime)
    m = spec.nilpotency
    relations = _parse_relations(spec, field)
    paths = _enumerate_paths(spec)

    by_block: dict[tuple[int, int], list[Path]] = defaultdict(list)
    for p in paths:
        by_block[(p.target, p.source)].append(p)
    for key in by_block:
        by_block[key].sort(key=lambda p: (-p.length, p.arrows))
    columns = {key: {p: c for c, p in enumerate(ps)} for key, ps in by_block.items()}

    starting: dict[int, list[Path]] = defaultdict(list)
    ending: dict[int, list[Path]] = defaultdict(list)
    for p in paths:
        starting[p.source].append(p)
        ending[p.target].append(p)

    rows: dict[tuple[int, int], list[np.ndarray]] = defaultdict(list)
    for i, j, terms in relations:
        shortest = min(len(arrows) for _, arrows in terms)
        for u in starting[j]:
            if u.length > m - shortest:
                continue
            for v in ending[i]:
                if u.length + v.length > m - shortest:
                    continue
                key = (u.target, v.source)
                row = np.zeros(len(by_block[key]), dtype=np.int64)
                for coeff, arrows in terms:
                    word = u.arrows + arrows + v.arrows
                    if len(word) <= m:
                        c = columns[key][Path(v.source, u.target, word)]
                        row[c] = (row[c] + coeff) % field.p
                if row.any():
                    rows[key].append(row)

    reduced: dict[tuple[int, int], tuple[np.ndarray, list[int]]] = {}
    kept: list[Path] = []
    for key, ps in by_block.items():
        relation_rows = np.array(rows[key], dtype=np.int64).reshape(-1, len(ps))
        top = [c for c, p in enumerate(ps) if p.length == m]
        if top:
            kernel = field.nullspace_basis(relation_rows)
            for c in top:
                if kernel[c].any():
                    word = "*".join(spec.arrows[a].name for a in ps[c].arrows)
                    raise NotAdmissible(
                        f"path {word} of length {m} from {ps[c].source + 1} to {ps[c].target + 1} "
                        "is not zero modulo the relations; increase the nilpotency bound or add relations",
                        "nilpotency",
                    )
        units = np.zeros((len(top), len(ps)), dtype=np.int64)
        for r, c in enumerate(top):
            units[r, c] = 1
        rref, pivots = field.rref(np.vstack([relation_rows, units]))
        reduced[key] = (rref, pivots)
        pivot_set = set(pivots)
        kept.extend(p for c, p in enumerate(ps) if c not in pivot_set)

    basis = tuple(sorted(kept, key=_sort_key))
    index = {p: k for k, p in enumerate(basis)}
    dim = len(basis)

    reduction: dict[Path, np.ndarray] = {}
    for key, ps in by_block.items():
        rref, pivots = reduced[key]
        pivot_row = {c: r for r, c in enumerate(pivots)}
        free = [c for c in range(len(ps)) if c not in pivot_row]
        for c, p in enumerate(ps):
            if p.length >= m:
                continue
            vec = np.zeros(dim, dtype=np.int64)
            if c in pivot_row:
                r = pivot_row[c]
                for f in free:
                    if rref[r, f]:
                        vec[index[ps[f]]] = (-rref[r, f]) % field.p
            else:
                vec[index[p]] = 1
            reduction[p] = vec

    struct = np.zeros((dim, dim, dim), dtype=np.int64)
    for x, px in enumerate(basis):
        for y, py in enumerate(basis):
            if py.target == px.source and px.length + py.length < m:
                struct[x, y] = reduction[px.after(py)]

    algebra = BoundQuiverAlgebra(spec, field, basis, struct, reduction)
    logger.debug(f"Built {algebra!r} with Cartan matrix {algebra.cartan.tolist()}")
    return algebra


# ----------------------------------------------------------------------
# Morphisms between sums of indecomposable projectives
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProjectiveMap:
    """A map ⊕_s P_{source[s]} -> ⊕_t P_{target[t]}.

    ``coeffs[t, s]`` is an element of e_{source[s]}Λe_{target[t]}; the map
    sends x in summand s to Σ_t x·coeffs[t, s] in summand t.
    """

    algebra: BoundQuiverAlgebra
    source: tuple[int, ...]
    target: tuple[int, ...]
    coeffs: np.ndarray
    _realized: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        expected = (len(self.target), len(self.source), self.algebra.dim)
        if self.coeffs.shape != expected:
            raise ValueError(f"coefficient block has shape {self.coeffs.shape}, expected {expected}")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def support(algebra: BoundQuiverAlgebra, source: tuple[int, ...], target: tuple[int, ...]) -> np.ndarray:
        """Boolean mask of admissible coefficients, shape (T, S, dim)."""
        tgt = np.asarray(target, dtype=np.int64).reshape(-1, 1, 1)
        src = np.asarray(source, dtype=np.int64).reshape(1, -1, 1)
        return (algebra.basis_target.reshape(1, 1, -1) == src) & (algebra.basis_source.reshape(1, 1, -1) == tgt)

    @classmethod
    def zero(cls, algebra: BoundQuiverAlgebra, source: tuple[int, ...], target: tuple[int, ...]) -> ProjectiveMap:
        return cls(algebra, tuple(source), tuple(target), np.zeros((len(target), len(source), algebra.dim), dtype=np.int64))

    @classmethod
    def identity(cls, algebra: BoundQuiverAlgebra, types: tuple[int, ...]) -> ProjectiveMap:
        pm = cls.zero(algebra, types, types)
        for t, i in enumerate(types):
            pm.coeffs[t, t, algebra.idempotents[i]] = 1
        return pm

    @classmethod
    def from_vector(
        cls, algebra: BoundQuiverAlgebra, source: tuple[int, ...], target: tuple[int, ...], vector: np.ndarray
    ) -> ProjectiveMap:
        """Inverse of :meth:`to_vector`: fill the support mask in C order."""
        pm = cls.zero(algebra, source, target)
        mask = cls.support(algebra, tuple(source), tuple(target))
        pm.coeffs[mask] = algebra.field.reduce(vector)
        return pm

    @classmethod
    def from_generator_images(
        cls,
        algebra: BoundQuiverAlgebra,
        source: tuple[int, ...],
        target: tuple[int, ...],
        images: list[np.ndarray],
    ) -> ProjectiveMap:
        """Map determined by where each source generator e_{source[s]} goes.

        ``images[s]`` is a vector of the realized target at vertex
        ``source[s]``.
        """
        pm = cls.zero(algebra, source, target)
        for s, i in enumerate(source):
            offset = 0
            for t, j in enumerate(target):
                block = algebra.block(i, j)
                pm.coeffs[t, s, block] = images[s][offset : offset + block.size]
                offset += block.size
        return pm

    @classmethod
    def direct_sum(cls, a: ProjectiveMap, b: ProjectiveMap) -> ProjectiveMap:
        alg = a.algebra
        out = cls.zero(alg, a.source + b.source, a.target + b.target)
        out.coeffs[: len(a.target), : len(a.source)] = a.coeffs
        out.coeffs[len(a.target) :, len(a.source) :] = b.coeffs
        return out

    # -- basic algebra --------------------------------------------------

    def to_vector(self) -> np.ndarray:
        return self.coeffs[self.support(self.algebra, self.source, self.target)]

    @property
    def hom_dim(self) -> int:
        return int(self.support(self.algebra, self.source, self.target).sum())

    def __add__(self, other: ProjectiveMap) -> ProjectiveMap:
        return ProjectiveMap(self.algebra, self.source, self.target, (self.coeffs + other.coeffs) % self.algebra.field.p)

    def scale(self, c: int) -> ProjectiveMap:
        return ProjectiveMap(self.algebra, self.source, self.target, (self.coeffs * (int(c) % self.algebra.field.p)) % self.algebra.field.p)

    def restrict(self, target_idx: list[int], source_idx: list[int]) -> ProjectiveMap:
        """Component between the selected target and source summands."""
        coeffs = self.coeffs[np.ix_(target_idx, source_idx)] if target_idx and source_idx else np.zeros(
            (len(target_idx), len(source_idx), self.algebra.dim), dtype=np.int64
        )
        return ProjectiveMap(
            self.algebra,
            tuple(self.source[s] for s in source_idx),
            tuple(self.target[t] for t in target_idx),
            coeffs.reshape(len(target_idx), len(source_idx), self.algebra.dim),
        )

    @cached_property
    def right_action(self) -> np.ndarray:
        """[t, s, x, z]: coefficient of z in x·coeffs[t, s]."""
        alg = self.algebra
        T, S, d = len(self.target), len(self.source), alg.dim
        flat = alg.field.matmul(self.coeffs.reshape(T * S, d), alg.struct_y_xz)
        return flat.reshape(T, S, d, d)

    @cached_property
    def left_action(self) -> np.ndarray:
        """[t, s, y, z]: coefficient of z in coeffs[t, s]·y."""
        alg = self.algebra
        T, S, d = len(self.target), len(self.source), alg.dim
        flat = alg.field.matmul(self.coeffs.reshape(T * S, d), alg.struct_x_yz)
        return flat.reshape(T, S, d, d)

    def compose(self, other: ProjectiveMap) -> ProjectiveMap:
        """self ∘ other."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        alg = self.algebra
        U, T, S, d = len(self.target), len(self.source), len(other.source), alg.dim
        if U == 0 or T == 0 or S == 0:
            return ProjectiveMap.zero(alg, other.source, self.target)
        rhs = other.left_action.transpose(0, 2, 1, 3).reshape(T * d, S * d)
        coeffs = alg.field.matmul(self.coeffs.reshape(U, T * d), rhs).reshape(U, S, d)
        return ProjectiveMap(alg, other.source, self.target, coeffs)

    # -- realization ----------------------------------------------------

    def realize(self, k: int) -> np.ndarray:
        """Matrix of the map at vertex k, in the bases block(k, type) per summand."""
        cached = self._realized.get(k)
        if cached is not None:
            return cached
        alg = self.algebra
        rows = [alg.block(k, j) for j in self.target]
        cols = [alg.block(k, i) for i in self.source]
        out = np.zeros((sum(b.size for b in rows), sum(b.size for b in cols)), dtype=np.int64)
        if out.size:
            action = self.right_action
            ro = 0
            for t, bz in enumerate(rows):
                co = 0
                for s, bx in enumerate(cols):
                    if bz.size and bx.size:
                        out[ro : ro + bz.size, co : co + bx.size] = action[t, s][np.ix_(bx, bz)].T
                    co += bx.size
                ro += bz.size
        self._realized[k] = out
        return out

    def rank(self) -> int:
        return sum(self.algebra.field.rank(self.realize(k)) for k in range(self.algebra.n))

    def ranks(self) -> tuple[int, ...]:
        return tuple(self.algebra.field.rank(self.realize(k)) for k in range(self.algebra.n))

    def is_injective(self) -> bool:
        return self.rank() == int(self.algebra.projective_dims(self.source).sum())

    def is_isomorphism(self) -> bool:
        alg = self.algebra
        if sorted(self.source) != sorted(self.target):
            return False
        return self.rank() == int(alg.projective_dims(self.source).sum())

    def generator_offsets(self, types: tuple[int, ...] | None = None) -> list[int]:
        """Position of each summand's generator in the realized space at its vertex."""
        types = self.target if types is None else types
        alg = self.algebra
        out = []
        for t, i in enumerate(types):
            out.append(int(sum(alg.cartan[i, j] for j in types[:t])))
        return out

    def inverse(self) -> ProjectiveMap:
        """Inverse of an isomorphism."""
        alg = self.algebra
        inverses = {}
        images = []
        offsets = self.generator_offsets(self.target)
        for t, i in enumerate(self.target):
            if i not in inverses:
                inverses[i] = alg.field.inverse(self.realize(i))
            images.append(inverses[i][:, offsets[t]])
        return ProjectiveMap.from_generator_images(alg, self.target, self.source, images)

    def top_matrix(self) -> np.ndarray:
        """Action on tops: entry [t, s] is the e_i-coefficient of coeffs[t, s] when both have type i."""
        alg = self.algebra
        out = np.zeros((len(self.target), len(self.source)), dtype=np.int64)
        for t, j in enumerate(self.target):
            for s, i in enumerate(self.source):
                if i == j:
                    out[t, s] = self.coeffs[t, s, alg.idempotents[i]]
        return out

    # -- composition operators as matrices -----------------------------

    def post_composition_matrix(self, source: tuple[int, ...]) -> np.ndarray:
        """Matrix of h ↦ self∘h on Hom(⊕P_source, ⊕P_self.source), support coordinates."""
        alg = self.algebra
        U, T, S, d = len(self.target), len(self.source), len(source), alg.dim
        cols = self.support(alg, source, self.source).reshape(-1)
        rows = self.support(alg, source, self.target).reshape(-1)
        full = np.zeros((U, S, d, T, S, d), dtype=np.int64)
        if U and T and S:
            block = self.right_action.transpose(0, 3, 1, 2)  # [u, z, t, x]
            for s in range(S):
                full[:, s, :, :, s, :] = block
        return full.reshape(U * S * d, T * S * d)[np.ix_(rows, cols)]

    def pre_composition_matrix(self, target: tuple[int, ...]) -> np.ndarray:
        """Matrix of h ↦ h∘self on Hom(⊕P_self.target, ⊕P_target), support coordinates."""
        alg = self.algebra
        U, T, S, d = len(target), len(self.target), len(self.source), alg.dim
        cols = self.support(alg, self.target, target).reshape(-1)
        rows = self.support(alg, self.source, target).reshape(-1)
        if U and T and S:
            block = self.left_action.transpose(1, 3, 0, 2).reshape(S * d, T * d)
            full = np.kron(np.eye(U, dtype=np.int64), block)
        else:
            full = np.zeros((U * S * d, U * T * d), dtype=np.int64)
        return full[np.ix_(rows, cols)]
