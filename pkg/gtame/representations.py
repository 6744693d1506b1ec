"""Finite-dimensional modules as quiver representations.

A representation stores one d_{t(α)} × d_{s(α)} matrix per arrow. Hom
spaces are kernels of the commutation system, τ is computed as the kernel
of the Nakayama functor applied to a minimal presentation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from .algebra import BoundQuiverAlgebra, ProjectiveMap
from .config import ISO_ROUNDS

if TYPE_CHECKING:
    from .presentations import Presentation

logger = logging.getLogger(__name__)


class IsoVerdict(str, Enum):
    """Outcome of a Monte-Carlo isomorphism test."""

    ISOMORPHIC = "isomorphic"
    NON_ISOMORPHIC = "non-isomorphic"
    UNDECIDED = "undecided"


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: BoundQuiverAlgebra
    dims: tuple[int, ...]
    arrows: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        alg = self.algebra
        if len(self.dims) != alg.n:
            raise ValueError(f"dimension vector has {len(self.dims)} entries, expected {alg.n}")
        for a, mat in enumerate(self.arrows):
            expected = (self.dims[alg.arrow_target[a]], self.dims[alg.arrow_source[a]])
            if mat.shape != expected:
                raise ValueError(f"arrow {alg.arrow_names[a]} has shape {mat.shape}, expected {expected}")

    @classmethod
    def zero(cls, algebra: BoundQuiverAlgebra) -> Representation:
        return cls.from_dims(algebra, (0,) * algebra.n)

    @classmethod
    def from_dims(cls, algebra: BoundQuiverAlgebra, dims: tuple[int, ...]) -> Representation:
        """Representation with the given dimensions and zero arrows."""
        mats = tuple(
            np.zeros((dims[t], dims[s]), dtype=np.int64) for s, t in zip(algebra.arrow_source, algebra.arrow_target)
        )
        return cls(algebra, tuple(dims), mats)

    @classmethod
    def simple(cls, algebra: BoundQuiverAlgebra, i: int) -> Representation:
        dims = [0] * algebra.n
        dims[i] = 1
        return cls.from_dims(algebra, tuple(dims))

    @property
    def dimension_vector(self) -> tuple[int, ...]:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, k: int) -> np.ndarray:
        """Action of the basis path with global index k."""
        alg = self.algebra
        path = alg.basis[k]
        out = alg.field.identity(self.dims[path.source])
        for a in reversed(path.arrows):
            out = alg.field.matmul(self.arrows[a], out)
        return out

    def word_matrix(self, arrows: tuple[int, ...], source: int) -> np.ndarray:
        out = self.algebra.field.identity(self.dims[source])
        for a in reversed(arrows):
            out = self.algebra.field.matmul(self.arrows[a], out)
        return out

    def satisfies_relations(self) -> bool:
        alg = self.algebra
        lookup = {name: a for a, name in enumerate(alg.arrow_names)}
        for relation in alg.spec.relations:
            total = None
            for term in relation:
                arrows = tuple(lookup[name] for name in term.path)
                value = (self.word_matrix(arrows, alg.arrow_source[arrows[-1]]) * (term.coeff % alg.field.p)) % alg.field.p
                total = value if total is None else (total + value) % alg.field.p
            if total is not None and total.any():
                return False
        return True

    def direct_sum(self, other: Representation) -> Representation:
        mats = []
        for a, b in zip(self.arrows, other.arrows):
            m = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
            m[: a.shape[0], : a.shape[1]] = a
            m[a.shape[0] :, a.shape[1] :] = b
            mats.append(m)
        return Representation(self.algebra, tuple(x + y for x, y in zip(self.dims, other.dims)), tuple(mats))


@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    source: Representation
    target: Representation
    maps: tuple[np.ndarray, ...]

    def is_morphism(self) -> bool:
        alg = self.source.algebra
        f = alg.field
        for a, (s, t) in enumerate(zip(alg.arrow_source, alg.arrow_target)):
            lhs = f.matmul(self.maps[t], self.source.arrows[a])
            rhs = f.matmul(self.target.arrows[a], self.maps[s])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_isomorphism(self) -> bool:
        f = self.source.algebra.field
        if self.source.dims != self.target.dims:
            return False
        return all(f.rank(m) == m.shape[0] for m in self.maps)

    def compose(self, other: ModuleMorphism) -> ModuleMorphism:
        """self ∘ other."""
        f = self.source.algebra.field
        return ModuleMorphism(other.source, self.target, tuple(f.matmul(a, b) for a, b in zip(self.maps, other.maps)))


@dataclass(frozen=True)
class HomSpace:
    dimension: int
    basis: list[ModuleMorphism]


@dataclass(frozen=True)
class RadicalTop:
    radical: Representation
    inclusion: ModuleMorphism
    top: tuple[int, ...]


# ----------------------------------------------------------------------
# Hom and Ext
# ----------------------------------------------------------------------


def _hom_system(m: Representation, n: Representation) -> tuple[np.ndarray, list[int]]:
    """Commutation equations f_t M_α = N_α f_s on the stacked row-major unknowns."""
    alg = m.algebra
    p = alg.field.p
    sizes = [n.dims[i] * m.dims[i] for i in range(alg.n)]
    offsets = [int(v) for v in np.concatenate([[0], np.cumsum(sizes)])]
    blocks = []
    for a, (s, t) in enumerate(zip(alg.arrow_source, alg.arrow_target)):
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        eq = np.zeros((rows, offsets[-1]), dtype=np.int64)
        eq[:, offsets[t] : offsets[t + 1]] += np.kron(np.eye(n.dims[t], dtype=np.int64), m.arrows[a].T)
        eq[:, offsets[s] : offsets[s + 1]] -= np.kron(n.arrows[a], np.eye(m.dims[s], dtype=np.int64))
        blocks.append(eq % p)
    system = np.vstack(blocks) if blocks else np.zeros((0, offsets[-1]), dtype=np.int64)
    return system, offsets


def hom_dim(m: Representation, n: Representation) -> int:
    """dim Hom_Λ(M, N)."""
    system, offsets = _hom_system(m, n)
    return offsets[-1] - m.algebra.field.rank(system)


def hom_space(m: Representation, n: Representation) -> HomSpace:
    """Dimension and a basis of Hom_Λ(M, N)."""
    alg = m.algebra
    system, offsets = _hom_system(m, n)
    kernel = alg.field.nullspace_basis(system)
    basis = []
    for c in range(kernel.shape[1]):
        maps = tuple(
            kernel[offsets[i] : offsets[i + 1], c].reshape(n.dims[i], m.dims[i]) for i in range(alg.n)
        )
        basis.append(ModuleMorphism(m, n, maps))
    return HomSpace(len(basis), basis)


def ext1(m: Representation, n: Representation) -> int:
    """dim Ext¹(M, N) from a minimal presentation P⁻¹ -a-> P⁰ -> M.

    With Ω = image(a), Ext¹(M, N) is the cokernel of Hom(P⁰, N) -> Hom(Ω, N),
    and the kernel of that restriction is Hom(M, N).
    """
    a = minimal_presentation(m).map
    alg = m.algebra
    omega, _ = subrepresentation(alg.projective_sum(a.target), [alg.field.column_basis(a.realize(k)) for k in range(alg.n)])
    hom_p0 = sum(n.dims[j] for j in a.target)
    return hom_dim(omega, n) - hom_p0 + hom_dim(m, n)


# ----------------------------------------------------------------------
# Sub- and quotient representations
# ----------------------------------------------------------------------


def subrepresentation(m: Representation, bases: list[np.ndarray]) -> tuple[Representation, ModuleMorphism]:
    """Submodule spanned per vertex by the (independent) columns of bases[i].

    The spans must be stable under the arrows.
    """
    alg = m.algebra
    f = alg.field
    mats = []
    for a, (s, t) in enumerate(zip(alg.arrow_source, alg.arrow_target)):
        image = f.matmul(m.arrows[a], bases[s])
        mats.append(f.solve(bases[t], image).reshape(bases[t].shape[1], bases[s].shape[1]))
    sub = Representation(alg, tuple(b.shape[1] for b in bases), tuple(mats))
    return sub, ModuleMorphism(sub, m, tuple(f.reduce(b) for b in bases))


def quotient(m: Representation, bases: list[np.ndarray]) -> tuple[Representation, ModuleMorphism]:
    """M / N for the submodule N spanned by bases, with the projection."""
    alg = m.algebra
    f = alg.field
    complements = [f.complement_basis(b) for b in bases]
    projections = []
    for i in range(alg.n):
        full = np.hstack([bases[i], complements[i]]) if m.dims[i] else f.zeros(0, 0)
        inv = f.inverse(full) if m.dims[i] else f.zeros(0, 0)
        projections.append(inv[bases[i].shape[1] :].reshape(complements[i].shape[1], m.dims[i]))
    mats = []
    for a, (s, t) in enumerate(zip(alg.arrow_source, alg.arrow_target)):
        mats.append(f.matmul(projections[t], f.matmul(m.arrows[a], complements[s])).reshape(
            complements[t].shape[1], complements[s].shape[1]
        ))
    q = Representation(alg, tuple(c.shape[1] for c in complements), tuple(mats))
    return q, ModuleMorphism(m, q, tuple(projections))


def cokernel(a: ProjectiveMap | Presentation) -> Representation:
    """Cokernel of a map between sums of indecomposable projectives."""
    pm = a if isinstance(a, ProjectiveMap) else a.map
    alg = pm.algebra
    images = [alg.field.column_basis(pm.realize(k)) for k in range(alg.n)]
    q, _ = quotient(alg.projective_sum(pm.target), images)
    return q


# ----------------------------------------------------------------------
# Radical, top, presentations
# ----------------------------------------------------------------------


def radical_bases(m: Representation) -> list[np.ndarray]:
    """Per-vertex bases of rad M = Σ_α image(M_α)."""
    alg = m.algebra
    f = alg.field
    out = []
    for i in range(alg.n):
        images = [m.arrows[a] for a in range(len(alg.arrow_names)) if alg.arrow_target[a] == i]
        stacked = np.hstack(images) if images else f.zeros(m.dims[i], 0)
        out.append(f.column_basis(stacked))
    return out


def radical_and_top(m: Representation) -> RadicalTop:
    bases = radical_bases(m)
    rad, inclusion = subrepresentation(m, bases)
    top = tuple(m.dims[i] - bases[i].shape[1] for i in range(m.algebra.n))
    return RadicalTop(rad, inclusion, top)


def top_generators(m: Representation) -> list[tuple[int, np.ndarray]]:
    """(vertex, vector) pairs whose classes form a basis of top M, sorted by vertex."""
    f = m.algebra.field
    out = []
    for i, rad in enumerate(radical_bases(m)):
        comp = f.complement_basis(rad) if m.dims[i] else f.zeros(0, 0)
        out.extend((i, comp[:, c]) for c in range(comp.shape[1]))
    return out


def cover_map(m: Representation, generators: list[tuple[int, np.ndarray]]) -> list[np.ndarray]:
    """Per-vertex matrices of ⊕ P_i -> M sending each generator e_i to its vector."""
    alg = m.algebra
    f = alg.field
    paths = {k: m.path_matrix(k) for k in range(alg.dim)}
    out = []
    for k in range(alg.n):
        cols = []
        for i, v in generators:
            for q in alg.block(k, i):
                cols.append(f.matmul(paths[q], v))
        out.append(np.column_stack(cols) if cols else f.zeros(m.dims[k], 0))
    return out


def minimal_presentation(m: Representation) -> Presentation:
    """P⁻¹ -> P⁰ -> M -> 0 with P⁰ the projective cover of M and P⁻¹ that of the kernel."""
    from .presentations import Presentation

    alg = m.algebra
    f = alg.field
    gens = top_generators(m)
    plus = tuple(i for i, _ in gens)
    cover = cover_map(m, gens)
    p0 = alg.projective_sum(plus)
    kernel_bases = [f.nullspace_basis(cover[k]) if p0.dims[k] else f.zeros(0, 0) for k in range(alg.n)]
    kernel, _ = subrepresentation(p0, kernel_bases)
    images = []
    minus = []
    for i, w in top_generators(kernel):
        minus.append(i)
        images.append(f.matmul(kernel_bases[i], w))
    a = ProjectiveMap.from_generator_images(alg, tuple(minus), plus, images)
    return Presentation(a)


def nakayama_matrix(a: ProjectiveMap, k: int) -> np.ndarray:
    """Vertex-k matrix of ν(a) between the injective sums over a.source and a.target."""
    alg = a.algebra
    rows = [alg.block(j, k) for j in a.target]
    cols = [alg.block(i, k) for i in a.source]
    out = np.zeros((sum(b.size for b in rows), sum(b.size for b in cols)), dtype=np.int64)
    if out.size:
        action = a.left_action
        ro = 0
        for t, by in enumerate(rows):
            co = 0
            for s, bx in enumerate(cols):
                if by.size and bx.size:
                    out[ro : ro + by.size, co : co + bx.size] = action[t, s][np.ix_(by, bx)]
                co += bx.size
            ro += by.size
    return out


def tau(m: Representation) -> Representation:
    """Auslander-Reiten translate: Ker ν(a) for a minimal presentation a of M."""
    alg = m.algebra
    f = alg.field
    a = minimal_presentation(m).map
    injectives = alg.injective_sum(a.source)
    bases = [
        f.nullspace_basis(nakayama_matrix(a, k)) if injectives.dims[k] else f.zeros(0, 0) for k in range(alg.n)
    ]
    sub, _ = subrepresentation(injectives, bases)
    return sub


def isomorphic(
    m: Representation, n: Representation, rng: np.random.Generator, rounds: int = ISO_ROUNDS
) -> IsoVerdict:
    """Invariant comparison followed by a search for an invertible morphism."""
    if m.dims != n.dims:
        return IsoVerdict.NON_ISOMORPHIC
    end_m = hom_dim(m, m)
    if hom_dim(n, n) != end_m or hom_dim(n, m) != end_m:
        return IsoVerdict.NON_ISOMORPHIC
    space = hom_space(m, n)
    if space.dimension != end_m:
        return IsoVerdict.NON_ISOMORPHIC
    if m.is_zero():
        return IsoVerdict.ISOMORPHIC
    f = m.algebra.field
    for _ in range(rounds):
        coeffs = f.random_matrix(1, space.dimension, rng)[0]
        maps = []
        for i in range(m.algebra.n):
            acc = f.zeros(n.dims[i], m.dims[i])
            for c, phi in zip(coeffs, space.basis):
                acc = (acc + phi.maps[i] * int(c)) % f.p
            maps.append(acc)
        if ModuleMorphism(m, n, tuple(maps)).is_isomorphism():
            return IsoVerdict.ISOMORPHIC
    logger.debug(f"No invertible morphism in {rounds} samples between modules of dimension {m.dims}")
    return IsoVerdict.UNDECIDED
