"""Two-term complexes of projectives.

A :class:`Presentation` wraps a :class:`~gtame.algebra.ProjectiveMap`
P⁻¹ -> P⁰. This module computes E-invariants of pairs of presentations,
splits presentations into indecomposable summands via Fitting's lemma and
strips contractible and negative summands.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import BoundQuiverAlgebra, ProjectiveMap
from .config import ISO_ROUNDS
from .representations import IsoVerdict, Representation, cokernel, subrepresentation, top_generators

logger = logging.getLogger(__name__)

GVector = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Presentation:
    map: ProjectiveMap

    @property
    def algebra(self) -> BoundQuiverAlgebra:
        return self.map.algebra

    @property
    def minus(self) -> tuple[int, ...]:
        """Vertex types of the summands of P⁻¹."""
        return self.map.source

    @property
    def plus(self) -> tuple[int, ...]:
        """Vertex types of the summands of P⁰."""
        return self.map.target

    @property
    def minus_multiplicities(self) -> tuple[int, ...]:
        counts = Counter(self.minus)
        return tuple(counts[i] for i in range(self.algebra.n))

    @property
    def plus_multiplicities(self) -> tuple[int, ...]:
        counts = Counter(self.plus)
        return tuple(counts[i] for i in range(self.algebra.n))

    @property
    def g_vector(self) -> GVector:
        return g_vector_of(self)

    @property
    def summand_count(self) -> int:
        return len(self.minus) + len(self.plus)

    @cached_property
    def cokernel(self) -> Representation:
        return cokernel(self.map)

    @classmethod
    def zero(cls, algebra: BoundQuiverAlgebra) -> Presentation:
        return cls(ProjectiveMap.zero(algebra, (), ()))

    @classmethod
    def positive(cls, algebra: BoundQuiverAlgebra, i: int) -> Presentation:
        """0 -> P_i."""
        return cls(ProjectiveMap.zero(algebra, (), (i,)))

    @classmethod
    def negative(cls, algebra: BoundQuiverAlgebra, i: int) -> Presentation:
        """P_i -> 0."""
        return cls(ProjectiveMap.zero(algebra, (i,), ()))

    @classmethod
    def contractible(cls, algebra: BoundQuiverAlgebra, i: int) -> Presentation:
        """P_i -id-> P_i."""
        return cls(ProjectiveMap.identity(algebra, (i,)))

    def is_contractible_piece(self) -> bool:
        return len(self.minus) == 1 and len(self.plus) == 1 and self.map.is_isomorphism()

    def is_negative_piece(self) -> bool:
        return len(self.minus) == 1 and not self.plus

    def is_minimal(self) -> bool:
        """image ⊆ rad P⁰ and ker ⊆ rad P⁻¹."""
        if self.map.top_matrix().any():
            return False
        return not any(tops.any() for tops in _kernel_tops(self.map).values())


def g_vector_of(pres: Presentation) -> GVector:
    """[P⁰] − [P⁻¹] in the basis of indecomposable projectives."""
    return tuple(int(p - m) for p, m in zip(pres.plus_multiplicities, pres.minus_multiplicities))


def direct_sum(a: Presentation, b: Presentation) -> Presentation:
    return Presentation(ProjectiveMap.direct_sum(a.map, b.map))


def direct_power(a: Presentation, t: int) -> Presentation:
    out = Presentation.zero(a.algebra)
    for _ in range(t):
        out = direct_sum(out, a)
    return out


# ----------------------------------------------------------------------
# Homotopy category
# ----------------------------------------------------------------------


def homotopy_hom_dim(a: Presentation, b: Presentation) -> int:
    """e(a, b) = dim Hom_K(a, b[1]).

    Every map P_a⁻¹ -> P_b⁰ is a chain map a -> b[1]; the null-homotopic ones
    are b∘h⁻¹ + h⁰∘a.
    """
    alg = a.algebra
    total = int(ProjectiveMap.support(alg, a.minus, b.plus).sum())
    if total == 0:
        return 0
    post = b.map.post_composition_matrix(a.minus)
    pre = a.map.pre_composition_matrix(b.plus)
    return total - alg.field.rank(np.hstack([post, pre]))


@dataclass(frozen=True, eq=False)
class ChainMap:
    """(u, v) with v∘a = b∘u for presentations a -> b."""

    u: ProjectiveMap
    v: ProjectiveMap

    def __add__(self, other: ChainMap) -> ChainMap:
        return ChainMap(self.u + other.u, self.v + other.v)

    def scale(self, c: int) -> ChainMap:
        return ChainMap(self.u.scale(c), self.v.scale(c))

    def compose(self, other: ChainMap) -> ChainMap:
        """self ∘ other."""
        return ChainMap(self.u.compose(other.u), self.v.compose(other.v))

    def evaluate(self, coefficients: Sequence[int]) -> ChainMap:
        """q(self) for q given highest degree first (endomorphisms only)."""
        alg = self.u.algebra
        one = ChainMap(ProjectiveMap.identity(alg, self.u.source), ProjectiveMap.identity(alg, self.v.source))
        out = one.scale(0)
        for c in coefficients:
            out = out.compose(self) + one.scale(c)
        return out

    def is_isomorphism(self) -> bool:
        return self.u.is_isomorphism() and self.v.is_isomorphism()


PresentationEndo = ChainMap


@dataclass(frozen=True)
class ChainMapSpace:
    source: Presentation
    target: Presentation
    basis: np.ndarray
    split: int

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    def element(self, coeffs: np.ndarray) -> ChainMap:
        alg = self.source.algebra
        vec = alg.field.matmul(self.basis, coeffs) if self.dimension else np.zeros(self.basis.shape[0], dtype=np.int64)
        u = ProjectiveMap.from_vector(alg, self.source.minus, self.target.minus, vec[: self.split])
        v = ProjectiveMap.from_vector(alg, self.source.plus, self.target.plus, vec[self.split :])
        return ChainMap(u, v)

    def sample(self, rng: np.random.Generator) -> ChainMap:
        alg = self.source.algebra
        return self.element(alg.field.random_matrix(1, self.dimension, rng)[0])


def chain_maps(a: Presentation, b: Presentation) -> ChainMapSpace:
    """Solve b∘u − v∘a = 0 for (u, v)."""
    alg = a.algebra
    f = alg.field
    post = b.map.post_composition_matrix(a.minus)
    pre = a.map.pre_composition_matrix(b.plus)
    system = np.hstack([post, (-pre) % f.p])
    return ChainMapSpace(a, b, f.nullspace_basis(system), post.shape[1])


def endomorphisms(a: Presentation) -> ChainMapSpace:
    return chain_maps(a, a)


def isomorphic(a: Presentation, b: Presentation, rng: np.random.Generator, rounds: int = ISO_ROUNDS) -> IsoVerdict:
    """Monte-Carlo search for an invertible chain map a -> b."""
    if sorted(a.minus) != sorted(b.minus) or sorted(a.plus) != sorted(b.plus):
        return IsoVerdict.NON_ISOMORPHIC
    forward = chain_maps(a, b)
    end_a = endomorphisms(a).dimension
    if forward.dimension != end_a or chain_maps(b, a).dimension != end_a or endomorphisms(b).dimension != end_a:
        return IsoVerdict.NON_ISOMORPHIC
    if a.summand_count == 0:
        return IsoVerdict.ISOMORPHIC
    for _ in range(rounds):
        if forward.sample(rng).is_isomorphism():
            return IsoVerdict.ISOMORPHIC
    return IsoVerdict.UNDECIDED


# ----------------------------------------------------------------------
# Fitting splitting
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SplitSummand:
    """A summand of a presentation, counted up to isomorphism.

    ``conjugates`` is the degree k of the residue field of End(presentation).
    When k > 1 the piece is indecomposable over F_p but splits into k
    Galois-conjugate summands over F_{p^k}, each with g-vector g/k.
    """

    presentation: Presentation
    multiplicity: int
    ambiguous: bool = False
    conjugates: int = 1

    @property
    def g_vector(self) -> GVector:
        return tuple(x // self.conjugates for x in self.presentation.g_vector)

    @property
    def count(self) -> int:
        """Summands over the algebraic closure."""
        return self.multiplicity * self.conjugates


def _stable_power(h: ProjectiveMap) -> ProjectiveMap:
    """h^N for N large enough that kernel and image have stabilized."""
    rank = h.rank()
    while rank:
        square = h.compose(h)
        next_rank = square.rank()
        if next_rank == rank:
            break
        h, rank = square, next_rank
    return h


def _standardize(h: ProjectiveMap) -> tuple[list[int], list[int], ProjectiveMap]:
    """Re-express the domain of a stable endomorphism h as image(h) ⊕ ker(h).

    Returns:
        (image types, kernel types, J) with J: ⊕P_image ⊕ ⊕P_kernel -> domain
        an isomorphism.
    """
    alg = h.algebra
    f = alg.field
    types = h.source
    rep = alg.projective_sum(types)
    image_bases, kernel_bases = [], []
    for k in range(alg.n):
        if rep.dims[k]:
            mat = h.realize(k)
            image_bases.append(f.column_basis(mat))
            kernel_bases.append(f.nullspace_basis(mat))
        else:
            image_bases.append(f.zeros(0, 0))
            kernel_bases.append(f.zeros(0, 0))
    sides = []
    for bases in (image_bases, kernel_bases):
        sub, _ = subrepresentation(rep, bases)
        gens = top_generators(sub)
        sides.append(([i for i, _ in gens], [f.matmul(bases[i], w) for i, w in gens]))
    (im_types, im_images), (ker_types, ker_images) = sides
    iso = ProjectiveMap.from_generator_images(alg, tuple(im_types + ker_types), types, im_images + ker_images)
    return im_types, ker_types, iso


def _split_along(a: Presentation, g: ChainMap) -> tuple[Presentation, Presentation]:
    u = _stable_power(g.u)
    v = _stable_power(g.v)
    im_minus, ker_minus, j_minus = _standardize(u)
    im_plus, ker_plus, j_plus = _standardize(v)
    conj = j_plus.inverse().compose(a.map).compose(j_minus)
    first_t, first_s = list(range(len(im_plus))), list(range(len(im_minus)))
    second_t = list(range(len(im_plus), len(conj.target)))
    second_s = list(range(len(im_minus), len(conj.source)))
    if conj.restrict(first_t, second_s).coeffs.any() or conj.restrict(second_t, first_s).coeffs.any():
        logger.warning("Fitting split produced a conjugate that is not block diagonal")
    return Presentation(conj.restrict(first_t, first_s)), Presentation(conj.restrict(second_t, second_s))


def _top(endo: ChainMap) -> np.ndarray:
    """Block-diagonal action of an endomorphism on top(P⁻¹) ⊕ top(P⁰)."""
    tops = [endo.u.top_matrix(), endo.v.top_matrix()]
    size = sum(t.shape[0] for t in tops)
    out = np.zeros((size, size), dtype=np.int64)
    offset = 0
    for t in tops:
        out[offset : offset + t.shape[0], offset : offset + t.shape[0]] = t
        offset += t.shape[0]
    return out


def _try_split(
    a: Presentation, rng: np.random.Generator, rounds: int
) -> tuple[tuple[Presentation, Presentation] | None, int]:
    """Look for a nontrivial Fitting decomposition of a.

    Each attempt factors the characteristic polynomial of a random
    endomorphism f on the top of a. Two coprime factors q, q' split a along
    the kernel and image of q(f)^N. When every attempt sees a power of a
    single irreducible, a is taken as indecomposable over F_p and the
    largest degree seen is the degree of the residue field of End(a).

    Returns:
        (parts, degree) where parts is None when no split was found
    """
    if a.summand_count <= 1:
        return None, 1
    space = endomorphisms(a)
    if space.dimension <= 1:
        return None, 1
    f = a.algebra.field
    degree = 1
    for attempt in range(rounds):
        endo = space.sample(rng)
        factors = f.factor(f.charpoly(_top(endo)))
        if len(factors) == 1:
            degree = max(degree, len(factors[0][0]) - 1)
            continue
        q, _ = factors[int(rng.integers(len(factors)))]
        h = endo.evaluate(q)
        if _stable_power(h.u).rank() == 0 and _stable_power(h.v).rank() == 0:
            continue
        logger.debug(f"Split {a.g_vector} on attempt {attempt + 1} along a factor of degree {len(q) - 1}")
        return _split_along(a, h), 1
    return None, degree


def split_fully(a: Presentation, rng: np.random.Generator, rounds: int) -> list[tuple[Presentation, int]]:
    """Summands of a that are indecomposable over F_p (with high probability), ungrouped.

    Each piece comes with the degree of the residue field of its
    endomorphism ring.
    """
    pending = [a]
    done: list[tuple[Presentation, int]] = []
    while pending:
        piece = pending.pop()
        if piece.summand_count == 0:
            continue
        parts, degree = _try_split(piece, rng, rounds)
        if parts is not None:
            pending.extend(parts)
            continue
        if degree > 1 and any(x % degree for x in piece.g_vector):
            logger.warning(f"Residue degree {degree} does not divide the g-vector {piece.g_vector}")
            degree = 1
        done.append((piece, degree))
    return done


def fitting_split(a: Presentation, rng: np.random.Generator, rounds: int) -> list[SplitSummand]:
    """Krull-Schmidt decomposition of a, grouped up to isomorphism.

    Pieces with equal g-vectors are merged only when the isomorphism test
    finds an invertible chain map; undecided pairs stay separate and are
    flagged ambiguous. A piece whose endomorphism ring has residue field
    F_{p^k} is reported with ``conjugates = k``.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    groups: list[list] = []  # [representative, multiplicity, ambiguous, degree]
    for piece, degree in split_fully(a, rng, rounds):
        placed = False
        for group in groups:
            if group[0].g_vector != piece.g_vector or group[3] != degree:
                continue
            verdict = isomorphic(group[0], piece, rng)
            if verdict is IsoVerdict.ISOMORPHIC:
                group[1] += 1
                placed = True
                break
            if verdict is IsoVerdict.UNDECIDED:
                group[2] = True
                logger.warning(f"Could not decide whether two summands with g-vector {piece.g_vector} are isomorphic")
                groups.append([piece, 1, True, degree])
                placed = True
                break
        if not placed:
            groups.append([piece, 1, False, degree])
    return [SplitSummand(p, m, amb, k) for p, m, amb, k in groups]


# ----------------------------------------------------------------------
# Minimization
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MinimizeResult:
    minimal: Presentation
    stripped_contractibles: tuple[int, ...]
    stripped_zero_targets: tuple[int, ...]


def _local_inverse(alg: BoundQuiverAlgebra, u: np.ndarray, i: int) -> np.ndarray:
    """Inverse of a unit u = c·e_i + (radical part) in e_iΛe_i."""
    f = alg.field
    e = np.zeros(alg.dim, dtype=np.int64)
    e[alg.idempotents[i]] = 1
    c_inv = f.inv(u[alg.idempotents[i]])
    w = (-(u - u[alg.idempotents[i]] * e) * c_inv) % f.p
    acc, power = e.copy(), e.copy()
    for _ in range(alg.m):
        power = alg.multiply(power, w)
        if not power.any():
            break
        acc = (acc + power) % f.p
    return (acc * c_inv) % f.p


def _kernel_tops(a: ProjectiveMap) -> dict[int, np.ndarray]:
    """Per vertex, a kernel basis of a stacked as [top coordinates; all coordinates]."""
    alg = a.algebra
    f = alg.field
    offsets = a.generator_offsets(a.source)
    out = {}
    for i in range(alg.n):
        positions = [offsets[s] for s, t in enumerate(a.source) if t == i]
        if not positions:
            continue
        kernel = f.nullspace_basis(a.realize(i))
        out[i] = kernel[positions] if kernel.shape[1] else np.zeros((len(positions), 0), dtype=np.int64)
    return out


def _strip_contractible(a: ProjectiveMap, counts: list[int]) -> ProjectiveMap:
    alg = a.algebra
    while True:
        top = a.top_matrix()
        hits = np.argwhere(top)
        if hits.size == 0:
            return a
        t, s = (int(v) for v in hits[0])
        i = a.source[s]
        unit_inv = _local_inverse(alg, a.coeffs[t, s], i)
        # Clear row t by an automorphism of P⁻¹.
        phi = ProjectiveMap.identity(alg, a.source)
        for s2 in range(len(a.source)):
            if s2 != s:
                phi.coeffs[s, s2] = (-alg.multiply(a.coeffs[t, s2], unit_inv)) % alg.field.p
        a = a.compose(phi)
        # Clear column s by an automorphism of P⁰.
        psi = ProjectiveMap.identity(alg, a.target)
        for t2 in range(len(a.target)):
            if t2 != t:
                psi.coeffs[t2, t] = (-alg.multiply(unit_inv, a.coeffs[t2, s])) % alg.field.p
        a = psi.compose(a)
        counts[i] += 1
        a = a.restrict(
            [k for k in range(len(a.target)) if k != t],
            [k for k in range(len(a.source)) if k != s],
        )


def _strip_zero_targets(a: ProjectiveMap, counts: list[int]) -> ProjectiveMap:
    alg = a.algebra
    f = alg.field
    offsets = a.generator_offsets(a.source)
    images = []
    for s, i in enumerate(a.source):
        v = np.zeros(int(alg.projective_dims(a.source)[i]), dtype=np.int64)
        v[offsets[s]] = 1
        images.append(v)
    dropped: list[int] = []
    for i in range(alg.n):
        summands = [s for s, t in enumerate(a.source) if t == i]
        if not summands:
            continue
        kernel = f.nullspace_basis(a.realize(i))
        if kernel.shape[1] == 0:
            continue
        tops = kernel[[offsets[s] for s in summands]]
        reduced, pivots = f.rref(np.hstack([tops.T, kernel.T]))
        for row, col in enumerate(pivots):
            if col >= len(summands):
                break
            s = summands[col]
            images[s] = reduced[row, len(summands) :]
            dropped.append(s)
            counts[i] += 1
    if not dropped:
        return a
    phi = ProjectiveMap.from_generator_images(alg, a.source, a.source, images)
    a = a.compose(phi)
    return a.restrict(list(range(len(a.target))), [s for s in range(len(a.source)) if s not in set(dropped)])


def minimize(a: Presentation) -> MinimizeResult:
    """Strip summands P -≅-> P and P -> 0; the cokernel is unchanged."""
    alg = a.algebra
    contractible = [0] * alg.n
    zero_targets = [0] * alg.n
    pm = _strip_contractible(a.map, contractible)
    pm = _strip_zero_targets(pm, zero_targets)
    result = Presentation(pm)
    if not result.is_minimal():
        logger.warning(f"Minimization of {a.g_vector} left a non-minimal presentation")
    return MinimizeResult(result, tuple(contractible), tuple(zero_targets))
