"""Numerics of the component Z_g of general cokernels.

Dimension vectors, dim Z_g, sampled min-hom values and the closed forms of
the pairing ⟨g, d(g)⟩. Consistency identities are recorded as boolean
fields of :class:`ComponentReport` and logged when they fail.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Sequence
from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, Field

from .algebra import BoundQuiverAlgebra
from .calculus import (
    _aligned,
    _samples,
    as_gvector,
    e_invariant,
    generic_decomposition,
    is_negative,
    is_tame,
    split,
)
from .config import SampleConfig
from .errors import LowConfidence, NegativeSummandPresent, NotGenericallyInjective
from .presentations import GVector
from .representations import hom_dim, tau

logger = logging.getLogger(__name__)


def pairing(g: Sequence[int], d: Sequence[int]) -> int:
    """⟨g, d⟩ between projective and simple coordinates."""
    return sum(int(a) * int(b) for a, b in zip(g, d))


def gl_dim(d: Sequence[int]) -> int:
    """dim GL_d = Σ d_i²."""
    return sum(int(x) * int(x) for x in d)


class DimensionVectorEstimate(BaseModel):
    value: list[int]
    confident: bool = Field(description="All maximal-rank samples gave this vector")
    kept: int = Field(description="Samples of maximal rank")


@lru_cache(maxsize=512)
def _d_of_g(algebra: BoundQuiverAlgebra, g: GVector, cfg: SampleConfig) -> DimensionVectorEstimate:
    plus, _ = split(g)
    target = algebra.projective_dims(tuple(i for i, c in enumerate(plus) for _ in range(c)))
    ranked = []
    for pres in _samples(algebra, g, cfg, "left"):
        ranks = pres.map.ranks()
        ranked.append((sum(ranks), tuple(int(t - r) for t, r in zip(target, ranks))))
    best = max(total for total, _ in ranked)
    kept = [d for total, d in ranked if total == best]
    counts = Counter(kept)
    modal = min(counts, key=lambda d: (-counts[d], d))
    confident = len(counts) == 1
    if not confident:
        logger.warning(f"Maximal-rank samples of {g} disagree on the cokernel dimension vector")
    return DimensionVectorEstimate(value=list(modal), confident=confident, kept=len(kept))


def d_of_g(
    algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig, strict: bool = False
) -> DimensionVectorEstimate:
    """Dimension vector of a general cokernel, from maximal-rank samples.

    Raises:
        LowConfidence: strict is set and maximal-rank samples disagree
    """
    algebra = _aligned(algebra, cfg)
    estimate = _d_of_g(algebra, as_gvector(algebra, g), cfg)
    if strict and not estimate.confident:
        raise LowConfidence(f"cokernel dimension of {tuple(g)} is not stable across samples", estimate)
    return estimate


def dim_z(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> int:
    """dim Z_g = Σ d_i² − ⟨g, d(g)⟩."""
    d = d_of_g(algebra, g, cfg).value
    return gl_dim(d) - pairing(g, d)


def negative_part(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> GVector:
    """Sum of the negative summands in the generic decomposition of g."""
    out = [0] * algebra.n
    for s in generic_decomposition(algebra, g, cfg).summands:
        if s.negative:
            out = [o + s.multiplicity * x for o, x in zip(out, s.g_vector)]
    return tuple(out)


def _require_no_negative(algebra: BoundQuiverAlgebra, g: GVector, cfg: SampleConfig) -> None:
    neg = negative_part(algebra, g, cfg)
    if any(neg):
        raise NegativeSummandPresent(f"g-vector {g} has the negative summand {neg}")


def min_hom(algebra: BoundQuiverAlgebra, g: Sequence[int], h: Sequence[int], cfg: SampleConfig) -> int:
    """Sampled min hom(Coker a, Coker b) over general a of g and b of h.

    Raises:
        NegativeSummandPresent: g or h has a negative generic summand
    """
    algebra = _aligned(algebra, cfg)
    g, h = as_gvector(algebra, g), as_gvector(algebra, h)
    _require_no_negative(algebra, g, cfg)
    _require_no_negative(algebra, h, cfg)
    left = [p.cokernel for p in _samples(algebra, g, cfg, "left")]
    right = [p.cokernel for p in _samples(algebra, h, cfg, "right")]
    return min(hom_dim(m, n) for m in left for n in right)


class WildnessVerdict(BaseModel):
    verdict: Literal["tame", "wild"]
    g: list[int]
    stripped: list[int] = Field(description="Negative part removed before testing")
    min_hom_self: int
    pairing: int
    tame_by_e: bool
    consistent: bool = Field(description="Agrees with the E-invariant test")


def wildness_verdict(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> WildnessVerdict:
    """Wild iff min hom(Z_g, Z_g) > ⟨g, d(g)⟩, after forgetting negative summands."""
    algebra = _aligned(algebra, cfg)
    g = as_gvector(algebra, g)
    neg = negative_part(algebra, g, cfg)
    core = tuple(a - b for a, b in zip(g, neg))
    if any(core):
        mh = min_hom(algebra, core, core, cfg)
        pr = pairing(core, d_of_g(algebra, core, cfg).value)
    else:
        mh = pr = 0
    verdict: Literal["tame", "wild"] = "wild" if mh > pr else "tame"
    tame_by_e = is_tame(algebra, g, cfg)
    consistent = tame_by_e == (verdict == "tame")
    if not consistent:
        logger.warning(f"Wildness of {g}: min-hom test says {verdict}, E-invariant test disagrees")
    return WildnessVerdict(
        verdict=verdict, g=list(g), stripped=list(neg), min_hom_self=mh, pairing=pr, tame_by_e=tame_by_e, consistent=consistent
    )


def generically_injective(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> bool:
    algebra = _aligned(algebra, cfg)
    return any(p.map.is_injective() for p in _samples(algebra, as_gvector(algebra, g), cfg, "left"))


def closed_form_pairing(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> int:
    """⟨g, d(g)⟩ = Σ_{i,j} g_i g_j dim e_jΛe_i when a general element of Hom(g) is injective.

    Raises:
        NotGenericallyInjective: no sample was a monomorphism
    """
    algebra = _aligned(algebra, cfg)
    g = as_gvector(algebra, g)
    if not generically_injective(algebra, g, cfg):
        raise NotGenericallyInjective(f"no sampled element of Hom({g}) is injective")
    c = algebra.cartan
    return sum(g[i] * g[j] * int(c[j, i]) for i in range(algebra.n) for j in range(algebra.n))


def sink_set_supports(algebra: BoundQuiverAlgebra, a: Sequence[int], b: Sequence[int]) -> dict[int, list[int]]:
    """A_j = vertices of A with a nonzero path to j, for each j in B."""
    return {j: [i for i in a if algebra.cartan[j, i] > 0] for j in b}


def sink_set_pairing(algebra: BoundQuiverAlgebra, a: Sequence[int], b: Sequence[int]) -> int:
    """⟨g, d(g)⟩ for g = Σ_A [P_i] − Σ_B [P_j] with B a set of sinks.

    Raises:
        ValueError: B contains a vertex that is not a sink, or A meets B
        NotGenericallyInjective: some A_j is empty
    """
    a, b = sorted(set(a)), sorted(set(b))
    if set(a) & set(b):
        raise ValueError("A and B must be disjoint")
    sources = set(algebra.arrow_source)
    for j in b:
        if j in sources:
            raise ValueError(f"vertex {j + 1} is not a sink")
    for j, support in sink_set_supports(algebra, a, b).items():
        if not support:
            raise NotGenericallyInjective(f"no vertex of A has a path to sink {j + 1}")
    c = algebra.cartan
    within = sum(int(c[i, k]) for i in a for k in a)
    across = sum(int(c[j, i]) for i in a for j in b)
    return within - across + len(b)


def tau_hom_self_min(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> int:
    """Sampled min hom(M, τM) over general cokernels M of g."""
    algebra = _aligned(algebra, cfg)
    samples = _samples(algebra, as_gvector(algebra, g), cfg, "left")
    return min(hom_dim(p.cokernel, tau(p.cokernel)) for p in samples)


def injective_scaling_wild(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> bool:
    """Certificate that every multiple of g is wild.

    A general element of Hom(g) being injective gives d(tg) = t·d(g), so
    ⟨tg, d(tg)⟩ = t²⟨g, d(g)⟩ stays negative.
    """
    if not generically_injective(algebra, g, cfg):
        return False
    return pairing(g, d_of_g(algebra, g, cfg).value) < 0


class TauReducedReport(BaseModel):
    holds: bool
    e_matrix: list[list[int]]
    tau_matrix: list[list[int]] = Field(description="min hom(Z_j, τZ_i), computed from cokernels")
    cross_validated: bool


def tau_reduced_sum_check(algebra: BoundQuiverAlgebra, gs: Sequence[Sequence[int]], cfg: SampleConfig) -> TauReducedReport:
    """Whether Z_{g_1} ⊕ ... ⊕ Z_{g_s} is generically τ-reduced.

    Raises:
        NegativeSummandPresent: some g_i has a negative summand
    """
    algebra = _aligned(algebra, cfg)
    gs = [as_gvector(algebra, g) for g in gs]
    for g in gs:
        _require_no_negative(algebra, g, cfg)
    e = [[e_invariant(algebra, g, h, cfg) for h in gs] for g in gs]
    taus = {g: [tau(p.cokernel) for p in _samples(algebra, g, cfg, "left")] for g in set(gs)}
    cokernels = {h: [p.cokernel for p in _samples(algebra, h, cfg, "right")] for h in set(gs)}
    t = [[min(hom_dim(n, tm) for tm in taus[g] for n in cokernels[h]) for h in gs] for g in gs]
    holds = all(e[i][j] == 0 for i in range(len(gs)) for j in range(len(gs)) if i != j)
    cross = e == t
    if not cross:
        logger.warning("E-invariants and τ-hom values disagree on a sampled pair")
    return TauReducedReport(holds=holds, e_matrix=e, tau_matrix=t, cross_validated=cross)


class ComponentReport(BaseModel):
    g: list[int]
    d_of_g: list[int]
    dim_z: int
    component_count: int
    tame: bool
    pairing: int
    min_hom_self: int
    e_self: int
    gl_dim: int
    negative_part: list[int]
    tau_hom_self_min: int
    summands: list[list[int]]
    e_matrix: list[list[int]] = Field(description="Sampled e between distinct non-negative summands")
    d_additive: bool
    orbit_identity: bool = Field(description="e(g,g) + dim GL_d = dim Z_g + min hom(Z_g, Z_g)")
    sign_consistent: bool = Field(description="Tame implies ⟨g, d(g)⟩ ≥ 0")
    tau_positivity: bool = Field(description="⟨g, d(g)⟩ < 0 implies hom(M, τM) ≥ 1")
    orbit_bounds: bool = Field(description="min hom(Z_g, Z_g) ≤ dim GL_d and dim Z_g ≥ 0")
    count_bound: bool = Field(description="|Z_g| ≤ |ind(g)|, with equality iff no negative summand")
    low_confidence: bool


def component_report(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> ComponentReport:
    algebra = _aligned(algebra, cfg)
    g = as_gvector(algebra, g)
    decomposition = generic_decomposition(algebra, g, cfg)
    neg = negative_part(algebra, g, cfg)
    core = tuple(a - b for a, b in zip(g, neg))
    estimate = d_of_g(algebra, g, cfg)
    d = estimate.value
    gl = gl_dim(d)
    pr = pairing(g, d)

    nonneg = [(tuple(s.g_vector), s.multiplicity) for s in decomposition.summands if not is_negative(s.g_vector)]
    total = [0] * algebra.n
    for gv, mult in nonneg:
        total = [x + mult * y for x, y in zip(total, d_of_g(algebra, gv, cfg).value)]
    d_additive = total == d
    if not d_additive:
        logger.warning(f"d({g}) = {d} but the summands give {total}")
    count = sum(1 for gv, _ in nonneg if any(d_of_g(algebra, gv, cfg).value))

    if any(core):
        mh = min_hom(algebra, core, core, cfg)
        es = e_invariant(algebra, core, core, cfg)
        th = tau_hom_self_min(algebra, core, cfg)
    else:
        mh = es = th = 0
    tame = is_tame(algebra, g, cfg)
    dz = gl - pr

    has_negative = any(neg)
    checks = {
        "orbit_identity": es + gl == dz + mh,
        "sign_consistent": not (tame and pr < 0),
        "tau_positivity": pr >= 0 or th >= 1,
        "orbit_bounds": mh <= gl and dz >= 0,
        "count_bound": count <= len(decomposition.summands) and ((count == len(decomposition.summands)) != has_negative),
    }
    for name, ok in checks.items():
        if not ok:
            logger.warning(f"Component check {name} failed for {g}")

    return ComponentReport(
        g=list(g),
        d_of_g=d,
        dim_z=dz,
        component_count=count,
        tame=tame,
        pairing=pr,
        min_hom_self=mh,
        e_self=es,
        gl_dim=gl,
        negative_part=list(neg),
        tau_hom_self_min=th,
        summands=[list(gv) for gv, _ in nonneg],
        e_matrix=[[e_invariant(algebra, gv, gw, cfg) for gw, _ in nonneg] for gv, _ in nonneg],
        d_additive=d_additive,
        low_confidence=decomposition.low_confidence or not estimate.confident,
        **checks,
    )
