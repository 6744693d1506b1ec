"""E-invariants, direct sums and generic decompositions of g-vectors.

Every quantity here is estimated from general presentations sampled with
:func:`sample_general`. Sampled minima are upper bounds of the true generic
values and decompositions can only under-split; both are exact with high
probability.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from .algebra import BoundQuiverAlgebra, ProjectiveMap
from .config import AGREEMENT_THRESHOLD, SampleConfig
from .errors import DimensionMismatch, GTameError, LowConfidence
from .linalg import integer_rank
from .presentations import GVector, Presentation, fitting_split, homotopy_hom_dim

logger = logging.getLogger(__name__)

Semantics = Literal["exact", "upper-bound-whp", "bounded-exhausted"]


# ----------------------------------------------------------------------
# g-vector arithmetic
# ----------------------------------------------------------------------


def as_gvector(algebra: BoundQuiverAlgebra, g: Sequence[int]) -> GVector:
    g = tuple(int(x) for x in g)
    if len(g) != algebra.n:
        raise DimensionMismatch(f"g-vector {g} has {len(g)} entries, the algebra has {algebra.n} vertices")
    return g


def split(g: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(plus, minus) with g = plus − minus and disjoint supports."""
    return tuple(max(x, 0) for x in g), tuple(max(-x, 0) for x in g)


def scale(g: Sequence[int], t: int) -> GVector:
    return tuple(int(t) * int(x) for x in g)


def is_positive(g: Sequence[int]) -> bool:
    return all(x >= 0 for x in g)


def is_negative(g: Sequence[int]) -> bool:
    return all(x <= 0 for x in g)


def expand(counts: Sequence[int]) -> tuple[int, ...]:
    """Projective types listed with multiplicity, sorted by vertex."""
    return tuple(i for i, c in enumerate(counts) for _ in range(c))


def _aligned(algebra: BoundQuiverAlgebra, cfg: SampleConfig) -> BoundQuiverAlgebra:
    return algebra.over(cfg.prime)


# ----------------------------------------------------------------------
# Sampling
# ----------------------------------------------------------------------


@lru_cache(maxsize=1024)
def _samples(algebra: BoundQuiverAlgebra, g: GVector, cfg: SampleConfig, stream: str) -> tuple[Presentation, ...]:
    plus, minus = split(g)
    source, target = expand(minus), expand(plus)
    size = int(ProjectiveMap.support(algebra, source, target).sum())
    out = []
    for index in range(cfg.samples):
        rng = cfg.rng(algebra.field.p, stream, g, index)
        vector = algebra.field.random_matrix(1, size, rng)[0]
        out.append(Presentation(ProjectiveMap.from_vector(algebra, source, target, vector)))
    return tuple(out)


def sample_general(
    algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig, stream: str = "general"
) -> list[Presentation]:
    """cfg.samples uniform elements of Hom(P^{g-}, P^{g+}).

    Samples are keyed by (seed, prime, stream, g, index), so the k-th sample
    does not depend on how many are drawn or on call order.
    """
    g = as_gvector(algebra, g)
    return list(_samples(algebra, g, cfg, stream))


# ----------------------------------------------------------------------
# E-invariants and direct sums
# ----------------------------------------------------------------------


@lru_cache(maxsize=1024)
def _pair_matrices(
    algebra: BoundQuiverAlgebra, g: GVector, h: GVector, cfg: SampleConfig
) -> tuple[np.ndarray, np.ndarray]:
    """[i, j] = e(a_i, b_j) and e(b_j, a_i) for left samples a of g and right samples b of h."""
    left = _samples(algebra, g, cfg, "left")
    right = _samples(algebra, h, cfg, "right")
    forward = np.zeros((len(left), len(right)), dtype=np.int64)
    backward = np.zeros_like(forward)
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            forward[i, j] = homotopy_hom_dim(a, b)
            backward[i, j] = homotopy_hom_dim(b, a)
    return forward, backward


def e_invariant(algebra: BoundQuiverAlgebra, g: Sequence[int], h: Sequence[int], cfg: SampleConfig) -> int:
    """Sampled e(g, h); zero without sampling when g is positive or h negative."""
    algebra = _aligned(algebra, cfg)
    g, h = as_gvector(algebra, g), as_gvector(algebra, h)
    if is_positive(g) or is_negative(h):
        return 0
    forward, _ = _pair_matrices(algebra, g, h, cfg)
    return int(forward.min())


@dataclass(frozen=True)
class DirectSumVerdict:
    holds: bool
    e_gh: int
    e_hg: int
    witness: tuple[int, int] | None
    exact: bool = False

    def __bool__(self) -> bool:
        return self.holds


def direct_sum_verdict(
    algebra: BoundQuiverAlgebra, g: Sequence[int], h: Sequence[int], cfg: SampleConfig
) -> DirectSumVerdict:
    """Decide g ⊕ h.

    A positive answer is certified by one sampled pair (a_i, b_j) with
    e(a_i, b_j) = 0 = e(b_j, a_i); a negative answer is high-probability.
    """
    algebra = _aligned(algebra, cfg)
    g, h = as_gvector(algebra, g), as_gvector(algebra, h)
    gh_trivial = is_positive(g) or is_negative(h)
    hg_trivial = is_positive(h) or is_negative(g)
    if gh_trivial and hg_trivial:
        return DirectSumVerdict(True, 0, 0, None, exact=True)
    forward, backward = _pair_matrices(algebra, g, h, cfg)
    if gh_trivial:
        forward = np.zeros_like(forward)
    if hg_trivial:
        backward = np.zeros_like(backward)
    both = np.argwhere((forward == 0) & (backward == 0))
    witness = (int(both[0][0]), int(both[0][1])) if both.size else None
    return DirectSumVerdict(witness is not None, int(forward.min()), int(backward.min()), witness)


def is_direct_sum(algebra: BoundQuiverAlgebra, g: Sequence[int], h: Sequence[int], cfg: SampleConfig) -> bool:
    return direct_sum_verdict(algebra, g, h, cfg).holds


def is_tame(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> bool:
    """2g = g ⊕ g."""
    return direct_sum_verdict(algebra, g, g, cfg).holds


# ----------------------------------------------------------------------
# Generic decomposition
# ----------------------------------------------------------------------


class SummandReport(BaseModel):
    g_vector: list[int]
    multiplicity: int
    indecomposable: bool = Field(default=True, description="Generically indecomposable (Monte-Carlo)")
    tame: bool
    negative: bool


class GenericDecompositionReport(BaseModel):
    g: list[int]
    summands: list[SummandReport]
    agreement_ratio: float = Field(description="Share of samples that produced the modal decomposition")
    primes: list[int]
    primes_agree: bool = Field(description="Every prime produced the same modal decomposition")
    coherent: bool = Field(description="Summands are pairwise direct sums and repeated summands are tame")
    ambiguous: bool = Field(default=False, description="Some summands could not be told apart")
    low_confidence: bool
    samples: int

    def ind(self) -> list[tuple[int, ...]]:
        return sorted(tuple(s.g_vector) for s in self.summands)


Decomposition = tuple[tuple[GVector, int], ...]


def _modal(votes: list[Decomposition]) -> Decomposition:
    counts = Counter(votes)
    best: Decomposition | None = None
    best_key = (-1, -1)
    for key in sorted(counts):
        rank = (counts[key], sum(m for _, m in key))
        if rank > best_key:
            best, best_key = key, rank
    return best if best is not None else ()


def _vote(algebra: BoundQuiverAlgebra, g: GVector, cfg: SampleConfig) -> tuple[list[Decomposition], bool]:
    votes = []
    ambiguous = False
    for index, pres in enumerate(_samples(algebra, g, cfg, "decomposition")):
        rng = cfg.rng(algebra.field.p, "fitting", g, index)
        counter: Counter = Counter()
        for summand in fitting_split(pres, rng, cfg.rounds):
            if summand.presentation.is_contractible_piece():
                logger.warning(f"General presentation of {g} has a contractible summand")
                continue
            counter[summand.g_vector] += summand.count
            ambiguous = ambiguous or summand.ambiguous
        votes.append(tuple(sorted(counter.items())))
    return votes, ambiguous


@lru_cache(maxsize=512)
def _generic_decomposition(algebra: BoundQuiverAlgebra, g: GVector, cfg: SampleConfig) -> GenericDecompositionReport:
    primes = cfg.primes()
    all_votes: list[Decomposition] = []
    modal_per_prime = []
    ambiguous = False
    for prime in primes:
        votes, amb = _vote(algebra.over(prime), g, cfg.with_prime(prime))
        all_votes.extend(votes)
        modal_per_prime.append(_modal(votes))
        ambiguous = ambiguous or amb
    best = _modal(all_votes)
    ratio = all_votes.count(best) / len(all_votes)
    primes_agree = all(m == best for m in modal_per_prime)

    recomposed = [0] * algebra.n
    for gv, mult in best:
        recomposed = [r + mult * x for r, x in zip(recomposed, gv)]
    if tuple(recomposed) != g:
        raise GTameError(f"summands of {g} recompose to {tuple(recomposed)}")

    summands = [
        SummandReport(
            g_vector=list(gv),
            multiplicity=mult,
            tame=is_tame(algebra, gv, cfg),
            negative=is_negative(gv),
        )
        for gv, mult in best
    ]
    coherent = True
    for k, (gv, mult) in enumerate(best):
        if mult > 1 and not summands[k].tame:
            coherent = False
        for gw, _ in best[k + 1 :]:
            if not is_direct_sum(algebra, gv, gw, cfg):
                coherent = False
    if not coherent:
        logger.warning(f"Generic decomposition of {g} failed the pairwise direct-sum check")

    low = ratio < AGREEMENT_THRESHOLD or not primes_agree
    if low:
        logger.warning(f"Low confidence decomposing {g}: agreement {ratio:.2f}, primes agree: {primes_agree}")
    return GenericDecompositionReport(
        g=list(g),
        summands=summands,
        agreement_ratio=ratio,
        primes=list(primes),
        primes_agree=primes_agree,
        coherent=coherent,
        ambiguous=ambiguous,
        low_confidence=low,
        samples=cfg.samples,
    )


def generic_decomposition(
    algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig
) -> GenericDecompositionReport:
    """Modal Krull-Schmidt decomposition of general presentations of g.

    Votes from every sample on every confirmation prime are pooled; ties go
    to the decomposition with more summands.
    """
    algebra = _aligned(algebra, cfg)
    return _generic_decomposition(algebra, as_gvector(algebra, g), cfg)


def ind_summands(
    algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig, strict: bool = False
) -> list[GVector]:
    """Distinct generically indecomposable summands of g.

    Raises:
        LowConfidence: strict is set and the decomposition is low confidence
    """
    report = generic_decomposition(algebra, g, cfg)
    if strict and report.low_confidence:
        raise LowConfidence(f"decomposition of {tuple(g)} is low confidence", report)
    return report.ind()


@dataclass(frozen=True)
class IndCount:
    count: int
    exceeds_bound: bool


def count_ind(algebra: BoundQuiverAlgebra, g: Sequence[int], cfg: SampleConfig) -> IndCount:
    """|ind(g)|, flagged when it exceeds the number of vertices."""
    count = len(ind_summands(algebra, g, cfg))
    exceeds = count > algebra.n
    if exceeds:
        logger.warning(f"|ind({tuple(g)})| = {count} exceeds n = {algebra.n}")
    return IndCount(count, exceeds)


def linear_independence(vectors: Iterable[Sequence[int]]) -> bool:
    """Exact test over Q."""
    vs = [tuple(v) for v in vectors]
    if not vs:
        return True
    return integer_rank(vs) == len(vs)


# ----------------------------------------------------------------------
# Bounded probes of the scaling conditions
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DProbe:
    found: bool
    witness: int | None

    @property
    def exhausted(self) -> bool:
        return not self.found


def in_d_self(algebra: BoundQuiverAlgebra, h: Sequence[int], t_max: int, cfg: SampleConfig) -> DProbe:
    """Search t = 1..t_max for h + t·h = h ⊕ t·h."""
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    for t in range(1, t_max + 1):
        if is_direct_sum(algebra, h, scale(h, t), cfg):
            return DProbe(True, t)
    return DProbe(False, None)


class IndSequenceEntry(BaseModel):
    t: int
    count: int


class IndSequence(BaseModel):
    entries: list[IndSequenceEntry]
    decrease_witness: int | None = Field(default=None, description="Smallest t with |ind(t·g)| < |ind(s·g)| for some s | t")
    decrease_from: int | None = Field(default=None, description="The smallest such s for the witness t")
    low_confidence: bool = False


def ind_sequence(algebra: BoundQuiverAlgebra, g: Sequence[int], t_max: int, cfg: SampleConfig) -> IndSequence:
    """|ind(t·g)| for t = 1..t_max, flagging any drop between multiples s | t."""
    entries = []
    low = False
    for t in range(1, t_max + 1):
        report = generic_decomposition(algebra, scale(g, t), cfg)
        low = low or report.low_confidence
        entries.append(IndSequenceEntry(t=t, count=len(report.summands)))
    counts = {e.t: e.count for e in entries}
    drop = next(((s, t) for t in counts for s in counts if s < t and t % s == 0 and counts[t] < counts[s]), None)
    if drop is None:
        return IndSequence(entries=entries, low_confidence=low)
    s, t = drop
    logger.warning(f"|ind(t·g)| drops from {counts[s]} at t = {s} to {counts[t]} at t = {t} for g = {tuple(g)}")
    return IndSequence(entries=entries, decrease_witness=t, decrease_from=s, low_confidence=low)


class ConditionWitness(BaseModel):
    h: list[int]
    t: int


class ConditionVerdict(BaseModel):
    verdict: Literal["pass", "fail", "exhausted"]
    semantics: Semantics
    witness: ConditionWitness | None = None


class ConditionsReport(BaseModel):
    g: list[int]
    t_max: int
    wild_summands: list[list[int]]
    ray: ConditionVerdict
    regularity: ConditionVerdict
    non_decreasing: ConditionVerdict
    chain_consistent: bool = Field(description="Witnessed failures respect ray ⇒ regularity ⇒ non-decreasing")
    ind_sequence: IndSequence
    low_confidence: bool


def _combine(per_summand: list[tuple[str, Semantics, ConditionWitness | None]]) -> ConditionVerdict:
    for verdict, semantics, witness in per_summand:
        if verdict == "fail":
            return ConditionVerdict(verdict="fail", semantics=semantics, witness=witness)
    if all(v == "pass" for v, _, _ in per_summand):
        return ConditionVerdict(verdict="pass", semantics="exact")
    return ConditionVerdict(verdict="exhausted", semantics="bounded-exhausted")


def check_conditions(
    algebra: BoundQuiverAlgebra, g: Sequence[int], t_max: int, cfg: SampleConfig
) -> ConditionsReport:
    """Bounded probes of the ray, regularity and non-decreasing conditions."""
    from .components import injective_scaling_wild

    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    algebra = _aligned(algebra, cfg)
    g = as_gvector(algebra, g)
    report = generic_decomposition(algebra, g, cfg)
    low = report.low_confidence
    wild = [tuple(s.g_vector) for s in report.summands if not s.tame]

    ray, regularity, non_decreasing = [], [], []
    consistent = True
    for h in wild:
        ray_fail = None
        for t in range(2, t_max + 1):
            scaled = generic_decomposition(algebra, scale(h, t), cfg)
            low = low or scaled.low_confidence
            if len(scaled.summands) != 1 or scaled.summands[0].multiplicity != 1:
                ray_fail = t
                break
        ray.append(
            ("fail", "upper-bound-whp", ConditionWitness(h=list(h), t=ray_fail))
            if ray_fail
            else ("exhausted", "bounded-exhausted", None)
        )

        reg_fail = None
        if injective_scaling_wild(algebra, h, cfg):
            regularity.append(("pass", "exact", None))
        else:
            reg_fail = next((t for t in range(2, t_max + 1) if is_tame(algebra, scale(h, t), cfg)), None)
            regularity.append(
                ("fail", "upper-bound-whp", ConditionWitness(h=list(h), t=reg_fail))
                if reg_fail
                else ("exhausted", "bounded-exhausted", None)
            )

        probe = in_d_self(algebra, h, t_max, cfg)
        non_decreasing.append(
            ("fail", "upper-bound-whp", ConditionWitness(h=list(h), t=probe.witness))
            if probe.found
            else ("exhausted", "bounded-exhausted", None)
        )

        # A failure lower in the chain forces a ray failure at a computable multiple.
        if reg_fail and 2 * reg_fail <= t_max and not ray_fail:
            consistent = False
        if probe.found and probe.witness is not None and probe.witness + 1 <= t_max and not ray_fail:
            consistent = False
    if not consistent:
        logger.warning(f"Condition probes for {g} violate the implication chain; raise the sample count")

    return ConditionsReport(
        g=list(g),
        t_max=t_max,
        wild_summands=[list(h) for h in wild],
        ray=_combine(ray),
        regularity=_combine(regularity),
        non_decreasing=_combine(non_decreasing),
        chain_consistent=consistent,
        ind_sequence=ind_sequence(algebra, g, t_max, cfg),
        low_confidence=low,
    )
