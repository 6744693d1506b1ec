"""Random search for algebras where |ind(t·g)| drops below |ind(g)|.

Each trial draws an algebra and a g-vector from its own sampling stream, so
any finding can be replayed from (seed, trial) alone. An empty findings
list is not evidence that no counterexample exists.
"""

from __future__ import annotations

import logging
from collections import defaultdict

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .algebra import AlgebraSpec, ArrowSpec, RelationTerm
from .calculus import ind_sequence
from .config import SampleConfig
from .core import get_algebra
from .errors import AlgebraSpecError
from .presentations import GVector

logger = logging.getLogger(__name__)


class HuntBounds(BaseModel):
    max_vertices: int = Field(default=3, ge=1, description="Largest quiver drawn")
    max_arrows: int = Field(default=4, ge=0)
    relations: int = Field(default=1, ge=0, description="Random relations besides the monomial bound")
    nilpotency: int = Field(default=3, ge=2, description="Every path of this length is declared zero")
    g_max: int = Field(default=2, ge=1, description="Entries of g lie in [-g_max, g_max]")
    t_max: int = Field(default=3, ge=2, description="Largest multiple compared against g")

    @model_validator(mode="after")
    def _check_size(self) -> HuntBounds:
        if self.max_arrows ** (self.nilpotency) > 4096:
            raise ValueError("max_arrows ** nilpotency must stay below 4096")
        return self


class Finding(BaseModel):
    trial: int
    seed: int
    prime: int
    algebra: AlgebraSpec
    g: list[int]
    t: int
    ind_g: int
    ind_tg: int


class HuntResult(BaseModel):
    bounds: HuntBounds
    budget: int
    trials_run: int
    skipped: int = Field(description="Trials whose algebra was rejected")
    low_confidence: int = Field(description="Trials with a drop seen only at low confidence")
    findings: list[Finding]


def _paths(arrows: list[ArrowSpec], length: int) -> dict[tuple[int, int], list[tuple[str, ...]]]:
    """Paths of the given length grouped by (source, target), names leftmost applied last."""
    walks: list[tuple[int, int, tuple[str, ...]]] = [(a.source, a.target, (a.name,)) for a in arrows]
    for _ in range(length - 1):
        walks = [(s, a.target, (a.name, *names)) for s, t, names in walks for a in arrows if a.source == t]
    grouped: dict[tuple[int, int], list[tuple[str, ...]]] = defaultdict(list)
    for s, t, names in walks:
        grouped[(s, t)].append(names)
    return dict(grouped)


def random_algebra_spec(bounds: HuntBounds, rng: np.random.Generator) -> AlgebraSpec:
    """Random bound quiver inside the bounds.

    Loops and cycles are allowed; every path of length ``nilpotency`` is added
    as a monomial relation so the declared bound is always implied.
    """
    n = int(rng.integers(1, bounds.max_vertices + 1))
    arrows = [
        ArrowSpec(name=f"x{k + 1}", source=int(rng.integers(1, n + 1)), target=int(rng.integers(1, n + 1)))
        for k in range(int(rng.integers(0, bounds.max_arrows + 1)))
    ]
    relations: list[tuple[RelationTerm, ...]] = []

    candidates = [
        paths
        for length in range(2, bounds.nilpotency)
        for paths in sorted(_paths(arrows, length).items())
    ]
    for _ in range(bounds.relations if candidates else 0):
        _, parallel = candidates[int(rng.integers(0, len(candidates)))]
        picked = rng.choice(len(parallel), size=min(len(parallel), int(rng.integers(1, 3))), replace=False)
        coeffs = rng.choice([-2, -1, 1, 2], size=len(picked))
        relations.append(tuple(RelationTerm(coeff=int(c), path=parallel[int(i)]) for i, c in zip(picked, coeffs)))

    for _, paths in sorted(_paths(arrows, bounds.nilpotency).items()):
        relations.extend((RelationTerm(coeff=1, path=p),) for p in paths)

    return AlgebraSpec(
        vertices=n, arrows=tuple(arrows), relations=tuple(relations), nilpotency=bounds.nilpotency, name="random"
    )


def replay_trial(bounds: HuntBounds, cfg: SampleConfig, trial: int) -> tuple[AlgebraSpec, GVector]:
    """The algebra and g-vector drawn by a trial; depends only on (seed, bounds, trial)."""
    rng = cfg.rng("hunt", trial)
    spec = random_algebra_spec(bounds, rng)
    g: GVector = (0,) * spec.vertices
    while not any(g):
        g = tuple(int(x) for x in rng.integers(-bounds.g_max, bounds.g_max + 1, size=spec.vertices))
    return spec, g


def hunt(bounds: HuntBounds, budget: int, cfg: SampleConfig) -> HuntResult:
    """Run ``budget`` trials and collect confident drops of |ind(t·g)|."""
    findings: list[Finding] = []
    skipped = low = 0
    for trial in range(budget):
        spec, g = replay_trial(bounds, cfg, trial)
        try:
            algebra = get_algebra(spec, cfg.prime)
        except AlgebraSpecError as e:
            logger.debug(f"Trial {trial}: algebra rejected ({e})")
            skipped += 1
            continue

        sequence = ind_sequence(algebra, g, bounds.t_max, cfg)
        if sequence.decrease_witness is None:
            continue
        if sequence.low_confidence:
            low += 1
            continue
        counts = {e.t: e.count for e in sequence.entries}
        s, t = sequence.decrease_from or 1, sequence.decrease_witness
        logger.info(f"Trial {trial}: |ind| drops from {counts[s]} to {counts[t]} at {t // s}·({s}·g) for g = {g}")
        findings.append(
            Finding(
                trial=trial,
                seed=cfg.seed,
                prime=cfg.prime,
                algebra=spec,
                g=[s * x for x in g],
                t=t // s,
                ind_g=counts[s],
                ind_tg=counts[t],
            )
        )
    return HuntResult(
        bounds=bounds, budget=budget, trials_run=budget, skipped=skipped, low_confidence=low, findings=findings
    )
