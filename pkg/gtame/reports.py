"""Machine-readable documents emitted by the CLI.

Every number is wrapped in a :class:`Quantity` carrying its semantics:
``exact`` for deterministic values, ``upper-bound-whp`` for sampled
estimates that are one-sided and exact with high probability, and
``bounded-exhausted`` for searches that ran to their bound without a witness.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

from . import __version__
from .algebra import BoundQuiverAlgebra
from .calculus import ConditionsReport, GenericDecompositionReport, Semantics
from .components import ComponentReport, TauReducedReport
from .config import SampleConfig
from .hunt import HuntResult


class Quantity(BaseModel):
    value: Any
    semantics: Semantics


def exact(value: Any) -> Quantity:
    return Quantity(value=value, semantics="exact")


def whp(value: Any) -> Quantity:
    return Quantity(value=value, semantics="upper-bound-whp")


class ConfigEcho(BaseModel):
    primes: list[int]
    seed: int
    samples: int
    rounds: int
    cross_primes: int

    @classmethod
    def of(cls, cfg: SampleConfig) -> ConfigEcho:
        return cls(
            primes=list(cfg.primes()),
            seed=cfg.seed,
            samples=cfg.samples,
            rounds=cfg.rounds,
            cross_primes=cfg.cross_primes,
        )


class AlgebraEcho(BaseModel):
    name: str
    digest: str = Field(description="sha256 of the canonical algebra document")
    vertices: int

    @classmethod
    def of(cls, algebra: BoundQuiverAlgebra) -> AlgebraEcho:
        return cls(name=algebra.name, digest=algebra.spec.digest(), vertices=algebra.n)


class Document(BaseModel):
    command: str
    version: str = __version__
    config: ConfigEcho
    algebra: AlgebraEcho | None = None


class AlgebraCheckDocument(Document):
    dimension: Quantity
    cartan: Quantity
    projective_dims: list[list[int]]
    injective_dims: list[list[int]]
    basis: list[str]
    associative: bool


class DecompositionDocument(Document):
    g: list[int]
    summand_count: Quantity
    decomposition: GenericDecompositionReport


class EInvariantDocument(Document):
    g: list[int]
    h: list[int]
    e_gh: Quantity
    e_hg: Quantity
    direct_sum: Quantity


class TameDocument(Document):
    g: list[int]
    tame: Quantity
    e_self: Quantity


class DimensionVectorDocument(Document):
    g: list[int]
    d: Quantity
    confident: bool
    kept: int


class ZDimDocument(Document):
    g: list[int]
    d: Quantity
    gl_dim: Quantity
    dim_z: Quantity


class PairingDocument(Document):
    g: list[int]
    d: Quantity
    pairing: Quantity
    closed_form: Quantity | None = Field(default=None, description="Only when Hom(g) is generically injective")


class ComponentDocument(Document):
    d: Quantity
    dim_z: Quantity
    component_count: Quantity
    pairing: Quantity
    verdict: Quantity
    component: ComponentReport


class ConditionsDocument(Document):
    conditions: ConditionsReport


class TauReducedDocument(Document):
    holds: Quantity
    check: TauReducedReport


class HuntDocument(Document):
    findings_count: Quantity
    hunt: HuntResult
