"""Process-wide caches shared by the library modules."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .algebra import AlgebraSpec, BoundQuiverAlgebra

logger = logging.getLogger(__name__)

# Realized algebras keyed by (spec digest, prime); lazily filled.
_algebras: dict[tuple[str, int], BoundQuiverAlgebra] = {}


def get_algebra(spec: AlgebraSpec, prime: int) -> BoundQuiverAlgebra:
    """Return the realization of spec over F_prime, building it on first use."""
    key = (spec.digest(), int(prime))
    algebra = _algebras.get(key)
    if algebra is None:
        from .algebra import build_algebra

        logger.debug(f"Realizing algebra {spec.digest()[:12]} over F_{prime}")
        algebra = build_algebra(spec, prime)
        _algebras[key] = algebra
    return algebra


def register_algebra(algebra: BoundQuiverAlgebra) -> None:
    _algebras.setdefault((algebra.spec.digest(), algebra.field.p), algebra)


def clear_algebras() -> None:
    """Drop every cached realization (used by tests)."""
    _algebras.clear()
