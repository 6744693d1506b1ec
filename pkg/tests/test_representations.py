"""Tests for representations: Hom, Ext, τ and presentations of modules."""

import numpy as np
import pytest

from gtame.algebra import ProjectiveMap
from gtame.calculus import sample_general
from gtame.representations import (
    IsoVerdict,
    Representation,
    cokernel,
    ext1,
    hom_dim,
    hom_space,
    isomorphic,
    minimal_presentation,
    quotient,
    radical_and_top,
    tau,
)


def kronecker_module(alg, matrices):
    return Representation(alg, (1, 1), tuple(np.array([[x]], dtype=np.int64) for x in matrices))


@pytest.mark.unit
class TestHom:
    """Hom spaces between small modules."""

    def test_hom_from_projective_is_evaluation(self, a3_rel):
        m = a3_rel.injective(2)
        for i in range(a3_rel.n):
            assert hom_dim(a3_rel.projective(i), m) == m.dims[i]

    def test_simples(self, a2):
        s1, s2 = Representation.simple(a2, 0), Representation.simple(a2, 1)
        assert hom_dim(s1, s1) == 1
        assert hom_dim(s1, s2) == 0
        assert hom_dim(a2.projective(0), s1) == 1
        assert hom_dim(s2, a2.projective(0)) == 1

    def test_hom_space_basis_are_morphisms(self, k2):
        m = kronecker_module(k2, (1, 0))
        space = hom_space(m, m.direct_sum(m))
        assert space.dimension == 2
        assert all(phi.is_morphism() for phi in space.basis)

    def test_projectives_satisfy_relations(self, a3_rel):
        for i in range(a3_rel.n):
            assert a3_rel.projective(i).satisfies_relations()
            assert a3_rel.injective(i).satisfies_relations()


@pytest.mark.unit
class TestExt:
    def test_a2_simples(self, a2):
        s1, s2 = Representation.simple(a2, 0), Representation.simple(a2, 1)
        assert ext1(s1, s2) == 1
        assert ext1(s2, s1) == 0

    def test_projective_has_no_ext(self, k3):
        p = k3.projective(0)
        assert ext1(p, Representation.simple(k3, 1)) == 0

    def test_kronecker_simple(self, k3):
        # 0 -> S2^3 -> P1 -> S1 -> 0
        assert ext1(Representation.simple(k3, 0), Representation.simple(k3, 1)) == 3

    def test_bounded_by_tau_hom(self, a2, a3_rel, k3, cfg):
        # Ext¹(M, N) is dual to a quotient of Hom(N, τM)
        for alg, g, h in [(a2, (1, -1), (0, 1)), (a3_rel, (1, -1, 1), (0, 1, -1)), (k3, (1, -1), (2, -1))]:
            for a, b in zip(sample_general(alg, g, cfg, "left"), sample_general(alg, h, cfg, "right")):
                for m, n in [(a.cokernel, b.cokernel), (b.cokernel, a.cokernel)]:
                    assert ext1(m, n) <= hom_dim(n, tau(m))

    def test_g_vector_from_simples(self, a3_rel, k3, cfg):
        checked = 0
        for alg, g in [(a3_rel, (1, -1, 1)), (a3_rel, (2, 0, -1)), (k3, (1, -1)), (k3, (2, -1))]:
            simples = [Representation.simple(alg, i) for i in range(alg.n)]
            for pres in sample_general(alg, g, cfg):
                m = pres.cokernel
                expected = tuple(hom_dim(m, s) - ext1(m, s) for s in simples)
                assert minimal_presentation(m).g_vector == expected
                checked += 1
        assert checked == 20


@pytest.mark.unit
class TestQuotients:
    def test_cokernel_of_alpha(self, a2):
        pm = ProjectiveMap.from_vector(a2, (1,), (0,), np.array([1]))
        assert cokernel(pm).dims == (1, 0)

    def test_radical_and_top(self, k3):
        rt = radical_and_top(k3.projective(0))
        assert rt.top == (1, 0)
        assert rt.radical.dims == (0, 3)

    def test_quotient_by_socle(self, a2):
        p = a2.projective(0)
        q, proj = quotient(p, [np.zeros((1, 0), dtype=np.int64), np.eye(1, dtype=np.int64)])
        assert q.dims == (1, 0)
        assert proj.is_morphism()


@pytest.mark.unit
class TestTranslate:
    """Auslander-Reiten translate through the Nakayama functor."""

    def test_a2_tau_of_simple_top(self, a2):
        assert tau(Representation.simple(a2, 0)).dims == (0, 1)

    def test_tau_of_projective_is_zero(self, a3_rel):
        for i in range(a3_rel.n):
            assert tau(a3_rel.projective(i)).is_zero()

    def test_kronecker_regular_is_fixed(self, k2):
        m = kronecker_module(k2, (1, 3))
        assert tau(m).dims == (1, 1)

    def test_kronecker_simple(self, k3):
        # kernel of I2^3 -> I1
        assert tau(Representation.simple(k3, 0)).dims == (8, 3)


@pytest.mark.unit
class TestMinimalPresentation:
    def test_simple_top(self, a2):
        pres = minimal_presentation(Representation.simple(a2, 0))
        assert pres.g_vector == (1, -1)
        assert pres.is_minimal()

    def test_projective(self, k3):
        pres = minimal_presentation(k3.projective(0))
        assert pres.g_vector == (1, 0)

    def test_cokernel_roundtrip(self, a3_rel, cfg):
        for pres in sample_general(a3_rel, (1, -1, 1), cfg):
            m = pres.cokernel
            again = minimal_presentation(m).cokernel
            assert again.dims == m.dims


@pytest.mark.unit
class TestIsomorphic:
    def test_same_module(self, k2):
        m = kronecker_module(k2, (1, 2))
        assert isomorphic(m, m, np.random.default_rng(0)) is IsoVerdict.ISOMORPHIC

    def test_different_regular_modules(self, k2):
        m = kronecker_module(k2, (1, 2))
        n = kronecker_module(k2, (1, 5))
        assert isomorphic(m, n, np.random.default_rng(0)) is IsoVerdict.NON_ISOMORPHIC

    def test_dimension_mismatch(self, a2):
        s1, s2 = Representation.simple(a2, 0), Representation.simple(a2, 1)
        assert isomorphic(s1, s2, np.random.default_rng(0)) is IsoVerdict.NON_ISOMORPHIC
