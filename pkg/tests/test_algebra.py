"""Tests for bound quiver algebras and maps between projectives."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from gtame import fixtures
from gtame.algebra import AlgebraSpec, ProjectiveMap, build_algebra
from gtame.errors import MalformedRelation, NotAdmissible
from gtame.representations import hom_dim

LINE3 = [
    {"name": "alpha", "source": 1, "target": 2},
    {"name": "beta", "source": 2, "target": 3},
]


def spec(**kwargs) -> AlgebraSpec:
    return AlgebraSpec.model_validate({"vertices": 3, "arrows": LINE3, "relations": [], "nilpotency": 3, **kwargs})


@pytest.mark.unit
class TestFixtures:
    """Dimensions and Cartan matrices of the shipped algebras."""

    def test_a1(self, a1):
        assert a1.dim == 1
        assert a1.cartan.tolist() == [[1]]

    def test_a2(self, a2):
        assert a2.dim == 3
        assert a2.cartan.tolist() == [[1, 0], [1, 1]]

    def test_a3(self, a3):
        assert a3.dim == 6

    def test_a3_rel(self, a3_rel):
        assert a3_rel.dim == 5
        assert not a3_rel.element(("beta", "alpha")).any()

    def test_kronecker(self, kronecker):
        for m, alg in kronecker.items():
            assert alg.dim == 2 + m
            assert alg.cartan.tolist() == [[1, 0], [m, 1]]

    def test_projective_dims(self, k3):
        assert k3.projective(0).dims == (1, 3)
        assert k3.projective(1).dims == (0, 1)
        assert k3.injective(1).dims == (3, 1)

    def test_associative(self, a3, a3_rel, k3):
        for alg in (a3, a3_rel, k3):
            assert alg.check_associativity()

    def test_resolve_names(self):
        assert fixtures.resolve("A3-rel").name == "a3_rel.json"
        assert fixtures.resolve("k5").name == "k5.json"
        assert str(fixtures.resolve("some/file.json")) == "some/file.json"


@pytest.mark.unit
class TestSpec:
    """Validation of algebra documents."""

    def test_endpoint_out_of_range(self):
        with pytest.raises(ValidationError):
            AlgebraSpec.model_validate(
                {"vertices": 1, "arrows": [{"name": "a", "source": 1, "target": 2}], "nilpotency": 2}
            )

    def test_duplicate_arrow_names(self):
        with pytest.raises(ValidationError):
            AlgebraSpec.model_validate(
                {
                    "vertices": 2,
                    "arrows": [{"name": "a", "source": 1, "target": 2}, {"name": "a", "source": 1, "target": 2}],
                    "nilpotency": 2,
                }
            )

    def test_digest_ignores_name(self):
        assert spec(name="x").digest() == spec(name="y").digest()
        assert spec().digest() != spec(nilpotency=4).digest()

    def test_load_defaults_name_to_stem(self, tmp_path):
        path = tmp_path / "line.json"
        path.write_text(json.dumps({"vertices": 3, "arrows": LINE3, "nilpotency": 3}))
        assert AlgebraSpec.load(path).name == "line"


@pytest.mark.unit
class TestRelations:
    """Parsing and admissibility."""

    def test_unknown_arrow(self):
        with pytest.raises(MalformedRelation, match="unknown arrow"):
            build_algebra(spec(relations=[[{"coeff": 1, "path": ["beta", "gamma"]}]]))

    def test_term_too_short(self):
        with pytest.raises(MalformedRelation, match="length < 2"):
            build_algebra(spec(relations=[[{"coeff": 1, "path": ["alpha"]}]]))

    def test_not_a_path(self):
        with pytest.raises(MalformedRelation, match="not a path"):
            build_algebra(spec(relations=[[{"coeff": 1, "path": ["alpha", "beta"]}]]))

    def test_empty_relation(self):
        with pytest.raises(MalformedRelation):
            build_algebra(spec(relations=[[]]))

    def test_non_parallel_terms(self):
        arrows = [*LINE3, {"name": "gamma", "source": 3, "target": 1}]
        with pytest.raises(MalformedRelation, match="parallel"):
            build_algebra(
                spec(
                    arrows=arrows,
                    relations=[[{"coeff": 1, "path": ["beta", "alpha"]}, {"coeff": 1, "path": ["gamma", "beta"]}]],
                    nilpotency=3,
                )
            )

    def test_nilpotency_not_implied(self):
        with pytest.raises(NotAdmissible) as info:
            build_algebra(spec(nilpotency=2))
        assert info.value.location == "nilpotency"

    def test_commutative_square(self):
        square = AlgebraSpec.model_validate(
            {
                "vertices": 4,
                "arrows": [
                    {"name": "a", "source": 1, "target": 2},
                    {"name": "b", "source": 2, "target": 4},
                    {"name": "c", "source": 1, "target": 3},
                    {"name": "d", "source": 3, "target": 4},
                ],
                "relations": [[{"coeff": 1, "path": ["b", "a"]}, {"coeff": -1, "path": ["d", "c"]}]],
                "nilpotency": 3,
            }
        )
        alg = build_algebra(square)
        assert alg.dim == 9
        assert alg.cartan[3, 0] == 1
        assert np.array_equal(alg.element(("b", "a")), alg.element(("d", "c")))
        assert alg.check_associativity()

    def test_loop_with_nilpotency(self):
        loop = AlgebraSpec.model_validate(
            {
                "vertices": 1,
                "arrows": [{"name": "x", "source": 1, "target": 1}],
                "relations": [[{"coeff": 1, "path": ["x", "x", "x"]}]],
                "nilpotency": 3,
            }
        )
        alg = build_algebra(loop)
        assert alg.dim == 3
        x = alg.element(("x",))
        assert not alg.multiply(alg.multiply(x, x), x).any()


@pytest.mark.unit
class TestProjectiveMap:
    """Maps ⊕P -> ⊕P given by right multiplication."""

    def test_alpha_is_injective(self, a2):
        pm = ProjectiveMap.from_vector(a2, (1,), (0,), np.array([5]))
        assert pm.is_injective()
        assert pm.realize(1).tolist() == [[5]]
        assert pm.realize(0).shape == (1, 0)

    def test_identity_composition(self, a3_rel):
        rng = np.random.default_rng(0)
        src, tgt = (0, 1), (1, 2, 2)
        size = int(ProjectiveMap.support(a3_rel, src, tgt).sum())
        pm = ProjectiveMap.from_vector(a3_rel, src, tgt, a3_rel.field.random_matrix(1, size, rng)[0])
        left = ProjectiveMap.identity(a3_rel, tgt).compose(pm)
        right = pm.compose(ProjectiveMap.identity(a3_rel, src))
        assert np.array_equal(left.coeffs, pm.coeffs)
        assert np.array_equal(right.coeffs, pm.coeffs)

    def test_realize_is_functorial(self, a3):
        rng = np.random.default_rng(1)
        f = a3.field

        def random_map(src, tgt):
            size = int(ProjectiveMap.support(a3, src, tgt).sum())
            return ProjectiveMap.from_vector(a3, src, tgt, f.random_matrix(1, size, rng)[0])

        u = random_map((2,), (1, 2))
        v = random_map((1, 2), (0, 1))
        composite = v.compose(u)
        for k in range(a3.n):
            assert np.array_equal(composite.realize(k), f.matmul(v.realize(k), u.realize(k)))

    def test_inverse(self, a2):
        pm = ProjectiveMap.identity(a2, (0, 1)).scale(3)
        pm.coeffs[0, 1, a2.block(1, 0)[0]] = 4
        inv = pm.inverse()
        assert np.array_equal(pm.compose(inv).coeffs, ProjectiveMap.identity(a2, (0, 1)).coeffs)

    def test_over_other_prime(self, a2):
        other = a2.over(101)
        assert other.field.p == 101
        assert other.cartan.tolist() == a2.cartan.tolist()
        assert a2.over(a2.field.p) is a2

    def test_hom_basis_projectives(self, a2, k3):
        for alg in (a2, k3):
            f = alg.field
            for j in range(alg.n):
                for i in range(alg.n):
                    basis = alg.hom_basis_projectives(j, i)
                    assert len(basis) == alg.cartan[j, i] == hom_dim(alg.projective(j), alg.projective(i))
                    assert all(phi.is_morphism() for phi in basis)
                    if basis:
                        flat = np.array([np.concatenate([m.ravel() for m in phi.maps]) for phi in basis])
                        assert f.rank(flat) == len(basis)
        assert [len(k3.hom_basis_projectives(j, i)) for j, i in [(1, 0), (0, 1), (0, 0), (1, 1)]] == [3, 0, 1, 1]
