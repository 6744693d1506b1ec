"""Tests for the numerics of generic cokernel components."""

import pytest

from gtame.components import (
    closed_form_pairing,
    component_report,
    d_of_g,
    dim_z,
    generically_injective,
    gl_dim,
    injective_scaling_wild,
    min_hom,
    negative_part,
    pairing,
    sink_set_pairing,
    sink_set_supports,
    tau_hom_self_min,
    tau_reduced_sum_check,
    wildness_verdict,
)
from gtame.errors import NegativeSummandPresent, NotGenericallyInjective


@pytest.mark.unit
class TestDimensionVectors:
    def test_a2(self, a2, cfg):
        assert d_of_g(a2, (1, -1), cfg).value == [1, 0]
        assert d_of_g(a2, (2, -1), cfg).value == [2, 1]
        assert d_of_g(a2, (0, -1), cfg).value == [0, 0]

    def test_kronecker(self, kronecker, cfg):
        for m, alg in kronecker.items():
            estimate = d_of_g(alg, (1, -1), cfg, strict=True)
            assert estimate.value == [1, m - 1]
            assert estimate.confident
            assert estimate.kept == cfg.samples

    def test_dim_z(self, a2, k2, k3, cfg):
        assert dim_z(a2, (1, -1), cfg) == 0
        assert dim_z(a2, (2, -1), cfg) == 2
        assert dim_z(k2, (1, -1), cfg) == 2
        assert dim_z(k3, (1, -1), cfg) == 6

    def test_helpers(self):
        assert pairing((1, -1), (1, 2)) == -1
        assert gl_dim((1, 2)) == 5


@pytest.mark.unit
class TestPairing:
    """⟨g, d(g)⟩ from samples and from closed forms."""

    def test_kronecker_family(self, kronecker, cfg):
        for m, alg in kronecker.items():
            d = d_of_g(alg, (1, -1), cfg).value
            assert pairing((1, -1), d) == 2 - m
            assert closed_form_pairing(alg, (1, -1), cfg) == 2 - m

    def test_closed_form_requires_injective(self, a2, cfg):
        assert not generically_injective(a2, (1, -2), cfg)
        with pytest.raises(NotGenericallyInjective):
            closed_form_pairing(a2, (1, -2), cfg)

    def test_closed_form_matches_samples(self, a3_rel, cfg):
        g = (1, 0, -1)
        assert generically_injective(a3_rel, (0, 1, -1), cfg)
        assert closed_form_pairing(a3_rel, (0, 1, -1), cfg) == pairing((0, 1, -1), d_of_g(a3_rel, (0, 1, -1), cfg).value)
        assert not generically_injective(a3_rel, g, cfg)

    def test_sink_set(self, k3):
        assert sink_set_supports(k3, [0], [1]) == {1: [0]}
        assert sink_set_pairing(k3, [0], [1]) == -1

    def test_sink_set_rejects_non_sink(self, k3):
        with pytest.raises(ValueError, match="not a sink"):
            sink_set_pairing(k3, [1], [0])

    def test_sink_set_rejects_overlap(self, k3):
        with pytest.raises(ValueError, match="disjoint"):
            sink_set_pairing(k3, [1], [1])

    def test_sink_set_needs_paths(self, a3_rel):
        # beta·alpha = 0 leaves no path from vertex 1 to the sink 3
        with pytest.raises(NotGenericallyInjective):
            sink_set_pairing(a3_rel, [0], [2])


@pytest.mark.unit
class TestMinHom:
    def test_negative_summand_rejected(self, a2, cfg):
        assert negative_part(a2, (0, -1), cfg) == (0, -1)
        with pytest.raises(NegativeSummandPresent):
            min_hom(a2, (0, -1), (1, 0), cfg)

    def test_a2_values(self, a2, cfg):
        assert min_hom(a2, (1, 0), (1, -1), cfg) == 1
        assert min_hom(a2, (1, -1), (1, 0), cfg) == 0
        assert min_hom(a2, (2, -1), (2, -1), cfg) == 3

    def test_kronecker_regular_modules_are_orthogonal(self, k2, cfg):
        assert min_hom(k2, (1, -1), (1, -1), cfg) == 0

    def test_tau_hom(self, a2, k3, cfg):
        assert tau_hom_self_min(a2, (2, -1), cfg) == 0
        assert tau_hom_self_min(k3, (1, -1), cfg) >= 1


@pytest.mark.unit
class TestWildness:
    def test_wild_kronecker(self, k3, cfg):
        verdict = wildness_verdict(k3, (1, -1), cfg)
        assert verdict.verdict == "wild"
        assert verdict.pairing == -1
        assert verdict.consistent

    def test_tame_kronecker(self, k2, cfg):
        verdict = wildness_verdict(k2, (1, -1), cfg)
        assert verdict.verdict == "tame"
        assert verdict.consistent

    def test_negative_part_is_forgotten(self, a2, cfg):
        verdict = wildness_verdict(a2, (1, -2), cfg)
        assert verdict.stripped == [0, -1]
        assert verdict.verdict == "tame"

    def test_injective_scaling_certificate(self, k3, k2, cfg):
        assert injective_scaling_wild(k3, (1, -1), cfg)
        assert not injective_scaling_wild(k2, (1, -1), cfg)


@pytest.mark.unit
class TestTauReduced:
    def test_a2_summands(self, a2, cfg):
        report = tau_reduced_sum_check(a2, [(1, 0), (1, -1)], cfg)
        assert report.holds
        assert report.cross_validated
        assert report.e_matrix == [[0, 0], [0, 0]]

    def test_not_reduced(self, a2, cfg):
        report = tau_reduced_sum_check(a2, [(1, -1), (0, 1)], cfg)
        assert not report.holds
        assert report.e_matrix[0][1] == 1
        assert report.cross_validated

    def test_negative_rejected(self, a2, cfg):
        with pytest.raises(NegativeSummandPresent):
            tau_reduced_sum_check(a2, [(1, 0), (0, -1)], cfg)


@pytest.mark.integration
class TestComponentReport:
    """Consistency identities on small components."""

    def test_a2_sum(self, a2, cfg):
        report = component_report(a2, (2, -1), cfg)
        assert report.d_of_g == [2, 1]
        assert report.dim_z == 2
        assert report.component_count == 2
        assert report.min_hom_self == 3
        assert report.e_self == 0
        assert report.tame
        for check in ("d_additive", "orbit_identity", "sign_consistent", "tau_positivity", "orbit_bounds", "count_bound"):
            assert getattr(report, check), check

    def test_negative_summand_lowers_count(self, a2, cfg):
        report = component_report(a2, (1, -2), cfg)
        assert report.negative_part == [0, -1]
        assert report.component_count == 1
        assert report.count_bound

    def test_wild_kronecker(self, k3, cfg):
        report = component_report(k3, (1, -1), cfg)
        assert not report.tame
        assert report.pairing == -1
        assert report.gl_dim == 5
        assert report.dim_z == 6
        assert report.tau_positivity
        assert report.orbit_bounds
        assert not report.low_confidence
