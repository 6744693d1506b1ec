"""Tests for the random search over small algebras."""

import numpy as np
import pytest
from pydantic import ValidationError

from gtame.algebra import ArrowSpec
from gtame.calculus import IndSequence, IndSequenceEntry
from gtame.core import get_algebra
from gtame.errors import AlgebraSpecError
from gtame.hunt import HuntBounds, _paths, hunt, random_algebra_spec, replay_trial


@pytest.mark.unit
class TestBounds:
    def test_defaults(self):
        bounds = HuntBounds()
        assert (bounds.max_vertices, bounds.max_arrows, bounds.nilpotency) == (3, 4, 3)

    def test_rejects_huge_path_spaces(self):
        with pytest.raises(ValidationError):
            HuntBounds(max_arrows=10, nilpotency=4)

    def test_t_max_at_least_two(self):
        with pytest.raises(ValidationError):
            HuntBounds(t_max=1)


@pytest.mark.unit
class TestRandomAlgebras:
    """Random specs stay inside their bounds and are admissible by construction."""

    def test_paths_compose_right_to_left(self):
        arrows = [ArrowSpec(name="a", source=1, target=2), ArrowSpec(name="b", source=2, target=3)]
        assert _paths(arrows, 2) == {(1, 3): [("b", "a")]}

    def test_within_bounds(self):
        bounds = HuntBounds(max_vertices=3, max_arrows=3, relations=2, nilpotency=3)
        rng = np.random.default_rng(11)
        for _ in range(25):
            spec = random_algebra_spec(bounds, rng)
            assert 1 <= spec.vertices <= 3
            assert len(spec.arrows) <= 3
            assert spec.nilpotency == 3
            try:
                alg = get_algebra(spec, 101)
            except AlgebraSpecError:
                continue
            assert alg.check_associativity()

    def test_replay_is_deterministic(self, cfg):
        bounds = HuntBounds()
        for trial in range(5):
            spec, g = replay_trial(bounds, cfg, trial)
            again, h = replay_trial(bounds, cfg, trial)
            assert spec == again
            assert g == h
            assert any(g)
            assert all(abs(x) <= bounds.g_max for x in g)


@pytest.mark.integration
class TestHunt:
    def test_empty_budget(self, cfg):
        result = hunt(HuntBounds(), 0, cfg)
        assert result.findings == []
        assert result.trials_run == 0

    @pytest.mark.slow
    def test_small_run(self, cfg):
        bounds = HuntBounds(max_vertices=2, max_arrows=2, relations=1, nilpotency=2, g_max=1, t_max=2)
        result = hunt(bounds, 6, cfg)
        assert result.trials_run == 6
        assert result.skipped + result.low_confidence + len(result.findings) <= 6
        for finding in result.findings:
            spec, g = replay_trial(bounds, cfg, finding.trial)
            assert spec == finding.algebra
            assert finding.g in [[s * x for x in g] for s in range(1, bounds.t_max)]
            assert finding.ind_tg < finding.ind_g

    def test_drop_between_multiples_is_rescaled(self, cfg, monkeypatch):
        import gtame.hunt as hunt_module

        def sequence(algebra, g, t_max, c):
            entries = [IndSequenceEntry(t=t, count=n) for t, n in [(1, 1), (2, 3), (3, 1), (4, 2)]]
            return IndSequence(entries=entries, decrease_witness=4, decrease_from=2)

        monkeypatch.setattr(hunt_module, "ind_sequence", sequence)
        bounds = HuntBounds(max_vertices=2, max_arrows=2, relations=0, nilpotency=2, t_max=4)
        result = hunt(bounds, 4, cfg)
        assert len(result.findings) == 4 - result.skipped
        for finding in result.findings:
            _, g = replay_trial(bounds, cfg, finding.trial)
            assert finding.g == [2 * x for x in g]
            assert (finding.t, finding.ind_g, finding.ind_tg) == (2, 3, 2)
