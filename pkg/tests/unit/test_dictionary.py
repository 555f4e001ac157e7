"""
Unit tests for dictionary models, interval handling and learning.
"""

import numpy as np
import pytest

from src.config.models import JoinSettings, LearnConfig
from src.dictionary.learner import (
    DictionaryLearner,
    RandomBaselineLearner,
    compute_e_max,
    learn_dictionary,
    learn_random_dictionary,
    require_stop_rule
)
from src.dictionary.models import STOP_BUDGET, STOP_ERROR_TARGET, STOP_EXHAUSTED, Dictionary, Segment
from src.dictionary.segments import build_segments, context_interval, covered_samples, merge_segments
from src.errors import IterationCapExceeded, NoProgress, SchemaError, SeriesTooShort, SourceMismatch
from src.experiments.synthetic import TEMPLATE_NAMES, regime_series, templates
from src.profiles.joins import self_join
from src.series.core import TimeSeries, znorm_distance


SINGLE = JoinSettings(threads=1, row_block=64)


@pytest.fixture
def rng():
    return np.random.default_rng(99)


class TestMergeSegments:
    """Test cases for interval merging."""

    def test_overlapping(self):
        """Test overlapping intervals merge into their union."""
        assert merge_segments([(10, 50), (40, 90)]) == [(10, 90)]

    def test_touching(self):
        """Test abutting intervals merge."""
        assert merge_segments([(10, 50), (50, 90)]) == [(10, 90)]

    def test_disjoint(self):
        """Test separated intervals stay apart and sorted."""
        assert merge_segments([(60, 90), (10, 50)]) == [(10, 50), (60, 90)]

    def test_empty_and_nested(self):
        """Test empty input, empty intervals and nested intervals."""
        assert merge_segments([]) == []
        assert merge_segments([(5, 5)]) == []
        assert merge_segments([(0, 100), (20, 30)]) == [(0, 100)]

    def test_covered_samples(self):
        """Test the measure of a disjoint list."""
        assert covered_samples([(10, 50), (60, 90)]) == 70


class TestContextInterval:
    """Test cases for the core-plus-context interval."""

    def test_symmetric_split(self):
        """Test k*m context split floor(k*m/2) before and the rest after."""
        assert context_interval(500, 100, 1.5, 10000) == (425, 675)
        assert context_interval(500, 10, 0.5, 10000) == (498, 513)

    def test_clipped_to_series(self):
        """Test the interval is clipped to [0, n)."""
        assert context_interval(10, 100, 1.5, 1000) == (0, 185)
        assert context_interval(880, 100, 1.5, 1000) == (805, 1000)

    def test_no_context(self):
        """Test k = 0 keeps only the core."""
        assert context_interval(40, 16, 0.0, 200) == (40, 56)


class TestDictionaryModel:
    """Test cases for the Dictionary data model."""

    def test_properties(self):
        """Test stored samples, space saving and intervals."""
        series = TimeSeries(np.arange(100.0))
        dictionary = Dictionary(
            segments=build_segments(series, [(10, 30), (50, 60)]),
            m=5, k=1.5, source_length=100, core_starts=(12, 52)
        )
        assert dictionary.stored_samples == 30
        assert dictionary.space_saving == pytest.approx(0.7)
        assert dictionary.intervals == [(10, 30), (50, 60)]
        assert not dictionary.exhausted

    def test_windows_enumerates_every_segment_window(self):
        """Test windows() yields source starts and verbatim values."""
        series = TimeSeries(np.arange(100.0))
        dictionary = Dictionary(
            segments=build_segments(series, [(10, 20), (50, 56)]),
            m=5, k=1.5, source_length=100
        )
        windows = list(dictionary.windows())
        assert [start for start, _ in windows] == [10, 11, 12, 13, 14, 15, 50, 51]
        for start, values in windows:
            np.testing.assert_array_equal(values, series.values[start:start + 5])

    def test_rejects_overlapping_segments(self):
        """Test overlapping or unsorted segments raise SchemaError."""
        with pytest.raises(SchemaError):
            Dictionary(
                segments=(Segment(0, np.zeros(10)), Segment(5, np.zeros(10))),
                m=4, k=1.5, source_length=100
            )
        with pytest.raises(SchemaError):
            Dictionary(
                segments=(Segment(50, np.zeros(10)), Segment(0, np.zeros(10))),
                m=4, k=1.5, source_length=100
            )

    def test_rejects_segment_outside_source(self):
        """Test a segment past the source end raises SchemaError."""
        with pytest.raises(SchemaError):
            Dictionary(segments=(Segment(95, np.zeros(10)),), m=4, k=1.5, source_length=100)

    def test_core_window_lookup(self):
        """Test core windows are found inside their segment."""
        series = TimeSeries(np.arange(100.0))
        dictionary = Dictionary(
            segments=build_segments(series, [(10, 30)]),
            m=5, k=1.5, source_length=100, core_starts=(12,)
        )
        np.testing.assert_array_equal(dictionary.core_window(12), [12, 13, 14, 15, 16])
        with pytest.raises(KeyError):
            dictionary.core_window(40)

    def test_rejects_core_starts_within_exclusion_radius(self):
        """Test two cores no more than m // 2 apart raise SchemaError."""
        segments = (Segment(0, np.arange(40.0)),)
        Dictionary(segments=segments, m=8, k=1.5, source_length=100, core_starts=(10, 15))
        with pytest.raises(SchemaError):
            Dictionary(segments=segments, m=8, k=1.5, source_length=100, core_starts=(10, 14))
        with pytest.raises(SchemaError):
            Dictionary(segments=segments, m=8, k=1.5, source_length=100, core_starts=(20, 10, 20))

    def test_rejects_core_window_outside_source(self):
        """Test a core window running past the source end raises SchemaError."""
        segments = (Segment(0, np.arange(40.0)),)
        Dictionary(segments=segments, m=8, k=1.5, source_length=100, core_starts=(92,))
        with pytest.raises(SchemaError):
            Dictionary(segments=segments, m=8, k=1.5, source_length=100, core_starts=(93,))

    def test_rejects_bad_constant_threshold(self):
        """Test a non-positive or non-finite constancy threshold raises SchemaError."""
        segments = (Segment(0, np.arange(40.0)),)
        for threshold in (0.0, -1e-8, float("inf"), float("nan")):
            with pytest.raises(SchemaError):
                Dictionary(segments=segments, m=8, k=1.5, source_length=100, constant_threshold=threshold)


class TestLearnDictionary:
    """Test cases for greedy dictionary learning."""

    def test_zero_space_saving_stores_everything(self, rng):
        """Test a zero space-saving target keeps the whole series with e_max 0."""
        values = np.cumsum(rng.standard_normal(600))
        dictionary = learn_dictionary(values, LearnConfig(m=20, space_saving_target=0.0), SINGLE)

        assert dictionary.intervals == [(0, 600)]
        assert dictionary.space_saving == 0.0
        assert dictionary.stop_reason == STOP_BUDGET
        assert dictionary.e_max <= 1e-6

    def test_single_repeated_template_stops_after_one_core(self, rng):
        """Test one core with a two-window context explains an exact repetition."""
        template = rng.standard_normal(100)
        values = np.tile(template, 20)
        config = LearnConfig(m=100, k=2.0, error_target=1e-3)
        dictionary = learn_dictionary(values, config, SINGLE)

        assert dictionary.iterations == 1
        assert len(dictionary.core_starts) == 1
        assert dictionary.stop_reason == STOP_ERROR_TARGET
        assert dictionary.e_max <= 1e-3

    def test_four_templates_are_all_captured(self, rng):
        """Test a small budget on four template regimes captures every template."""
        m = 32
        labeled = regime_series(rng, m, instances_per_regime=5)
        shapes = templates(m)
        config = LearnConfig(m=m, k=1.5, sample_budget=int(6 * 2.5 * m))
        dictionary = learn_dictionary(labeled.values, config, SINGLE)

        labels = set()
        for core in dictionary.core_starts:
            window = labeled.values[core:core + m]
            labels.add(min(TEMPLATE_NAMES, key=lambda name: znorm_distance(window, shapes[name])))
        assert labels == set(TEMPLATE_NAMES)

    def test_subset_property_and_core_separation(self, rng):
        """Test segments are verbatim source runs and cores are separated."""
        values = np.cumsum(rng.standard_normal(1500))
        m = 40
        dictionary = learn_dictionary(values, LearnConfig(m=m, space_saving_target=0.7), SINGLE)

        for segment in dictionary.segments:
            assert len(segment) >= m
            np.testing.assert_array_equal(segment.values, values[segment.start:segment.stop])
        cores = sorted(dictionary.core_starts)
        assert all(b - a > m // 2 for a, b in zip(cores, cores[1:]))

    def test_budget_compliance(self, rng):
        """Test learning stops at the first iteration reaching the budget."""
        values = np.cumsum(rng.standard_normal(2000))
        config = LearnConfig(m=50, space_saving_target=0.8)
        learner = DictionaryLearner(config, SINGLE)
        dictionary = learner.learn(values)

        budget = 0.2 * 2000
        assert dictionary.stored_samples >= budget
        steps = list(learner.iterate(values))
        before_last = steps[dictionary.iterations - 2]
        assert before_last.stored_samples < budget

    def test_first_core_is_top_motif(self, rng):
        """Test the first core is the lowest-distance window of the self-join."""
        values = np.cumsum(rng.standard_normal(600))
        learner = DictionaryLearner(LearnConfig(m=25, space_saving_target=0.5), SINGLE)
        first = next(learner.iterate(values))
        profile = self_join(values, 25, SINGLE)

        assert first.core_start == profile.motif_index()
        assert first.core_start != profile.discord_index()
        assert not first.merged_profile.any()

    def test_merged_profile_is_non_increasing(self, rng):
        """Test S only decreases across iterations."""
        values = np.cumsum(rng.standard_normal(800))
        learner = DictionaryLearner(LearnConfig(m=30, space_saving_target=0.5), SINGLE)
        previous = None
        for step in learner.iterate(values):
            if step.iteration > 2:
                assert np.all(step.merged_profile <= previous + 1e-12)
            previous = step.merged_profile
            if step.iteration == 8:
                break

    def test_e_max_non_increasing_with_less_saving(self, rng):
        """Test e_max shrinks as the space saving target drops."""
        values = np.cumsum(rng.standard_normal(2048))
        bounds = [
            learn_dictionary(values, LearnConfig(m=50, space_saving_target=s), SINGLE).e_max
            for s in (0.99, 0.9, 0.7, 0.5)
        ]
        assert all(b <= a + 1e-6 for a, b in zip(bounds, bounds[1:]))

    def test_series_too_short(self, rng):
        """Test n < 2m is rejected."""
        with pytest.raises(SeriesTooShort):
            learn_dictionary(rng.standard_normal(50), LearnConfig(m=30, space_saving_target=0.5))

    def test_iteration_cap(self, rng):
        """Test hitting max_iterations raises IterationCapExceeded."""
        values = rng.standard_normal(1000)
        config = LearnConfig(m=20, error_target=0.0, max_iterations=3)
        with pytest.raises(IterationCapExceeded):
            learn_dictionary(values, config, SINGLE)

    def test_exhaustion_is_flagged(self, rng):
        """Test running out of candidates returns a flagged dictionary."""
        values = rng.standard_normal(400)
        config = LearnConfig(m=40, k=0.0, sample_budget=10_000)
        dictionary = learn_dictionary(values, config, SINGLE)

        assert dictionary.stop_reason == STOP_EXHAUSTED
        assert dictionary.exhausted
        with pytest.raises(NoProgress):
            require_stop_rule(dictionary, config)


class TestComputeEMax:
    """Test cases for the certified error bound."""

    def test_full_coverage_is_zero(self, rng):
        """Test a dictionary holding the whole series has zero e_max."""
        series = TimeSeries(np.cumsum(rng.standard_normal(300)))
        dictionary = Dictionary(segments=build_segments(series, [(0, 300)]), m=20, k=1.5, source_length=300)
        assert compute_e_max(dictionary, series, SINGLE) <= 1e-6

    def test_repeated_half(self, rng):
        """Test the first half explains an exactly repeated second half."""
        half = np.cumsum(rng.standard_normal(300))
        series = TimeSeries(np.concatenate([half, half]))
        dictionary = Dictionary(segments=build_segments(series, [(0, 300)]), m=20, k=1.5, source_length=600)
        # windows crossing the seam are not in the first half
        assert compute_e_max(dictionary, series, SINGLE) > 0.0
        head = Dictionary(segments=build_segments(series, [(0, 320)]), m=20, k=1.5, source_length=600)
        assert compute_e_max(head, series, SINGLE) <= 1e-6

    def test_source_mismatch(self, rng):
        """Test a series of another length is rejected."""
        series = TimeSeries(rng.standard_normal(300))
        dictionary = Dictionary(segments=build_segments(series, [(0, 100)]), m=20, k=1.5, source_length=300)
        with pytest.raises(SourceMismatch):
            compute_e_max(dictionary, rng.standard_normal(200))


class TestRandomBaseline:
    """Test cases for the random-selection baseline."""

    def test_seeded_runs_are_reproducible(self, rng):
        """Test the same seed reproduces the same cores."""
        values = np.cumsum(rng.standard_normal(1000))
        config = LearnConfig(m=25, space_saving_target=0.8)
        first = learn_random_dictionary(values, config, seed=5, settings=SINGLE)
        second = learn_random_dictionary(values, config, seed=5, settings=SINGLE)
        assert first.core_starts == second.core_starts
        assert first.intervals == second.intervals

    def test_same_exclusion_rules(self, rng):
        """Test random cores respect the floor(m/2) separation."""
        values = rng.standard_normal(1000)
        learner = RandomBaselineLearner(LearnConfig(m=25, space_saving_target=0.5), seed=1, settings=SINGLE)
        cores = sorted(learner.learn(values).core_starts)
        assert all(b - a > 12 for a, b in zip(cores, cores[1:]))
