import random

import pytest

from deduction import (BOUNDARY_REPEAT, MIXED_PATTERN, RUN_TOO_LONG, DeductionState, RefutationConfig, RunViolation,
                       adjacent, check_run_bounds, derive_all_3colorings, find_distinct_window, normalize_word,
                       pattern_start, propagate, refute_pattern, run_extend)
from exceptions import DomainError, LemmaGateError
from solver import FULL_GROUP, classify_colorings, is_proper

LEMMA = RefutationConfig(use_run_extend=True, no_singleton_proved=True)


def word_state(word: str, start: int, **kwargs) -> DeductionState:
    return DeductionState.initial({start + k: {int(ch)} for k, ch in enumerate(word)}, **kwargs)


def completions(state: DeductionState, rim_colorings):
    words = [tuple(min(s) + 1 for s in c.assignment) for c in rim_colorings]
    return {w for w in words if all(w[v - 1] in state.domain(v) for v in range(1, 19))}


def contains_at(rim_colorings, pattern: str, start: int) -> bool:
    for coloring in rim_colorings:
        colors = [min(s) + 1 for s in coloring.assignment]
        if all(colors[(start - 1 + k) % 18] == int(ch) for k, ch in enumerate(pattern)):
            return True
    return False


class TestState:
    def test_labels_wrap(self):
        state = DeductionState.initial({19: {2}})
        assert state.domain(1) == {2}
        assert adjacent(1, 16) and adjacent(18, 4) and not adjacent(1, 2)

    def test_bad_palette(self):
        with pytest.raises(DomainError):
            DeductionState.initial({3: {4}})

    def test_describe(self):
        state = DeductionState.initial({7: {1}, 8: {2}, 1: {1, 2}}, demands={1: 2})
        assert state.describe().startswith("[12] . . . . . 1 2 .")

    def test_permute_colors(self):
        state = word_state("123", 7).permute_colors({1: 2, 2: 1})
        assert [state.single_color(v) for v in (7, 8, 9)] == [2, 1, 3]

    def test_set_coloring_conversion(self, rim_colorings):
        state = DeductionState.from_set_coloring(rim_colorings[0])
        assert state.is_complete
        assert state.to_set_coloring() == rim_colorings[0]

    def test_partial_state_does_not_convert(self):
        with pytest.raises(DomainError):
            word_state("12", 7).to_set_coloring()


class TestPropagate:
    def test_three_distinct_colors_close(self):
        state = propagate(word_state("123", 7))
        assert state.conflict_edge == (1, 15)
        assert state.inconsistent

    def test_common_neighbours_get_third_color(self):
        state = propagate(word_state("12", 7))
        assert state.domain(4) == {3}
        assert state.domain(11) == {3}

    def test_bichromatic_vertex_blocks_both_colors(self):
        state = propagate(DeductionState.initial({1: {1, 2}}, demands={1: 2}))
        assert all(state.domain(v) == {3} for v in (4, 5, 15, 16))
        assert not state.inconsistent

    def test_empty_state_is_a_fixed_point(self):
        state = DeductionState.initial()
        assert propagate(state) == state

    def test_exhausted_vertex(self):
        state = propagate(DeductionState.initial({4: {1}, 5: {2}, 1: {1, 2}}))
        assert state.exhausted_vertex == 1

    def test_rotated_pattern_also_closes(self):
        assert propagate(word_state("231", 12)).inconsistent


class TestRunExtend:
    def test_requires_lemma(self):
        with pytest.raises(LemmaGateError):
            run_extend(word_state("12", 7))

    def test_rejects_bichromatic_vertices(self):
        with pytest.raises(DomainError):
            run_extend(DeductionState.initial({1: {1, 2}}, demands={1: 2}, no_singleton_proved=True))

    def test_extends_both_runs(self):
        state = run_extend(word_state("12", 7, no_singleton_proved=True))
        assert not state.inconsistent
        assert state.domain(6) == {1}
        assert state.domain(9) == {2}

    def test_three_colors_in_a_row_close(self):
        assert run_extend(word_state("312", 6, no_singleton_proved=True)).inconsistent


class TestSoundness:
    def random_state(self, rng: random.Random, lemma: bool) -> DeductionState:
        assignments = {}
        for label in rng.sample(range(1, 19), rng.randint(0, 6)):
            size = rng.choice((1, 1, 2))
            assignments[label] = set(rng.sample((1, 2, 3), size))
        return DeductionState.initial(assignments, no_singleton_proved=lemma)

    def test_propagate_keeps_every_completion(self, rim_colorings):
        rng = random.Random(20240601)
        for _ in range(200):
            state = self.random_state(rng, lemma=False)
            before = completions(state, rim_colorings)
            after = propagate(state)
            if after.inconsistent:
                assert before == set()
            else:
                assert completions(after, rim_colorings) == before

    def test_run_extend_keeps_every_completion(self, rim_colorings):
        rng = random.Random(99)
        for _ in range(200):
            state = self.random_state(rng, lemma=True)
            before = completions(state, rim_colorings)
            after = run_extend(state)
            if after.inconsistent:
                assert before == set()
            else:
                assert completions(after, rim_colorings) == before


class TestRunBounds:
    def test_run_of_four(self):
        violations = check_run_bounds(word_state("1111", 5))
        assert violations == [RunViolation(RUN_TOO_LONG, (5, 6, 7, 8))]

    def test_pair_between_equal_colors(self):
        violations = check_run_bounds(word_state("3113", 4))
        assert violations == [RunViolation(BOUNDARY_REPEAT, (4, 5, 6, 7))]

    def test_proper_colorings_respect_bounds(self, rim_colorings):
        for coloring in rim_colorings:
            assert check_run_bounds(DeductionState.from_set_coloring(coloring)) == []

    def test_monochromatic_rim(self):
        violations = check_run_bounds(word_state("1" * 18, 1))
        assert [v.kind for v in violations] == [RUN_TOO_LONG]


class TestHelpers:
    @pytest.mark.parametrize("colors, expected", [("213", "123"), ("3311", "1122"), ("", ""), ("232", "121")])
    def test_normalize_word(self, colors, expected):
        assert normalize_word(int(ch) for ch in colors) == expected

    def test_pattern_start(self):
        assert pattern_start(3) == 7
        assert pattern_start(9) == 5

    def test_distinct_window(self):
        state = word_state("2123", 7)
        assert find_distinct_window(state, 9) == (8, 9, 10)
        assert find_distinct_window(word_state("121", 7), 8) is None


class TestRefutation:
    def test_123_closes_without_branching(self):
        tree = refute_pattern("123")
        assert tree.refuted
        assert tree.branch_vertices() == []
        assert tree.start == 7

    def test_121_branches_once(self):
        tree = refute_pattern("121")
        assert tree.refuted
        assert tree.branch_vertices() == [10]
        reductions = [child.reduction for _, child in tree.root.children]
        assert reductions == [(9, 10, 11), (8, 9, 10)]

    def test_mixed_runs_close_with_rule_two(self):
        assert refute_pattern(MIXED_PATTERN, LEMMA).refuted

    def test_mixed_runs_close_by_elimination_alone(self):
        tree = refute_pattern(MIXED_PATTERN)
        assert tree.refuted
        assert tree.root.state.exhausted_vertex == 4

    def test_completable_pattern(self, rim18):
        tree = refute_pattern("112233")
        assert not tree.refuted
        completion = tree.completion
        assert completion.is_complete
        assert [completion.single_color(v) for v in range(5, 11)] == [1, 1, 2, 2, 3, 3]
        assert is_proper(rim18, completion.to_set_coloring(), 3)

    @pytest.mark.parametrize("pattern", ["111", "1111", "112", "1122", "11221", "122", "1212", "1231",
                                         "11222", "112233112", "1"])
    def test_agrees_with_enumeration(self, rim_colorings, pattern):
        tree = refute_pattern(pattern)
        assert tree.refuted == (not contains_at(rim_colorings, pattern, tree.start))

    @pytest.mark.parametrize("pattern", ["", "1234", "12a", "1" * 10])
    def test_invalid_pattern(self, pattern):
        with pytest.raises(DomainError):
            refute_pattern(pattern)

    def test_rule_two_needs_lemma(self):
        with pytest.raises(LemmaGateError):
            refute_pattern("12", RefutationConfig(use_run_extend=True))

    def test_node_limit(self):
        with pytest.raises(DomainError):
            refute_pattern("1", RefutationConfig(max_nodes=1))


class TestDerivation:
    def test_derives_all_thirty(self, rim18):
        derived = derive_all_3colorings()
        assert len(derived) == 30
        colorings = [s.to_set_coloring() for s in derived]
        assert all(is_proper(rim18, c, 3) for c in colorings)
        assert len(classify_colorings(colorings, FULL_GROUP, rim18)) == 2
        assert all(check_run_bounds(s) == [] for s in derived)
