import random

import pytest

from blinker_align import Alignment, Link, PunctSearchBoundError, VersePair
from blinker_align.punctuation import (enumerate_pairings, mark_class,
                                       minimal_total_crossings,
                                       optimal_punct_links,
                                       unlinked_punctuation)

from helpers import oracle_min_total_crossings

WORDS_EN = ["and", "he", "said", "lord", "will", "give", "wages", "people"]
WORDS_FR = ["et", "il", "dit", "seigneur", "donnera", "salaire", "peuple"]
MARK_POOL = [",", ".", ";", ":", "!", "?", "\"", "«", "»"]


def build_config(rng: random.Random, max_marks: int = 4):
    """A random verse pair with word links fixed and marks left unlinked."""

    def side(words):
        n_words = rng.randint(2, 7)
        n_marks = rng.randint(0, max_marks)
        pieces = [("w", rng.choice(words)) for _ in range(n_words)]
        pieces += [("m", rng.choice(MARK_POOL)) for _ in range(n_marks)]
        rng.shuffle(pieces)
        return pieces

    src, tgt = side(WORDS_EN), side(WORDS_FR)
    vp = VersePair.build("V1", "en", "fr",
                         " ".join(p for _, p in src), " ".join(p for _, p in tgt))
    word_s = [t.index for t in vp.source_tokens if t.kind == "word"]
    word_t = [t.index for t in vp.target_tokens if t.kind == "word"]
    links = set()
    for _ in range(rng.randint(0, 8)):
        if word_s and word_t:
            links.add(Link(rng.choice(word_s), rng.choice(word_t)))
    a = Alignment("V1", "a1", frozenset(links)).with_bounds(vp)
    return vp, a


class TestMarkClasses:
    def test_similar_marks_share_a_class(self):
        assert mark_class(".") == mark_class("!") == mark_class("?")
        assert mark_class(",") == mark_class(";") == mark_class(":")
        assert mark_class("\"") == mark_class("«") == mark_class("»")

    def test_dissimilar_marks_do_not(self):
        assert mark_class(".") != mark_class(",")
        assert mark_class("\"") != mark_class(".")

    def test_unknown_mark_is_its_own_class(self):
        assert mark_class("§") == mark_class("§")
        assert mark_class("§") != mark_class("¶")
        assert mark_class("§") != mark_class(".")


class TestEnumeration:
    def test_no_candidates_yields_empty_pairing(self):
        assert list(enumerate_pairings([], [])) == [()]
        assert list(enumerate_pairings([(0, ",")], [])) == [()]

    def test_cross_class_marks_never_pair(self):
        pairings = list(enumerate_pairings([(0, ".")], [(0, ",")]))
        assert pairings == [()]

    def test_max_cardinality_only(self):
        # two commas vs one comma: every pairing uses exactly one link
        pairings = {frozenset(p) for p in enumerate_pairings([(0, ","), (2, ",")], [(1, ",")])}
        assert pairings == {frozenset({(0, 1)}), frozenset({(2, 1)})}

    def test_classes_combine_independently(self):
        pairings = {frozenset(p) for p in
                    enumerate_pairings([(0, ","), (3, ".")], [(1, ","), (2, ".")])}
        assert pairings == {frozenset({(0, 1), (3, 2)})}


class TestUnlinkedPunctuation:
    def test_linked_and_nt_marks_excluded(self):
        vp = VersePair.build("V1", "en", "fr", "a , b .", "c , d .")
        a = Alignment("V1", "a1", frozenset({Link(1, 1)}),
                      frozenset(), frozenset({3})).with_bounds(vp)
        cand_s, cand_t = unlinked_punctuation(vp, a)
        assert cand_s == [(3, ".")]
        assert cand_t == []

    def test_surface_set_overrides_kind(self):
        vp = VersePair.build("V1", "en", "fr", "a , b", "c ; d")
        cand_s, cand_t = unlinked_punctuation(vp, Alignment.empty(vp, "a1"), {";"})
        assert cand_s == []
        assert cand_t == [(1, ";")]


class TestOptimizer:
    def test_straight_marks_pair_in_order(self):
        vp = VersePair.build("V1", "en", "fr", "a , b .", "c , d .")
        a = Alignment("V1", "a1", frozenset({Link(0, 0), Link(2, 2)})).with_bounds(vp)
        chosen = optimal_punct_links(vp, a)
        assert chosen == frozenset({Link(1, 1), Link(3, 3)})

    def test_background_selects_which_surplus_mark_links(self):
        # target has one comma for two source commas; the word link before it
        # makes the second source comma the crossing-free choice
        vp = VersePair.build("V1", "en", "fr", ", a , b", "c ,")
        a = Alignment("V1", "a1", frozenset({Link(1, 0)})).with_bounds(vp)
        assert optimal_punct_links(vp, a) == frozenset({Link(2, 1)})

    def test_unavoidable_crossing_still_pairs_marks(self):
        # maximum cardinality wins even when the only pairing crosses a word link
        vp = VersePair.build("V1", "en", "fr", ", a", "b ,")
        a = Alignment("V1", "a1", frozenset({Link(1, 0)})).with_bounds(vp)
        assert optimal_punct_links(vp, a) == frozenset({Link(0, 1)})

    def test_surplus_marks_stay_unlinked(self):
        vp = VersePair.build("V1", "en", "fr", "a , b , c ,", "d ,")
        a = Alignment("V1", "a1", frozenset()).with_bounds(vp)
        chosen = optimal_punct_links(vp, a)
        assert len(chosen) == 1

    def test_deterministic_tie_break(self):
        vp = VersePair.build("V1", "en", "fr", ", ,", ", ,")
        a = Alignment.empty(vp, "a1")
        # identity pairing and the crossed one both cost 0 extra? no: crossed costs 1
        assert optimal_punct_links(vp, a) == frozenset({Link(0, 0), Link(1, 1)})

    def test_bound_enforced(self):
        vp = VersePair.build("V1", "en", "fr", ", , , , , , , , ,", ",")
        with pytest.raises(PunctSearchBoundError) as exc:
            optimal_punct_links(vp, Alignment.empty(vp, "a1"))
        assert "9" in str(exc.value) and "8" in str(exc.value)

    def test_bound_is_configurable(self):
        vp = VersePair.build("V1", "en", "fr", ", , ,", ",")
        with pytest.raises(PunctSearchBoundError):
            optimal_punct_links(vp, Alignment.empty(vp, "a1"), max_per_side=2)

    def test_matches_exhaustive_oracle_on_200_random_configs(self):
        rng = random.Random(999)
        for _ in range(200):
            vp, a = build_config(rng)
            total, chosen = minimal_total_crossings(vp, a)
            assert total == oracle_min_total_crossings(vp, a)

    def test_never_beaten_by_any_enumerated_alternative(self):
        rng = random.Random(77)
        from blinker_align import crossing_count
        for _ in range(40):
            vp, a = build_config(rng, max_marks=3)
            total, chosen = minimal_total_crossings(vp, a)
            cand_s, cand_t = unlinked_punctuation(vp, a)
            base = list(a.links)
            for alt in enumerate_pairings(cand_s, cand_t):
                assert total <= crossing_count(base + list(alt))
