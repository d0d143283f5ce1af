"""Worked-example fixtures used across the suite.

Two fully annotated verse pairs exercise most of the annotation style in a
small space: wages (Not-Translated openers, a doubled verb, reordered
punctuation) and husbandman (phrase blocks annotated as complete many-to-many
link sets, a contraction-free French rendering with pro-drop).
"""

import pytest

from blinker_align import Alignment, Link, VersePair

WAGES_EN = "And he said , Appoint me thy wages , and I will give it ."
WAGES_FR = "fixe moi ton salaire , et je te le donnerai ."

HUSBANDMAN_EN = "And Noah began to be an husbandman , and he planted a vineyard :"
HUSBANDMAN_FR = "Noà commença á cultiver la terre , et planta de la vigne."

# en: And0 he1 said2 ,3 Appoint4 me5 thy6 wages7 ,8 and9 I10 will11 give12 it13 .14
# fr: fixe0 moi1 ton2 salaire3 ,4 et5 je6 te7 le8 donnerai9 .10
WAGES_LINKS = [(4, 0), (5, 1), (6, 2), (7, 3), (8, 4), (9, 5), (10, 6),
               (11, 9), (12, 9), (13, 8), (14, 10)]
WAGES_NT_EN = {0, 1, 2, 3}
WAGES_NT_FR = {7}

# en: And0 Noah1 began2 to3 be4 an5 husbandman6 ,7 and8 he9 planted10 a11 vineyard12 :13
# fr: Noà0 commença1 á2 cultiver3 la4 terre5 ,6 et7 planta8 de9 la10 vigne11 .12
HUSBANDMAN_BLOCK_A = [(s, t) for s in (3, 4, 5, 6) for t in (3, 4, 5)]
HUSBANDMAN_BLOCK_B = [(s, t) for s in (11, 12) for t in (9, 10, 11)]
HUSBANDMAN_LINKS = ([(1, 0), (2, 1), (2, 2)] + HUSBANDMAN_BLOCK_A
                    + [(7, 6), (8, 7), (9, 8), (10, 8)] + HUSBANDMAN_BLOCK_B
                    + [(13, 12)])
HUSBANDMAN_NT_EN = {0}


def make_alignment(vp, links, nt_source=(), nt_target=(), annotator_id="a1"):
    return Alignment(vp.id, annotator_id,
                     frozenset(Link(s, t) for s, t in links),
                     frozenset(nt_source), frozenset(nt_target),
                     source_len=len(vp.source_tokens),
                     target_len=len(vp.target_tokens))


@pytest.fixture(scope="session")
def wages_verse():
    return VersePair.build("GEN_30_28", "en", "fr", WAGES_EN, WAGES_FR)


@pytest.fixture(scope="session")
def wages_alignment(wages_verse):
    return make_alignment(wages_verse, WAGES_LINKS, WAGES_NT_EN, WAGES_NT_FR)


@pytest.fixture(scope="session")
def husbandman_verse():
    return VersePair.build("GEN_9_20", "en", "fr", HUSBANDMAN_EN, HUSBANDMAN_FR)


@pytest.fixture(scope="session")
def husbandman_alignment(husbandman_verse):
    return make_alignment(husbandman_verse, HUSBANDMAN_LINKS, HUSBANDMAN_NT_EN)
