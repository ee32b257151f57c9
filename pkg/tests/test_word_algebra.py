import random

import pytest
from hypothesis import given, settings, strategies as st

from sblinks.errors import DegeneratePair, NotComposable
from sblinks.severi_brauer import closed_point_from_seed, second_3point
from sblinks.word_algebra import (
    GroupWord,
    LinkClass,
    class_of_point,
    hexagon,
    project_basepoint,
    psi_compose,
    psi_link,
    reduce as word_reduce,
    word_from_list,
)

C3 = [LinkClass(3, (f"3:c{i}",)) for i in range(3)]
C6 = [LinkClass(6, (f"6:q{i}",), invariant_only=True) for i in range(2)]

syllables = st.lists(
    st.tuples(st.sampled_from(C3 + C6), st.integers(-5, 5)), max_size=10
)


@given(syllables)
@settings(max_examples=300)
def test_reduce_idempotent(word):
    reduced = word_reduce(tuple(word))
    assert word_reduce(reduced.syllables) == reduced


@given(syllables, st.integers(0, 10))
@settings(max_examples=300)
def test_reduce_association_invariant(word, cut_raw):
    word = tuple(word)
    cut = min(cut_raw, len(word))
    left = word_reduce(word[:cut])
    right = word_reduce(word[cut:])
    assert left * right == word_reduce(word)


def test_torsion_and_free_parts():
    p, q = C3[0], C3[1]
    f = C6[0]
    assert word_from_list([(p, 1), (p, 1), (p, 1)]).is_empty()
    assert word_from_list([(f, 1), (f, -1)]).is_empty()
    assert word_from_list([(p, 3), (q, -3)]).is_empty()
    # Z/3 syllables of distinct classes commute and sort
    assert word_from_list([(q, 1), (p, 1)]) == word_from_list([(p, 1), (q, 1)])
    # free syllables block commutation
    w = word_from_list([(q, 1), (f, 1), (p, 1)])
    assert w.syllables == ((q, 1), (f, 1), (p, 1))
    # inverse
    assert (w * w.inverse()).is_empty()


def test_project_basepoint():
    p, q = C3[0], C3[1]
    assert project_basepoint(word_from_list([(p, 1)]), p).is_empty()
    assert project_basepoint(
        word_from_list([(p, 1), (q, -1)]), p
    ) == word_from_list([(q, -1)])
    assert project_basepoint(GroupWord(()), p).is_empty()


def test_class_of_point(surface, coord_point, six_point):
    c = class_of_point(coord_point)
    assert c.degree == 3 and not c.invariant_only
    c6 = class_of_point(six_point)
    assert c6.degree == 6 and c6.invariant_only
    s = second_3point(surface)
    assert class_of_point(s) != c


def test_psi_link_signs(surface, link_at_coords):
    w = psi_link(link_at_coords)
    assert w.syllables == ((class_of_point(link_at_coords.base_point), 1),)
    w_inv = psi_link(link_at_coords.inverse())
    assert w_inv.syllables == ((class_of_point(link_at_coords.base_point), -1),)
    assert psi_compose([link_at_coords, link_at_coords.inverse()]).is_empty()


def test_psi_isomorphism_contributes_nothing(surface, link_at_coords, L):
    from sblinks.birational import RationalMap, TwistedMap

    iso = TwistedMap(RationalMap.identity(L), surface, surface)
    w1 = psi_compose([iso, link_at_coords])
    assert w1 == psi_link(link_at_coords)


def test_psi_not_composable(surface, link_at_coords):
    with pytest.raises(NotComposable):
        psi_compose([link_at_coords, link_at_coords])


def test_psi_homomorphism_on_random_chains(surface, link_at_coords, link_at_unit):
    rng = random.Random(777)
    pool_fwd = [link_at_coords, link_at_unit]
    pool_bwd = [lk.inverse() for lk in pool_fwd]

    def random_chain(n, start_side):
        side = start_side
        chain = []
        for _ in range(n):
            lk = rng.choice(pool_fwd if side == 1 else pool_bwd)
            chain.append(lk)
            side = -side
        return chain, side

    for _ in range(100):
        n1 = rng.randint(1, 4)
        n2 = rng.randint(1, 4)
        u, mid = random_chain(n1, 1)
        v, _ = random_chain(n2, mid)
        w_uv = psi_compose(u + v)
        w_u = psi_compose(u)
        w_v = psi_compose(v)
        assert w_uv == w_u * w_v


def test_hexagon_acceptance_pair(surface, coord_point, unit_point):
    links, report = hexagon(surface, coord_point, unit_point)
    assert len(links) == 6
    assert report.composite_identity
    assert report.word.is_empty()
    assert report.warm_equivalent and report.cold_equivalent
    assert report.merged_square  # this pair merges two hexagon vertices


def test_hexagon_general_position(surface, coord_point, L):
    q = closed_point_from_seed(
        surface, (L.one(), L.one(), L.scalar(2)), L
    )
    links, report = hexagon(surface, coord_point, q)
    assert len(links) == 6
    assert not report.merged_square
    assert report.composite_identity
    assert report.word.is_empty()
    assert report.warm_equivalent and report.cold_equivalent
    descriptors = report.descriptors
    assert descriptors[0] == descriptors[2] == descriptors[4] == coord_point.descriptor
    assert descriptors[1] == descriptors[3] == descriptors[5] == q.descriptor


def test_hexagon_rejects_equal_points(surface, coord_point):
    with pytest.raises(DegeneratePair):
        hexagon(surface, coord_point, coord_point)


def test_class_matches_transport(surface, coord_point, unit_point):
    """For degree-3 points, equal classes correspond exactly to transport
    automorphisms existing."""
    from sblinks.errors import SplittingFieldMismatch
    from sblinks.severi_brauer import auto_between_3points

    assert class_of_point(coord_point) == class_of_point(unit_point)
    auto_between_3points(surface, coord_point, unit_point)  # must succeed

    s = second_3point(surface)
    assert class_of_point(s) != class_of_point(coord_point)
    with pytest.raises(SplittingFieldMismatch):
        auto_between_3points(surface, coord_point, s)


def test_theorem_b_witness_on_links(surface, link_at_coords):
    """A chain chi_q then chi_p^-1 maps onto 1_q - 1_p, and projecting away
    the p-class leaves the q-generator."""
    from sblinks.birational import link_from_3point
    from sblinks.severi_brauer import second_3point

    sp = second_3point(surface)
    link_sp = link_from_3point(surface, sp)
    w = psi_compose([link_sp, link_at_coords.inverse()])
    cp = class_of_point(link_at_coords.base_point)
    cq = class_of_point(sp)
    assert w == word_from_list([(cq, 1), (cp, -1)])
    assert project_basepoint(w, cp) == word_from_list([(cq, 1)])


def test_hexagon_mixed_splitting(surface, coord_point):
    """Two points with distinct splitting fields give the alternating
    hexagon with descriptor pattern (d(p), d(p'), d(p), ...)."""
    from sblinks.severi_brauer import make_closed_point, second_3point

    sp = second_3point(surface)
    p_lifted = make_closed_point(surface, coord_point.components, sp.tower)
    links, report = hexagon(surface, p_lifted, sp)
    assert len(links) == 6
    assert not report.merged_square
    assert report.composite_identity
    assert report.word.is_empty()
    descs = report.descriptors
    assert descs[0] == descs[2] == descs[4] == coord_point.descriptor
    assert descs[1] == descs[3] == descs[5] == sp.descriptor
    assert descs[0] != descs[1]


def test_invariant_level_flag(six_point):
    c6 = class_of_point(six_point)
    w = word_from_list([(c6, 2)])
    assert w.invariant_level()
    w3 = word_from_list([(C3[0], 1)])
    assert not w3.invariant_level()


def test_word_serialization(six_point):
    c6 = class_of_point(six_point)
    w = word_from_list([(C3[0], 1), (c6, -2)])
    data = w.to_json()
    assert data[0]["exp"] == 1 and data[0]["class"]["degree"] == 3
    assert data[1]["exp"] == -2 and data[1]["class"]["invariant_only"]


def test_mixed_degree_word_from_links(surface, link_at_coords, six_link):
    """A chain mixing a 6-link and a 3-link inverse: one Z syllable, one Z/3
    syllable, and the word is flagged invariant-level."""
    w = psi_compose([six_link, link_at_coords.inverse()])
    c6 = class_of_point(six_link.base_point)
    cp = class_of_point(link_at_coords.base_point)
    assert w == word_from_list([(c6, 1), (cp, -1)])
    assert w.invariant_level()
    # Z-exponents accumulate without torsion
    w3 = word_from_list([(c6, 1)] * 5)
    assert w3.syllables == ((c6, 5),)
