import itertools

import pytest

from dicube import lattice as lat
from dicube import oracle


def catalog():
    return {
        "[0]": lat.chain(0),
        "[1]": lat.chain(1),
        "[2]": lat.chain(2),
        "[3]": lat.chain(3),
        "[1]^2": lat.boolean(2),
        "[1]^3": lat.boolean(3),
        "[1]x[2]": lat.product(lat.boolean(1), lat.chain(2)),
        "M3": lat.m_lattice(3),
        "M4": lat.m_lattice(4),
        "N5": lat.n5(),
    }


def test_poset_validation():
    with pytest.raises(lat.LatticeError):
        lat.Poset(2, ((True, False), (False, False)))  # not reflexive
    with pytest.raises(lat.LatticeError):
        lat.Poset(2, ((True, True), (True, True)))  # not antisymmetric


def test_non_lattice_rejected():
    # two incomparable maximal elements: no join
    leq = (
        (True, True, True),
        (False, True, False),
        (False, False, True),
    )
    with pytest.raises(lat.LatticeError):
        lat.lattice_from_leq(leq)


def test_join_meet_laws_on_catalog():
    for name, L in catalog().items():
        rng = range(L.size)
        for x in rng:
            for y in rng:
                assert L.join[x][y] == L.join[y][x]
                assert L.meet[x][y] == L.meet[y][x]
                assert L.meet[x][L.join[x][y]] == x
                assert L.join[x][L.meet[x][y]] == x
        for x, y, z in itertools.product(rng, repeat=3):
            assert L.join[L.join[x][y]][z] == L.join[x][L.join[y][z]]
            assert L.meet[L.meet[x][y]][z] == L.meet[x][L.meet[y][z]]


def test_boolean_interval_counts():
    assert len(lat.boolean_intervals(lat.boolean(2))) == 9
    ivs = lat.boolean_intervals(lat.chain(2))
    assert len(ivs) == 5
    assert lat.boolean_rank(lat.chain(2), 0, 2) is None
    assert len(lat.boolean_intervals(lat.chain(0))) == 1


def test_boolean_rank_matches_isomorphism_search():
    for name, L in catalog().items():
        for lo in range(L.size):
            for hi in range(L.size):
                if not L.leq(lo, hi):
                    continue
                elems = lat.interval_elements(L, lo, hi)
                expected = oracle.is_boolean_by_isomorphism(L.poset.leq, elems)
                assert (lat.boolean_rank(L, lo, hi) is not None) == expected


def test_is_dis_morphism_identity():
    b2 = lat.boolean(2)
    ident = lat.LatticeMap(b2, b2, tuple(range(4)))
    assert lat.is_dis_morphism(ident) == (True, None)


def test_is_dis_morphism_meet_map_fails():
    b2, b1 = lat.boolean(2), lat.boolean(1)
    meet = lat.LatticeMap(b2, b1, tuple(min(a, b) for a, b in b2.labels))
    ok, witness = lat.is_dis_morphism(meet)
    assert not ok
    assert witness[0] == "join"
    assert {b2.labels[witness[1]], b2.labels[witness[2]]} == {(0, 1), (1, 0)}


def test_is_dis_morphism_threshold_map():
    c3, b1 = lat.chain(3), lat.boolean(1)
    f = lat.LatticeMap(c3, b1, (0, 0, 1, 1))
    assert lat.is_dis_morphism(f) == (True, None)


def test_is_dis_morphism_requires_monotone():
    b1 = lat.boolean(1)
    with pytest.raises(lat.LatticeError):
        lat.is_dis_morphism(lat.LatticeMap(b1, b1, (1, 0)))


def test_subdivide_examples():
    assert lat.lattice_isomorphic(
        lat.subdivide_lattice(lat.boolean(1), 1), lat.chain(2)
    )
    assert lat.lattice_isomorphic(lat.subdivide_lattice(lat.chain(2), 1), lat.chain(4))
    sd3sq = lat.subdivide_lattice(lat.boolean(2), 2)
    assert sd3sq.size == 16
    assert lat.lattice_isomorphic(sd3sq, lat.product(lat.chain(3), lat.chain(3)))


def test_subdivide_rejects_non_distributive():
    with pytest.raises(lat.LatticeError):
        lat.subdivide_lattice(lat.m_lattice(3), 1)


def test_subdivide_identity_at_zero():
    for name, L in catalog().items():
        if not L.is_distributive:
            continue
        copy = lat.subdivide_lattice(L, 0)
        assert lat.lattice_isomorphic(copy, L)


def test_subdivision_composition():
    for L in (lat.boolean(1), lat.chain(2), lat.boolean(2)):
        twice = lat.subdivide_lattice(lat.subdivide_lattice(L, 2), 2)
        nine = lat.subdivide_lattice(L, 8)
        assert lat.lattice_isomorphic(twice, nine)
    # and in general: (k+1)(m+1)-fold equals the composite
    for L in (lat.boolean(1), lat.chain(2)):
        for k in range(3):
            for m in range(3):
                comp = lat.subdivide_lattice(lat.subdivide_lattice(L, k), m)
                direct = lat.subdivide_lattice(L, (k + 1) * (m + 1) - 1)
                assert lat.lattice_isomorphic(comp, direct)


def test_subdivision_restriction_elementwise():
    b1 = lat.boolean(1)
    f = lat.subdivision_restriction(b1, (1,), 1)
    # elements of the twofold subdivision in label order: (0,0),(0,1),(1,1)
    assert f.dom.labels == ((0, 0), (0, 1), (1, 1))
    assert f.values == (0, 1, 1)


def test_subdivision_restriction_identity():
    b2 = lat.boolean(2)
    f = lat.subdivision_restriction(b2, (0, 1), 1)
    assert f.values == tuple(range(f.dom.size))


def test_subdivision_restriction_validation():
    with pytest.raises(lat.LatticeError):
        lat.subdivision_restriction(lat.boolean(1), (1, 0), 1)
    with pytest.raises(lat.LatticeError):
        lat.subdivision_restriction(lat.boolean(1), (0, 0), 1)


def test_subdivision_restriction_middle_evaluation():
    # the [0] -> [2], 0 |-> 1 restriction of the square evaluates triples
    # at their middle entry
    b2 = lat.boolean(2)
    f = lat.subdivision_restriction(b2, (1,), 2)
    for idx, label in enumerate(f.dom.labels):
        assert f.cod.labels[f.values[idx]] == (label[1],)


def test_subdivision_restrictions_are_dis_on_small_maps():
    # precomposition images of enumerated restrictions stay interval-preserving
    for L in (lat.boolean(1), lat.chain(2)):
        for phi in [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]:
            f = lat.subdivision_restriction(L, phi, 2)
            assert lat.is_dis_morphism(f)[0]


def test_subdivision_functor_on_dis_morphisms():
    # enumerate every interval-preserving homomorphism between small
    # distributive lattices and
    # push it through the subdivision functor
    small = [lat.boolean(1), lat.chain(2), lat.boolean(2), lat.chain(3)]
    checked = 0
    for L in small:
        for M in small:
            if L.size > 9 or M.size > 9:
                continue
            for values in oracle.all_monotone(L.poset.leq, M.poset.leq, budget=10**6):
                f = lat.LatticeMap(L, M, values)
                if not lat.is_dis_morphism(f)[0]:
                    continue
                g = lat.subdivide_lattice_map(f, 1)
                assert lat.is_dis_morphism(g)[0]
                checked += 1
    assert checked > 50


def test_diamond_examples():
    b2 = lat.boolean(2)
    x = b2.labels.index((1, 0))
    y = b2.labels.index((0, 1))
    assert lat.diamond_check(b2, x, y)
    m3 = lat.m_lattice(3)
    assert lat.diamond_check(m3, 1, 2)
    n5 = lat.n5()
    assert not all(
        lat.diamond_check(n5, x, y) for x in range(5) for y in range(5)
    )


def test_diamond_characterizes_modularity():
    for name, L in catalog().items():
        all_true = all(
            lat.diamond_check(L, x, y)
            for x in range(L.size)
            for y in range(L.size)
        )
        assert all_true == lat.is_modular(L), name


def test_profile_examples():
    assert lat.distributivity_profile(lat.boolean(3)) == (True, True, True)
    assert lat.distributivity_profile(lat.m_lattice(3)) == (False, False, False)
    assert lat.distributivity_profile(lat.n5()) == (False, False, False)
    assert lat.distributivity_profile(lat.m_lattice(6)) == (False, False, False)


def test_profile_agreement_on_catalog():
    for name, L in catalog().items():
        b1, b2, b3 = lat.distributivity_profile(L)
        assert b1 == b2 == b3, name


def test_boolean_interval_images_chain():
    c3 = lat.chain(3)
    I = lat.Interval.of(c3, 0, 1)
    J = lat.Interval.of(c3, 1, 2)
    join_iv, meet_iv = lat.boolean_interval_images(c3, I, J)
    assert join_iv.elements == (1, 2)
    assert meet_iv.elements == (0, 1)


def test_boolean_interval_images_square():
    b2 = lat.boolean(2)
    whole = lat.Interval.of(b2, 0, 3)
    join_iv, meet_iv = lat.boolean_interval_images(b2, whole, whole)
    assert join_iv.elements == (0, 1, 2, 3)
    assert meet_iv.elements == (0, 1, 2, 3)
    left = lat.Interval.of(b2, 0, b2.labels.index((0, 1)))
    bottom = lat.Interval.of(b2, 0, b2.labels.index((1, 0)))
    join_iv, meet_iv = lat.boolean_interval_images(b2, left, bottom)
    assert join_iv.elements == (0, 1, 2, 3)
    assert meet_iv.elements == (0,)


def test_json_round_trip():
    for name, L in catalog().items():
        back = lat.from_json(lat.to_json(L))
        assert back.poset.leq == L.poset.leq
        assert back.join == L.join


def test_dot_export_has_cover_edges():
    text = lat.dot_hasse(lat.boolean(2))
    assert text.count("->") == 4
