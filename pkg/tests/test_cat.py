import pytest

from dicube import cat


def small_monoids():
    return {
        "trivial": cat.trivial_monoid(),
        "z2": cat.zmod(2),
        "z3": cat.zmod(3),
        "z4": cat.zmod(4),
        "z2xz2": cat.product_monoid(cat.zmod(2), cat.zmod(2)),
        "s3": cat.sym3(),
        "idem2": cat.idempotent2(),
        "capped": cat.capped_add(),
    }


def test_monoid_validation():
    for M in small_monoids().values():
        assert M.validate()
    with pytest.raises(cat.CatError):
        cat.FinMonoid(((0, 0), (0, 0)), 0).validate()  # no unit law


def test_cat_validation():
    for S in (cat.arrow_cat(), cat.discrete_cat(3), cat.cat_from_monoid(cat.sym3())):
        assert S.validate()


def test_is_cancellative():
    assert cat.is_cancellative(cat.zmod(4))
    assert not cat.is_cancellative(cat.idempotent2())
    assert not cat.is_cancellative(cat.capped_add())


def test_conjugacy_examples():
    assert len(cat.conjugacy_classes(cat.sym3())[0]) == 3
    for M in (cat.zmod(2), cat.zmod(4), cat.product_monoid(cat.zmod(2), cat.zmod(2))):
        classes, _ = cat.conjugacy_classes(M)
        assert all(len(g) == 1 for g in classes)
    classes, quotient = cat.conjugacy_classes(cat.idempotent2())
    assert len(classes) == 1
    assert quotient.size == 1


def test_conjugacy_quotient_is_cancellative_group():
    for name, M in small_monoids().items():
        if not M.is_commutative():
            continue
        classes, quotient = cat.conjugacy_classes(M)
        assert quotient is not None
        assert cat.is_cancellative(quotient), name
        assert quotient.is_group(), name


def test_nerve_counts():
    assert cat.nerve(cat.terminal_cat(), 2).sizes == (1, 1, 1)
    n1 = cat.nerve(cat.arrow_cat(), 1)
    assert n1.sizes == (2, 3)
    assert len(n1.nondegenerate(1)) == 1
    # one-object group target: one free label per edge, one relation per
    # square, so the square level has |M|^3 cells
    nz2 = cat.nerve(cat.zmod(2), 2)
    assert nz2.sizes == (1, 2, 8)


def test_nerve_validates():
    for S in (cat.arrow_cat(), cat.discrete_cat(2), cat.cat_from_monoid(cat.zmod(3))):
        assert cat.nerve(S, 2).validate()


def test_nerve_functorial():
    z2, z4 = cat.zmod(2), cat.zmod(4)
    # the doubling homomorphism z2 -> z4
    obj_map = (0,)
    mor_map = (0, 2)
    n2 = cat.nerve(z2, 2)
    n4 = cat.nerve(z4, 2)
    f = cat.nerve_map(obj_map, mor_map, z2, z4, n2, n4)
    assert f.validate()


def test_enumerate_functors_commuting_pair():
    P = cat.CatPresentation(1, ((0, 0), (0, 0)), (((0, 1), (1, 0)),))
    assert len(cat.enumerate_functors(P, cat.zmod(4))) == 16


def test_enumerate_functors_equal_squares():
    P = cat.CatPresentation(1, ((0, 0), (0, 0)), (((0, 0), (1, 1)),))
    fs = cat.enumerate_functors(P, cat.zmod(4))
    assert len(fs) == 8
    z4 = cat.zmod(4)
    for F in fs:
        a, b = F.gen_map
        assert z4.table[a][a] == z4.table[b][b]


def test_enumerate_functors_into_poset():
    from dicube import spaces, t1

    P, _ = t1.fundamental_presentation(spaces.cube_space(2))
    assert len(cat.enumerate_functors(P, cat.arrow_cat())) == 6


def test_enumerate_functors_deterministic():
    P = cat.CatPresentation(1, ((0, 0), (0, 0)), ())
    once = cat.enumerate_functors(P, cat.zmod(2))
    twice = cat.enumerate_functors(P, cat.zmod(2))
    assert once == twice


def test_homotopy_classes_arrow_target():
    # all three endomaps of the arrow poset are connected by transformations
    P = cat.CatPresentation(2, ((0, 1),), ())
    fs = cat.enumerate_functors(P, cat.arrow_cat())
    assert len(fs) == 3
    classes = cat.functor_homotopy_classes(P, cat.arrow_cat(), fs)
    assert len(classes) == 1


def test_homotopy_classes_abelian_rigidity():
    P = cat.CatPresentation(1, ((0, 0), (0, 0)), (((0, 1), (1, 0)),))
    fs = cat.enumerate_functors(P, cat.zmod(4))
    classes = cat.functor_homotopy_classes(P, cat.zmod(4), fs)
    assert len(classes) == 16


def test_homotopy_classes_discrete():
    P = cat.CatPresentation(2, (), ())
    fs = cat.enumerate_functors(P, cat.discrete_cat(2))
    assert len(fs) == 4
    classes = cat.functor_homotopy_classes(P, cat.discrete_cat(2), fs)
    assert len(classes) == 4


def test_group_fast_path_matches_generic():
    P = cat.CatPresentation(1, ((0, 0), (0, 0)), (((0, 0), (1, 1)),))
    z4 = cat.zmod(4)
    fs = cat.enumerate_functors(P, z4)
    fast = cat.functor_homotopy_classes(P, z4, fs)
    generic = cat.functor_homotopy_classes(P, cat.cat_from_monoid(z4), fs)
    assert fast == generic


def test_homotopy_classes_relabeling_invariant():
    P = cat.CatPresentation(1, ((0, 0),), ())
    s3 = cat.sym3()
    fs = cat.enumerate_functors(P, s3)
    classes = cat.functor_homotopy_classes(P, s3, fs)
    shuffled = list(reversed(fs))
    reclasses = cat.functor_homotopy_classes(P, s3, shuffled)
    def as_functors(functors, groups):
        return sorted(
            tuple(sorted((functors[i].obj_map, functors[i].gen_map) for i in g))
            for g in groups
        )

    assert as_functors(fs, classes) == as_functors(shuffled, reclasses)


def test_based_rigidity():
    # a zig-zag whose components are all identities forces equality
    P = cat.CatPresentation(1, ((0, 0),), ())
    s3 = cat.sym3()
    fs = cat.enumerate_functors(P, s3)
    for F in fs:
        for G in fs:
            if F == G:
                continue
            # the identity tuple is natural only between equal functors
            e = s3.unit
            natural = all(
                s3.table[F.gen_map[g]][e] == s3.table[e][G.gen_map[g]]
                for g in range(len(P.gens))
            )
            assert not natural


def test_nat_trans_direction_matters():
    # for the arrow target, a transformation exists iff values only grow
    P = cat.CatPresentation(1, (), ())
    S = cat.arrow_cat()
    lo = cat.Functor((0,), ())
    hi = cat.Functor((1,), ())
    assert cat.nat_trans_exists(P, S, lo, hi)
    assert not cat.nat_trans_exists(P, S, hi, lo)


def test_monoid_isomorphic():
    z4 = cat.zmod(4)
    klein4 = cat.product_monoid(cat.zmod(2), cat.zmod(2))
    assert cat.monoid_isomorphic(z4, klein4) is None
    assert cat.monoid_isomorphic(z4, z4) is not None
    relabeled = cat.monoid_from_op(
        [3, 1, 0, 2], lambda a, b: (a + b) % 4, 0
    )
    assert cat.monoid_isomorphic(z4, relabeled) is not None


def test_equal_doubles_pairs():
    ed = cat.equal_doubles_pairs(cat.zmod(4))
    assert ed.size == 8
    ed2 = cat.equal_doubles_pairs(cat.zmod(2))
    assert ed2.size == 4


def test_presentation_validation():
    # a non-composable word
    broken = cat.CatPresentation(2, ((0, 0), (1, 1)), (((0, 1), (0,)),))
    with pytest.raises(cat.CatError):
        broken.validate()
    # relation words with different endpoints
    bad = cat.CatPresentation(2, ((0, 1), (1, 0)), (((0,), (1,)),))
    with pytest.raises(cat.CatError):
        bad.validate()
    # an identity relation against a non-loop word
    nonloop = cat.CatPresentation(2, ((0, 1),), (((0,), ()),))
    with pytest.raises(cat.CatError):
        nonloop.validate()


def test_json_round_trips():
    M = cat.sym3()
    assert cat.monoid_from_json(cat.monoid_to_json(M)) == M
    S = cat.arrow_cat()
    assert cat.cat_from_json(cat.cat_to_json(S)) == S
