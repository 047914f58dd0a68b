import itertools

import pytest

import oracles
from klms.errors import PreconditionError
from klms.symgroup import (
    GenSet, Permutation, all_gensets, all_perms, bruhat_leq, coset_ladder, descents_left,
    descents_right, double_coset, identity, is_min_double_coset_rep, longest_element,
    max_double_coset_element, min_coset_reps, min_double_coset_rep, min_double_coset_reps,
    min_left_coset_reps, parabolic_subgroup, relative_reps, simple,
)


def P(text):
    return Permutation.parse(text)


def test_parse_and_print():
    assert str(P("2314")) == "2314"
    assert str(P("2,3,1,4")) == "2314"
    big = Permutation(tuple(range(10, 0, -1)))
    assert str(big) == "10,9,8,7,6,5,4,3,2,1"
    assert Permutation.parse(str(big)) == big
    for bad in ["1123", "0123", "abc", "124"]:
        with pytest.raises(ValueError):
            P(bad)


def test_composition_convention():
    s1, s2 = simple(1, 3), simple(2, 3)
    assert str(s1 * s2) == "231"
    assert (s1 * s2)(1) == s1(s2(1))
    w = P("2413")
    assert w.left_mult(1) == simple(1, 4) * w
    assert w.right_mult(1) == w * simple(1, 4)
    assert w * w.inverse == identity(4)


def test_length_matches_inversions():
    for w in all_perms(5):
        assert w.length == oracles.length(w.images)
    assert len(all_perms(4)) == 24
    assert longest_element(GenSet.full(4)).length == 6


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bruhat_agrees_with_subword_criterion(n):
    for x in all_perms(n):
        for y in all_perms(n):
            assert bruhat_leq(x, y) == oracles.bruhat_leq(x.images, y.images)


def test_exchange_property():
    # if s is a left descent of w, then w has a reduced word starting with s
    for w in all_perms(4):
        for s in descents_left(w):
            assert w.left_mult(s).length == w.length - 1
        for s in descents_right(w):
            assert w.right_mult(s).length == w.length - 1
        assert descents_left(w) == descents_right(w.inverse)


def test_parabolic_subgroup_matches_block_permutations():
    for J in all_gensets(4):
        assert {w.images for w in parabolic_subgroup(J)} == set(oracles.parabolic(4, J))


@pytest.mark.parametrize("n", [3, 4])
def test_coset_factorization(n):
    # every w factors uniquely as w = v u with v minimal and u in S_J
    for J in all_gensets(n):
        reps = min_coset_reps(J)
        SJ = parabolic_subgroup(J)
        products = [v * u for v in reps for u in SJ]
        assert sorted(p.images for p in products) == sorted(w.images for w in all_perms(n))
        for v in reps:
            for u in SJ:
                assert (v * u).length == v.length + u.length
        left = min_left_coset_reps(J)
        assert len({u * v for u in SJ for v in left}) == len(all_perms(n))


@pytest.mark.parametrize("n", [3, 4])
def test_double_cosets_partition_the_group(n):
    for J1 in all_gensets(n):
        for J2 in all_gensets(n):
            reps = min_double_coset_reps(J1, J2)
            seen = set()
            for v in reps:
                dc = double_coset(v, J1, J2)
                assert {w.images for w in dc} == oracles.double_coset(v.images, n, J1, J2)
                assert not seen & dc
                seen |= dc
                assert min(w.length for w in dc) == v.length
                assert max_double_coset_element(v, J1, J2).length == max(w.length for w in dc)
                for w in dc:
                    assert min_double_coset_rep(w, J1, J2) == v
            assert len(seen) == len(all_perms(n))


def test_min_double_coset_rep_characterization():
    J1, J2 = GenSet.parse(4, "1,3"), GenSet.parse(4, "2")
    for w in all_perms(4):
        expected = not (descents_left(w) & J1.members) and not (descents_right(w) & J2.members)
        assert is_min_double_coset_rep(w, J1, J2) == expected


def test_max_element_requires_min_rep():
    with pytest.raises(PreconditionError):
        max_double_coset_element(P("2134"), GenSet.parse(4, "1"), GenSet(4))


def test_genset_parsing():
    J = GenSet.parse(4, "1,3")
    assert 1 in J and 2 not in J
    assert list(J) == [1, 3]
    assert J.to_json() == [1, 3]
    assert len(GenSet.parse(4, "")) == 0
    assert len(all_gensets(4)) == 8
    with pytest.raises(ValueError):
        GenSet.parse(4, "4")


def test_longest_element_of_runs():
    assert str(longest_element(GenSet.parse(4, "1,3"))) == "2143"
    assert str(longest_element(GenSet.parse(5, "1,2,4"))) == "32154"
    assert longest_element(GenSet(4)) == identity(4)


def test_coset_ladder_example():
    J1, reps = coset_ladder(GenSet.parse(4, "1,3"))
    assert J1 == GenSet.parse(4, "3")
    assert reps == [simple(1, 4), identity(4)]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_coset_ladder_factorization(n):
    for J in all_gensets(n):
        if not J.members:
            continue
        J1, reps = coset_ladder(J)
        outer = min_coset_reps(J)
        products = [u * w for u in outer for w in reps]
        assert sorted(p.images for p in products) == sorted(v.images for v in min_coset_reps(J1))
        for u in outer:
            for w in reps:
                assert (u * w).length == u.length + w.length


@pytest.mark.parametrize("n", [3, 4])
def test_relative_reps_additivity(n):
    # every element of the double coset is uniquely x v y with x a relative rep, y in S_J2,
    # and lengths add
    for J1, J2 in itertools.product(all_gensets(n), repeat=2):
        SJ2 = parabolic_subgroup(J2)
        for v in min_double_coset_reps(J1, J2):
            rel = relative_reps(v, J1, J2)
            prods = [x * v * y for x in rel for y in SJ2]
            assert len(set(prods)) == len(prods)
            assert set(prods) == double_coset(v, J1, J2)
            for x in rel:
                for y in SJ2:
                    assert (x * v * y).length == x.length + v.length + y.length
