import random
from fractions import Fraction

import pytest

from vallab.ogroup import (
    ConvexPart,
    contains,
    convex_core,
    cyclic,
    from_json,
    hull,
    in_divisible_part,
    index,
    is_p_divisible,
    is_roughly_p_divisible,
    join,
    lex_compose,
    ogroup,
    project_trailing,
    quotient_by_convex,
    same_group,
    subset,
    to_json,
    trivial,
)
from vallab.values import INFINITE, LexValue

from helpers import rank1_member, sample_elements

F = Fraction


def test_construction_drops_zero_gens():
    g = ogroup([1, 0, F(1, 2)], closed=[2], prime=5)
    assert len(g.gens) == 2
    assert g.p_closed == {1}
    with pytest.raises(ValueError):
        ogroup([], rank=None)
    with pytest.raises(ValueError):
        ogroup([1], closed=[0], prime=1)
    assert trivial(2).is_trivial()


def test_contains_frozen_examples():
    assert contains(cyclic(1), 0)
    assert contains(cyclic(1), -7)
    assert not contains(cyclic(-1, rank=1), F(-1, 3))
    zp = ogroup([1], closed=[0], prime=3)
    assert contains(zp, F(5, 27))
    assert not contains(zp, F(1, 2))
    assert not contains(cyclic(2), 1)
    assert contains(ogroup([2, 3]), 1)


def test_contains_matches_gcd_oracle_rank_one():
    rng = random.Random(10)
    pool = [F(n, d) for n in range(-4, 5) for d in (1, 2, 3)]
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        gens = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        nclosed = rng.randint(0, len(gens))
        closed = list(range(nclosed))
        g = ogroup(gens, closed=closed, prime=p if nclosed else 1)
        free = gens[nclosed:]
        cl = gens[:nclosed]
        for num in range(-6, 7):
            for den in (1, 2, 3, 4, p, p * p, p ** 3):
                x = F(num, den)
                got = contains(g, x)
                want = rank1_member(free, cl, p if nclosed else 2, x)
                assert got == want, (gens, closed, p, x)


def test_in_divisible_part():
    # rank one: a free generator in the span of the closed one is absorbed,
    # Z*(1/3) + Z[1/2]*1 = Z[1/2]*(1/3)
    g = join(ogroup([1], closed=[0], prime=2), [F(1, 3)])
    assert in_divisible_part(g, F(5, 8))
    assert in_divisible_part(g, F(1, 3))
    assert not in_divisible_part(g, F(1, 5))
    # rank two: genuinely free directions stay outside the divisible part
    g2 = lex_compose(ogroup([1], closed=[0], prime=2), cyclic(F(1, 3)))
    assert in_divisible_part(g2, LexValue(F(5, 8), 0))
    assert not in_divisible_part(g2, LexValue(0, F(1, 3)))
    assert contains(g2, LexValue(0, F(1, 3)))


def test_absorbed_free_generator_joins_divisible_part():
    # 1/2 spans the same line as the closed generator, so the whole group
    # collapses to Z[1/3] * 1/2
    g = ogroup([1, F(1, 2)], closed=[0], prime=3)
    assert contains(g, F(1, 6))
    assert in_divisible_part(g, F(1, 6))
    assert is_p_divisible(g, 3)
    assert same_group(g, ogroup([F(1, 2)], closed=[0], prime=3))


def test_subset_and_same_group():
    zp = ogroup([1], closed=[0], prime=3)
    assert subset(zp, cyclic(1))
    assert not subset(cyclic(1), zp)
    assert subset(zp, ogroup([F(1, 9)], closed=[0], prime=3))
    assert not subset(zp, ogroup([1], closed=[0], prime=2))
    assert same_group(ogroup([2, 3]), cyclic(1))
    with pytest.raises(ValueError):
        subset(cyclic(1), cyclic(LexValue(1, 1)))


def test_index_frozen_examples():
    g = ogroup([1, F(-1, 9)])
    assert index(g, cyclic(1)) == 9
    zp = ogroup([1], closed=[0], prime=3)
    assert index(zp, cyclic(1)) == INFINITE
    assert index(cyclic(1), cyclic(1)) == 1
    assert index(zp, ogroup([1], closed=[0], prime=3)) == 1
    # prime-to-p scaling survives, p-power scaling is absorbed
    assert index(zp, ogroup([6], closed=[0], prime=3)) == 2
    assert index(zp, ogroup([9], closed=[0], prime=3)) == 1
    with pytest.raises(ValueError):
        index(cyclic(1), cyclic(F(1, 2)))


def test_index_rank_two():
    g = lex_compose(cyclic(1), cyclic(1))
    h = lex_compose(cyclic(2), cyclic(3))
    assert index(g, h) == 6
    zp = ogroup([1], closed=[0], prime=2)
    a = lex_compose(zp, cyclic(1))
    b = lex_compose(ogroup([3], closed=[0], prime=2), cyclic(5))
    assert index(a, b) == 15
    assert index(a, lex_compose(zp, trivial(1))) == INFINITE


def test_index_multiplicative_on_chains():
    rng = random.Random(11)
    for _ in range(25):
        p = rng.choice([2, 3])
        nclosed = rng.randint(0, 1)
        gens = [F(1)] if nclosed else [F(1), F(1, 2)]
        g = ogroup(gens, closed=range(nclosed), prime=p if nclosed else 1)
        m1 = rng.choice([1, 2, 3, 5])
        m2 = rng.choice([1, 2, 3])
        h = ogroup([m1 * q for q in gens], closed=range(nclosed),
                   prime=p if nclosed else 1)
        k = ogroup([m1 * m2 * q for q in gens], closed=range(nclosed),
                   prime=p if nclosed else 1)
        assert index(g, k) == index(g, h) * index(h, k)


def test_is_p_divisible():
    assert is_p_divisible(ogroup([1], closed=[0], prime=3), 3)
    assert not is_p_divisible(ogroup([1], closed=[0], prime=3), 2)
    assert not is_p_divisible(cyclic(1), 3)
    assert is_p_divisible(trivial(1), 3)
    assert is_p_divisible(cyclic(1), 1)
    # rank-one absorption: adding 1/2 to Z[1/3] still gives a 3-divisible group
    assert is_p_divisible(join(ogroup([1], closed=[0], prime=3), [F(1, 2)]), 3)
    assert not is_p_divisible(lex_compose(ogroup([1], closed=[0], prime=3),
                                          cyclic(1)), 3)


def test_convex_core_rank_one_is_whole_group():
    g = ogroup([1], closed=[0], prime=5)
    part = convex_core(g, F(1, 5), 5)
    assert part.cut_index == 0
    assert same_group(part.group, g)
    with pytest.raises(ValueError):
        convex_core(g, F(-1, 5), 5)
    with pytest.raises(ValueError):
        convex_core(g, F(1, 2), 5)


def test_convex_core_rank_two():
    g = lex_compose(cyclic(1), cyclic(F(1, 2)))
    part = convex_core(g, LexValue(0, F(3, 2)), 2)
    assert part.cut_index == 1
    assert same_group(part.group, ogroup([(0, F(1, 2))], rank=2))
    whole = convex_core(g, LexValue(1, 0), 2)
    assert whole.cut_index == 0
    assert same_group(whole.group, g)


def test_convex_part_saturates_against_divisible_block():
    # sigma maps the closed generator to 3; dividing it by p = 3 lets the
    # free generator cancel exactly, so the kernel is Z*(0,1), not Z*(0,3)
    g = ogroup([(3, 0), (1, 1)], closed=[0], prime=3)
    part = convex_core(g, LexValue(0, 1), 3)
    assert same_group(part.group, ogroup([(0, 1)], rank=2))
    assert contains(g, LexValue(0, 1))


def test_convex_part_respects_prime_to_p_congruence():
    # cancelling the head needs half the closed generator, and 1/2 is not
    # allowed in Z[1/3]; only even multiples of the free generator die
    g = ogroup([(2, 0), (1, 1)], closed=[0], prime=3)
    part = convex_core(g, LexValue(0, 2), 3)
    assert same_group(part.group, ogroup([(0, 2)], rank=2))
    assert not contains(g, LexValue(0, 1))
    assert contains(g, LexValue(0, 2))


def test_convex_part_sampling_consistency():
    rng = random.Random(12)
    pool = [-2, -1, 0, 1, 2, 3, F(1, 2)]
    for _ in range(20):
        p = rng.choice([2, 3])
        gens = [(rng.choice(pool), rng.choice(pool)) for _ in range(rng.randint(1, 3))]
        nclosed = rng.randint(0, len(gens))
        g = ogroup(gens, closed=range(nclosed), prime=p if nclosed else 1)
        if g.is_trivial():
            continue
        h = convex_core(g, LexValue(0, 1), p).group if contains(g, LexValue(0, 1)) else None
        if h is None:
            continue
        # soundness: generators of the part lie in g and have zero head
        for i, gen in enumerate(h.gens):
            assert gen[0] == 0
            assert contains(g, gen)
            if i in h.p_closed:
                assert in_divisible_part(g, gen) or contains(g, tuple(c / p for c in gen))
        # completeness on samples: zero-head elements of g land in the part
        free = [gens[i] for i in range(len(gens)) if i >= nclosed]
        cl = [gens[i] for i in range(nclosed)]
        for x in sample_elements(rng, free, cl, p, count=25, coeff=3, kmax=2):
            if x[0] == 0:
                assert contains(h, x), (gens, nclosed, p, x)


def test_is_roughly_p_divisible():
    zp3 = ogroup([1], closed=[0], prime=3)
    g = lex_compose(cyclic(1), zp3)
    assert not is_p_divisible(g, 3)
    assert is_roughly_p_divisible(g, LexValue(0, 1), 3)
    assert not is_roughly_p_divisible(g, LexValue(1, 0), 3)
    flipped = lex_compose(zp3, cyclic(1))
    assert not is_roughly_p_divisible(flipped, LexValue(0, 1), 3)
    # equal characteristic: no distinguished element, whole group decides
    assert is_roughly_p_divisible(zp3, None, 3)
    assert not is_roughly_p_divisible(g, None, 3)


def test_quotient_by_convex():
    g = lex_compose(cyclic(1), cyclic(F(1, 2)))
    part = convex_core(g, LexValue(0, F(1, 2)), 2)
    q = quotient_by_convex(g, part)
    assert q.rank == 1
    assert same_group(q, cyclic(1))
    with pytest.raises(ValueError):
        quotient_by_convex(g, ConvexPart(group=cyclic(1), cut_index=0))
    bad = ConvexPart(group=ogroup([(0, 1)], rank=2), cut_index=1)
    with pytest.raises(ValueError):
        quotient_by_convex(g, bad)


def test_quotient_keeps_divisibility():
    zp = ogroup([1], closed=[0], prime=2)
    g = lex_compose(zp, cyclic(1))
    part = convex_core(g, LexValue(0, 1), 2)
    q = quotient_by_convex(g, part)
    assert same_group(q, ogroup([1], closed=[0], prime=2))
    assert is_p_divisible(q, 2)


def test_project_trailing():
    zp = ogroup([1], closed=[0], prime=3)
    g = lex_compose(cyclic(1), zp)
    t = project_trailing(g, 1)
    assert t.rank == 1
    assert same_group(t, zp)
    with pytest.raises(ValueError):
        project_trailing(g, 2)


def test_hull_p_div():
    g = cyclic(1)
    h = hull(g, "p_div", "exact", 3)
    assert same_group(h, ogroup([1], closed=[0], prime=3))
    h2 = hull(g, "p_div", 2, 3)
    assert same_group(h2, cyclic(F(1, 9)))
    assert index(h2, g) == 9
    with pytest.raises(ValueError):
        hull(g, "p_div", -1, 3)


def test_hull_p_prime_div():
    g = cyclic(1)
    h = hull(g, "p_prime_div", 4, 3)
    assert same_group(h, cyclic(F(1, 4)))
    # lcm of {1,2,3,4,6} with multiples of 5 excluded
    h6 = hull(g, "p_prime_div", 6, 5)
    assert same_group(h6, cyclic(F(1, 12)))
    with pytest.raises(ValueError):
        hull(g, "p_prime_div", "exact", 3)
    with pytest.raises(ValueError):
        hull(g, "nonsense", 1, 3)


def test_lex_compose():
    g = lex_compose(cyclic(1), ogroup([1], closed=[0], prime=3))
    assert g.rank == 2
    assert contains(g, LexValue(2, F(1, 27)))
    assert not contains(g, LexValue(F(1, 3), 0))
    with pytest.raises(ValueError):
        lex_compose(ogroup([1], closed=[0], prime=2),
                    ogroup([1], closed=[0], prime=3))


def test_json_round_trip():
    g = ogroup([1, F(-1, 9)], closed=[0], prime=3)
    d = to_json(g)
    assert d["rank"] == 1
    assert d["gens"] == [[1, 1], [-1, 9]]
    assert d["p_closed"] == [0]
    assert same_group(from_json(d), g)

    g2 = lex_compose(cyclic(1), ogroup([F(1, 2)], closed=[0], prime=5))
    d2 = to_json(g2)
    assert d2["gens"] == [[[1, 1], [0, 1]], [[0, 1], [1, 2]]]
    assert same_group(from_json(d2), g2)


def test_canonical_form_idempotent_under_requotation():
    rng = random.Random(13)
    pool = [F(n, d) for n in (-3, -1, 1, 2) for d in (1, 2, 3)]
    for _ in range(30):
        p = rng.choice([2, 3])
        gens = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        nclosed = rng.randint(0, len(gens))
        g = ogroup(gens, closed=range(nclosed), prime=p if nclosed else 1)
        # shuffling generators or doubling them changes nothing
        dup = ogroup(gens + gens, closed=list(range(nclosed)) +
                     [len(gens) + i for i in range(nclosed)],
                     prime=p if nclosed else 1)
        assert same_group(g, dup)
        assert index(g, dup) == 1 if not g.is_trivial() else True
