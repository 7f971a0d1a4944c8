from math import comb

import pytest

from borelschur.divided_powers import DividedPowerAlgebra
from borelschur.fields import PrimeField, Rationals
from borelschur.resolutions import minimal_resolution

QQ = Rationals()


def test_characteristic_zero_two_rows():
    # the augmentation ideal is free on the single generator: length one
    alg = DividedPowerAlgebra(2)
    c = minimal_resolution(alg, QQ, 5, 6)
    b = c.betti()
    assert b[0] == [(0,)]
    assert b[1] == [(1,)]
    for i in range(2, 6):
        assert not b.get(i)
    assert c.verify_exactness()
    assert c.verify_minimality()


def expected_generator_heights(p, bound):
    """Independent slice oracle for two rows in characteristic p.

    The kernel of the augmentation in the slice of height k is spanned by
    the single divided power; the radical span inside that slice is
    generated by the products of lower divided powers, whose coefficients
    are binomials.  A new generator appears exactly when all of them
    vanish mod p.
    """
    out = []
    for k in range(1, bound + 1):
        if all(comb(k, a) % p == 0 for a in range(1, k)):
            out.append(k)
    return out


@pytest.mark.parametrize("p,bound,expected", [
    (2, 8, [1, 2, 4, 8]),
    (3, 9, [1, 3, 9]),
    (5, 6, [1, 5]),
])
def test_first_syzygy_two_rows_prime(p, bound, expected):
    assert expected_generator_heights(p, bound) == expected
    alg = DividedPowerAlgebra(2)
    c = minimal_resolution(alg, PrimeField(p), 1, bound)
    assert c.betti()[1] == [(k,) for k in expected]


def test_trivial_cutoffs():
    alg = DividedPowerAlgebra(2)
    c = minimal_resolution(alg, QQ, 0, 4)
    assert c.betti() == {0: [(0,)]}
    assert c.verify_minimality()
    c2 = minimal_resolution(alg, PrimeField(2), 3, 0)
    assert c2.betti()[0] == [(0,)]
    assert not c2.betti().get(1)


def test_three_rows_characteristic_zero():
    # Betti numbers of the nilpotent rank-two Lie algebra: 1, 2, 2, 1
    alg = DividedPowerAlgebra(3)
    c = minimal_resolution(alg, QQ, 5, 4)
    b = c.betti()
    assert b[0] == [(0, 0)]
    assert b[1] == [(0, 1), (1, 0)]
    assert b[2] == [(1, 2), (2, 1)]
    assert b[3] == [(2, 2)]
    assert not b.get(4)
    assert c.verify_exactness()
    assert c.verify_minimality()


@pytest.mark.parametrize("n,char,L,H", [(2, 2, 4, 6), (3, 2, 4, 4), (3, 3, 3, 4)])
def test_exactness_and_minimality(n, char, L, H):
    alg = DividedPowerAlgebra(n)
    c = minimal_resolution(alg, PrimeField(char), L, H)
    assert c.verify_exactness()
    assert c.verify_minimality()


def test_exactness_tripwire():
    alg = DividedPowerAlgebra(2)
    c = minimal_resolution(alg, PrimeField(2), 3, 4)
    assert c.verify_exactness()
    # zero out one differential entry: exactness must break
    (key, entry) = next(iter(c.diffs[0].items()))
    saved = dict(entry)
    entry.clear()
    assert not c.verify_exactness()
    entry.update(saved)
    assert c.verify_exactness()


def test_minimality_tripwire():
    alg = DividedPowerAlgebra(2)
    c = minimal_resolution(alg, PrimeField(2), 2, 4)
    assert c.verify_minimality()
    (key, entry) = next(iter(c.diffs[0].items()))
    entry[alg.unit] = c.field.one
    assert not c.verify_minimality()
    del entry[alg.unit]
    assert c.verify_minimality()


def test_slice_dimensions_match_component_counts():
    alg = DividedPowerAlgebra(3)
    c = minimal_resolution(alg, PrimeField(2), 3, 4)
    for i, degs in enumerate(c.degrees):
        for coords in alg.degrees_to_height(c.height):
            expected = 0
            for g in degs:
                rem = tuple(a - b for a, b in zip(coords, g))
                if all(x >= 0 for x in rem):
                    expected += len(alg.component_basis(rem))
            assert len(c.slice_basis(i, coords)) == expected


@pytest.mark.parametrize("n,char,L,H", [
    (2, 0, 4, 6), (2, 2, 5, 8), (2, 3, 4, 9), (3, 0, 4, 4), (3, 2, 4, 4),
])
def test_pivoting_strategies_agree(n, char, L, H):
    alg = DividedPowerAlgebra(n)
    field = QQ if char == 0 else PrimeField(char)
    b1 = minimal_resolution(alg, field, L, H, pivoting="first").betti()
    b2 = minimal_resolution(alg, field, L, H, pivoting="last").betti()
    assert b1 == b2


def test_differentials_compose_to_zero_exactly():
    alg = DividedPowerAlgebra(3)
    field = PrimeField(2)
    c = minimal_resolution(alg, field, 4, 4)
    for i in range(1, len(c.diffs)):
        lower = c.diffs[i - 1]
        upper = c.diffs[i]
        composite = {}
        for (s, u), a in upper.items():
            for (t, s2), b in lower.items():
                if s2 != s:
                    continue
                prod = alg.multiply(a, b, field)
                acc = composite.setdefault((t, u), {})
                for m, x in prod.items():
                    v = field.add(acc.get(m, field.zero), x)
                    if v == field.zero:
                        acc.pop(m, None)
                    else:
                        acc[m] = v
        assert all(not e for e in composite.values())


def test_json_round_shape():
    alg = DividedPowerAlgebra(2)
    c = minimal_resolution(alg, QQ, 2, 4)
    data = c.to_json()
    assert data["n"] == 2 and data["char"] == 0
    assert data["modules"][0] == [[0]]
    assert isinstance(data["differentials"], list)
