import random
from itertools import permutations, product as iproduct

import pytest

from borelschur.combinatorics import compositions, weight
from borelschur.divided_powers import DividedPowerAlgebra
from borelschur.fields import PrimeField, Rationals
from borelschur.tensor_space import (
    TENSOR_DIMENSION_CAP,
    TensorAction,
    upper_table_json,
    verify_isomorphism,
)

QQ = Rationals()


def test_xi_examples():
    act = TensorAction(2, 2, QQ)
    x = act.xi((1, 1), (1, 2))
    assert x == {act.position[(1, 2)]: {act.position[(1, 1)]: QQ.one},
                 act.position[(2, 1)]: {act.position[(1, 1)]: QQ.one}}
    # weight idempotents decompose the identity
    total = act.zero()
    for lam in compositions(2, 2):
        total = act.add_scaled(total, act.weight_projector(lam), QQ.one)
    assert act.equal(total, act.identity())
    # xi_lam projects onto the weight space
    proj = act.weight_projector((1, 1))
    for q, idx in enumerate(act.indices):
        expected = {q: {q: QQ.one}} if weight(idx, 2) == (1, 1) else {}
        assert {k: v for k, v in proj.items() if k == q} == expected


def permutation_operator(act, perm):
    one = act.field.one
    op = {}
    for q, idx in enumerate(act.indices):
        moved = tuple(idx[p] for p in perm)
        op[q] = {act.position[moved]: one}
    return op


def test_xi_commutes_with_place_permutations():
    act = TensorAction(2, 3, QQ)
    rng = random.Random(31)
    pairs = []
    for _ in range(6):
        j = tuple(rng.randint(1, 2) for _ in range(3))
        i = tuple(rng.randint(1, x) for x in j)
        pairs.append((i, j))
    for i, j in pairs:
        x = act.xi(i, j)
        for perm in permutations(range(3)):
            p = permutation_operator(act, perm)
            assert act.equal(act.compose(p, x), act.compose(x, p))


def test_schur_multiply_weight_idempotents():
    act = TensorAction(2, 2, QQ)
    lams = compositions(2, 2)
    for lam in lams:
        for mu in lams:
            prod = act.schur_multiply(
                act.operator_to_orbits(act.weight_projector(lam)),
                act.operator_to_orbits(act.weight_projector(mu)))
            if lam == mu:
                assert prod == act.operator_to_orbits(act.weight_projector(lam))
            else:
                assert prod == {}


def test_schur_multiply_weight_bookkeeping():
    act = TensorAction(2, 2, QQ)
    i, j = (1, 1), (1, 2)
    x = act.operator_to_orbits(act.xi(i, j))
    for lam in compositions(2, 2):
        prod = act.schur_multiply(x, act.operator_to_orbits(act.weight_projector(lam)))
        if weight(j, 2) == lam:
            assert prod == x
        else:
            assert prod == {}


def dense_matrix(act, op, field):
    size = len(act.indices)
    M = [[field.zero] * size for _ in range(size)]
    for q, col in op.items():
        for p, c in col.items():
            M[p][q] = c
    return M


def dense_compose(a, b, field):
    size = len(a)
    out = [[field.zero] * size for _ in range(size)]
    for i in range(size):
        for k in range(size):
            if a[i][k] == field.zero:
                continue
            for j in range(size):
                out[i][j] = field.add(out[i][j], field.mul(a[i][k], b[k][j]))
    return out


def test_full_multiplication_table_small():
    """6x6 table of the upper triangular part for n = r = 2, checked against
    an independent dense matrix product."""
    act = TensorAction(2, 2, QQ)
    basis = []
    for j in iproduct((1, 2), repeat=2):
        for i in iproduct(*(range(1, x + 1) for x in j)):
            key = act.orbit_key(i, j)
            if key not in [b[0] for b in basis]:
                basis.append((key, act.xi(*act.canonical_pair(key))))
    assert len(basis) == 6
    for _, a in basis:
        for _, b in basis:
            expected = dense_compose(dense_matrix(act, a, QQ),
                                     dense_matrix(act, b, QQ), QQ)
            got = dense_matrix(act, act.compose(a, b), QQ)
            assert expected == got
            # and the product re-expresses in the basis with triangular support
            coeffs = act.operator_to_orbits(act.compose(a, b))
            assert all(all(p <= q for p, q in key) for key in coeffs)


def test_divided_power_action_examples():
    act = TensorAction(2, 2, QQ)
    v22 = {act.position[(2, 2)]: QQ.one}
    assert act.apply(act.divided_power(1, 2, 1), v22) == {
        act.position[(1, 2)]: QQ.one, act.position[(2, 1)]: QQ.one}
    assert act.apply(act.divided_power(1, 2, 2), v22) == {
        act.position[(1, 1)]: QQ.one}
    assert act.divided_power(1, 2, 3) == {}


@pytest.mark.parametrize("char", [0, 2])
def test_divided_power_action_is_algebra_map(char):
    field = QQ if char == 0 else PrimeField(char)
    n, r = 3, 3
    act = TensorAction(n, r, field)
    alg = DividedPowerAlgebra(n)
    monos = [m for m in alg.monomials_to_height(r)]
    rng = random.Random(char + 77)
    for _ in range(25):
        m1, m2 = rng.choice(monos), rng.choice(monos)
        lhs = act.compose(act.monomial_operator(m1, alg),
                          act.monomial_operator(m2, alg))
        rhs = act.zero()
        for exps, c in alg.multiply_monomials(m1, m2):
            from borelschur.divided_powers import Monomial
            rhs = act.add_scaled(rhs, act.monomial_operator(Monomial(n, exps), alg),
                                 field.of(c))
        assert act.equal(lhs, rhs), (m1, m2)


def test_group_operator_compatibility():
    # the tensor action of a unipotent generator expands into divided powers
    act = TensorAction(2, 3, QQ)
    for c in (QQ.of(1), QQ.of(2), QQ.of(-3)):
        g = [[QQ.one, c], [QQ.zero, QQ.one]]
        tau = act.group_operator(g)
        acc = act.identity()
        power = QQ.one
        for k in range(1, 4):
            power = QQ.mul(power, c)
            acc = act.add_scaled(acc, act.divided_power(1, 2, k), power)
        assert act.equal(tau, acc)
    # and a torus generator weights the idempotents
    c = QQ.of(4)
    g = [[QQ.add(QQ.one, c), QQ.zero], [QQ.zero, QQ.one]]
    tau = act.group_operator(g)
    acc = act.zero()
    for lam in compositions(2, 3):
        acc = act.add_scaled(acc, act.weight_projector(lam),
                             (QQ.one + c) ** lam[0])
    assert act.equal(tau, acc)


def test_operator_outside_span_is_rejected():
    act = TensorAction(2, 2, QQ)
    # a lone matrix unit is not symmetric under place permutations
    bad = act.elementary((1, 1), (1, 2))
    with pytest.raises(ValueError):
        act.operator_to_orbits(bad)


def test_dimension_cap():
    with pytest.raises(ValueError):
        TensorAction(8, 8, QQ)
    assert 8 ** 8 > TENSOR_DIMENSION_CAP


@pytest.mark.parametrize("n,r,char", [(2, 2, 0), (3, 2, 2), (2, 3, 3), (2, 1, 5)])
def test_verify_isomorphism(n, r, char):
    field = QQ if char == 0 else PrimeField(char)
    rep = verify_isomorphism(n, r, field)
    assert rep["passed"], rep
    assert rep["dim"] == rep["rank"]


def test_verify_isomorphism_r_zero():
    rep = verify_isomorphism(3, 0, QQ)
    assert rep["passed"] and rep["dim"] == 1


def test_verify_isomorphism_detects_tampering():
    """Fault injection: corrupting one structure constant of the arrow
    algebra must surface as a structure-constant mismatch."""
    from borelschur.arrows import BorelAlgebra

    field = PrimeField(3)
    borel = BorelAlgebra(2, 2, field)
    base = verify_isomorphism(2, 2, field, borel=borel)
    assert base["passed"]
    i = next(k for k in range(borel.dim) if not borel.is_unit_arrow(k))
    unit_at_base = borel.index[(borel.alg.unit, borel.base(i))]
    good = borel.product_indices(i, unit_at_base)
    borel._ptable[(i, unit_at_base)] = {k: field.add(v, field.one)
                                        for k, v in good.items()}
    tampered = verify_isomorphism(2, 2, field, borel=borel)
    assert not tampered["passed"]
    assert tampered["mismatch_count"] > 0


@pytest.mark.parametrize("n,r,char", [(2, 3, 0), (3, 2, 2)])
def test_table_export_diffs_clean(n, r, char):
    """The table of the image basis, exported in the arrow JSON schema,
    must agree with the arrow table entry for entry."""
    from borelschur.arrows import BorelAlgebra

    field = QQ if char == 0 else PrimeField(char)
    img = upper_table_json(n, r, field, basis="image")
    direct = BorelAlgebra(n, r, field).to_json(with_products=True)
    assert img["basis"] == direct["basis"]
    assert img["products"] == direct["products"]
    orb = upper_table_json(n, r, field, basis="orbit")
    assert {"n", "r", "char", "basis", "products"} <= set(orb)
