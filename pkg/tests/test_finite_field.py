import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from treeldpc.finite_field import (
    MODULUS_TABLE,
    FieldError,
    are_orthogonal,
    build_mols,
    is_irreducible,
    is_latin,
    make_field,
    validate_mols,
)

ORDERS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5), (7, 2), (2, 6)]


@pytest.mark.parametrize("key", sorted(MODULUS_TABLE))
def test_modulus_table_irreducible(key):
    p, s = key
    assert is_irreducible(MODULUS_TABLE[key], p)


def test_reducible_polynomial_detected():
    # x^2 + 1 = (x + 1)^2 over GF(2)
    assert not is_irreducible((1, 0, 1), 2)


@pytest.mark.parametrize("p,s", ORDERS)
def test_multiplicative_group(p, s):
    fs = make_field(p, s)
    q = fs.q
    mul = np.asarray(fs.mul_table)
    # every nonzero element has exactly one inverse
    for a in range(1, q):
        assert np.count_nonzero(mul[a, 1:] == 1) == 1
    assert np.all(mul[0] == 0)


@pytest.mark.parametrize("p,s", [(4, 1), (6, 1), (2, 7), (3, 4), (11, 2), (1, 1), (2, 0)])
def test_invalid_orders_rejected(p, s):
    with pytest.raises(FieldError):
        make_field(p, s)


def test_gf4_multiplication_table():
    fs = make_field(2, 2)  # x^2 = x + 1, labels 0,1,x=2,x+1=3
    assert fs.mul(2, 2) == 3
    assert fs.mul(2, 3) == 1
    assert fs.mul(3, 3) == 2
    assert fs.add(2, 3) == 1


def test_out_of_range_label():
    fs = make_field(3)
    with pytest.raises(FieldError):
        fs.add(0, 3)


field_and_elems = st.sampled_from(ORDERS).flatmap(
    lambda ps: st.tuples(
        st.just(ps),
        *[st.integers(0, ps[0] ** ps[1] - 1) for _ in range(3)],
    )
)


@settings(max_examples=300, deadline=None)
@given(field_and_elems)
def test_field_axioms(args):
    (p, s), a, b, c = args
    f = make_field(p, s)
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    assert f.mul(a, 1) == a


@pytest.mark.parametrize("p,s", ORDERS)
def test_mols_valid(p, s):
    fam = build_mols(make_field(p, s))
    assert len(fam) == fam.q == p**s
    assert validate_mols(fam) == []


def test_mols_column_zero_and_m0():
    fam = build_mols(make_field(5))
    for sq in fam.squares:
        assert np.array_equal(sq[:, 0], np.arange(5))
    assert all(np.all(fam[0][j] == j) for j in range(5))


def test_latin_and_orthogonality_predicates():
    a = np.array([[0, 1], [1, 0]])
    assert is_latin(a)
    assert not is_latin(np.array([[0, 0], [1, 1]]))
    assert not are_orthogonal(a, a)
    b = np.array([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    c = np.array([[0, 2, 1], [1, 0, 2], [2, 1, 0]])
    assert are_orthogonal(b, c)


def test_validate_reports_broken_square():
    fam = build_mols(make_field(3))
    bad = [sq.copy() for sq in fam.squares]
    bad[1][0, 1], bad[1][0, 2] = bad[1][0, 2], bad[1][0, 1]
    broken = type(fam)(fam.field, tuple(bad))
    assert validate_mols(broken)
