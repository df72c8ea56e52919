import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tracecodes import config
from tracecodes.errors import DomainError, ParameterError, ResourceError, UsageError
from tracecodes.field import (
    FieldCtx,
    enumerate_field,
    find_irreducible,
    irreducible_polynomials,
    is_irreducible,
    legendre,
    quadratic_character,
    trace,
)


def _reducible_by_products(coeffs, p):
    """Oracle: does some product of two lower-degree monics equal the polynomial?"""
    m = len(coeffs)
    target = list(coeffs) + [1]
    for d in range(1, m // 2 + 1):
        for a in itertools.product(range(p), repeat=d):
            for b in itertools.product(range(p), repeat=m - d):
                fa, fb = list(a) + [1], list(b) + [1]
                prod = [0] * (m + 1)
                for i, x in enumerate(fa):
                    for j, y in enumerate(fb):
                        prod[i + j] = (prod[i + j] + x * y) % p
                if prod == target:
                    return True
    return False


def test_find_irreducible_examples():
    assert find_irreducible(3, 1) == [0]
    assert find_irreducible(3, 2) == [1, 0]
    assert find_irreducible(3, 3) == [1, 2, 0]


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_irreducibility_matches_product_oracle(p, m):
    for enc in range(p**m):
        coeffs = [(enc // p**i) % p for i in range(m)]
        assert is_irreducible(coeffs, p) == (not _reducible_by_products(coeffs, p))


def test_second_irreducible_differs():
    polys = list(itertools.islice(irreducible_polynomials(3, 5), 2))
    assert polys[0] != polys[1]


def test_rejects_even_and_composite():
    with pytest.raises(ParameterError, match="odd prime"):
        FieldCtx(2, 3)
    with pytest.raises(ParameterError):
        FieldCtx(9, 1)
    with pytest.raises(ParameterError):
        FieldCtx(3, 2, modulus=[2, 0])  # x^2 + 2 = (x-1)(x+1)


def test_ceiling():
    with pytest.raises(ResourceError):
        FieldCtx(3, 13, ceiling=3**12)
    config.set_ceiling(10)
    try:
        with pytest.raises(ResourceError):
            FieldCtx(3, 3)
    finally:
        config.reset()


def test_gf9_alpha_squared():
    F = FieldCtx(3, 2)
    a = F.alpha
    assert a * a == F.subfield(2)
    assert a * a == -F.one


def test_inverse_and_frobenius_exhaustive():
    F = FieldCtx(5, 2)
    for x in enumerate_field(F):
        assert x**F.q == x
        if x:
            assert x * x.inverse() == F.one
    with pytest.raises(DomainError):
        F.zero.inverse()


def test_mixed_contexts():
    a = FieldCtx(3, 2).one
    b = FieldCtx(5, 2).one
    with pytest.raises(UsageError):
        a + b


def test_trace_examples():
    F = FieldCtx(3, 2)
    assert trace(F.zero) == 0
    assert trace(F.alpha) == 0
    # sum of conjugates by hand: alpha + alpha^3
    assert F.alpha + F.alpha**3 == F.zero
    G = FieldCtx(5, 3)
    for a in range(5):
        assert trace(G.subfield(a)) == 3 * a % 5


@pytest.mark.parametrize("p,m", [(3, 1), (3, 3), (5, 2), (7, 2), (3, 4)])
def test_trace_linear_and_balanced(p, m):
    F = FieldCtx(p, m)
    X = F.elements()
    tr = F.trace(X)
    assert np.array_equal(tr, F.trace_frobenius(X))
    assert np.array_equal(np.bincount(tr, minlength=p), np.full(p, F.q // p))
    # additivity on all pairs
    Y = X[:, None, :]
    Z = X[None, :, :]
    assert np.array_equal(F.trace(F.add(Y, Z)), (tr[:, None] + tr[None, :]) % p)


def test_trace_form():
    F = FieldCtx(3, 3)
    X = F.elements()
    T = F.trace_form()
    direct = F.trace(F.mul(X[:, None, :], X[None, :, :]))
    assert np.array_equal(direct, X @ T @ X.T % 3)


def test_quadratic_character_examples():
    F = FieldCtx(3, 1)
    assert quadratic_character(F.one) == 1
    assert quadratic_character(F.subfield(2)) == -1
    G = FieldCtx(5, 2)
    # a generator has multiplicative order q-1
    gens = []
    for x in enumerate_field(G):
        if x and all(x ** ((G.q - 1) // r) != G.one for r in (2, 3)):
            gens.append(x)
    assert gens
    assert all(quadratic_character(g) == -1 for g in gens)


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2)])
def test_eta_counts_and_subfield(p, m):
    F = FieldCtx(p, m)
    eta = F.eta(F.elements())
    assert (eta == 1).sum() == (F.q - 1) // 2
    assert (eta == -1).sum() == (F.q - 1) // 2
    assert eta[0] == 0
    squares = set(F.encode(F.mul(F.elements(), F.elements())).tolist()) - {0}
    for code in range(1, F.q):
        assert (eta[code] == 1) == (code in squares)
    for y in range(1, p):
        expected = 1 if m % 2 == 0 else legendre(y, p)
        assert F.subfield(y).eta() == expected


def test_enumerate_field_order():
    F = FieldCtx(3, 2)
    elems = list(enumerate_field(F))
    assert len(elems) == 9
    assert elems[0] == F.zero and elems[1] == F.one
    assert elems[2].coeffs == (2, 0)
    assert [e.encode() for e in elems] == list(range(9))
    assert np.array_equal(np.array([e.coeffs for e in elems]), F.elements())


def test_json_roundtrip():
    F = FieldCtx(3, 5)
    assert F.to_json() == {"p": 3, "m": 5, "modulus": list(F.modulus)}
    assert FieldCtx.from_json(F.to_json()) == F


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 242), st.integers(0, 242), st.integers(0, 242))
def test_field_axioms(a, b, c):
    F = FieldCtx(3, 5)
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == F.zero
    if y:
        assert (x / y) * y == x
