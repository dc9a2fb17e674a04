import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resavoid.arith import Factorization, euler_phi, factorize, find_primitive_root, is_prime, lcm_many

from oracles import is_prime_td, mult_order, phi_bruteforce


@pytest.mark.parametrize(
    "n, factors",
    [(1, ()), (12, ((2, 2), (3, 1))), (97, ((97, 1),)), (2**62, ((2, 62),)), (600851475143, ((71, 1), (839, 1), (1471, 1), (6857, 1)))],
)
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors
    assert factorize(n).value == n


def test_factorize_rejects_zero_and_huge():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**63 + 1)


def test_factorize_reconstructs_up_to_1e5():
    for n in range(1, 10**5 + 1):
        f = factorize(n)
        assert f.value == n
        assert all(is_prime_td(p) for p in f.primes)


def test_factorization_invariants():
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        Factorization(((2, 0),))
    assert Factorization().value == 1


@pytest.mark.parametrize("n, phi", [(1, 1), (12, 4), (40, 16)])
def test_euler_phi_examples(n, phi):
    assert euler_phi(n) == phi


def test_euler_phi_matches_bruteforce():
    for n in range(1, 3000):
        assert euler_phi(n) == phi_bruteforce(n)


def test_euler_phi_rejects_zero():
    with pytest.raises(ValueError):
        euler_phi(0)


@given(st.integers(1, 10**5))
def test_euler_phi_counts_coprimes(n):
    assert euler_phi(n) == sum(1 for m in range(1, n + 1) if math.gcd(m, n) == 1)


@pytest.mark.parametrize("values, expected", [([3, 4], 12), ([4, 8], 8), ([6, 10, 15], 30), ([7], 7)])
def test_lcm_many(values, expected):
    assert lcm_many(values) == expected


def test_lcm_many_overflow_and_errors():
    with pytest.raises(OverflowError):
        lcm_many([2**62, 3])
    with pytest.raises(ValueError):
        lcm_many([])
    with pytest.raises(ValueError):
        lcm_many([0, 3])


@pytest.mark.parametrize("p, e, g", [(2, 1, 1), (2, 2, 3), (7, 1, 3), (3, 2, 2), (5, 1, 2), (23, 1, 5)])
def test_primitive_root_examples(p, e, g):
    assert find_primitive_root(p, e) == g


def test_primitive_root_rejections():
    with pytest.raises(ValueError):
        find_primitive_root(2, 3)
    with pytest.raises(ValueError):
        find_primitive_root(9, 1)


def test_primitive_roots_are_smallest_generators():
    for q in range(2, 10**4 + 1):
        f = factorize(q)
        if len(f) != 1:
            continue
        (p, e), = f.factors
        if p == 2 and e >= 3:
            continue
        g = find_primitive_root(p, e)
        phi = euler_phi(q)
        assert len({pow(g, x, q) for x in range(1, phi + 1)}) == phi
        if q < 2000:
            assert all(mult_order(h, q) != phi for h in range(1, g))


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
