import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcert.exactnum import (
    INFINITY,
    QQ,
    AlgebraicNumber,
    CertificationError,
    InputError,
    NumberField,
    Polynomial,
    TowerError,
    adjoin_root,
    divisors,
    factor_int,
    field_arith,
    fraction_nth_root,
    is_prime,
    poly_gcd,
    poly_xgcd,
    rational_roots,
    resultant,
    squarefree_part,
    valuation,
    _root_candidates_by_sieve,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)
small_primes = st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97])


class TestValuation:
    def test_examples(self):
        assert valuation(F(1, 8), 2) == -3
        assert valuation(0, 5) == INFINITY
        assert valuation(-12, 2) == 2

    def test_nonprime_rejected(self):
        with pytest.raises(InputError):
            valuation(F(1, 2), 4)

    @given(x=rationals, y=rationals, p=small_primes)
    def test_multiplicativity(self, x, y, p):
        if x == 0 or y == 0:
            assert valuation(x * y, p) == INFINITY
        else:
            assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)

    @given(x=rationals, y=rationals, p=small_primes)
    def test_ultrametric(self, x, y, p):
        vx, vy = valuation(x, p), valuation(y, p)
        vs = valuation(x + y, p)
        assert vs >= min(vx, vy)
        if vx != vy:
            assert vs == min(vx, vy)


class TestPrimes:
    def test_is_prime_small(self):
        assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert not is_prime(1) and not is_prime(0) and not is_prime(-7)

    def test_factor_int(self):
        assert factor_int(2**10 * 3**4 * 97) == {2: 10, 3: 4, 97: 1}
        n = 10**12 + 39  # prime
        assert factor_int(n) == {n: 1}

    def test_divisors(self):
        assert sorted(divisors(12)) == [1, 2, 3, 4, 6, 12]


@pytest.fixture(scope="module")
def sqrt2_field():
    return adjoin_root(QQ, Polynomial([-2, 0, 1]))


class TestAlgebraicNumbers:
    def test_generator_squares_to_two(self, sqrt2_field):
        th = sqrt2_field.generator()
        assert th * th == 2

    def test_additive_identity(self, sqrt2_field):
        x = sqrt2_field.element([F(3, 7), F(-2)])
        assert field_arith(x, sqrt2_field.zero(), "add") == x

    def test_inverse_of_one_plus_theta(self, sqrt2_field):
        th = sqrt2_field.generator()
        inv = (1 + th).inverse()
        assert inv == -1 + th
        assert inv * (1 + th) == 1

    def test_division(self, sqrt2_field):
        a = sqrt2_field.element([1, 1])
        b = sqrt2_field.element([0, 3])
        assert field_arith(a, b, "div") * b == a

    def test_field_mismatch(self, sqrt2_field):
        other = adjoin_root(QQ, Polynomial([-3, 0, 1]))
        with pytest.raises(InputError):
            sqrt2_field.generator() + other.generator()

    @given(
        coords=st.lists(
            st.tuples(
                st.fractions(min_value=-50, max_value=50, max_denominator=10),
                st.fractions(min_value=-50, max_value=50, max_denominator=10),
            ),
            min_size=3,
            max_size=3,
        )
    )
    @settings(max_examples=60)
    def test_field_axioms(self, coords):
        K = NumberField([-2, 0, 1])
        a, b, c = (K.element(list(t)) for t in coords)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == 1


class TestPolynomials:
    def test_gcd_monic(self):
        f = Polynomial([-1, 0, 1])  # x^2 - 1
        g = Polynomial([-1, 1])  # x - 1
        assert poly_gcd(f, g) == Polynomial([-1, 1])

    def test_derivative(self):
        A, B = F(5, 3), F(-7)
        f = Polynomial([B, A, 0, 1])
        assert f.derivative() == Polynomial([A, 0, 3])

    def test_squarefree_part(self):
        # (x-1)^2 (x+2), expanded by hand oracle and divided by gcd(f, f')
        f = Polynomial([-1, 1]) ** 2 * Polynomial([2, 1])
        expected = (f // poly_gcd(f, f.derivative())).monic()
        assert squarefree_part(f) == expected
        assert squarefree_part(f) == (Polynomial([-1, 1]) * Polynomial([2, 1])).monic()

    def test_xgcd_identity(self):
        f = Polynomial([-2, 0, 1])
        g = Polynomial([1, 1])
        d, u, v = poly_xgcd(f, g)
        assert u * f + v * g == d

    def test_resultant_shared_root(self):
        f = Polynomial([-1, 0, 1])
        g = Polynomial([-1, 1])
        assert resultant(f, g) == 0

    def test_resultant_linears(self):
        a, b = F(3), F(5)
        f = Polynomial([-a, 1])
        g = Polynomial([-b, 1])
        # res(x - a, x - b) = g(a) up to the standard sign convention
        assert resultant(f, g) == a - b

    def test_resultant_coprime_nonzero(self):
        assert resultant(Polynomial([1, 0, 1]), Polynomial([-2, 1])) != 0

    def test_evaluation_horner(self):
        f = Polynomial([1, -3, 2])
        assert f(F(1, 2)) == 0 and f(1) == 0 and f(2) == 3

    def test_taylor_shift(self):
        f = Polynomial([0, 0, 1])
        assert f.shifted(1) == Polynomial([1, 2, 1])


class TestRationalRoots:
    def test_examples(self):
        assert rational_roots(Polynomial([-1, 0, 1])) == [F(-1), F(1)]
        assert rational_roots(Polynomial([1, 0, 1])) == []
        assert rational_roots(Polynomial([1, -3, 2])) == [F(1, 2), F(1)]

    def test_multiplicity(self):
        f = Polynomial([-1, 1]) ** 3 * Polynomial([1, 0, 1])
        assert rational_roots(f) == [F(1)] * 3

    def test_zero_roots(self):
        f = Polynomial([0, 0, -1, 1])  # x^2 (x - 1)
        assert rational_roots(f) == [F(0), F(0), F(1)]

    @given(
        roots=st.lists(
            st.fractions(min_value=-12, max_value=12, max_denominator=6),
            min_size=1,
            max_size=4,
        ),
        lead=st.integers(min_value=1, max_value=5),
    )
    @settings(max_examples=50)
    def test_complete_and_sound(self, roots, lead):
        f = Polynomial([F(lead)])
        for r in roots:
            f = f * Polynomial([-r, 1])
        f = f * Polynomial([1, 0, 1])  # rootless factor
        found = rational_roots(f)
        assert found == sorted(roots)
        for r in found:
            assert f(r) == 0

    def test_modular_sieve_path(self):
        # constant term with two large prime factors defeats divisor search;
        # the sieve must still find the exact root set
        big1, big2 = 10**12 + 39, 10**12 + 61
        f = Polynomial([-big1, 1]) * Polynomial([big2, 1]) * Polynomial([1, 1, 1])
        ints = [int(c) for c in f.coeffs]
        cands = _root_candidates_by_sieve(ints)
        assert F(big1) in cands and F(-big2) in cands


class TestAdjunction:
    def test_quadratic(self):
        K = adjoin_root(QQ, Polynomial([-2, 0, 1]))
        assert K.degree == 2

    def test_degree_one_collapses(self):
        assert adjoin_root(QQ, Polynomial([-5, 1])) is QQ

    def test_tower_rejected(self, sqrt2_field):
        with pytest.raises(TowerError):
            adjoin_root(sqrt2_field, Polynomial([-3, 0, 1]))

    def test_reducible_rejected(self):
        with pytest.raises(InputError):
            adjoin_root(QQ, Polynomial([-1, 0, 1]))

    def test_degree_four_needs_certificate(self):
        f = Polynomial([2, 0, 0, 0, 1])  # x^4 + 2, irreducible
        with pytest.raises(CertificationError):
            adjoin_root(QQ, f)
        K = adjoin_root(QQ, f, certified_irreducible=True)
        assert K.degree == 4

    def test_nonmonic_rejected(self):
        with pytest.raises(InputError):
            adjoin_root(QQ, Polynomial([-2, 0, 2]))


class TestNthRoot:
    def test_fraction_nth_root(self):
        assert fraction_nth_root(F(8, 27), 3) == F(2, 3)
        assert fraction_nth_root(F(-8), 3) == -2
        assert fraction_nth_root(F(2), 2) is None
        assert fraction_nth_root(F(-4), 2) is None
