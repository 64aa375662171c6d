import random
from fractions import Fraction as F

import pytest

from qcert.exactnum import InputError
from qcert.etaforms import (
    EtaQuotient,
    NotEta,
    ProductForm,
    count_type_ia_groups,
    eta_expand,
    eta_recognize,
    euler_factor,
    product_form_to_series,
    series_to_product_form,
)
from qcert.qseries import INFINITY, PuiseuxSeries


def slow_euler_factor(a, n_terms):
    """Independent oracle: multiply the (1 - q^(a n)) factors directly."""
    acc = PuiseuxSeries.one(n_terms)
    n = 1
    while a * n < n_terms:
        acc = acc * PuiseuxSeries.from_terms({0: 1, a * n: -1}, n_terms)
        n += 1
    return acc


def random_quotient(rng, max_factors=3, max_arg=4, max_exp=6):
    args = rng.sample(range(1, max_arg + 1), rng.randint(1, max_factors))
    terms = tuple(
        sorted((a, rng.choice([e for e in range(-max_exp, max_exp + 1) if e])) for a in args)
    )
    return EtaQuotient(terms)


class TestEtaQuotientType:
    def test_validation(self):
        with pytest.raises(InputError):
            EtaQuotient(((2, 1), (1, 1)))  # not increasing
        with pytest.raises(InputError):
            EtaQuotient(((1, 0),))  # zero exponent

    def test_derived_quantities(self):
        E = EtaQuotient(((1, 2), (2, -4)))
        assert E.weight == -1
        assert E.leading_exponent == F(2 - 8, 24)
        assert E.exponent_gcd == 2

    def test_unit_quotient(self):
        assert str(EtaQuotient(())) == "1"
        assert eta_expand(EtaQuotient(()), 5).agrees_with(PuiseuxSeries.one(5))


class TestExpansion:
    def test_euler_factor_matches_slow_product(self):
        for a in (1, 2, 3):
            fast = euler_factor(a, 40)
            assert fast.agrees_with(slow_euler_factor(a, 40))

    def test_eta_pentagonal_pattern(self):
        e = eta_expand(EtaQuotient(((1, 1),)), 26)
        # exponents 1/24 + {0, 1, 2, 5, 7, 12, 15, 22} with signs
        expected = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1}
        for offset, sign in expected.items():
            assert e.coefficient(F(1, 24) + offset) == sign

    def test_delta_golden(self):
        delta = eta_expand(EtaQuotient(((1, 24),)), 6)
        assert delta.valuation == 1
        assert [delta.coefficient(k) for k in (1, 2, 3)] == [1, -24, 252]

    def test_cancellation(self):
        one = eta_expand(EtaQuotient(((2, 1),)), 8) * eta_expand(EtaQuotient(((2, -1),)), 8)
        assert one.agrees_with(PuiseuxSeries.one(8))

    def test_negative_exponents(self):
        f = eta_expand(EtaQuotient(((1, -1),)), 12)
        # 1/eta(z) = q^(-1/24) * partition generating function
        assert f.valuation == F(-1, 24)
        assert f.coefficient(F(-1, 24) + 5) == 7  # p(5)


class TestProductForm:
    def test_delta_product_form(self):
        delta = eta_expand(EtaQuotient(((1, 24),)), 30)
        pf = series_to_product_form(delta)
        assert pf.r == 1
        assert all(c == 24 for c in pf.c)

    def test_constant_one(self):
        pf = series_to_product_form(PuiseuxSeries.one(10))
        assert pf.r == 0 and all(c == 0 for c in pf.c)

    def test_eta12_exponents(self):
        f = eta_expand(EtaQuotient(((1, 1), (2, 1))), 24)
        pf = series_to_product_form(f)
        assert pf.r == F(1, 8)
        for n in range(1, pf.T + 1):
            assert pf.exponent(n) == (2 if n % 2 == 0 else 1)
        back = product_form_to_series(pf)
        assert back.agrees_with(f)

    def test_leading_coefficient_must_be_one(self):
        with pytest.raises(InputError):
            series_to_product_form(PuiseuxSeries(1, 0, [2, 1], 5))

    def test_expand_examples(self):
        pf = ProductForm(F(1), tuple(F(24) for _ in range(8)), 8)
        s = product_form_to_series(pf)
        assert [s.coefficient(k) for k in (1, 2, 3)] == [1, -24, 252]
        unit = product_form_to_series(ProductForm(F(0), (F(0),) * 5, 5))
        assert unit.agrees_with(PuiseuxSeries.one(6))

    def test_roundtrip_random_integer_exponents(self):
        rng = random.Random(7)
        for _ in range(6):
            T = 60
            c = tuple(F(rng.randint(-5, 5)) for _ in range(T))
            pf = ProductForm(F(rng.randint(-3, 3)), c, T)
            back = series_to_product_form(product_form_to_series(pf))
            assert back.r == pf.r
            assert back.c[: back.T] == pf.c[: back.T]

    def test_divisor_sum_law_random_quotients(self):
        rng = random.Random(2024)
        for _ in range(20):
            E = random_quotient(rng)
            f = eta_expand(E, 30)
            pf = series_to_product_form(f)
            assert pf.r == E.leading_exponent
            for m in range(1, pf.T + 1):
                assert pf.exponent(m) == sum(e for a, e in E.terms if m % a == 0)


class TestRecognition:
    def test_delta(self):
        pf = series_to_product_form(eta_expand(EtaQuotient(((1, 24),)), 20))
        assert eta_recognize(pf) == EtaQuotient(((1, 24),))

    def test_fractional_exponent_witness(self):
        pf = ProductForm(F(1, 24), (F(2, 3), F(0)), 2)
        verdict = eta_recognize(pf)
        assert isinstance(verdict, NotEta) and verdict.index == 1

    def test_eta12_inverse(self):
        pf = ProductForm(F(1, 8), tuple(F(2 if n % 2 == 0 else 1) for n in range(1, 13)), 12)
        assert eta_recognize(pf) == EtaQuotient(((1, 1), (2, 1)))

    def test_leading_exponent_mismatch(self):
        pf = ProductForm(F(1), (F(1),) * 6, 6)
        verdict = eta_recognize(pf)
        assert isinstance(verdict, NotEta) and verdict.index is None

    def test_full_roundtrip_random(self):
        rng = random.Random(99)
        for _ in range(20):
            E = random_quotient(rng)
            pf = series_to_product_form(eta_expand(E, 25))
            assert eta_recognize(pf) == E


class TestCounting:
    @pytest.mark.parametrize(
        "t,p,e,expected",
        [(2, 2, 1, 1), (2, 7, 3, 1), (3, 2, 1, 3), (4, 3, 1, 13)],
    )
    def test_examples(self, t, p, e, expected):
        assert count_type_ia_groups(t, p, e) == expected

    def test_geometric_identity(self):
        for t in range(2, 7):
            for p in (2, 3, 5):
                for e in (1, 2, 3):
                    n = count_type_ia_groups(t, p, e)
                    assert n * (p**e - 1) == p ** (e * (t - 1)) - 1

    def test_bad_inputs(self):
        with pytest.raises(InputError):
            count_type_ia_groups(1, 2, 1)
        with pytest.raises(InputError):
            count_type_ia_groups(3, 4, 1)
        with pytest.raises(InputError):
            count_type_ia_groups(3, 2, 0)
