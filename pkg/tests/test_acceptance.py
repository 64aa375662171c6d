"""Acceptance criteria, one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS lines and
timings inline.
"""

import itertools
import math
import random
import time
from fractions import Fraction as F

import pytest

from qcert.exactnum import Polynomial, valuation
from qcert.etaforms import (
    EtaQuotient,
    count_type_ia_groups,
    eta_expand,
    product_form_to_series,
    series_to_product_form,
)
from qcert.elliptic import (
    Irreducible,
    Reducible,
    division_poly,
    irreducibility_certificate,
    newton_polygon,
    screen_primes,
)
from qcert.puiseux import BivariatePoly, composition_terms, solve_branches, verify_solution
from qcert.qseries import INFINITY, PuiseuxSeries, root_binomial
from qcert.ubdcert import (
    EtaRootIsEtaQuotient,
    certify_eta_root_ubd,
    denominator_profile,
    verify_certificate,
    verify_inverse_growth_law,
)


def _verdict(number, description, t0):
    print(f"ACCEPTANCE {number:>2} PASS  {description}  ({time.perf_counter() - t0:.2f}s)")


DELTA = EtaQuotient(((1, 24),))


def test_01_delta_golden_vector():
    t0 = time.perf_counter()
    expansion = eta_expand(DELTA, 200)
    elapsed = time.perf_counter() - t0
    assert [expansion.coefficient(k) for k in (1, 2, 3)] == [1, -24, 252]
    assert len(expansion.coeffs) == 200
    assert elapsed < 1.0, f"T=200 expansion took {elapsed:.2f}s"
    _verdict(1, "delta expansion starts 1, -24, 252 (T=200 under 1s)", t0)


def test_02_inverse_delta_integrality():
    t0 = time.perf_counter()
    delta = eta_expand(DELTA, 203)
    inv = delta.invert()
    checked = 0
    for exponent, c in inv.nonzero_items():
        if exponent > 200:
            break
        assert c.denominator == 1, f"1/delta coefficient at q^{exponent} = {c}"
        checked += 1
    assert inv.truncation_exponent > 200
    assert checked > 150  # the expansion is dense; make sure we really looked
    _verdict(2, "1/delta has integer coefficients through q^200", t0)


def _random_quotients(seed, count, max_factors=3, max_arg=4, max_exp=6):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        args = rng.sample(range(1, max_arg + 1), rng.randint(1, max_factors))
        terms = tuple(
            sorted(
                (a, rng.choice([e for e in range(-max_exp, max_exp + 1) if e]))
                for a in args
            )
        )
        out.append(EtaQuotient(terms))
    return out


def test_03_product_form_round_trip():
    t0 = time.perf_counter()
    cases = [DELTA, EtaQuotient(((1, 1), (2, 1)))] + _random_quotients(42, 20)
    for E in cases:
        f = eta_expand(E, 101)
        pf = series_to_product_form(f)
        assert pf.T >= 100
        back = product_form_to_series(pf)
        assert back.agrees_with(f), f"round trip failed for {E}"
    _verdict(3, "series -> product form -> series is the identity to T=100 (22 quotients)", t0)


def test_04_divisor_sum_law():
    t0 = time.perf_counter()
    for E in _random_quotients(1729, 20):
        f = eta_expand(E, 101)
        pf = series_to_product_form(f)
        assert pf.r == F(sum(a * e for a, e in E.terms), 24)
        for m in range(1, 101):
            assert pf.exponent(m) == sum(e for a, e in E.terms if m % a == 0)
    _verdict(4, "extracted exponents obey the divisor-sum law, r = sum(a e)/24, T=100", t0)


def test_05_ubd_certificate_soundness_and_dichotomy():
    t0 = time.perf_counter()
    prime_powers = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]
    arguments = [
        combo
        for size in (1, 2, 3)
        for combo in itertools.combinations(range(1, 5), size)
    ]
    exponents = [e for e in range(-6, 7) if e]
    quotients = 0
    certificates = 0
    for args in arguments:
        for es in itertools.product(exponents, repeat=len(args)):
            E = EtaQuotient(tuple(zip(args, es)))
            gcd = E.exponent_gcd
            for p, e in prime_powers:
                outcome = certify_eta_root_ubd(E, p, e)
                divides = gcd % p**e == 0
                assert isinstance(outcome, EtaRootIsEtaQuotient) == divides
                if not divides:
                    assert verify_certificate(E, outcome), (E, p, e)
                    certificates += 1
            quotients += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"grid took {elapsed:.1f}s"
    _verdict(
        5,
        f"dichotomy and soundness over {quotients} quotients, "
        f"{certificates} certificates reconfirmed, under 60s",
        t0,
    )


def test_06_denominator_growth_shape():
    t0 = time.perf_counter()
    root = PuiseuxSeries(1, 0, [1, 1], INFINITY).nth_root(2, trunc_exponent=70)
    profile = denominator_profile(root, 2)
    running = list(profile.running_max)
    assert running == sorted(running), "running maximum must be nondecreasing"
    by_index = dict(zip((i for i, _ in profile.samples), running))
    assert by_index[64] > 50
    crossing = min(i for i, _ in profile.samples if by_index[i] > 50)
    assert crossing <= 64
    # the profile values are exactly -ord_2 of the binomial coefficients
    for m, neg in profile.samples:
        assert neg == -valuation(root_binomial(2, m), 2)
    _verdict(6, f"-ord_2 running max nondecreasing, exceeds 50 by index {crossing} <= 64", t0)


def test_07_twelve_term_composition_identity():
    t0 = time.perf_counter()
    expected = {
        ((4,), 0): F(1),
        ((3, 1), 0): F(1),
        ((3,), 1): F(1),
        ((2, 2), 0): F(1, 2),
        ((2, 1, 1), 0): F(1, 2),
        ((2, 1), 1): F(1),
        ((2,), 2): F(1),
        ((1, 1, 1, 1), 0): F(1, 24),
        ((1, 1, 1), 1): F(1, 6),
        ((1, 1), 2): F(1, 2),
        ((1,), 3): F(1),
        ((), 4): F(1),
    }
    terms = composition_terms(4)
    assert len(terms) == 12
    got = {(part.parts, j): const for part, j, n, const in terms}
    assert got == expected
    _verdict(7, "fourth composition coefficient matches the 12-term expansion exactly", t0)


def test_08_branch_solver_cases():
    t0 = time.perf_counter()
    # (a) two holomorphic square-root branches
    g_a = BivariatePoly.from_terms([(1, 2, 0), (-1, 0, 0), (-1, 0, 1)])
    res_a = solve_branches(g_a, 50)
    assert len(res_a.branches) == 2 and not res_a.deferred
    target = PuiseuxSeries(1, 0, [1, 1], 51)
    for b in res_a.branches:
        square = b.as_series() * b.as_series()
        assert square.agrees_with(target)
        assert verify_solution(g_a, b).is_zero

    # (b) ramified branches with residual O(q^(51/2))
    g_b = BivariatePoly.from_terms([(1, 2, 0), (-1, 0, 1), (-1, 0, 2)])
    res_b = solve_branches(g_b, 50)
    assert len(res_b.branches) == 2
    for b in res_b.branches:
        assert b.w == 2
        residual = verify_solution(g_b, b)
        assert residual.is_zero
        assert residual.truncation_exponent >= F(51, 2)

    # (c) the degenerate-step case: exact polynomial branches 1 +- q^2
    g_c = BivariatePoly.from_terms([(1, 2, 0), (-2, 1, 0), (1, 0, 0), (-1, 0, 4)])
    res_c = solve_branches(g_c, 6)
    assert len(res_c.branches) == 2
    tails = set()
    for b in res_c.branches:
        assert any(event["event"] == "case2" for event in b.case_trace)
        assert verify_solution(g_c, b).is_zero
        assert b.coeffs[0] == 1 and b.coeffs[1] == 0
        tails.add(b.coeffs[2])
        assert all(c == 0 for c in b.coeffs[3:])
    assert tails == {F(1), F(-1)}

    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"solver cases took {elapsed:.2f}s"
    _verdict(8, "branch solver: 2+2+2 branches, exact residuals, under 5s", t0)


def test_09_division_polynomial_shapes(curve_11a):
    t0 = time.perf_counter()
    from qcert.elliptic import _psi_table

    A = Polynomial([Polynomial([0, 1])])
    B = Polynomial([Polynomial([]), Polynomial([1])])
    psi3 = _psi_table(A, B, 3)[3]
    assert psi3[4] == 3 and psi3[3] == 0
    assert psi3[2] == 6 * A and psi3[1] == 12 * B and psi3[0] == -(A * A)

    curve, _ = curve_11a
    for p in (3, 5, 7, 11, 13):
        dp = division_poly(curve, p)
        assert dp.poly.degree == (p * p - 1) // 2
        assert dp.poly.leading == p
    _verdict(9, "psi_3 symbolic identity; fixture degrees/leading for p <= 13", t0)


def test_10_screening_slice(curve_11a):
    t0 = time.perf_counter()
    curve, point_map = curve_11a
    report = screen_primes(curve, 13)
    elapsed = time.perf_counter() - t0
    by_p = {e.p: e for e in report.entries}
    assert set(by_p) == {3, 5, 7, 11, 13}

    cert5 = by_p[5].certificate
    assert isinstance(cert5, Reducible)
    psi5 = division_poly(curve, 5).poly
    assert psi5(cert5.witness_root) == 0
    X, _ = point_map(5, 5)  # image of the known rational 5-torsion point
    assert psi5(X) == 0

    for p in (3, 7, 11, 13):
        cert = by_p[p].certificate
        assert not isinstance(cert, Reducible), f"p={p} must not be reducible"
        if not isinstance(cert, Irreducible):
            allowed = cert.allowed_factor_degrees
            assert all(d > 2 for d in allowed), f"p={p} sieve left {allowed}"
    for p in (3, 7):
        cert = by_p[p].certificate
        assert isinstance(cert, Irreducible) and cert.witness_prime <= 200
    assert list(report.exceptional) == [5]
    assert elapsed < 300.0, f"screen took {elapsed:.1f}s"
    _verdict(10, f"screen to 13: exceptional = [5], 3/7 certified (took {elapsed:.1f}s)", t0)


def test_11_inverse_growth_law():
    t0 = time.perf_counter()
    x = PuiseuxSeries.monomial(1, -2)
    report = verify_inverse_growth_law(x, F(1, 9), 3, 2, n_max=50)
    assert report.ok and report.checked == 50 and report.first_deviation is None
    _verdict(11, "ord_3 of the q^(2n+2) coefficient equals -2n for n <= 50", t0)


def test_12_counting_formula_grid():
    t0 = time.perf_counter()
    for t in range(2, 7):
        for p in (2, 3, 5):
            for e in (1, 2, 3):
                n = count_type_ia_groups(t, p, e)
                assert n * (p**e - 1) == p ** (e * (t - 1)) - 1
    _verdict(12, "counting formula identity on the full (t, p, e) grid", t0)


def test_13_newton_polygon_certificates(curve_11a):
    t0 = time.perf_counter()
    np_ = newton_polygon(Polynomial([3, 1, 3]), 3)
    witness = np_.has_nonintegral_root()
    assert witness is not None and witness.root_valuation == -1
    # exact root-valuation cross-check: the product of the roots is 1 and the
    # sum is -1/3, so the valuations are forced to be {-1, +1}
    assert sorted(np_.root_valuations()) == [(F(-1), 1), (F(1), 1)]

    curve, _ = curve_11a
    for p in (3, 5, 7, 11, 13):
        poly = division_poly(curve, p).poly
        has_unit_coefficient = any(
            c and valuation(c, p) == 0 for c in poly.coeffs
        )
        witness = newton_polygon(poly, p).has_nonintegral_root()
        if has_unit_coefficient:
            assert witness is not None, f"p={p} should certify a non-integral root"
        else:
            assert witness is None
    _verdict(13, "polygon witnesses match exact valuations; fixture primes certified", t0)
