"""Eta quotients, infinite-product form, and recognition.

An eta quotient is a finite product of rescaled Dedekind eta functions
eta(a*z)^e with eta(z) = q^(1/24) * prod(1 - q^n).  Any series with unit
leading coefficient factors uniquely as q^r * prod_n (1 - q^n)^c(n); the
conversion both ways is exact and drives the unbounded-denominator
certificates in the ubdcert module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import QQ, AlgebraicNumber, InputError, NumberField, is_prime, rational_to_str
from .qseries import INFINITY, PuiseuxSeries


@dataclass(frozen=True)
class EtaQuotient:
    """Product of factors eta(a*z)^e, arguments strictly increasing.

    The empty product is the constant 1 (the unit quotient).
    """

    terms: tuple

    def __post_init__(self):
        terms = tuple((int(a), int(e)) for a, e in self.terms)
        object.__setattr__(self, "terms", terms)
        prev = 0
        for a, e in terms:
            if a <= prev:
                raise InputError("eta arguments must be strictly increasing positive integers")
            if e == 0:
                raise InputError("eta exponents must be nonzero")
            prev = a

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(e for _, e in self.terms), 2)

    @property
    def leading_exponent(self) -> Fraction:
        """The power of q carried by the product of the q^(a/24) prefactors."""
        return Fraction(sum(a * e for a, e in self.terms), 24)

    @property
    def exponent_gcd(self) -> int:
        return math.gcd(*(abs(e) for _, e in self.terms)) if self.terms else 0

    @property
    def factor_count(self) -> int:
        return len(self.terms)

    def exponent_scaled(self, k: int) -> "EtaQuotient":
        """The quotient with every exponent divided by k (k must divide all)."""
        if any(e % k for _, e in self.terms):
            raise InputError(f"{k} does not divide every exponent")
        return EtaQuotient(tuple((a, e // k) for a, e in self.terms))

    def __str__(self):
        if not self.terms:
            return "1"
        return " * ".join(f"eta({a})" if e == 1 else f"eta({a})^{e}" for a, e in self.terms)

    def to_json(self):
        return {"terms": [[a, e] for a, e in self.terms]}

    @staticmethod
    def from_json(obj) -> "EtaQuotient":
        return EtaQuotient(tuple((a, e) for a, e in obj["terms"]))


def euler_factor(a: int, n_terms: int) -> PuiseuxSeries:
    """prod_{n>=1} (1 - q^(a*n)) expanded to n_terms coefficients.

    Sparse by the pentagonal-number identity: the exponents a*k(3k-1)/2
    carry coefficient (-1)^k for k in Z.
    """
    coeffs = [0] * n_terms
    coeffs[0] = 1
    k = 1
    while True:
        e1 = a * k * (3 * k - 1) // 2
        e2 = a * k * (3 * k + 1) // 2
        if e1 >= n_terms and e2 >= n_terms:
            break
        sign = -1 if k % 2 else 1
        if e1 < n_terms:
            coeffs[e1] = sign
        if e2 < n_terms:
            coeffs[e2] = sign
        k += 1
    return PuiseuxSeries(1, 0, coeffs, n_terms)


def eta_expand(quotient: EtaQuotient, n_terms: int) -> PuiseuxSeries:
    """Exact expansion with n_terms coefficients from the leading exponent.

    The result has ramification equal to the denominator of the leading
    exponent (a divisor of 24) and is known modulo q^(lead + n_terms).
    """
    if n_terms < 1:
        raise InputError("need at least one series coefficient")
    unit = PuiseuxSeries.one(n_terms)
    for a, e in quotient.terms:
        base = euler_factor(a, n_terms)
        if e < 0:
            base = base.invert()
            e = -e
        unit = unit * base**e
    lead = quotient.leading_exponent
    return PuiseuxSeries.monomial(1, lead) * unit


@dataclass(frozen=True)
class ProductForm:
    """q^r * prod_{n=1..T} (1 - q^n)^c(n), expanded exactly to order T.

    c is stored 1-indexed: c[n] is the exponent of (1 - q^n).
    """

    r: Fraction
    c: tuple
    T: int
    field: NumberField = QQ

    def exponent(self, n: int):
        if not 1 <= n <= self.T:
            raise InputError(f"product-form exponent c({n}) is outside 1..{self.T}")
        return self.c[n - 1]

    def to_json(self):
        def cjson(x):
            return rational_to_str(x) if isinstance(x, Fraction) else x.to_json()

        return {"r": rational_to_str(self.r), "c": [cjson(x) for x in self.c], "T": self.T}

    @staticmethod
    def from_json(obj) -> "ProductForm":
        field = QQ
        cs = []
        for x in obj["c"]:
            if isinstance(x, str):
                cs.append(Fraction(x))
            else:
                a = AlgebraicNumber.from_json(x)
                field = a.field
                cs.append(a)
        return ProductForm(Fraction(obj["r"]), tuple(cs), obj["T"], field)


def series_to_product_form(f: PuiseuxSeries) -> ProductForm:
    """Extract (r, c(n)) with f = q^r * prod (1 - q^n)^c(n) to truncation.

    The c(n) are read off recursively from the logarithmic derivative:
    q*f'/f = r - sum_n c(n) * n * (q^n + q^(2n) + ...).  Requires leading
    coefficient exactly 1 (normalize first and report the scalar apart).
    """
    if f.is_zero:
        raise InputError("zero series has no product form")
    if f.leading_coefficient != 1:
        raise InputError(
            "leading coefficient must be 1: divide the series by its leading "
            "scalar first and report the scalar separately"
        )
    if f.T is INFINITY:
        raise InputError("series must carry a finite truncation")
    unit = PuiseuxSeries(f.w, 0, f.coeffs, f.T - f.v, f.field)
    if unit.w != 1:
        raise InputError("series is not supported on integer exponents times q^r")
    r = f.valuation
    n_c = unit.T - 1
    if n_c < 1:
        return ProductForm(r, (), 0, f.field)
    # L = q * unit'/unit has L_m = -sum_{d | m} d*c(d)
    L = PuiseuxSeries.monomial(1, 1) * unit.derivative() * unit.invert()
    c = [0] * (n_c + 1)
    for m in range(1, n_c + 1):
        s = -L.coefficient(m)
        for d in range(1, m):
            if m % d == 0 and c[d]:
                s = s - d * c[d]
        c[m] = s / Fraction(m)
    return ProductForm(r, tuple(c[1:]), n_c, f.field)


def product_form_to_series(P: ProductForm, n_terms: int | None = None) -> PuiseuxSeries:
    """Expand q^r * prod (1 - q^n)^c(n) exactly.

    Fractional exponents c(n) are handled through the same logarithmic
    recurrence used for extraction, which realizes the principal-branch
    binomial expansion of every (1 - q^n)^c(n).
    """
    avail = P.T + 1
    n_unit = avail if n_terms is None else min(n_terms, avail)
    if n_terms is not None and n_terms > avail:
        raise InputError(f"product form only determines {avail} coefficients")
    s = [0] * n_unit  # s[m] = sum_{d | m} d * c(d)
    for d in range(1, n_unit):
        cd = P.c[d - 1]
        if cd:
            for m in range(d, n_unit, d):
                s[m] = s[m] + d * cd
    u = [0] * n_unit
    u[0] = 1
    for m in range(1, n_unit):
        acc = 0
        for k in range(1, m + 1):
            if s[k] and u[m - k]:
                acc = acc + s[k] * u[m - k]
        if acc:
            u[m] = -acc / Fraction(m)
    unit = PuiseuxSeries(1, 0, u, n_unit, P.field)
    return PuiseuxSeries.monomial(1, P.r) * unit


@dataclass(frozen=True)
class NotEta:
    """Witness that a product form is not an eta quotient up to order T."""

    index: int | None
    detail: str

    def __str__(self):
        where = f" at n = {self.index}" if self.index is not None else ""
        return f"not an eta quotient{where}: {self.detail}"


def eta_recognize(P: ProductForm):
    """Solve for eta factors reproducing the product form, or say why not.

    Peeling e_a = c(a) - sum over proper divisors in the support; a verdict
    of success is qualified "to order T" since a truncated expansion can
    never prove eta-quotient-ness outright.
    """
    support: dict = {}
    for a in range(1, P.T + 1):
        resid = P.exponent(a)
        for d, e in support.items():
            if a % d == 0:
                resid = resid - e
        if not resid:
            continue
        if isinstance(resid, AlgebraicNumber):
            if not resid.is_rational:
                return NotEta(a, f"exponent {resid} is irrational")
            resid = resid.as_fraction()
        if resid.denominator != 1:
            return NotEta(a, f"exponent {resid} is not an integer")
        support[a] = int(resid)
    expected_r = Fraction(sum(a * e for a, e in support.items()), 24)
    if P.r != expected_r:
        return NotEta(None, f"leading exponent {P.r} != sum(a*e)/24 = {expected_r}")
    return EtaQuotient(tuple(sorted(support.items())))


def count_type_ia_groups(cusp_count: int, p: int, e: int) -> int:
    """Number of index-p^e character groups of the first ramified kind whose
    function-field extensions are generated by modular units.

    Equals p^(e(t-2)) + p^(e(t-3)) + ... + 1 = (p^(e(t-1)) - 1)/(p^e - 1)
    for t cusps: one group per point of the projective space of exponent
    vectors mod p^e.
    """
    if cusp_count < 2:
        raise InputError("need at least two cusps")
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if e < 1:
        raise InputError("exponent e must be >= 1")
    num = p ** (e * (cusp_count - 1)) - 1
    den = p**e - 1
    assert num % den == 0
    return num // den
