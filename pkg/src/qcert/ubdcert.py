"""Unbounded-denominator detection and certificates.

Two kinds of evidence are produced and the distinction is kept explicit:

* structural certificates (CERTIFIED): a non-integral exponent in the
  infinite-product form of a prime-power root of an eta quotient.  These
  are proof-backed and machine-checkable via verify_certificate.
* growth profiles (OBSERVED): exact -ord_p data of a truncated expansion.
  A truncated series alone can never prove unboundedness, so profiles are
  reported as empirical evidence only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exactnum import INFINITY, InputError, is_prime, rational_to_str, valuation
from .etaforms import EtaQuotient, eta_expand, series_to_product_form
from .qseries import PuiseuxSeries


@dataclass(frozen=True)
class DenominatorProfile:
    """Exact -ord_p per coefficient index of a rational series.

    samples holds (index, -ord_p) for every nonzero coefficient up to the
    truncation, indices in units of 1/w; running_max is the cumulative
    maximum along samples.
    """

    p: int
    samples: tuple
    running_max: tuple
    w: int
    T: int

    def max_neg_ord(self) -> int:
        return self.running_max[-1] if self.running_max else 0

    def strict_increase_count(self) -> int:
        count = 0
        prev = None
        for m in self.running_max:
            if prev is None or m > prev:
                count += 1
            prev = m
        return count

    def to_json(self):
        return {
            "p": self.p,
            "w": self.w,
            "T": self.T,
            "samples": [[i, n] for i, n in self.samples],
            "runningMax": list(self.running_max),
        }


def denominator_profile(f: PuiseuxSeries, p: int) -> DenominatorProfile:
    """Profile of -ord_p over the nonzero coefficients of f (rational only)."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if not f.field.is_rationals:
        raise InputError(
            "denominator profiles are defined for rational coefficients only"
        )
    if f.T is INFINITY:
        raise InputError("profile needs a finite truncation")
    samples = []
    running = []
    peak = None
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        neg = -valuation(c, p)
        idx = f.v + k
        samples.append((idx, neg))
        peak = neg if peak is None else max(peak, neg)
        running.append(peak)
    return DenominatorProfile(p, tuple(samples), tuple(running), f.w, f.T)


@dataclass(frozen=True)
class ProductFormNonIntegral:
    """Certificate: the product-form exponent at `position` of the p^e-th
    root of the eta quotient has negative p-adic valuation."""

    p: int
    e: int
    position: int
    value: Fraction
    reduction_power: int = 0  # p^k pulled out of the exponents first, k >= 0

    def __post_init__(self):
        if valuation(self.value, self.p) >= 0:
            raise InputError("certificate value is p-integral; refusing to construct")

    def to_json(self):
        return {
            "v": 1,
            "kind": "product-form-nonintegral",
            "p": self.p,
            "e": self.e,
            "position": self.position,
            "value": rational_to_str(self.value),
        }


@dataclass(frozen=True)
class GrowthWitness:
    """Observed denominator growth: empirical, qualified by the truncation."""

    profile: DenominatorProfile
    threshold: int

    def __post_init__(self):
        if self.threshold > self.profile.max_neg_ord():
            raise InputError("threshold exceeds the profile maximum")

    def to_json(self):
        return {
            "v": 1,
            "kind": "growth-witness",
            "threshold": self.threshold,
            "profile": self.profile.to_json(),
        }


@dataclass(frozen=True)
class EtaRootIsEtaQuotient:
    """The p^e-th root is itself an eta quotient (exponent gcd divisible)."""

    quotient: EtaQuotient

    def to_json(self):
        return {"v": 1, "kind": "eta-root-is-eta-quotient",
                "quotient": self.quotient.to_json()}


def certify_eta_root_ubd(E: EtaQuotient, p: int, e: int):
    """Certificate that the p^e-th root of E has unbounded denominators,
    or the eta quotient E^(1/p^e) when p^e divides every exponent.

    The certificate position is a_{n0} for the least n0 whose exponent is
    not divisible by p^e; the product-form exponent there is
    (sum of e_i over a_i | a_{n0}) / p^e.  Every earlier exponent in that
    divisor sum is divisible by a strictly higher power of p, so the value
    is never p-integral.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if e < 1:
        raise InputError("prime-power exponent e must be >= 1")
    if not E.terms:
        raise InputError("the unit quotient has no root certificate")
    pe = p**e
    if all(ej % pe == 0 for _, ej in E.terms):
        return EtaRootIsEtaQuotient(E.exponent_scaled(pe))
    n0_index = next(i for i, (_, ej) in enumerate(E.terms) if ej % pe != 0)
    position = E.terms[n0_index][0]
    total = sum(ej for aj, ej in E.terms if position % aj == 0)
    k = min(_ord(ej, p) for _, ej in E.terms)
    return ProductFormNonIntegral(p, e, position, Fraction(total, pe), reduction_power=k)


def _ord(n: int, p: int) -> int:
    k = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        k += 1
    return k


def verify_certificate(E: EtaQuotient, cert: ProductFormNonIntegral, slack: int = 2) -> bool:
    """Independent recheck: expand E, take the p^e-th root as a series, and
    recompute the product form at the certified position."""
    n_terms = cert.position + 1 + slack
    expansion = eta_expand(E, n_terms)
    root = expansion.nth_root(cert.p**cert.e)
    pf = series_to_product_form(root)
    value = pf.exponent(cert.position)
    return value == cert.value and valuation(value, cert.p) < 0


def growth_witness(f: PuiseuxSeries, p: int) -> GrowthWitness | None:
    """Early-exit scan: any non-p-integral coefficient yields a witness.

    Dichotomy shape: for roots of integer series a single non-integral
    coefficient already forces unbounded growth, so the first one found
    promotes the whole profile to a witness.
    """
    profile = denominator_profile(f, p)
    if any(neg > 0 for _, neg in profile.samples):
        return GrowthWitness(profile, profile.max_neg_ord())
    return None


@dataclass(frozen=True)
class BoundedDenominatorReport:
    """Least positive A with A*f integral up to the truncation."""

    lcm_denominator: int
    T: int
    w: int

    def to_json(self):
        return {"v": 1, "kind": "bounded-to-truncation",
                "A": str(self.lcm_denominator), "T": self.T, "w": self.w}


@dataclass(frozen=True)
class UnboundedUpToT:
    """The clearing constant is still growing in the top half of the range;
    boundedness beyond T is not certified (and looks unlikely)."""

    lcm_denominator: int
    T: int
    w: int

    def to_json(self):
        return {"v": 1, "kind": "growing-at-truncation",
                "A": str(self.lcm_denominator), "T": self.T, "w": self.w}


def clear_denominators(f: PuiseuxSeries):
    """lcm of coefficient denominators up to T, flagged if still growing.

    The caveat is fundamental: a finite expansion can witness boundedness
    only up to its truncation.
    """
    if not f.field.is_rationals:
        raise InputError("denominator clearing is defined for rational coefficients")
    if f.T is INFINITY:
        raise InputError("clearing needs a finite truncation")
    A = 1
    A_first_half = 1
    half = f.v + (f.T - f.v) // 2
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        A = A * c.denominator // math.gcd(A, c.denominator)
        if f.v + k < half:
            A_first_half = A_first_half * c.denominator // math.gcd(A_first_half, c.denominator)
    if A != A_first_half:
        return UnboundedUpToT(A, f.T, f.w)
    return BoundedDenominatorReport(A, f.T, f.w)


@dataclass(frozen=True)
class InverseGrowthReport:
    """Outcome of checking ord_p c(2n) = -n*r on (x - alpha)^(-1)."""

    ok: bool
    p: int
    r: int
    checked: int
    first_deviation: tuple | None = None

    def to_json(self):
        out = {"v": 1, "ok": self.ok, "p": self.p, "r": self.r, "checked": self.checked}
        if self.first_deviation is not None:
            n, expected, got = self.first_deviation
            out["firstDeviation"] = {"n": n, "expected": expected, "got": got}
        return out


def verify_inverse_growth_law(x_series: PuiseuxSeries, alpha, p: int, r: int,
                              n_max: int | None = None) -> InverseGrowthReport:
    """Expand (x - alpha)^(-1) and check ord_p of the even-offset
    coefficients: with ord_p(alpha) = -r the coefficient at offset 2n from
    the leading exponent must have ord_p exactly -n*r.

    Preconditions (violations raise, never silently pass): x has leading
    term q^(-2/w) with coefficient 1 and p-integral rational coefficients;
    alpha has ord_p equal to -r.
    """
    alpha = Fraction(alpha)
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if r < 1:
        raise InputError("r must be a positive integer")
    if valuation(alpha, p) != -r:
        raise InputError(f"ord_{p}(alpha) = {valuation(alpha, p)} != -{r}")
    if not x_series.field.is_rationals:
        raise InputError("growth law check needs rational coefficients")
    if x_series.is_zero or x_series.v != -2 or x_series.leading_coefficient != 1:
        raise InputError("x must have leading term q^(-2/w) with coefficient 1")
    for exp, c in x_series.nonzero_items():
        if valuation(c, p) < 0:
            raise InputError(f"coefficient of q^{exp} in x is not {p}-integral")
    if x_series.T is INFINITY:
        if n_max is None:
            raise InputError("exact x needs an explicit n_max")
        x_series = x_series.truncated(Fraction(2 * n_max + 3, x_series.w))
    w = x_series.w
    y = (x_series - alpha).invert()
    # y = q^(2/w) * (1 + sum c(n) q^(n/w)); check the even offsets c(2n)
    t_exp = y.truncation_exponent
    limit = math.floor((t_exp * w - 2) / 2) if n_max is None else n_max
    checked = 0
    for n in range(1, limit + 1):
        exponent = Fraction(2 + 2 * n, w)
        if exponent >= t_exp:
            break
        got = valuation(y.coefficient(exponent), p)
        if got != -n * r:
            return InverseGrowthReport(False, p, r, checked,
                                       first_deviation=(n, -n * r, got))
        checked += 1
    return InverseGrowthReport(True, p, r, checked)
