"""Division polynomials, Newton polygons, and the prime-screening pipeline.

For y^2 = x^3 + A*x + B the p-th division polynomial has the x-coordinates
of the p-torsion as its roots, degree (p^2-1)/2 and leading coefficient p.
The screening pipeline combines three exact certificates per prime p:

* shape check (degree and leading coefficient);
* Newton-polygon witness that some p-torsion x-coordinate is not p-integral;
* an irreducibility certificate over Q from factor-degree patterns mod
  auxiliary primes q (irreducible mod q is sufficient; otherwise a pattern
  sieve narrows the possible rational factor degrees).
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    INFINITY,
    InputError,
    Polynomial,
    is_prime,
    primes_up_to,
    rational_roots,
    rational_to_str,
    valuation,
)
from .ubdcert import InverseGrowthReport, verify_inverse_growth_law


@dataclass(frozen=True)
class WeierstrassCurve:
    """Short Weierstrass model y^2 = x^3 + A*x + B (nonsingular)."""

    A: Fraction
    B: Fraction

    def __post_init__(self):
        object.__setattr__(self, "A", Fraction(self.A))
        object.__setattr__(self, "B", Fraction(self.B))
        if self.discriminant == 0:
            raise InputError("curve is singular: -16(4A^3 + 27B^2) = 0")

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    def contains(self, x, y) -> bool:
        x, y = Fraction(x), Fraction(y)
        return y * y == x**3 + self.A * x + self.B

    def to_json(self):
        return {"A": rational_to_str(self.A), "B": rational_to_str(self.B)}


def short_weierstrass_from_general(a1, a2, a3, a4, a6):
    """Standard substitution from y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6.

    Returns (curve, point_map) with point_map sending an affine point of the
    general model to the short model (x, y) -> (36x + 3b2, 108(2y + a1x + a3)).
    """
    a1, a2, a3, a4, a6 = (Fraction(t) for t in (a1, a2, a3, a4, a6))
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    curve = WeierstrassCurve(-27 * c4, -54 * c6)

    def point_map(x, y):
        x, y = Fraction(x), Fraction(y)
        return (36 * x + 3 * b2, 108 * (2 * y + a1 * x + a3))

    return curve, point_map


# ---------------------------------------------------------------------------
# division polynomials

@dataclass(frozen=True)
class DivisionPolynomial:
    p: int
    poly: Polynomial
    curve: WeierstrassCurve

    def to_json(self):
        return {
            "p": self.p,
            "curve": self.curve.to_json(),
            "coeffs": [rational_to_str(c) for c in self.poly.coeffs],
        }


def _psi_table(A, B, top: int) -> dict:
    """The y-stripped division polynomials a_m with psi_m = a_m * y^(m+1 mod 2).

    A and B may be any commutative ring elements supporting +, *, and
    division by 2 (Fraction, or nested Polynomial for symbolic checks).
    The recurrences absorb y^2 = x^3 + A*x + B, leaving pure x-polynomials.
    """
    x = Polynomial([0, 1])

    def const(v):
        # wrap a ring element as a degree-0 x-polynomial so that symbolic
        # (nested-polynomial) coefficients are never unwrapped a level
        return Polynomial([v])

    F = x**3 + const(A) * x + const(B)
    F2 = F * F
    tab = {
        0: Polynomial(),
        1: Polynomial([1]),
        2: Polynomial([2]),
        3: 3 * x**4 + const(6 * A) * x**2 + const(12 * B) * x - const(A * A),
        4: 4
        * (
            x**6
            + const(5 * A) * x**4
            + const(20 * B) * x**3
            - const(5 * A * A) * x**2
            - const(4 * A * B) * x
            - const(8 * B * B + A * A * A)
        ),
    }

    def get(m: int) -> Polynomial:
        if m in tab:
            return tab[m]
        h = m // 2
        if m % 2:
            if h % 2 == 0:
                val = get(h + 2) * get(h) ** 3 * F2 - get(h - 1) * get(h + 1) ** 3
            else:
                val = get(h + 2) * get(h) ** 3 - get(h - 1) * get(h + 1) ** 3 * F2
        else:
            val = get(h) * (get(h + 2) * get(h - 1) ** 2 - get(h - 2) * get(h + 1) ** 2)
            val = val * Fraction(1, 2)
        tab[m] = val
        return val

    get(top)
    return tab


def division_poly(curve: WeierstrassCurve, p: int) -> DivisionPolynomial:
    """The p-th division polynomial (p an odd prime) via the standard
    doubling recurrences, with the shape checked against degree (p^2-1)/2
    and leading coefficient p."""
    if p == 2:
        raise InputError("p = 2 has no odd division polynomial: use two_torsion_cubic")
    if not is_prime(p) or p % 2 == 0:
        raise InputError(f"{p} is not an odd prime")
    poly = _psi_table(curve.A, curve.B, p)[p]
    expected_degree = (p * p - 1) // 2
    if poly.degree != expected_degree or poly.leading != p:
        raise InputError(
            f"division polynomial shape check failed for p={p}: "
            f"degree {poly.degree}, leading {poly.leading}"
        )
    return DivisionPolynomial(p, poly, curve)


def two_torsion_cubic(curve: WeierstrassCurve) -> Polynomial:
    """x^3 + A*x + B, whose roots are the 2-torsion x-coordinates."""
    return Polynomial([curve.B, curve.A, 0, 1])


# ---------------------------------------------------------------------------
# Newton polygons

@dataclass(frozen=True)
class SlopeWitness:
    """A positive-slope segment of the lower hull: roots of p-adic valuation
    -slope exist in the algebraic closure."""

    start: tuple
    end: tuple
    slope: Fraction
    root_valuation: Fraction
    multiplicity: int


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    points: tuple  # (degree index, ord_p of coefficient), finite ones only
    vertices: tuple  # lower convex hull, left to right

    def segments(self):
        out = []
        for (i1, v1), (i2, v2) in zip(self.vertices, self.vertices[1:]):
            out.append(((i1, v1), (i2, v2), Fraction(v2 - v1, i2 - i1)))
        return out

    def has_nonintegral_root(self):
        """(witness | None): a segment of positive slope ending at the
        leading point certifies a root of negative valuation."""
        for (start, end, slope) in reversed(self.segments()):
            if slope > 0:
                return SlopeWitness(
                    start, end, slope, -slope, end[0] - start[0]
                )
        return None

    def root_valuations(self):
        """All (valuation, multiplicity) pairs read off the hull slopes."""
        return [(-s, e[0] - b[0]) for b, e, s in self.segments()]

    def to_json(self):
        w = self.has_nonintegral_root()
        return {
            "p": self.p,
            "points": [list(pt) for pt in self.points],
            "vertices": [list(pt) for pt in self.vertices],
            "nonintegralRoot": None
            if w is None
            else {
                "slope": rational_to_str(w.slope),
                "rootValuation": rational_to_str(w.root_valuation),
                "multiplicity": w.multiplicity,
            },
        }


def newton_polygon(f: Polynomial, p: int) -> NewtonPolygon:
    if not f:
        raise InputError("zero polynomial has no Newton polygon")
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    pts = []
    for i, c in enumerate(f.coeffs):
        if c:
            pts.append((i, valuation(Fraction(c), p)))
    hull = _lower_hull(pts)
    return NewtonPolygon(p, tuple(pts), tuple(hull))


def _lower_hull(points):
    hull = []
    for pt in points:  # already sorted by abscissa
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x2) >= (pt[1] - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


# ---------------------------------------------------------------------------
# polynomials over F_q: packed arithmetic and distinct-degree factorization

_PACK_BYTES = 8


def _pack(coeffs):
    return int.from_bytes(
        b"".join(c.to_bytes(_PACK_BYTES, "little") for c in coeffs), "little"
    )


def _unpack(value, n):
    raw = value.to_bytes(n * _PACK_BYTES, "little")
    return [
        int.from_bytes(raw[i * _PACK_BYTES : (i + 1) * _PACK_BYTES], "little")
        for i in range(n)
    ]


class _FqModulus:
    """Reduction context mod a monic f over F_q with a precomputed table of
    x^(n+j) mod f, enabling C-speed packed multiply-reduce."""

    def __init__(self, f: list, q: int):
        inv = pow(f[-1], -1, q)
        self.f = [c * inv % q for c in f]
        self.q = q
        self.n = len(f) - 1
        # packed-lane bound: reduction digits stay below n^2 q^3 per lane
        if self.n * self.n * q**3 >= 1 << 63:
            raise InputError(
                f"packed arithmetic bound exceeded (degree {self.n}, q = {q})"
            )
        top = [(-c) % q for c in self.f[:-1]]  # x^n mod f
        self.table = []
        cur = top
        for _ in range(self.n - 1):
            self.table.append(_pack(cur))
            nxt = [0] + cur[:-1]
            t = cur[-1]
            if t:
                nxt = [(a + t * b) % q for a, b in zip(nxt, top + [0] * 0)]
                nxt = nxt[: self.n]
            cur = [c % q for c in nxt[: self.n]]
        self.table.append(_pack(cur))
        self.mask = (1 << (64 * self.n)) - 1

    def mulmod(self, a: list, b: list) -> list:
        if not a or not b:
            return []
        prod = _pack(a) * _pack(b)
        la, lb = len(a), len(b)
        total = la + lb - 1
        if total <= self.n:
            digits = _unpack(prod, total)
            return _trim([d % self.q for d in digits])
        digits = _unpack(prod, total)
        acc = prod & self.mask
        for j in range(total - self.n):
            c = digits[self.n + j]
            if c:
                acc += c * self.table[j]
        out = [d % self.q for d in _unpack(acc, self.n)]
        return _trim(out)

    def powmod(self, base: list, e: int) -> list:
        result = [1]
        b = list(base)
        if len(b) > self.n:
            b = _fq_divmod(b, self.f, self.q)[1]
        while e:
            if e & 1:
                result = self.mulmod(result, b)
            e >>= 1
            if e:
                b = self.mulmod(b, b)
        return result


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _fq_divmod(a: list, b: list, q: int):
    a = list(a)
    inv = pow(b[-1], -1, q)
    if len(a) < len(b):
        return [], _trim(a)
    quo = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % q
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                if y:
                    a[i + j] = (a[i + j] - c * y) % q
    return _trim(quo), _trim(a)


def _fq_gcd(a: list, b: list, q: int) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fq_divmod(a, b, q)[1]
    if a and a[-1] != 1:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


@dataclass(frozen=True)
class BadReduction:
    """Reduction mod q was unusable (degree drop or repeated factors)."""

    q: int
    reason: str


def _primitive_int_coeffs(f: Polynomial) -> list:
    den = 1
    for c in f.coeffs:
        c = Fraction(c)
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(Fraction(c) * den) for c in f.coeffs]
    content = 0
    for c in ints:
        content = math.gcd(content, c)
    return [c // content for c in ints]


def factor_degree_pattern(f: Polynomial, q: int, rabin_only: bool = False):
    """Multiset of irreducible factor degrees of f mod q, or BadReduction.

    Distinct-degree factorization after a squarefreeness check; with
    rabin_only the cheaper irreducibility test is run instead and the
    result is either the full-degree pattern or None (unknown split).
    """
    if not is_prime(q):
        raise InputError(f"{q} is not prime")
    ints = _primitive_int_coeffs(f)
    fbar = _trim([c % q for c in ints])
    n = len(ints) - 1
    if len(fbar) - 1 != n:
        return BadReduction(q, "leading coefficient vanishes mod q")
    dfbar = _trim([(i * c) % q for i, c in enumerate(fbar)][1:])
    if len(_fq_gcd(fbar, dfbar, q)) != 1:
        return BadReduction(q, "not squarefree mod q")
    ctx = _FqModulus(fbar, q)
    if rabin_only:
        return ((n,) if _rabin_irreducible(ctx) else None)
    pattern = []
    h = [0, 1]  # x
    rest = list(fbar)
    d = 0
    while len(rest) - 1 > 0:
        d += 1
        if 2 * d > len(rest) - 1:
            pattern.append(len(rest) - 1)
            break
        h = ctx.powmod(h, q)
        probe = list(h)
        while len(probe) < 2:
            probe.append(0)
        probe[1] = (probe[1] - 1) % q
        g = _fq_gcd(_trim(probe), rest, q)
        if len(g) > 1:
            pattern.extend([d] * ((len(g) - 1) // d))
            rest = _fq_divmod(rest, g, q)[0]
    return tuple(sorted(pattern))


def _rabin_irreducible(ctx: _FqModulus) -> bool:
    n, q = ctx.n, ctx.q
    needed = sorted({n // r for r in factor_small(n)} | {n})
    checkpoints = {}
    h = [0, 1]
    d = 0
    for target in needed:
        while d < target:
            h = ctx.powmod(h, q)
            d += 1
        checkpoints[target] = list(h)

    def minus_x(poly):
        poly = list(poly)
        while len(poly) < 2:
            poly.append(0)
        poly[1] = (poly[1] - 1) % q
        return _trim(poly)

    for r in factor_small(n):
        if len(_fq_gcd(minus_x(checkpoints[n // r]), ctx.f, q)) != 1:
            return False
    return not minus_x(checkpoints[n])


def factor_small(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# irreducibility certificates

@dataclass(frozen=True)
class Irreducible:
    witness_prime: int
    pattern: tuple

    verdict = "irreducible"

    def to_json(self):
        return {"verdict": self.verdict, "witnessPrime": self.witness_prime,
                "pattern": list(self.pattern)}


@dataclass(frozen=True)
class Reducible:
    witness_root: Fraction

    verdict = "reducible"

    def to_json(self):
        return {"verdict": self.verdict, "witnessRoot": rational_to_str(self.witness_root)}


@dataclass(frozen=True)
class Inconclusive:
    allowed_factor_degrees: tuple
    patterns: tuple  # (q, pattern) pairs that fed the sieve

    verdict = "inconclusive"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "allowedFactorDegrees": list(self.allowed_factor_degrees),
            "patterns": [[q, list(pat)] for q, pat in self.patterns],
        }


def _subset_sums(pattern, total: int) -> int:
    bits = 1
    full = (1 << (total + 1)) - 1
    for d in pattern:
        bits |= (bits << d) & full
    return bits


def irreducibility_certificate(f: Polynomial, primes, max_patterns: int = 16):
    """Certificate of irreducibility over Q, a verified rational root, or an
    honest Inconclusive with the factor degrees no pattern could exclude.

    Irreducible-mod-q is sufficient but not necessary, so failure to find a
    full-degree pattern is never read as reducibility.
    """
    primes = list(primes)
    if not primes:
        raise InputError("need at least one auxiliary prime")
    deg = f.degree
    if deg < 1:
        raise InputError("constant polynomial")
    if deg == 1:
        return Reducible(witness_root=-Fraction(f.coeffs[0]) / Fraction(f.coeffs[1]))
    use_rabin = deg > 200
    patterns = []
    allowed_bits = (1 << (deg + 1)) - 1
    stale = 0
    for q in primes:
        pat = factor_degree_pattern(f, q, rabin_only=use_rabin)
        if isinstance(pat, BadReduction):
            continue
        if pat is None:
            continue
        if pat == (deg,):
            return Irreducible(q, pat)
        patterns.append((q, pat))
        new_bits = allowed_bits & _subset_sums(pat, deg)
        stale = stale + 1 if new_bits == allowed_bits else 0
        allowed_bits = new_bits
        if len(patterns) >= max_patterns or stale >= 6:
            break
    linear_possible = bool(allowed_bits & 2)
    if linear_possible:
        roots = rational_roots(f)
        if roots:
            return Reducible(witness_root=roots[0])
        # complete root search came back empty: degree 1 (and deg-1) factors
        # are excluded even though patterns allowed them
        allowed_bits &= ~2
        allowed_bits &= ~(1 << (deg - 1))
    allowed = tuple(d for d in range(1, deg) if allowed_bits >> d & 1)
    return Inconclusive(allowed, tuple(patterns))


# ---------------------------------------------------------------------------
# screening pipeline

@dataclass(frozen=True)
class ScreenEntry:
    p: int
    degree: int
    leading_ok: bool
    newton: NewtonPolygon
    certificate: object
    exceptional: bool
    seconds: float

    def to_json(self):
        return {
            "p": self.p,
            "degree": self.degree,
            "leadingOk": self.leading_ok,
            "newton": self.newton.to_json(),
            "irreducibility": self.certificate.to_json(),
            "exceptional": self.exceptional,
            "seconds": round(self.seconds, 3),
        }


@dataclass(frozen=True)
class ScreenReport:
    curve: WeierstrassCurve
    p_max: int
    entries: tuple
    aux_primes: tuple
    notes: tuple

    @property
    def exceptional(self):
        return tuple(e.p for e in self.entries if e.exceptional)

    def to_json(self):
        return {
            "v": 1,
            "curve": self.curve.to_json(),
            "pMax": self.p_max,
            "auxPrimes": list(self.aux_primes),
            "entries": [e.to_json() for e in self.entries],
            "exceptional": list(self.exceptional),
            "notes": list(self.notes),
        }


def _screen_one(args):
    A, B, p, aux = args
    curve = WeierstrassCurve(A, B)
    t0 = time.perf_counter()
    dp = division_poly(curve, p)
    np_ = newton_polygon(dp.poly, p)
    cert = irreducibility_certificate(dp.poly, aux)
    entry = ScreenEntry(
        p=p,
        degree=dp.poly.degree,
        leading_ok=dp.poly.leading == p,
        newton=np_,
        certificate=cert,
        exceptional=not isinstance(cert, Irreducible),
        seconds=time.perf_counter() - t0,
    )
    return entry


def screen_primes(curve: WeierstrassCurve, p_max: int, aux_primes=None,
                  jobs: int = 1) -> ScreenReport:
    """Run the full per-prime screen for every odd prime p <= p_max.

    A prime is exceptional when its division polynomial is not certified
    irreducible (Reducible or Inconclusive).  Reports are merged in prime
    order regardless of the worker count.
    """
    if p_max < 3:
        return ScreenReport(curve, p_max, (), tuple(aux_primes or ()),
                            ("no odd primes in range",))
    if aux_primes is None:
        aux_primes = primes_up_to(200)
    aux = tuple(aux_primes)
    ps = [p for p in primes_up_to(p_max) if p != 2]
    tasks = [(curve.A, curve.B, p, aux) for p in ps]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = tuple(pool.map(_screen_one, tasks))
    else:
        entries = tuple(_screen_one(t) for t in tasks)
    notes = (
        "screen covers odd primes p <= p_max only; larger primes require a "
        "surjectivity bound supplied by the user (37 for CM-free rational "
        "curves after Cojocaru)",
    )
    return ScreenReport(curve, p_max, entries, aux, notes)


def torsion_divisor_consistency(x_series, alpha, p: int,
                                n_max: int | None = None) -> InverseGrowthReport:
    """Divisor-side consistency of the torsion construction: (x - x(P))^(-1)
    must show the certified valuation growth law at p (delegates to
    ubdcert.verify_inverse_growth_law with r = -ord_p(alpha))."""
    alpha = Fraction(alpha)
    v = valuation(alpha, p)
    if v is INFINITY or v >= 0:
        raise InputError(f"alpha must have negative ord_{p}; got {v}")
    return verify_inverse_growth_law(x_series, alpha, p, -v, n_max=n_max)
