"""Exact arithmetic foundations.

Rationals are ``fractions.Fraction`` throughout; this module adds p-adic
valuations, simple algebraic extensions of the rationals (one adjunction,
no towers), dense univariate polynomials over an exact coefficient domain,
and complete rational root finding.

Everything here is immutable after construction and all operations are
pure functions, so values can be shared freely across threads.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

INFINITY = math.inf


class QcertError(Exception):
    """Base class for all library errors."""


class InputError(QcertError, ValueError):
    """A precondition on user-supplied data failed."""


class FieldMismatchError(InputError):
    """Operands live in different number fields."""


class TowerError(InputError):
    """A second adjunction on top of an extension field was requested."""


class CertificationError(InputError):
    """An irreducibility certification required for adjunction is missing."""


class PrecisionError(QcertError):
    """A result was requested beyond the provable truncation."""


class AdjunctionNeeded(QcertError):
    """An operation needs a root that does not exist in the current field.

    ``polynomial`` holds the monic polynomial whose root would be required.
    """

    def __init__(self, polynomial, message=None):
        self.polynomial = polynomial
        super().__init__(message or f"needs a root of {polynomial}")


# ---------------------------------------------------------------------------
# primes and integer factorization

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int):
    """All primes <= bound, ascending."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, fl in enumerate(sieve) if fl]


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_int(n: int) -> dict:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise InputError("factor_int expects a positive integer")
    out: dict = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n and f < 65536:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n == 1:
        return out
    rng = random.Random(0x5EED)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m, rng)
        stack.append(d)
        stack.append(m // d)
    return out


def divisors(n: int, cap: int | None = None) -> list:
    """Positive divisors of n >= 1 (unsorted).  Raises if more than cap."""
    fac = factor_int(n)
    divs = [1]
    for p, e in fac.items():
        pe = [p**k for k in range(1, e + 1)]
        divs = [d * f for d in divs for f in [1] + pe]
        if cap is not None and len(divs) > cap:
            raise PrecisionError(f"divisor count of {n} exceeds cap {cap}")
    return divs


# ---------------------------------------------------------------------------
# p-adic valuation

def _ord_int(n: int, p: int) -> int:
    k = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(x, p: int):
    """Exponent of the prime p in the rational x; INFINITY for x = 0."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return _ord_int(x.numerator, p) - _ord_int(x.denominator, p)


# ---------------------------------------------------------------------------
# number fields and algebraic numbers

def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise InputError(f"expected an exact rational, got {type(c).__name__}")


class NumberField:
    """A simple extension Q(theta) given by the monic minimal polynomial.

    Degree 1 is the rationals themselves.  Towers are deliberately
    unsupported: the base of every extension is Q.
    """

    __slots__ = ("minpoly", "name")

    def __init__(self, minpoly, name: str = "theta"):
        coeffs = tuple(_as_fraction(c) for c in minpoly)
        if len(coeffs) < 2:
            raise InputError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise InputError("minimal polynomial must be monic")
        self.minpoly = coeffs
        self.name = name

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_rationals(self) -> bool:
        return self.degree == 1

    def generator(self) -> "AlgebraicNumber":
        if self.degree == 1:
            return AlgebraicNumber(self, (-self.minpoly[0],))
        return AlgebraicNumber(self, (0, 1) + (0,) * (self.degree - 2))

    def zero(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, (0,) * self.degree)

    def one(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, (1,) + (0,) * (self.degree - 1))

    def element(self, value) -> "AlgebraicNumber":
        """Embed a rational (or coordinate vector) into this field."""
        if isinstance(value, AlgebraicNumber):
            if value.field != self:
                raise FieldMismatchError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            coords = (Fraction(value),) + (Fraction(0),) * (self.degree - 1)
            return AlgebraicNumber(self, coords)
        return AlgebraicNumber(self, tuple(value))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        if self.is_rationals:
            return "QQ"
        return f"NumberField({self.name}: {list(self.minpoly)})"

    def to_json(self):
        return {"minpoly": [str(c) for c in self.minpoly], "name": self.name}

    @staticmethod
    def from_json(obj) -> "NumberField":
        return NumberField([Fraction(c) for c in obj["minpoly"]], obj.get("name", "theta"))


#: The rational field, as the degree-1 extension with generator 0.
QQ = NumberField((0, 1), name="one")


class AlgebraicNumber:
    """Element of a NumberField in the power basis of its generator."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        cs = tuple(_as_fraction(c) for c in coords)
        if len(cs) != field.degree:
            raise InputError(
                f"coordinate vector of length {len(cs)} in a degree-{field.degree} field"
            )
        self.field = field
        self.coords = cs

    # -- coercion ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field!r} and {other.field!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return AlgebraicNumber(self.field, (self.coords[0] * o.coords[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(o.coords):
                if b:
                    prod[i + j] += a * b
        return AlgebraicNumber(self.field, _reduce_mod_minpoly(prod, self.field.minpoly))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if not self:
            raise ZeroDivisionError("algebraic number is zero")
        d = self.field.degree
        if d == 1:
            return AlgebraicNumber(self.field, (1 / self.coords[0],))
        # extended Euclid in Q[x] against the (irreducible) minimal polynomial
        a = Polynomial(self.field.minpoly)
        b = Polynomial(self.coords)
        g, _, v = poly_xgcd(a, b)
        if g.degree != 0:
            raise InputError("minimal polynomial is not irreducible: inverse failed")
        inv = v * (1 / g.coeffs[0])
        coords = list(inv.coeffs) + [Fraction(0)] * (d - len(inv.coeffs))
        return AlgebraicNumber(self.field, coords[:d])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure ---------------------------------------------------------
    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other and not any(self.coords[1:])
        if isinstance(other, AlgebraicNumber):
            return self.field == other.field and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.coords[0])
        return hash((self.field, self.coords))

    @property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise InputError("algebraic number is not rational")
        return self.coords[0]

    def __repr__(self):
        if self.is_rational:
            return f"{self.coords[0]}"
        name = self.field.name
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{name}" if c != 1 else name)
            else:
                parts.append(f"{c}*{name}^{i}" if c != 1 else f"{name}^{i}")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"field": self.field.to_json(), "coords": [str(c) for c in self.coords]}

    @staticmethod
    def from_json(obj) -> "AlgebraicNumber":
        field = NumberField.from_json(obj["field"])
        return AlgebraicNumber(field, [Fraction(c) for c in obj["coords"]])


def _reduce_mod_minpoly(coeffs: list, minpoly: tuple) -> tuple:
    d = len(minpoly) - 1
    cs = list(coeffs)
    for i in range(len(cs) - 1, d - 1, -1):
        c = cs[i]
        if c:
            cs[i] = Fraction(0)
            for j in range(d):
                cs[i - d + j] -= c * minpoly[j]
    return tuple(cs[:d])


def field_arith(a: AlgebraicNumber, b: AlgebraicNumber, op: str) -> AlgebraicNumber:
    """Dispatch form of the four field operations (exact, reduced)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InputError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# dense univariate polynomials

def _czero(c):
    """True for the zero element of any supported coefficient domain."""
    return not c


class Polynomial:
    """Dense univariate polynomial, coefficients stored low degree first.

    The coefficient domain is duck-typed: Fraction, AlgebraicNumber and
    nested Polynomial all work.  Plain ints are normalized to Fraction so
    that true division never silently produces floats.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        while cs and _czero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    # -- basic structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            raise InputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _czero(c):
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"({c})*x" if not isinstance(c, (int, Fraction)) else f"{c}*x")
            else:
                parts.append(
                    f"({c})*x^{i}" if not isinstance(c, (int, Fraction)) else f"{c}*x^{i}"
                )
        return " + ".join(parts)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                other = Fraction(other)
            return Polynomial([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _czero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if _czero(b):
                    continue
                k = i + j
                out[k] = a * b if out[k] is None else out[k] + a * b
        zero = self.coeffs[0] * 0
        return Polynomial([zero if c is None else c for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        inv_lead = 1 / other.leading
        quo = [None] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * inv_lead
            quo[i] = c
            if not _czero(c):
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Polynomial(quo), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- calculus and evaluation ---------------------------------------------
    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        if not self.coeffs:
            return x * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def monic(self) -> "Polynomial":
        if not self:
            return self
        if self.leading == 1:
            return self
        inv = 1 / self.leading
        return Polynomial([c * inv for c in self.coeffs])

    def shifted(self, a) -> "Polynomial":
        """Taylor shift: returns p(x + a)."""
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * Polynomial([a, 1]) + Polynomial([c])
        return out

    def to_json(self):
        return [str(c) if isinstance(c, Fraction) else c.to_json() for c in self.coeffs]


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd over a field coefficient domain."""
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def poly_xgcd(f: Polynomial, g: Polynomial):
    """Extended Euclid: returns (gcd, u, v) with u*f + v*g = gcd."""
    r0, r1 = f, g
    s0, s1 = Polynomial([1]), Polynomial()
    t0, t1 = Polynomial(), Polynomial([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def squarefree_part(f: Polynomial) -> Polynomial:
    """f / gcd(f, f'), monic; the product of distinct irreducible factors."""
    if not f:
        raise InputError("zero polynomial")
    g = poly_gcd(f, f.derivative())
    if g.degree <= 0:
        return f.monic()
    return (f // g).monic()


def resultant(f: Polynomial, g: Polynomial):
    """Resultant of f and g via the Euclidean remainder sequence."""
    if not f or not g:
        return Fraction(0)
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    r = f % g
    sign = -1 if (f.degree * g.degree) % 2 else 1
    if not r:
        return Fraction(0)
    return sign * g.leading ** (f.degree - r.degree) * resultant(g, r)


# ---------------------------------------------------------------------------
# rational roots

_DIVISOR_CAP = 50000


def rational_roots(f: Polynomial) -> list:
    """All rational roots of f, with multiplicity, found exactly.

    Divisor search on the leading/constant coefficients; inputs whose
    constant term resists factorization fall back to a complete modular
    sieve (root images mod large primes, combined by CRT and verified by
    exact evaluation).
    """
    if not f:
        raise InputError("zero polynomial has no well-defined root set")
    roots = []
    coeffs = list(f.coeffs)
    while _czero(coeffs[0]):
        roots.append(Fraction(0))
        coeffs.pop(0)
    if len(coeffs) == 1:
        return roots
    F = _clear_denominators([_as_fraction(c) for c in coeffs])
    try:
        candidates = _root_candidates_by_divisors(F)
    except PrecisionError:
        candidates = _root_candidates_by_sieve(F)
    g = Polynomial([Fraction(c) for c in F])
    for r in candidates:
        while g.degree >= 1 and g(r) == 0:
            roots.append(r)
            g = g // Polynomial([-r, 1])
    roots.sort()
    return roots


def _clear_denominators(coeffs) -> list:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    content = 0
    for c in ints:
        content = math.gcd(content, c)
    return [c // content for c in ints]


def _root_candidates_by_divisors(F: list) -> list:
    nums = divisors(abs(F[0]), cap=_DIVISOR_CAP)
    dens = divisors(abs(F[-1]), cap=_DIVISOR_CAP)
    if len(nums) * len(dens) > _DIVISOR_CAP:
        raise PrecisionError("candidate set too large")
    seen = set()
    for s in nums:
        for t in dens:
            r = Fraction(s, t)
            seen.add(r)
            seen.add(-r)
    return sorted(seen)


def _root_candidates_by_sieve(F: list) -> list:
    # Monicize: integer roots z of G(z) = lc^(d-1) F(z/lc) give roots z/lc of F.
    lc = F[-1]
    d = len(F) - 1
    G = [F[i] * lc ** (d - 1 - i) for i in range(d)] + [1]
    bound = 1 + max(abs(c) for c in G[:-1])
    rng = random.Random(0xC0FFEE)
    residues = [(0, 1)]
    modulus = 1
    ell = 1 << 59
    while modulus <= 2 * bound:
        ell = _next_prime_above(ell)
        rs = _int_poly_roots_mod(G, ell, rng)
        if not rs:
            return []
        new = []
        for r0, _ in residues:
            for r1 in rs:
                new.append((_crt(r0, modulus, r1, ell), modulus * ell))
        if len(new) > 4096:
            # too many modular ghosts; thin by exact evaluation on balanced lifts
            new = [(r, m) for r, m in new if _eval_int_poly(G, _balanced(r, m)) % m == 0]
        residues = new
        modulus *= ell
    out = set()
    for r, m in residues:
        z = _balanced(r, m)
        if abs(z) <= bound and _eval_int_poly(G, z) == 0:
            out.add(Fraction(z, lc))
    return sorted(out)


def _balanced(r: int, m: int) -> int:
    return r - m if r > m // 2 else r


def _crt(a: int, m: int, b: int, n: int) -> int:
    return (a + (b - a) * pow(m, -1, n) % n * m) % (m * n)


def _next_prime_above(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def _eval_int_poly(F: list, x: int) -> int:
    acc = 0
    for c in reversed(F):
        acc = acc * x + c
    return acc


def _int_poly_roots_mod(F: list, p: int, rng: random.Random) -> list:
    """Roots of F mod p (F integer coefficients, lc not divisible by p)."""
    fbar = [c % p for c in F]
    while fbar and fbar[-1] == 0:
        fbar.pop()
    if len(fbar) <= 1:
        return []
    # distinct-root part: gcd(x^p - x, fbar)
    xp = _pm_pow([0, 1], p, fbar, p)
    g = _pm_gcd([(c - x) % p for c, x in _zip_pad(xp, [0, 1])], fbar, p)
    roots = []
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append(-h[0] * pow(h[1], -1, p) % p)
            continue
        while True:
            a = rng.randrange(p)
            t = _pm_pow([a, 1], (p - 1) // 2, h, p)
            t = list(t)
            t[0] = (t[0] - 1) % p
            d = _pm_gcd(t, h, p)
            if 0 < len(d) - 1 < len(h) - 1:
                stack.append(d)
                stack.append(_pm_div(h, d, p)[0])
                break
    return sorted(roots)


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _pm_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pm_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _pm_trim(out)


def _pm_div(a: list, b: list, p: int):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _pm_trim(q), _pm_trim(a)


def _pm_gcd(a: list, b: list, p: int) -> list:
    a, b = _pm_trim(list(a)), _pm_trim(list(b))
    while b:
        a, b = b, _pm_div(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _pm_pow(base: list, e: int, mod: list, p: int) -> list:
    result = [1]
    b = _pm_div(base, mod, p)[1] if len(base) >= len(mod) else list(base)
    while e:
        if e & 1:
            result = _pm_div(_pm_mul(result, b, p), mod, p)[1]
        b = _pm_div(_pm_mul(b, b, p), mod, p)[1]
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# adjunction

def adjoin_root(base: NumberField, f: Polynomial, certified_irreducible: bool = False,
                name: str = "theta") -> NumberField:
    """Extend the rationals by a formal root of the monic polynomial f.

    Degree-1 input collapses back to the rationals.  Irreducibility must be
    certain: degree <= 3 is certified here by rational-root exclusion,
    higher degrees additionally require the caller to pass a mod-q
    irreducibility certificate flag (see elliptic.irreducibility_certificate).
    """
    if not base.is_rationals:
        raise TowerError("tower extensions are unsupported; base must be the rationals")
    if not f or f.degree < 1:
        raise InputError("adjunction needs a polynomial of degree >= 1")
    if f.leading != 1:
        raise InputError("adjunction polynomial must be monic")
    for c in f.coeffs:
        if isinstance(c, AlgebraicNumber):
            raise TowerError("adjunction polynomial must have rational coefficients")
    if f.degree == 1:
        return QQ
    if rational_roots(f):
        raise InputError("polynomial has a rational root; it is not irreducible")
    if f.degree > 3 and not certified_irreducible:
        raise CertificationError(
            "degree > 3 adjunction requires a mod-q irreducibility certificate"
        )
    return NumberField(f.coeffs, name=name)


def fraction_nth_root(c: Fraction, n: int):
    """Exact n-th root of a rational if one exists, else None."""
    c = Fraction(c)
    if c == 0:
        return Fraction(0)
    if c < 0:
        if n % 2 == 0:
            return None
        r = fraction_nth_root(-c, n)
        return None if r is None else -r
    num = _int_nth_root(c.numerator, n)
    den = _int_nth_root(c.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_nth_root(m: int, n: int):
    if m == 0:
        return 0
    r = round(m ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**n == m:
            return cand
    # float guess can be off for very large m; fix up by integer search
    lo, hi = 1, 1 << ((m.bit_length() + n - 1) // n + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        t = mid**n
        if t == m:
            return mid
        if t < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rational_to_str(x: Fraction) -> str:
    """Serialize num/den (bare numerator when the denominator is 1)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
