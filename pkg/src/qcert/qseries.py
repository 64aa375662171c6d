"""Truncated exact Puiseux/Laurent series in q.

A series is a dense vector of coefficients over integer exponent indices
measured in units of 1/w (w = ramification).  Every value carries an
explicit truncation T: the series is known modulo q^(T/w).  T may be
INFINITY for exact finite expansions (Laurent polynomials), in which case
all unlisted coefficients are genuinely zero.

Truncation bookkeeping is exact: each operation computes the largest
provable truncation of its result, so precision is never silently
overstated.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactnum import (
    INFINITY,
    QQ,
    AlgebraicNumber,
    AdjunctionNeeded,
    InputError,
    NumberField,
    Polynomial,
    PrecisionError,
    fraction_nth_root,
    rational_to_str,
)


def _wrap_coeff(c, field: NumberField):
    if isinstance(c, AlgebraicNumber):
        if c.field != field:
            raise InputError("coefficient from a different number field")
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Fraction):
        return c
    raise InputError(f"unsupported coefficient type {type(c).__name__}")


def _lift(c, field: NumberField):
    """Lift a rational coefficient into an extension field."""
    if isinstance(c, AlgebraicNumber):
        return c
    return field.element(c)


class PuiseuxSeries:
    """Exact truncated series sum(coeffs[k] * q^((v+k)/w)) + O(q^(T/w))."""

    __slots__ = ("w", "v", "coeffs", "T", "field")

    def __init__(self, w: int, v: int, coeffs, T, field: NumberField = QQ):
        if w < 1:
            raise InputError("ramification must be a positive integer")
        if T is not INFINITY and not isinstance(T, int):
            raise InputError("truncation must be an integer or INFINITY")
        cs = [_wrap_coeff(c, field) for c in coeffs]
        if T is not INFINITY and len(cs) > T - v:
            cs = cs[: max(T - v, 0)]
        while cs and not cs[0]:
            cs.pop(0)
            v += 1
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            self.w, self.v, self.coeffs, self.T, self.field = 1, 0, (), _scale_trunc(T, w), field
            return
        g = 0 if v == 0 else abs(v)
        for k, c in enumerate(cs):
            if c:
                g = math.gcd(g, v + k)
        g = math.gcd(g, w)
        if g > 1:
            newT = T if T is INFINITY else T // g
            # refuse the reduction if it would drop a known nonzero coefficient
            if T is INFINITY or all(
                not c or (v + k) < g * newT for k, c in enumerate(cs)
            ):
                w //= g
                v //= g
                cs = [cs[k] for k in range(0, len(cs), g)]
                T = newT
        self.w = w
        self.v = v
        self.coeffs = tuple(cs)
        self.T = T
        self.field = field

    # -- constructors --------------------------------------------------------
    @staticmethod
    def _raw(w: int, v: int, coeffs, T, field: NumberField) -> "PuiseuxSeries":
        """Internal: build without canonical reduction (for alignment)."""
        s = object.__new__(PuiseuxSeries)
        s.w, s.v, s.coeffs, s.T, s.field = w, v, tuple(coeffs), T, field
        return s

    @staticmethod
    def zero(T=INFINITY, field: NumberField = QQ) -> "PuiseuxSeries":
        return PuiseuxSeries(1, 0, (), T, field)

    @staticmethod
    def one(T=INFINITY, field: NumberField = QQ) -> "PuiseuxSeries":
        return PuiseuxSeries(1, 0, (1,), T, field)

    @staticmethod
    def monomial(coeff, exponent, T=INFINITY, field: NumberField = QQ) -> "PuiseuxSeries":
        e = Fraction(exponent)
        w = e.denominator
        return PuiseuxSeries(w, e.numerator, (coeff,), _scale_trunc(T, w), field)

    @staticmethod
    def from_terms(terms: dict, T=INFINITY, field: NumberField = QQ) -> "PuiseuxSeries":
        """Build from {exponent: coefficient} with rational exponents."""
        if not terms:
            return PuiseuxSeries.zero(T, field)
        exps = [Fraction(e) for e in terms]
        w = 1
        for e in exps:
            w = w * e.denominator // math.gcd(w, e.denominator)
        idx = {int(e * w): c for e, c in zip(exps, terms.values())}
        Tw = _scale_trunc(T, w)
        v = min(idx)
        top = max(idx)
        if Tw is not INFINITY and top >= Tw:
            top = Tw - 1
        coeffs = [idx.get(k, 0) for k in range(v, top + 1)]
        return PuiseuxSeries(w, v, coeffs, Tw, field)

    # -- structure -----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        """Zero up to the known truncation (exact zero when T is INFINITY)."""
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return self.T is INFINITY

    @property
    def valuation(self):
        """Leading exponent as a Fraction; INFINITY for the zero series."""
        if not self.coeffs:
            return INFINITY
        return Fraction(self.v, self.w)

    @property
    def truncation_exponent(self):
        return INFINITY if self.T is INFINITY else Fraction(self.T, self.w)

    @property
    def leading_coefficient(self):
        if not self.coeffs:
            raise InputError("zero series has no leading coefficient")
        return self.coeffs[0]

    def coefficient(self, exponent):
        """Coefficient of q^exponent; PrecisionError beyond the truncation."""
        e = Fraction(exponent)
        if self.T is not INFINITY and e >= Fraction(self.T, self.w):
            raise PrecisionError(f"coefficient of q^{e} is beyond truncation")
        ew = e * self.w
        if ew.denominator != 1:
            return _zero_like(self)
        k = int(ew) - self.v
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _zero_like(self)

    def nonzero_items(self):
        """Pairs (exponent as Fraction, coefficient), ascending."""
        return [
            (Fraction(self.v + k, self.w), c) for k, c in enumerate(self.coeffs) if c
        ]

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (
            self.w == other.w
            and self.v == other.v
            and self.coeffs == other.coeffs
            and self.T == other.T
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.w, self.v, self.coeffs, self.T))

    def agrees_with(self, other: "PuiseuxSeries") -> bool:
        """Equal as series up to the smaller of the two truncations."""
        diff = self - other
        return diff.is_zero

    # -- ramification handling -------------------------------------------------
    def _rescaled(self, t: int) -> "PuiseuxSeries":
        """Same value re-expressed with ramification w*t (non-canonical)."""
        if t == 1:
            return self
        if not self.coeffs:
            return PuiseuxSeries._raw(self.w * t, 0, (), _scale_trunc(self.T, t), self.field)
        cs = [0] * ((len(self.coeffs) - 1) * t + 1)
        for k, c in enumerate(self.coeffs):
            cs[k * t] = c
        return PuiseuxSeries._raw(self.w * t, self.v * t, cs, _scale_trunc(self.T, t), self.field)

    def _with_w_scaled(self, t: int) -> "PuiseuxSeries":
        """Reinterpret indices over a t-times finer variable (value changes:
        q is replaced by q^(1/t)).  Used by the branch solver."""
        return PuiseuxSeries(self.w * t, self.v, self.coeffs, self.T, self.field)

    def _common(self, other: "PuiseuxSeries"):
        field = self.field
        a, b = self, other
        if a.field != b.field:
            if a.field.is_rationals:
                field = b.field
                a = a.lifted(field)
            elif b.field.is_rationals:
                field = a.field
                b = b.lifted(field)
            else:
                raise InputError("series live in different number fields")
        w = a.w * b.w // math.gcd(a.w, b.w)
        return a._rescaled(w // a.w), b._rescaled(w // b.w), field

    def lifted(self, field: NumberField) -> "PuiseuxSeries":
        if self.field == field:
            return self
        if not self.field.is_rationals:
            raise InputError("cannot lift a series out of an extension field")
        return PuiseuxSeries(
            self.w, self.v, [_lift(c, field) for c in self.coeffs], self.T, field
        )

    # -- ring operations -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            other = PuiseuxSeries.monomial(other, 0, INFINITY,
                                           other.field if isinstance(other, AlgebraicNumber) else QQ)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b, field = self._common(other)
        T = min(a.T, b.T)
        if not a.coeffs:
            return PuiseuxSeries(b.w, b.v, b.coeffs, T, field)
        if not b.coeffs:
            return PuiseuxSeries(a.w, a.v, a.coeffs, T, field)
        v = min(a.v, b.v)
        top = max(a.v + len(a.coeffs), b.v + len(b.coeffs))
        if T is not INFINITY:
            top = min(top, T)
        out = [0] * (top - v)
        for k, c in enumerate(a.coeffs):
            if a.v + k < top:
                out[a.v + k - v] = c
        for k, c in enumerate(b.coeffs):
            if b.v + k < top:
                out[b.v + k - v] = out[b.v + k - v] + c
        return PuiseuxSeries(a.w, v, out, T, field)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.w, self.v, [-c for c in self.coeffs], self.T, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            field = self.field
            if isinstance(other, AlgebraicNumber) and field.is_rationals:
                field = other.field
            if not other:
                return PuiseuxSeries(1, 0, (), self.T if self.T is not INFINITY else INFINITY,
                                     field)
            return PuiseuxSeries(
                self.w, self.v, [other * c for c in self.coeffs], self.T, field
            )
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b, field = self._common(other)
        if not a.coeffs or not b.coeffs:
            # 0 * f: the zero factor's truncation still caps what is provable
            if a.T is INFINITY and b.T is INFINITY:
                return PuiseuxSeries(1, 0, (), INFINITY, field)
            Ts = []
            if a.T is not INFINITY:
                Ts.append(a.T + (b.v if b.coeffs else 0))
            if b.T is not INFINITY:
                Ts.append(b.T + (a.v if a.coeffs else 0))
            return PuiseuxSeries(a.w, 0, (), min(Ts), field)
        T = _mul_trunc(a, b)
        v = a.v + b.v
        length = len(a.coeffs) + len(b.coeffs) - 1
        if T is not INFINITY:
            length = min(length, T - v)
        out = [0] * length
        nzb = [(j, cb) for j, cb in enumerate(b.coeffs) if cb]
        for i, ca in enumerate(a.coeffs):
            if not ca or i >= length:
                continue
            for j, cb in nzb:
                k = i + j
                if k >= length:
                    break
                out[k] = out[k] + ca * cb
        return PuiseuxSeries(a.w, v, out, T, field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        if n == 0:
            T = self.T
            return PuiseuxSeries(1, 0, (1,), INFINITY if T is INFINITY else T - self.v, self.field)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            if not other:
                raise ZeroDivisionError("division of a series by zero scalar")
            if isinstance(other, AlgebraicNumber):
                return self * other.inverse()
            return self * (1 / Fraction(other))
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self * other.invert()

    # -- inversion, roots, calculus ---------------------------------------------
    def invert(self, trunc_exponent=None) -> "PuiseuxSeries":
        """Multiplicative inverse; f * invert(f) = 1 up to truncation.

        Exact inputs other than monomials need trunc_exponent (an exponent
        bound for the result) since their inverses are infinite series.
        """
        if self.is_zero:
            raise InputError("cannot invert a series that is zero to truncation")
        c0 = self.coeffs[0]
        if len(self.coeffs) == 1 and self.T is INFINITY:
            return PuiseuxSeries.monomial(_inv_coeff(c0), -self.valuation, INFINITY, self.field)
        if self.T is INFINITY:
            if trunc_exponent is None:
                raise PrecisionError(
                    "inverse of an exact series is infinite: pass trunc_exponent"
                )
            Tu = int(math.ceil((Fraction(trunc_exponent) + Fraction(self.v, self.w)) * self.w))
        else:
            Tu = self.T - self.v
            if trunc_exponent is not None:
                Tu = min(Tu, int((Fraction(trunc_exponent) + Fraction(self.v, self.w)) * self.w))
        # unit-part recurrence: y_0 = 1/c0, y_m = -1/c0 * sum x_k y_(m-k)
        n = max(Tu, 1)
        inv0 = _inv_coeff(c0)
        ys = [inv0] + [0] * (n - 1)
        xs = list(self.coeffs[:n]) + [0] * max(0, n - len(self.coeffs))
        nz = [(k, xk) for k, xk in enumerate(xs) if k and xk]
        for m in range(1, n):
            acc = 0
            for k, xk in nz:
                if k > m:
                    break
                acc = acc + xk * ys[m - k]
            if acc:
                ys[m] = -inv0 * acc
        # unit part known mod q^(Tu/w), so the inverse is known mod q^((Tu - v)/w)
        return PuiseuxSeries(self.w, -self.v, ys, Tu - self.v, self.field)

    def nth_root(self, n: int, leading_root=None, trunc_exponent=None) -> "PuiseuxSeries":
        """Principal-branch formal n-th root; result**n == self to truncation.

        The unit part is expanded with the generalized binomial series for
        exponent 1/n.  A root of the leading coefficient must exist in the
        coefficient field or be supplied via leading_root; otherwise
        AdjunctionNeeded names the required extension x^n - c.
        """
        if n < 1:
            raise InputError("root index must be a positive integer")
        if n == 1:
            return self
        if self.is_zero:
            raise InputError("n-th root of the zero series is not defined here")
        c = self.coeffs[0]
        if leading_root is not None:
            r = leading_root
            if isinstance(r, int):
                r = Fraction(r)
            if r**n != c:
                raise InputError("supplied leading_root is not an n-th root of the lead")
        elif c == 1:
            r = 1
        elif isinstance(c, Fraction) or (isinstance(c, AlgebraicNumber) and c.is_rational):
            cf = c if isinstance(c, Fraction) else c.as_fraction()
            r = fraction_nth_root(cf, n)
            if r is None:
                raise AdjunctionNeeded(
                    Polynomial([-cf] + [0] * (n - 1) + [1]),
                    f"leading coefficient {cf} has no rational {n}-th root",
                )
        else:
            raise AdjunctionNeeded(
                Polynomial([1]),
                "n-th root of a non-rational leading coefficient needs leading_root",
            )
        if self.T is INFINITY:
            if len(self.coeffs) == 1:
                return PuiseuxSeries.monomial(r, self.valuation / n, INFINITY, self.field)
            if trunc_exponent is None:
                raise PrecisionError(
                    "n-th root of an exact series is infinite: pass trunc_exponent"
                )
            Tu = int(math.ceil((Fraction(trunc_exponent) - self.valuation / n + self.valuation)
                               * self.w))
        else:
            Tu = self.T
        m_max = Tu - self.v  # unit-part coefficients h_1 .. h_(m_max - 1)
        hs = _unit_nth_root(
            [_inv_coeff(c) * ck for ck in self.coeffs], n, m_max, self.field
        )
        # result exponents (v + k*n) over ramification w*n; reduction is automatic
        out_field = self.field
        if isinstance(r, AlgebraicNumber) and out_field.is_rationals:
            out_field = r.field
        cs = [0] * ((len(hs) - 1) * n + 1)
        for k, h in enumerate(hs):
            if h:
                cs[k * n] = h * r
        T_out = (Tu - self.v) * n + self.v
        return PuiseuxSeries(self.w * n, self.v, cs, T_out, out_field)

    def derivative(self) -> "PuiseuxSeries":
        """Term-wise d/dq with exact fractional exponents."""
        out = []
        for k, c in enumerate(self.coeffs):
            e = self.v + k
            out.append(c * Fraction(e, self.w))
        T = self.T if self.T is INFINITY else self.T - self.w
        return PuiseuxSeries(self.w, self.v - self.w, out, T, self.field)

    def substitute_power(self, k: int) -> "PuiseuxSeries":
        """Exponent rescaling q -> q^k."""
        if k < 1:
            raise InputError("substitution power must be a positive integer")
        if k == 1 or not self.coeffs:
            T = self.T if self.T is INFINITY else self.T * k
            return PuiseuxSeries(self.w, self.v * k, self.coeffs, T, self.field)
        cs = [0] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            cs[i * k] = c
        T = self.T if self.T is INFINITY else self.T * k
        return PuiseuxSeries(self.w, self.v * k, cs, T, self.field)

    def truncated(self, trunc_exponent) -> "PuiseuxSeries":
        """Forget knowledge beyond the given exponent bound."""
        e = Fraction(trunc_exponent) * self.w
        T = min(self.T, math.floor(e)) if self.T is not INFINITY else math.floor(e)
        return PuiseuxSeries(self.w, self.v, self.coeffs, T, self.field)

    # -- presentation -----------------------------------------------------------
    def __repr__(self):
        return f"PuiseuxSeries({self})"

    def __str__(self):
        def expstr(e: Fraction) -> str:
            return f"{e.numerator}" if e.denominator == 1 else f"({e})"

        parts = []
        for e, c in self.nonzero_items():
            cstr = str(c)
            if "/" in cstr or " " in cstr or "-" in cstr[1:]:
                cstr = f"({cstr})"
            if e == 0:
                parts.append(cstr)
            elif c == 1:
                parts.append(f"q^{expstr(e)}" if e != 1 else "q")
            else:
                parts.append(f"{cstr}*q^{expstr(e)}" if e != 1 else f"{cstr}*q")
        body = " + ".join(parts) if parts else "0"
        if self.T is INFINITY:
            return body
        return f"{body} + O(q^{expstr(self.truncation_exponent)})"

    def to_json(self):
        def cjson(c):
            return rational_to_str(c) if isinstance(c, Fraction) else c.to_json()

        return {
            "w": self.w,
            "v": self.v,
            "T": None if self.T is INFINITY else self.T,
            "coeffs": [cjson(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj) -> "PuiseuxSeries":
        field = QQ
        coeffs = []
        for c in obj["coeffs"]:
            if isinstance(c, str):
                coeffs.append(Fraction(c))
            else:
                a = AlgebraicNumber.from_json(c)
                field = a.field
                coeffs.append(a)
        T = INFINITY if obj.get("T") is None else obj["T"]
        return PuiseuxSeries(obj["w"], obj["v"], coeffs, T, field)


def _zero_like(s: PuiseuxSeries):
    return Fraction(0) if s.field.is_rationals else s.field.zero()


def _inv_coeff(c):
    if isinstance(c, AlgebraicNumber):
        return c.inverse()
    return 1 / Fraction(c)


def _scale_trunc(T, t: int):
    return INFINITY if T is INFINITY else T * t


def _mul_trunc(a: PuiseuxSeries, b: PuiseuxSeries):
    if a.T is INFINITY and b.T is INFINITY:
        return INFINITY
    cands = []
    if a.T is not INFINITY:
        cands.append(a.T + b.v)
    if b.T is not INFINITY:
        cands.append(b.T + a.v)
    return min(cands)


def _unit_nth_root(us: list, n: int, m_max: int, field: NumberField) -> list:
    """Coefficients of (1 + x)^(1/n) for the unit series us (us[0] == 1).

    Solves n*u*h' = u'*h, the principal branch with constant term 1; this
    reproduces the generalized binomial expansion in exponent 1/n.
    """
    one = Fraction(1) if field.is_rationals else field.one()
    hs = [one] + [0] * (m_max - 1)
    nz = [(j, uj) for j, uj in enumerate(us) if j and uj]
    for m in range(1, m_max):
        acc = 0
        for j, uj in nz:
            if j > m:
                break
            t = j - n * (m - j)
            if j == m:
                acc = acc + j * uj
            elif t and hs[m - j]:
                acc = acc + t * uj * hs[m - j]
        if acc:
            hs[m] = acc / Fraction(n * m)
    return hs


# ---------------------------------------------------------------------------
# module-level operation forms

def series_arith(f: PuiseuxSeries, g: PuiseuxSeries, op: str) -> PuiseuxSeries:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise InputError(f"unknown series operation {op!r}")


def series_invert(f: PuiseuxSeries, trunc_exponent=None) -> PuiseuxSeries:
    return f.invert(trunc_exponent)


def nth_root(f: PuiseuxSeries, n: int, leading_root=None, trunc_exponent=None) -> PuiseuxSeries:
    return f.nth_root(n, leading_root, trunc_exponent)


def series_derivative(f: PuiseuxSeries) -> PuiseuxSeries:
    return f.derivative()


def substitute_power(f: PuiseuxSeries, k: int) -> PuiseuxSeries:
    return f.substitute_power(k)


# ---------------------------------------------------------------------------
# formal Pochhammer-style data for the root expansion

class Pochhammer:
    """The falling product (1/n)(1/n - 1)...(1/n - m + 1), held exactly.

    Satisfies value(0) = 1 and value(m+1) = value(m) * (1/n - m).
    """

    __slots__ = ("n", "m", "value")

    def __init__(self, n: int, m: int, _value: Fraction | None = None):
        if n < 1 or m < 0:
            raise InputError("Pochhammer needs n >= 1 and m >= 0")
        self.n = n
        self.m = m
        if _value is None:
            v = Fraction(1)
            for i in range(m):
                v *= Fraction(1, n) - i
            self.value = v
        else:
            self.value = _value

    def successor(self) -> "Pochhammer":
        return Pochhammer(self.n, self.m + 1, self.value * (Fraction(1, self.n) - self.m))

    def __repr__(self):
        return f"Pochhammer(1/{self.n}, m={self.m}) = {self.value}"


def root_binomial(n: int, m: int) -> Fraction:
    """binom(1/n, m) = (1/n)_m / m!, the coefficient in the root expansion."""
    return Pochhammer(n, m).value / math.factorial(m)
