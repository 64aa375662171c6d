"""Branch solutions of g(x, q) = 0 over Laurent-series coefficients.

The solver finds all truncated Puiseux expansions f = sum a_i q^(i/w) with
g(f(q), q) = 0.  Coefficient extraction runs on the partition-based
formula for the coefficients of g(f(q), q) (composition_coefficient); the
independent check is direct series substitution (verify_solution), so the
two routes never share code.

Driver shape: candidate leading valuations come from the lower Newton hull
of the coefficient orders; after fixing a starting root the generic fast
path solves the degree-w leading equation for the next coefficient, and
whenever that equation degenerates (the "shift" case: the candidate next
coefficient is zero) the driver re-derives the true next exponent from the
Newton polygon of the shifted problem and recurses, which terminates on a
depth budget instead of looping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    INFINITY,
    QQ,
    AlgebraicNumber,
    InputError,
    NumberField,
    Polynomial,
    PrecisionError,
    adjoin_root,
    primes_up_to,
    rational_roots,
    rational_to_str,
)
from .elliptic import Irreducible, irreducibility_certificate, _lower_hull
from .qseries import PuiseuxSeries


# ---------------------------------------------------------------------------
# partitions and the composition-coefficient formula

@dataclass(frozen=True)
class Partition:
    """Parts d_1 >= ... >= d_n >= 1 with their multiplicity profile."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(d) for d in self.parts), reverse=True))
        if any(d < 1 for d in parts):
            raise InputError("partition parts must be >= 1")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def size(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict:
        out: dict = {}
        for d in self.parts:
            out[d] = out.get(d, 0) + 1
        return out


def partition_derivative_constant(partition: Partition, M: int) -> Fraction:
    """The combinatorial constant attached to a partition in the M-th
    derivative of a composition: binom(M, d) * d!/(d_1!...d_n!) * 1/prod(#!)."""
    d = partition.total
    if d > M:
        raise InputError(f"partition total {d} exceeds M = {M}")
    value = Fraction(math.comb(M, d) * math.factorial(d))
    for di in partition.parts:
        value /= math.factorial(di)
    for mult in partition.multiplicities().values():
        value /= math.factorial(mult)
    return value


def _all_partitions(d: int):
    """All partitions of d as descending tuples (memoized)."""
    return _partitions_cached(d, d)


_PARTITION_CACHE: dict = {}


def _partitions_cached(d: int, max_part: int):
    key = (d, min(max_part, d))
    if key in _PARTITION_CACHE:
        return _PARTITION_CACHE[key]
    if d == 0:
        result = [()]
    else:
        result = []
        for first in range(min(max_part, d), 0, -1):
            for rest in _partitions_cached(d - first, first):
                result.append((first,) + rest)
    _PARTITION_CACHE[key] = result
    return result


def composition_terms(M: int):
    """Structural term list of the M-th composition coefficient.

    Yields (partition, j, n, constant): the term
    constant * h_j^{(n)}(a_0) * prod a_{d_i} with j = M - total and
    n = size; constant = 1/prod(multiplicities!).
    """
    out = []
    for d in range(M + 1):
        for parts in _all_partitions(d):
            part = Partition(parts)
            const = Fraction(1)
            for mult in part.multiplicities().values():
                const /= math.factorial(mult)
            out.append((part, M - d, part.size, const))
    return out


class _HCache:
    """Evaluations n! * [x^n] h_j and h_j^{(n)}(a0) for a coefficient list."""

    def __init__(self, gs, a0=None):
        self.gs = gs
        self.a0 = a0
        self._memo: dict = {}

    def at(self, j: int, n: int):
        key = (j, n)
        if key in self._memo:
            return self._memo[key]
        if self.a0 is None or self.a0 == 0:
            # h_j^{(n)}(0) = n! * [x^n] h_j = n! * [u^j] g_n
            if n >= len(self.gs):
                val = 0
            else:
                val = math.factorial(n) * self.gs[n].coefficient(j)
        else:
            hj = Polynomial([g.coefficient(j) for g in self.gs])
            for _ in range(n):
                hj = hj.derivative()
            val = hj(self.a0)
        self._memo[key] = val
        return val


def composition_coefficient(g: "BivariatePoly", a, M: int):
    """The M-th series coefficient of g(f(q), q) for f = sum a_i q^i,
    assembled from the partition formula (no series substitution).

    g must be normalized so its coefficient series start at order 0.
    """
    gs = g.u_aligned()
    if min((s.valuation for s in gs if not s.is_zero), default=0) < 0:
        raise InputError("composition coefficients need a normalized g (orders >= 0)")
    a = list(a)
    if len(a) < M + 1:
        raise InputError(f"need coefficients a_0..a_{M}")
    cache = _HCache(gs, a[0])
    total = 0
    N = len(gs) - 1
    for part, j, n, const in composition_terms(M):
        if n > N:
            continue
        prod = const
        skip = False
        for di in part.parts:
            if not a[di]:
                skip = True
                break
            prod = prod * a[di]
        if skip:
            continue
        hval = cache.at(j, n)
        if hval:
            total = total + prod * hval
    return total


# ---------------------------------------------------------------------------
# bivariate polynomials

class BivariatePoly:
    """g(x, q) = sum g_i(q) x^i with PuiseuxSeries coefficients.

    The x-indexed view is primary; the q-indexed polynomials h_j(x) are
    extracted on demand via coefficient lookups.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        cs = list(coefficients)
        while cs and cs[-1].is_zero and cs[-1].is_exact:
            cs.pop()
        if not cs:
            raise InputError("bivariate polynomial is identically zero")
        self.coefficients = tuple(cs)

    @property
    def x_degree(self) -> int:
        return len(self.coefficients) - 1

    @staticmethod
    def from_terms(terms, T=INFINITY) -> "BivariatePoly":
        """Build from (coefficient, x-power, q-exponent) triples."""
        by_i: dict = {}
        max_i = 0
        for c, i, j in terms:
            if i < 0:
                raise InputError("x-powers must be nonnegative")
            max_i = max(max_i, i)
            by_i.setdefault(i, {})
            e = Fraction(j)
            by_i[i][e] = by_i[i].get(e, 0) + Fraction(c)
        coeffs = []
        for i in range(max_i + 1):
            coeffs.append(PuiseuxSeries.from_terms(by_i.get(i, {}), T))
        return BivariatePoly(coeffs)

    def u_aligned(self, W: int | None = None):
        """Coefficients re-expressed with integer exponents in u = q^(1/W)."""
        if W is None:
            W = self.common_ramification()
        out = []
        for s in self.coefficients:
            if W % s.w:
                raise InputError("W must be a multiple of every coefficient ramification")
            r = s._rescaled(W // s.w)
            out.append(PuiseuxSeries(1, r.v, list(r.coeffs), r.T, r.field))
        return out

    def common_ramification(self) -> int:
        W = 1
        for s in self.coefficients:
            W = W * s.w // math.gcd(W, s.w)
        return W

    def h_poly(self, exponent) -> Polynomial:
        """h_j(x): the coefficient of q^exponent across the g_i."""
        return Polynomial([s.coefficient(exponent) for s in self.coefficients])

    def evaluate(self, f: PuiseuxSeries) -> PuiseuxSeries:
        """Direct substitution g(f(q), q) by Horner over series arithmetic."""
        acc = self.coefficients[-1]
        for s in reversed(self.coefficients[:-1]):
            acc = acc * f + s
        return acc

    def to_json(self):
        return {"coefficients": [s.to_json() for s in self.coefficients]}

    def __repr__(self):
        parts = [f"({s})*x^{i}" for i, s in enumerate(self.coefficients) if not s.is_zero]
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# normalization: candidate leading valuations

def normalize(g: BivariatePoly):
    """Candidate solution valuations Q with the rescaled problems.

    Returns [(g_normalized, Q)]: for each lower-hull edge of the points
    (i, ord_q g_i) the substitution x -> q^Q x balances at least two terms;
    g_normalized is sum g_i q^(Qi) x^i divided by the common q-power so its
    minimum coefficient order is 0.
    """
    if g.x_degree < 1:
        raise InputError("no x dependence: nothing to solve")
    pts = []
    for i, s in enumerate(g.coefficients):
        if not s.is_zero:
            pts.append((i, s.valuation))
    if len(pts) < 2:
        return []
    hull = _lower_hull(pts)
    out = []
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        Q = Fraction(v1 - v2, i2 - i1)
        shifted = [
            s * PuiseuxSeries.monomial(1, Q * i) for i, s in enumerate(g.coefficients)
        ]
        P = min(s.valuation for s in shifted if not s.is_zero)
        shifted = [s * PuiseuxSeries.monomial(1, -P) for s in shifted]
        out.append((BivariatePoly(shifted), Q))
    return out


# ---------------------------------------------------------------------------
# branch solutions

@dataclass(frozen=True)
class BranchSolution:
    """One branch f = sum_{i=0..T} a_i q^((shift_q + i)/w), a_0 != 0."""

    field: NumberField
    w: int
    shift_q: int
    coeffs: tuple
    case_trace: tuple

    def as_series(self) -> PuiseuxSeries:
        return PuiseuxSeries(
            self.w, self.shift_q, list(self.coeffs),
            self.shift_q + len(self.coeffs), self.field,
        )

    def to_json(self):
        def cjson(c):
            return rational_to_str(c) if isinstance(c, Fraction) else c.to_json()

        return {
            "w": self.w,
            "Q": rational_to_str(Fraction(self.shift_q, self.w)),
            "field": self.field.to_json(),
            "coeffs": [cjson(c) for c in self.coeffs],
            "caseTrace": list(self.case_trace),
        }


@dataclass(frozen=True)
class DeferredBranch:
    """A branch that could not be completed, with the reason."""

    reason: str
    factor: Polynomial | None
    trace: tuple

    def to_json(self):
        return {
            "reason": self.reason,
            "factor": None if self.factor is None else [str(c) for c in self.factor.coeffs],
            "trace": list(self.trace),
        }


@dataclass(frozen=True)
class SolveResult:
    branches: tuple
    deferred: tuple

    def __iter__(self):
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)

    def to_json(self):
        return {
            "v": 1,
            "branches": [b.to_json() for b in self.branches],
            "deferred": [d.to_json() for d in self.deferred],
        }


# ---------------------------------------------------------------------------
# root acquisition

_ADJUNCTION_PRIMES = tuple(primes_up_to(80))


def _poly_is_rational(poly: Polynomial) -> bool:
    return all(
        isinstance(c, Fraction) or (isinstance(c, AlgebraicNumber) and c.is_rational)
        for c in poly.coeffs
    )


def _as_rational_poly(poly: Polynomial) -> Polynomial:
    return Polynomial(
        [c if isinstance(c, Fraction) else c.as_fraction() for c in poly.coeffs]
    )


def _field_roots(poly: Polynomial, field: NumberField, hints, allow_adjoin: bool,
                 nonzero_only: bool = True):
    """Roots of poly available in (or one adjunction above) the field.

    Returns (roots, deferred_factors): roots as (value, field) pairs; each
    deferred entry is the factor whose roots were out of reach.
    """
    roots = []
    deferred = []
    work = poly
    for hint in hints:
        val = hint
        hfield = val.field if isinstance(val, AlgebraicNumber) else field
        lifted = _lift_poly(work, hfield)
        if lifted is not None and not lifted(val):
            roots.append((val, hfield))
            work = _deflate(lifted, val)
    if _poly_is_rational(work):
        rat = _as_rational_poly(work)
        for r in sorted(set(rational_roots(rat))):
            if nonzero_only and r == 0:
                continue
            roots.append((field.element(r) if not field.is_rationals else r, field))
            while rat.degree >= 1 and rat(r) == 0:
                rat = rat // Polynomial([-r, 1])
        rat = Polynomial([c for c in rat.coeffs])
        if rat.degree >= 1:
            if not field.is_rationals:
                extra, leftover = _roots_in_extension(rat, field)
                roots.extend((v, field) for v in extra)
                if leftover is not None and leftover.degree >= 1:
                    deferred.append(leftover)
            elif allow_adjoin:
                got, leftover = _roots_by_adjunction(rat)
                roots.extend(got)
                if leftover is not None:
                    deferred.append(leftover)
            else:
                deferred.append(rat)
    else:
        if work.degree >= 1:
            extra, leftover = _roots_in_extension(work, field)
            roots.extend((v, field) for v in extra)
            if leftover is not None and leftover.degree >= 1:
                deferred.append(leftover)
    if nonzero_only:
        roots = [(v, f) for v, f in roots if v != 0]
    return roots, deferred


def _lift_poly(poly: Polynomial, field: NumberField):
    if field.is_rationals:
        return poly if _poly_is_rational(poly) else None
    out = []
    for c in poly.coeffs:
        if isinstance(c, AlgebraicNumber):
            if c.field != field:
                if not c.is_rational:
                    return None
                c = field.element(c.as_fraction())
        else:
            c = field.element(c)
        out.append(c)
    return Polynomial(out)


def _deflate(poly: Polynomial, root) -> Polynomial:
    return poly // Polynomial([-root, 1])


def _roots_in_extension(poly: Polynomial, field: NumberField):
    """Roots of a poly inside an existing extension: the generator and its
    negative are tried (covering the adjunction that created the field),
    then linear quotients are peeled off exactly."""
    lifted = _lift_poly(poly, field)
    if lifted is None:
        return [], poly
    found = []
    candidates = [field.generator(), -field.generator()]
    changed = True
    while changed and lifted.degree >= 1:
        changed = False
        if lifted.degree == 1:
            root = -lifted.coeffs[0] / lifted.coeffs[1]
            found.append(root)
            lifted = Polynomial([field.one()])
            break
        for cand in candidates:
            if lifted.degree >= 1 and not lifted(cand):
                found.append(cand)
                lifted = _deflate(lifted, cand)
                changed = True
    leftover = lifted if lifted.degree >= 1 else None
    return found, leftover


def _roots_by_adjunction(rat: Polynomial):
    """Adjoin a root of the (certified irreducible) rational polynomial and
    collect every root expressible in the new field."""
    monic = rat.monic()
    if monic.degree > 3:
        cert = irreducibility_certificate(monic, _ADJUNCTION_PRIMES)
        if not isinstance(cert, Irreducible):
            return [], monic
        field = adjoin_root(QQ, monic, certified_irreducible=True)
    else:
        field = adjoin_root(QQ, monic)
    roots, leftover = _roots_in_extension(monic, field)
    return [(v, field) for v in roots], leftover


# ---------------------------------------------------------------------------
# the solver

def solve_branches(g: BivariatePoly, n_coeffs: int, root_hints=(),
                   depth_limit: int = 16) -> SolveResult:
    """All branch solutions with n_coeffs + 1 coefficients each.

    Roots of the leading equations are taken from the rationals, from one
    certified adjunction per branch, or from root_hints; anything beyond
    that is reported in SolveResult.deferred with the blocking factor.
    """
    if n_coeffs < 0:
        raise InputError("need a nonnegative coefficient count")
    branches = []
    deferred = []
    for gbar, Q in normalize(g):
        W = gbar.common_ramification()
        gs = gbar.u_aligned(W)
        budget = (n_coeffs + 1) * W
        avail = min((s.T for s in gs if not s.is_exact), default=INFINITY)
        if budget > avail:
            raise PrecisionError(
                f"requested {n_coeffs} coefficients but input truncation only "
                f"supports {avail // W - 1}"
            )
        h0 = Polynomial([s.coefficient(0) for s in gs])
        roots, defer0 = _field_roots(h0, _field_of(gs), root_hints, allow_adjoin=True)
        deferred.extend(
            DeferredBranch("starting coefficient needs a field extension", f, ())
            for f in defer0
        )
        for a0, field in roots:
            shifted = _shift_scale(gs, a0, 0, field)
            tails, tdef = _tail_solutions(shifted, field, budget, depth_limit, (),
                                          root_hints)
            deferred.extend(tdef)
            for tail, trace in tails:
                inner = tail + a0
                f = PuiseuxSeries.monomial(1, Q) * _from_u(inner, W)
                branches.append(_package(f, n_coeffs, field, trace))
    return SolveResult(tuple(branches), tuple(deferred))


def verify_solution(g: BivariatePoly, branch: BranchSolution) -> PuiseuxSeries:
    """Residual g(f(q), q) by direct series substitution (the route
    independent of the partition-formula solver)."""
    return g.evaluate(branch.as_series())


def _field_of(gs) -> NumberField:
    for s in gs:
        if not s.field.is_rationals:
            return s.field
    return QQ


def _from_u(s: PuiseuxSeries, W: int) -> PuiseuxSeries:
    return PuiseuxSeries(s.w * W, s.v, list(s.coeffs), s.T, s.field)


def _package(f: PuiseuxSeries, n_coeffs: int, field: NumberField, trace) -> BranchSolution:
    zero = Fraction(0) if field.is_rationals else field.zero()
    coeffs = tuple(
        f.coeffs[k] if k < len(f.coeffs) else zero for k in range(n_coeffs + 1)
    )
    return BranchSolution(field, f.w, f.v, coeffs, tuple(trace))


def _shift_scale(gs, a0, lam: int, field: NumberField):
    """Substitute x = u^lam * (a0 + x'): new coefficient series list."""
    N = len(gs) - 1
    lifted = [s.lifted(field) if s.field != field else s for s in gs]
    if lam:
        lifted = [s * PuiseuxSeries.monomial(1, lam * i) for i, s in enumerate(lifted)]
    if not a0:
        return lifted
    out = []
    for k in range(N + 1):
        acc = lifted[k]
        for i in range(k + 1, N + 1):
            if lifted[i].is_zero:
                continue
            acc = acc + math.comb(i, k) * a0 ** (i - k) * lifted[i]
        out.append(acc)
    return out


def _normalize_min_order(gs):
    """Divide out the common power of u; returns (gs, dropped_order)."""
    vals = [s.valuation for s in gs if not s.is_zero]
    if not vals:
        raise InputError("problem degenerated to 0 = 0: solutions undetermined")
    ell = min(vals)
    if ell == 0:
        return gs, 0
    shift = PuiseuxSeries.monomial(1, -ell)
    return [s * shift for s in gs], ell


def _tail_solutions(gs, field: NumberField, budget: int, depth: int, trace, hints=()):
    """Solutions z with ord(z) > 0 of g(z, u) = 0, to order `budget`.

    Returns ([(tail_series, trace)], [DeferredBranch]).
    """
    gs, _ = _normalize_min_order(gs)
    if budget < 1:
        return [(PuiseuxSeries.zero(1, field), trace)], []
    h0 = Polynomial([s.coefficient(0) for s in gs])
    w0 = 0
    while w0 < len(h0.coeffs) and not h0.coeffs[w0]:
        w0 += 1
    results = []
    deferred = []
    g0_zero = gs[0].is_zero
    if w0 == 0:
        return [], []
    if w0 == 1:
        if g0_zero:
            results.append((PuiseuxSeries.zero(gs[0].T, field), trace))
        else:
            tail = _regular_tail(gs, field, budget)
            results.append((tail, trace))
        return results, deferred
    if depth <= 0:
        return results, [DeferredBranch("depth budget exhausted", None, trace)]
    if g0_zero:
        results.append((PuiseuxSeries.zero(gs[0].T, field), trace))
    # generic fast-path probe: with ramification w0 the leading equation is
    # a_1^w0 = -w0! h_1(0)/h_0^(w0)(0); a zero right side is the shift case
    probe = gs[0].coefficient(1) if not g0_zero else 0
    pts = [(i, int(s.valuation)) for i, s in enumerate(gs) if not s.is_zero]
    hull = _lower_hull(pts)
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        lam = Fraction(v1 - v2, i2 - i1)
        if lam <= 0:
            continue
        edge_pts = [
            (i, v) for i, v in pts
            if (v - v1) * (i2 - i1) == (v2 - v1) * (i - i1) and i1 <= i <= i2
        ]
        phi = _edge_polynomial(gs, edge_pts, i1)
        if lam == Fraction(1, w0) and probe:
            event = {"event": "case1", "w": w0, "lambda": str(lam)}
        elif w0 > 1 and not probe:
            event = {"event": "case2", "w": w0, "lambda": str(lam)}
        else:
            event = {"event": "newton-step", "w": w0, "lambda": str(lam)}
        roots, defer0 = _field_roots(phi, field, hints, allow_adjoin=field.is_rationals)
        deferred.extend(
            DeferredBranch("edge coefficient needs a field extension", f,
                           trace + (event,))
            for f in defer0
        )
        t = lam.denominator
        s_exp = lam.numerator
        for c, field2 in roots:
            g2 = gs if t == 1 else [s.substitute_power(t) for s in gs]
            b2 = budget * t
            shifted = _shift_scale(g2, c, s_exp, field2)
            subtails, subdef = _tail_solutions(
                shifted, field2, b2 - s_exp, depth - 1, trace + (event,), hints
            )
            deferred.extend(subdef)
            for tail2, tr in subtails:
                tail = PuiseuxSeries.monomial(1, s_exp) * (tail2 + c)
                if t > 1:
                    tail = tail._with_w_scaled(t)
                results.append((tail, tr))
    return results, deferred


def _edge_polynomial(gs, edge_pts, i_base: int) -> Polynomial:
    coeffs: dict = {}
    for i, v in edge_pts:
        coeffs[i - i_base] = gs[i].coefficient(Fraction(v, gs[i].w))
    top = max(coeffs)
    return Polynomial([coeffs.get(k, 0) for k in range(top + 1)])


def _regular_tail(gs, field: NumberField, budget: int) -> PuiseuxSeries:
    """Fill a_1..a_(budget-1) linearly: the unknown a_m enters the m-th
    composition coefficient only through a_m * h_0'(0)."""
    N = len(gs) - 1
    cache = _HCache(gs)
    slope = cache.at(0, 1)
    if not slope:
        raise InputError("regular solve called with a degenerate linear term")
    inv_slope = _inv(slope)
    coeffs = [0] * budget  # a_0 = 0: solving for the positive-order tail
    support = []  # ascending part values with nonzero a
    for m in range(1, budget):
        residual = cache.at(m, 0)
        residual = residual + _partition_sum(cache, coeffs, support, m, N)
        if residual:
            am = -residual * inv_slope
            coeffs[m] = am
            support.append(m)
    return PuiseuxSeries(1, 0, coeffs, budget, field)


def _partition_sum(cache: _HCache, a, support, m: int, N: int):
    """Sum over partitions of d <= m with parts in `support` (all < m) and
    at most N parts (higher derivatives of degree-N polynomials vanish)."""
    total = 0
    # iterative enumeration of part multisets drawn from support (descending)
    stack = [(len(support) - 1, m, 0, 1, ())]
    while stack:
        idx, remaining, count, prod, parts = stack.pop()
        if parts:
            n = count
            if n <= N:
                # cache.at already carries the n! of the n-th derivative
                hval = cache.at(remaining, n)
                if hval:
                    const = Fraction(1)
                    mult: dict = {}
                    for di in parts:
                        mult[di] = mult.get(di, 0) + 1
                    for v in mult.values():
                        const /= math.factorial(v)
                    total = total + const * prod * hval
        if idx < 0 or count >= N:
            continue
        for k in range(idx, -1, -1):
            part = support[k]
            if part <= remaining:
                stack.append((k, remaining - part, count + 1,
                              prod * a[part], parts + (part,)))
    return total


def _inv(val):
    if isinstance(val, AlgebraicNumber):
        return val.inverse()
    return 1 / Fraction(val)
