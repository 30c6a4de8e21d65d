"""Exact integer polynomial arithmetic, reciprocal structure and Sturm root counting.

Coefficients are stored in ascending order: ``coeffs[i]`` multiplies ``t**i``.
Rationals are ``fractions.Fraction`` throughout; nothing in this module
touches floating point.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

from sympy import divisors, totient

from ..errors import InputError, NotReciprocalError, RootIsolationError
from ..utils.logger import get_logger

logger = get_logger()


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class IntPoly:
    """Dense polynomial with arbitrary-precision integer coefficients."""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        values = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise InputError(f"Non-integer coefficient {c}")
                c = c.numerator
            elif not isinstance(c, int) or isinstance(c, bool):
                if hasattr(c, '__index__'):
                    c = c.__index__()
                else:
                    raise InputError(f"Non-integer coefficient {c!r}")
            values.append(int(c))
        object.__setattr__(self, 'coeffs', tuple(_trim(values)))

    # --- construction ---
    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> 'IntPoly':
        """Build from the human order: leading coefficient first."""
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def constant(cls, c: int) -> 'IntPoly':
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> 'IntPoly':
        return cls((0,) * degree + (c,))

    # --- basic properties ---
    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def descending(self) -> List[int]:
        return list(reversed(self.coeffs))

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # --- arithmetic ---
    def __add__(self, other: 'IntPoly') -> 'IntPoly':
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> 'IntPoly':
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: 'IntPoly') -> 'IntPoly':
        return self + (-other)

    def __mul__(self, other) -> 'IntPoly':
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'IntPoly':
        result = IntPoly((1,))
        for _ in range(k):
            result = result * self
        return result

    def divmod_monic(self, divisor: 'IntPoly') -> Tuple['IntPoly', 'IntPoly']:
        """Integer long division by a divisor with leading coefficient +-1."""
        if divisor.leading not in (1, -1):
            raise InputError("divmod_monic needs a divisor with unit leading coefficient")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPoly(), self
        quot = [0] * (len(rem) - dd)
        lead = divisor.leading
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] * lead
            quot[k] = q
            if q:
                for i, c in enumerate(divisor.coeffs):
                    rem[k + i] -= q * c
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[:dd]))

    def exact_div(self, divisor: 'IntPoly') -> 'IntPoly':
        """Exact quotient over Z; raises if the division leaves a remainder."""
        quot, rem = _q_divmod(_to_q(self), _to_q(divisor))
        if _q_trim(rem):
            raise InputError(f"{divisor} does not divide {self}")
        return IntPoly(tuple(quot))

    def derivative(self) -> 'IntPoly':
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def reversed_poly(self) -> 'IntPoly':
        """t^deg * p(1/t)."""
        return IntPoly(tuple(reversed(self.coeffs)))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> 'IntPoly':
        """Divide by the content and make the leading coefficient positive."""
        g = self.content()
        if g == 0:
            return self
        if self.leading < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def multiplicity_at(self, r: int) -> int:
        """Multiplicity of the integer root t = r."""
        if self.is_zero:
            return 0
        linear = IntPoly((-r, 1))
        p, k = self, 0
        while p.degree >= 1 and p(r) == 0:
            p, _ = p.divmod_monic(linear)
            k += 1
        return k

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ('' if mag == 1 else str(mag)) + ('t' if i == 1 else f't^{i}')
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class RatInterval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'lo', Fraction(self.lo))
        object.__setattr__(self, 'hi', Fraction(self.hi))
        if self.lo > self.hi:
            raise InputError(f"Empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self) -> float:
        return float(self.midpoint)

    def __str__(self) -> str:
        return f"[{float(self.lo):.15g}, {float(self.hi):.15g}]"


@dataclass(frozen=True)
class RootLocationReport:
    """Where the roots of a reciprocal polynomial lie, counted with multiplicity.

    Real roots come in reciprocal pairs, so ``n_real_in_0_1`` always equals
    ``n_real_gt1`` and ``n_real_in_minus1_0`` equals ``n_real_lt_minus1``.
    ``n_on_circle`` counts non-real unit-circle roots; t = 1 and t = -1 are
    reported in ``at_one`` and ``at_minus_one``.
    """

    n_real_gt1: int
    n_real_in_0_1: int
    n_real_lt_minus1: int
    n_real_in_minus1_0: int
    n_on_circle: int
    n_complex_off_circle: int
    at_one: int
    at_minus_one: int

    @property
    def total(self) -> int:
        return (self.n_real_gt1 + self.n_real_in_0_1 + self.n_real_lt_minus1
                + self.n_real_in_minus1_0 + self.n_on_circle
                + self.n_complex_off_circle + self.at_one + self.at_minus_one)

    @property
    def n_off_circle(self) -> int:
        return self.total - self.n_on_circle - self.at_one - self.at_minus_one


# --- rational helpers (lists of Fractions, ascending) ---

def _to_q(p: IntPoly) -> List[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _q_trim(a):
    return _trim(a)


def _q_divmod(a, b):
    a, b = _q_trim(a), _q_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - db)
    lead = b[-1]
    for k in range(len(rem) - 1 - db, -1, -1):
        q = Fraction(rem[k + db]) / lead
        quot[k] = q
        if q:
            for i, c in enumerate(b):
                rem[k + i] -= q * c
    return _q_trim(quot), _q_trim(rem[:db])


def _q_monic(a):
    a = _q_trim(a)
    if not a:
        return a
    lead = a[-1]
    return [Fraction(c) / lead for c in a]


def _q_gcd(a, b):
    a, b = _q_trim(a), _q_trim(b)
    while b:
        _, r = _q_divmod(a, b)
        a, b = b, r
    return _q_monic(a)


def _q_derivative(a):
    return _q_trim([i * c for i, c in enumerate(a) if i > 0])


def _q_sub(a, b):
    n = max(len(a), len(b))
    return _q_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _scaled_integer(a, keep_sign: bool = True) -> IntPoly:
    """Clear denominators with a positive factor and divide out the content.

    With keep_sign the result differs from ``a`` by a positive rational factor,
    which is what Sturm chains need.
    """
    a = _q_trim(a)
    if not a:
        return IntPoly()
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if not keep_sign and ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly(tuple(ints))


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Greatest common divisor as a primitive polynomial with positive leading coefficient."""
    return _scaled_integer(_q_gcd(_to_q(p), _to_q(q)), keep_sign=False)


def squarefree_part(p: IntPoly) -> IntPoly:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.degree < 1:
        return p.primitive() if not p.is_zero else p
    g = _q_gcd(_to_q(p), _q_derivative(_to_q(p)))
    quot, _ = _q_divmod(_to_q(p), g)
    return _scaled_integer(quot, keep_sign=False)


def squarefree_decomposition(p: IntPoly) -> List[Tuple[IntPoly, int]]:
    """Yun's algorithm: pairwise coprime squarefree factors with multiplicities.

    Constant factors are dropped; each returned factor is primitive with a
    positive leading coefficient.
    """
    if p.degree < 1:
        return []
    f = _to_q(p)
    df = _q_derivative(f)
    a = _q_gcd(f, df)
    b, _ = _q_divmod(f, a)
    c, _ = _q_divmod(df, a)
    d = _q_sub(c, _q_derivative(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _q_gcd(b, d)
        if len(a) > 1:
            out.append((_scaled_integer(a, keep_sign=False), i))
        b, _ = _q_divmod(b, a)
        c, _ = _q_divmod(d, a)
        d = _q_sub(c, _q_derivative(b))
        i += 1
    return out


def cauchy_bound(p: IntPoly) -> Fraction:
    """Every complex root of p has modulus strictly below this bound."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + max(Fraction(abs(c), lead) for c in p.coeffs[:-1])


def sqrt_bracket(q, tol) -> RatInterval:
    """Interval of width <= tol around sqrt(q), rounded outward exactly."""
    q, tol = Fraction(q), Fraction(tol)
    if q < 0:
        raise InputError(f"sqrt of negative rational {q}")
    k = 0
    while Fraction(1, 2 ** k) > tol:
        k += 1
    scale = 4 ** k
    s = isqrt(q.numerator * scale // q.denominator)
    lo = Fraction(s, 2 ** k)
    if lo * lo == q:
        return RatInterval(lo, lo)
    return RatInterval(lo, Fraction(s + 1, 2 ** k))


def exact_square_root(v) -> Optional[int]:
    """Nonnegative integer r with r*r == v, or None."""
    v = Fraction(v)
    if v < 0 or v.denominator != 1:
        return None
    r = isqrt(v.numerator)
    return r if r * r == v.numerator else None


# --- the module operations ---

def eval_poly(p: IntPoly, x) -> Fraction:
    """Exact value of p at a rational point."""
    return Fraction(p(Fraction(x)))


def is_monic_reciprocal(p: IntPoly) -> bool:
    """Leading coefficient 1 and palindromic coefficients."""
    if p.is_zero:
        raise InputError("The zero polynomial is neither monic nor reciprocal")
    return p.leading == 1 and is_palindromic(p)


def is_palindromic(p: IntPoly) -> bool:
    return p.coeffs == tuple(reversed(p.coeffs))


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by exact division of t^n - 1."""
    if n < 1:
        raise InputError(f"Cyclotomic index must be positive, got {n}")
    result = IntPoly((-1,) + (0,) * (n - 1) + (1,))
    for d in divisors(n):
        if d < n:
            result, rem = result.divmod_monic(cyclotomic(d))
            assert rem.is_zero
    return result


@lru_cache(maxsize=None)
def cyclotomic_indices(max_degree: int) -> Tuple[int, ...]:
    """All n with phi(n) <= max_degree, scanning n <= 2 * max_degree^2."""
    if max_degree < 1:
        return ()
    limit = max(2, 2 * max_degree * max_degree)
    return tuple(n for n in range(1, limit + 1) if int(totient(n)) <= max_degree)


def strip_cyclotomic_factors(p: IntPoly) -> Tuple[IntPoly, List[Tuple[int, int]]]:
    """Divide out every cyclotomic factor of a monic polynomial.

    Returns the core and the list of (n, multiplicity), ascending in n.
    """
    if p.leading != 1:
        raise InputError(f"strip_cyclotomic_factors needs a monic polynomial, got {p}")
    core = p
    factors = []
    for n in cyclotomic_indices(p.degree):
        phi = cyclotomic(n)
        if phi.degree > core.degree:
            continue
        mult = 0
        while core.degree >= phi.degree:
            quot, rem = core.divmod_monic(phi)
            if not rem.is_zero:
                break
            core = quot
            mult += 1
        if mult:
            factors.append((n, mult))
    return core, factors


def _dickson(k: int) -> IntPoly:
    """D_k with t^k + t^-k = D_k(t + 1/t), for k >= 1."""
    prev, cur = IntPoly((2,)), IntPoly((0, 1))
    for _ in range(k - 1):
        prev, cur = cur, IntPoly((0, 1)) * cur - prev
    return cur


def expand_trace(R: IntPoly, half_degree: int) -> IntPoly:
    """t^half_degree * R(t + 1/t), expanded as an ordinary polynomial."""
    total = IntPoly()
    shift = IntPoly((1, 0, 1))
    for j, r in enumerate(R.coeffs):
        if r:
            total = total + (shift ** j) * IntPoly.monomial(half_degree - j, r)
    return total


def trace_poly(S: IntPoly) -> IntPoly:
    """R of degree d/2 with t^(d/2) R(t + 1/t) = S(t)."""
    if S.is_zero or not is_palindromic(S):
        raise NotReciprocalError(f"trace_poly needs a reciprocal polynomial, got {S}")
    if S.degree % 2:
        raise NotReciprocalError(f"trace_poly needs even degree, got degree {S.degree}")
    n = S.degree // 2
    R = IntPoly((S.coeffs[n],))
    for k in range(1, n + 1):
        if S.coeffs[n + k]:
            R = R + _dickson(k) * S.coeffs[n + k]
    if expand_trace(R, n) != S:
        raise ArithmeticError(f"trace polynomial round trip failed for {S}")
    return R


def sturm_sequence(p: IntPoly) -> List[IntPoly]:
    """Sturm chain of p, each member scaled by a positive rational to a primitive integer polynomial."""
    seq = [p, p.derivative()]
    if seq[-1].is_zero:
        return seq[:1]
    while True:
        _, rem = _q_divmod(_to_q(seq[-2]), _to_q(seq[-1]))
        if not rem:
            break
        seq.append(-_scaled_integer(rem))
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_changes(signs) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def _variations(seq: List[IntPoly], x: Optional[Fraction], at_minus_inf: bool = False) -> int:
    if x is None:
        if at_minus_inf:
            return _sign_changes([_sign(q.leading) * (-1) ** q.degree for q in seq])
        return _sign_changes([_sign(q.leading) for q in seq])
    return _sign_changes([_sign(q(x)) for q in seq])


def sturm_count(p: IntPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    ``None`` stands for -infinity (lo) or +infinity (hi).
    """
    if p.is_zero:
        raise InputError("sturm_count of the zero polynomial")
    q = squarefree_part(p)
    if q.degree < 1:
        return 0
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo is not None and hi is not None and lo >= hi:
        return 0
    seq = sturm_sequence(q)
    count = _variations(seq, lo, at_minus_inf=True) - _variations(seq, hi)
    if hi is not None and q(hi) == 0:
        count -= 1
    return count


def count_roots(p: IntPoly, lo=None, hi=None) -> int:
    """Real roots of p in (lo, hi) counted with multiplicity."""
    return sum(k * sturm_count(f, lo, hi) for f, k in squarefree_decomposition(p))


def root_locations(S: IntPoly) -> RootLocationReport:
    """Locate the roots of an even-degree reciprocal polynomial via its trace polynomial."""
    R = trace_poly(S)
    gt1 = lt_m1 = circle = cplx = at_one = at_m1 = 0
    for f, k in squarefree_decomposition(R):
        above = sturm_count(f, 2, None)
        below = sturm_count(f, None, -2)
        inside = sturm_count(f, -2, 2)
        hits_two = 1 if f(2) == 0 else 0
        hits_minus_two = 1 if f(-2) == 0 else 0
        complex_roots = f.degree - above - below - inside - hits_two - hits_minus_two
        gt1 += k * above
        lt_m1 += k * below
        circle += 2 * k * inside
        cplx += 2 * k * complex_roots
        at_one += 2 * k * hits_two
        at_m1 += 2 * k * hits_minus_two
    report = RootLocationReport(
        n_real_gt1=gt1, n_real_in_0_1=gt1,
        n_real_lt_minus1=lt_m1, n_real_in_minus1_0=lt_m1,
        n_on_circle=circle, n_complex_off_circle=cplx,
        at_one=at_one, at_minus_one=at_m1,
    )
    assert report.total == S.degree, f"root counts {report.total} != degree {S.degree}"
    return report


def refine_root(p: IntPoly, bracket: RatInterval, tol) -> RatInterval:
    """Bisect a sign-changing bracket down to width <= tol."""
    tol = Fraction(tol)
    if tol <= 0:
        raise InputError(f"Tolerance must be positive, got {tol}")
    lo, hi = bracket.lo, bracket.hi
    s_lo, s_hi = _sign(p(lo)), _sign(p(hi))
    if s_lo == 0:
        return RatInterval(lo, lo)
    if s_hi == 0:
        return RatInterval(hi, hi)
    if s_lo == s_hi:
        raise RootIsolationError(f"No sign change of {p} on {bracket}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s_mid = _sign(p(mid))
        if s_mid == 0:
            return RatInterval(mid, mid)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return RatInterval(lo, hi)


def _tighten_open_bracket(q: IntPoly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Move endpoints that are roots of q inward, keeping the single interior root."""
    if q(lo) == 0:
        step = (hi - lo) / 2
        while q(lo + step) == 0 or sturm_count(q, lo + step, hi) != 1:
            step /= 2
        lo = lo + step
    if q(hi) == 0:
        step = (hi - lo) / 2
        while q(hi - step) == 0 or sturm_count(q, lo, hi - step) != 1:
            step /= 2
        hi = hi - step
    return lo, hi


def isolate_real_roots(p: IntPoly, lo=None, hi=None, tol=Fraction(1, 10 ** 12)) -> List[RatInterval]:
    """Brackets of width <= tol around each distinct real root of p in (lo, hi), ascending."""
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    bound = cauchy_bound(q) + 1
    lo = -bound if lo is None else max(Fraction(lo), -bound)
    hi = bound if hi is None else min(Fraction(hi), bound)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = sturm_count(q, a, b)
        if n == 0:
            continue
        if n == 1:
            a, b = _tighten_open_bracket(q, a, b)
            out.append(refine_root(q, RatInterval(a, b), tol))
            continue
        mid = (a + b) / 2
        if q(mid) == 0:
            out.append(RatInterval(mid, mid))
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(out, key=lambda iv: iv.lo)
