"""Dense univariate polynomials over the rationals and Sturm-based root isolation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BisectionDepthError, EndpointDegenerateError, InvalidInputError

MAX_BISECTION_DEPTH = 64
DEFAULT_WIDTH = Fraction(1, 2**20)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class UniPoly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``s**i``.

    Trailing zeros are trimmed, so the zero polynomial is ``UniPoly(())``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls([1])
        for q in roots:
            p = p * cls([-_frac(q), 1])
        return p

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return "UniPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"

    def __call__(self, x) -> Fraction:
        return self.eval(x)

    def eval(self, x) -> Fraction:
        """Exact Horner evaluation."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "UniPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "UniPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        inv_lc = 1 / other.lc
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1 - dd, -1, -1):
            q = rem[i + dd] * inv_lc
            if q:
                quot[i] = q
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return UniPoly(quot), UniPoly(rem[:dd] if dd > 0 else [])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        inv = 1 / self.lc
        return UniPoly(c * inv for c in self.coeffs)

    def primitive(self) -> "UniPoly":
        """Positive rational multiple with coprime integer coefficients."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return UniPoly(Fraction(v // g) for v in ints)

    def integer_coeffs(self) -> list[int]:
        """Integer coefficients of the primitive part (same root signs, positive scale)."""
        return [int(c) for c in self.primitive().coeffs]

    def sign_at(self, x) -> int:
        return _sign(self.eval(x))

    def sign_at_infinity(self, positive: bool = True) -> int:
        if not self.coeffs:
            return 0
        s = _sign(self.lc)
        if not positive and self.degree % 2:
            s = -s
        return s


def _as_poly(x) -> UniPoly:
    return x if isinstance(x, UniPoly) else UniPoly([x])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """``p / gcd(p, p')`` with positive-scaled primitive coefficients."""
    if not p:
        raise InvalidInputError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive() if g.degree > 0 else p.primitive()


def squarefree_decomposition(p: UniPoly) -> list[UniPoly]:
    """Yun's algorithm: ``[f_1, f_2, ...]`` with ``p = lc * prod f_i**i``, each f_i monic."""
    if not p:
        raise InvalidInputError("square-free decomposition of the zero polynomial")
    if p.degree <= 0:
        return []
    factors: list[UniPoly] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    while b.degree > 0:
        f = poly_gcd(b, d)
        factors.append(f)
        b = b // f
        c = d // f
        d = c - b.derivative()
    while factors and factors[-1].degree == 0:
        factors.pop()
    return factors


def sturm_chain(p: UniPoly, normalize: bool = True) -> list[UniPoly]:
    """Signed remainder chain ``p, p', -rem(p_{i-1}, p_i), ...``.

    With ``normalize`` each member is replaced by its primitive part, a
    positive rescaling that leaves every sign variation count unchanged.
    For a non-square-free ``p`` the chain ends at (a multiple of) ``gcd(p, p')``.
    """
    if not p:
        raise InvalidInputError("Sturm chain of the zero polynomial")
    fix = UniPoly.primitive if normalize else (lambda q: q)
    chain = [fix(p)]
    if p.degree == 0:
        return chain
    chain.append(fix(p.derivative()))
    while True:
        rem = chain[-2] % chain[-1]
        if not rem:
            break
        chain.append(fix(-rem))
    return chain


class _IntChain:
    """Sturm chain held as integer coefficient lists for fast exact sign queries."""

    def __init__(self, chain: Sequence[UniPoly]):
        self.polys = [p.integer_coeffs() for p in chain]

    def signs_at(self, x: Fraction) -> list[int]:
        a, q = x.numerator, x.denominator
        out = []
        for cs in self.polys:
            # q^deg * p(a/q) by Horner in integers
            acc = 0
            qp = 1
            for c in reversed(cs):
                acc = acc * a + c * qp
                qp *= q
            # the loop multiplied c_d by q^0, c_{d-1} by q^1, ... as required
            out.append((acc > 0) - (acc < 0))
        return out

    def signs_at_infinity(self, positive: bool) -> list[int]:
        out = []
        for cs in self.polys:
            s = (cs[-1] > 0) - (cs[-1] < 0)
            if not positive and (len(cs) - 1) % 2:
                s = -s
            out.append(s)
        return out

    def variations_at(self, x) -> int:
        return _variations(self.signs_at(Fraction(x)))


def _variations(signs: Iterable[int]) -> int:
    prev = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def sign_variations(chain: Sequence[UniPoly], x) -> int:
    """Sign variations of ``chain`` at ``x``, zeros dropped."""
    return _variations(q.sign_at(x) for q in chain)


def count_roots(p: UniPoly, lo, hi) -> int:
    """Distinct real roots of ``p`` in the open interval ``(lo, hi)``.

    Raises :class:`EndpointDegenerateError` when ``p(lo) == 0`` or ``p(hi) == 0``.
    """
    lo, hi = _frac(lo), _frac(hi)
    if not lo < hi:
        raise InvalidInputError(f"need lo < hi, got ({lo}, {hi})")
    if not p:
        raise InvalidInputError("root count of the zero polynomial")
    for end in (lo, hi):
        if p.eval(end) == 0:
            raise EndpointDegenerateError(end)
    chain = _IntChain(sturm_chain(p))
    return chain.variations_at(lo) - chain.variations_at(hi)


def count_real_roots(p: UniPoly) -> int:
    """Distinct real roots of ``p`` on the whole line."""
    if not p:
        raise InvalidInputError("root count of the zero polynomial")
    chain = _IntChain(sturm_chain(p))
    return _variations(chain.signs_at_infinity(False)) - _variations(chain.signs_at_infinity(True))


def cauchy_bound(p: UniPoly) -> Fraction:
    """``1 + max |a_i / a_n|``; every root has absolute value below it."""
    if p.degree < 1:
        return Fraction(1)
    lc = abs(p.lc)
    return 1 + max(abs(c) / lc for c in p.coeffs[:-1])


@dataclass(frozen=True)
class RootInterval:
    """Isolating interval for one distinct real root.

    When ``exact`` is true the root is ``lo == hi``; otherwise the root lies in
    the open interval ``(lo, hi)`` and is the only one there.
    """

    lo: Fraction
    hi: Fraction
    exact: bool = False
    multiplicity: int = 1

    def inside(self, lo, hi) -> bool:
        """True when both endpoints lie strictly inside ``(lo, hi)``."""
        return lo < self.lo and self.hi < hi


def dyadic_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Dyadic rational with the smallest power-of-two denominator in the middle half of ``[lo, hi]``.

    Among those, the one nearest the true midpoint. For a dyadic interval of
    width ``2^-j`` this is exactly the midpoint.
    """
    width = hi - lo
    a, b = lo + width / 4, hi - width / 4
    mid = (lo + hi) / 2
    k = 0
    while True:
        scale = 1 << k
        m_lo, m_hi = math.ceil(a * scale), math.floor(b * scale)
        if m_lo <= m_hi:
            m = min(max(round(mid * scale), m_lo), m_hi)
            return Fraction(m, scale)
        k += 1


class _Isolator:
    """Bisection driver over a square-free polynomial with cached variation counts."""

    def __init__(self, q: UniPoly):
        self.q = q
        self.chain = _IntChain(sturm_chain(q))
        self._cache: dict[Fraction, tuple[int, int]] = {}

    def probe(self, x: Fraction) -> tuple[int, int]:
        """``(variations, sign of q)`` at ``x``."""
        hit = self._cache.get(x)
        if hit is None:
            signs = self.chain.signs_at(x)
            hit = (_variations(signs), signs[0])
            self._cache[x] = hit
        return hit

    def open_count(self, lo: Fraction, hi: Fraction) -> int:
        # V(a) - V(b) counts roots in (a, b] for square-free q, even when q(a) = 0
        vlo, _ = self.probe(lo)
        vhi, shi = self.probe(hi)
        return vlo - vhi - (1 if shi == 0 else 0)

    def nudge_inward(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Move root endpoints of a one-root interval inward by ``2^-(20+attempt)``."""
        for attempt in range(200):
            if self.probe(lo)[1] != 0:
                break
            step = Fraction(1, 1 << (20 + attempt))
            cand = lo + step
            if cand < hi and self.probe(cand)[1] != 0 and self.open_count(cand, hi) == 1:
                lo = cand
                break
        for attempt in range(200):
            if self.probe(hi)[1] != 0:
                break
            step = Fraction(1, 1 << (20 + attempt))
            cand = hi - step
            if cand > lo and self.probe(cand)[1] != 0 and self.open_count(lo, cand) == 1:
                hi = cand
                break
        return lo, hi

    def isolate(self, lo: Fraction, hi: Fraction) -> list[RootInterval]:
        out: list[RootInterval] = []
        stack = [(lo, hi, self.open_count(lo, hi), 0)]
        while stack:
            a, b, k, depth = stack.pop()
            if k == 0:
                continue
            if k == 1:
                a2, b2 = self.nudge_inward(a, b)
                out.append(RootInterval(a2, b2, False))
                continue
            if depth >= MAX_BISECTION_DEPTH:
                raise BisectionDepthError(f"bisection depth {depth} exceeded on ({a}, {b})")
            m = dyadic_between(a, b)
            _, sm = self.probe(m)
            left = self.open_count(a, m)
            right = self.open_count(m, b)
            if sm == 0:
                out.append(RootInterval(m, m, True))
            # push right first so the left half is processed first
            stack.append((m, b, right, depth + 1))
            stack.append((a, m, left, depth + 1))
        out.sort(key=lambda iv: (iv.lo, iv.hi))
        return out


def isolate_roots(p: UniPoly, lo, hi, max_width=DEFAULT_WIDTH) -> list[RootInterval]:
    """Disjoint isolating intervals, one per distinct real root of ``p`` in ``(lo, hi)``.

    Bisection runs on the square-free part ``p / gcd(p, p')`` and each
    interval is then refined to width at most ``max_width`` (``None`` skips
    refinement). A dyadic midpoint that is a root yields an exact interval.
    Each interval records the multiplicity of its root in ``p``.
    """
    lo, hi = _frac(lo), _frac(hi)
    if not lo < hi:
        raise InvalidInputError(f"need lo < hi, got ({lo}, {hi})")
    if not p:
        raise InvalidInputError("root isolation of the zero polynomial")
    if p.degree < 1:
        return []
    q = squarefree_part(p)
    intervals = _Isolator(q).isolate(lo, hi)
    if max_width is not None:
        intervals = [refine_root(q, iv, max_width) for iv in intervals]
    if q.degree == p.degree:
        return intervals
    factors = squarefree_decomposition(p)
    out = []
    for iv in intervals:
        mult = 1
        for i, f in enumerate(factors, start=1):
            if f.degree < 1:
                continue
            if iv.exact:
                hit = f.eval(iv.lo) == 0
            else:
                fs = squarefree_part(f)
                hit = fs.sign_at(iv.lo) != fs.sign_at(iv.hi)
            if hit:
                mult = i
                break
        out.append(RootInterval(iv.lo, iv.hi, iv.exact, mult))
    return out


def refine_root(p: UniPoly, iv: RootInterval, max_width) -> RootInterval:
    """Shrink a non-exact interval of a simple root by sign-change bisection."""
    if iv.exact:
        return iv
    lo, hi = iv.lo, iv.hi
    slo = p.sign_at(lo)
    if slo == 0 or slo == p.sign_at(hi):
        raise InvalidInputError("refinement needs a sign change across the interval")
    max_width = _frac(max_width)
    while hi - lo > max_width:
        m = dyadic_between(lo, hi)
        sm = p.sign_at(m)
        if sm == 0:
            return RootInterval(m, m, True, iv.multiplicity)
        if sm == slo:
            lo = m
        else:
            hi = m
    return RootInterval(lo, hi, False, iv.multiplicity)
