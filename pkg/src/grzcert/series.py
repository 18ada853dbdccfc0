"""Truncated formal power series, dense univariate and sparse multivariate.

The inversion routines here are recurrence-based and know nothing about the
closed-form block formulas in :mod:`grzcert.grz`; they serve as the
independent oracle those formulas are checked against.

Multivariate terms are ordered *graded reverse-lexicographically*: total
degree ascending, then exponent vectors in descending lexicographic order,
so ``(2, 1)`` precedes ``(1, 2)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import limits
from .errors import InvalidInputError, InvalidParameterError, NotInvertibleError
from .exact import binomial, factorial
from .unipoly import UniPoly

ExponentVector = tuple  # tuple[int, ...] of fixed length r


def graded_key(beta: Sequence[int]) -> tuple:
    return (sum(beta), tuple(-b for b in beta))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of length ``parts`` and degree ``total``, descending lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def monomial_count(r: int, degree: int) -> int:
    """Number of exponent vectors in ``r`` variables with total degree ``<= degree``."""
    return binomial(degree + r, r)


class UniSeries:
    """Dense truncated series ``c_0 + c_1 t + ... + c_N t^N``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise InvalidParameterError("series order must be >= 0")
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        self.order = order
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    def __getitem__(self, m: int) -> Fraction:
        return self.coeffs[m]

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if isinstance(other, UniSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self) -> str:
        return f"UniSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def __mul__(self, other) -> "UniSeries":
        if isinstance(other, UniPoly):
            other = UniSeries(other.coeffs or [0], self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return UniSeries(out, n)


def uni_inverse(denom: UniPoly, order: int) -> UniSeries:
    """``1 / denom`` to ``t^order`` via ``c_m = -(1/d_0) * sum_{j>=1} d_j c_{m-j}``."""
    if order < 0:
        raise InvalidParameterError("series order must be >= 0")
    d = denom.coeffs
    if not d or d[0] == 0:
        raise NotInvertibleError("denominator has zero constant term")
    inv0 = 1 / d[0]
    c = [inv0]
    top = len(d) - 1
    for m in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, min(m, top) + 1):
            if d[j]:
                acc += d[j] * c[m - j]
        c.append(-acc * inv0)
    return UniSeries(c, order)


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables: exponent tuple -> nonzero rational."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean: dict[tuple, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise InvalidInputError(f"exponent {e} has length != {nvars}")
            if c:
                clean[tuple(e)] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def e1(cls, r: int) -> "MultiPoly":
        """``t_1 + ... + t_r``."""
        return cls(r, {tuple(int(j == i) for j in range(r)): 1 for i in range(r)})

    @classmethod
    def er(cls, r: int) -> "MultiPoly":
        """``t_1 * ... * t_r``."""
        return cls(r, {(1,) * r: 1})

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise InvalidInputError("variable count mismatch")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: graded_key(kv[0]))
        return f"MultiPoly({self.nvars}, {{{', '.join(f'{e}: {c}' for e, c in items)}}})"

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._lift(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def coefficient(self, beta: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(beta), Fraction(0))


class MultiSeries:
    """Sparse series in ``r`` variables truncated at total degree ``max_total_degree``.

    Only nonzero coefficients are stored; an absent exponent with degree
    ``<= max_total_degree`` has coefficient exactly zero.
    """

    __slots__ = ("r", "max_total_degree", "terms")

    def __init__(self, r: int, max_total_degree: int, terms: Mapping[tuple, object]):
        self.r = r
        self.max_total_degree = max_total_degree
        clean: dict[tuple, object] = {}
        for e, c in terms.items():
            if len(e) != r or sum(e) > max_total_degree:
                raise InvalidInputError(f"exponent {e} outside ({r} vars, degree <= {max_total_degree})")
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiSeries):
            return (self.r, self.max_total_degree, self.terms) == (
                other.r, other.max_total_degree, other.terms)
        return NotImplemented

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, beta: Sequence[int]) -> Fraction:
        beta = tuple(beta)
        if len(beta) != self.r or sum(beta) > self.max_total_degree:
            raise InvalidInputError(f"exponent {beta} outside the truncation")
        return Fraction(self.terms.get(beta, 0))

    def items(self) -> list[tuple[tuple, Fraction]]:
        """Stored terms in graded reverse-lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: graded_key(kv[0]))

    def graded_slice(self, degree: int) -> dict[tuple, object]:
        return {e: c for e, c in self.terms.items() if sum(e) == degree}

    def collapse(self) -> UniSeries:
        """Image under ``t_i -> t``: coefficient sums per total degree."""
        out = [Fraction(0)] * (self.max_total_degree + 1)
        for e, c in self.terms.items():
            out[sum(e)] += c
        return UniSeries(out, self.max_total_degree)

    def truncate(self, degree: int) -> "MultiSeries":
        return MultiSeries(self.r, degree, {e: c for e, c in self.terms.items() if sum(e) <= degree})

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        if other.r != self.r:
            raise InvalidInputError("variable count mismatch")
        top = min(self.max_total_degree, other.max_total_degree)
        out: dict[tuple, object] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > top:
                continue
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > top:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiSeries(self.r, top, out)

    @classmethod
    def from_poly(cls, p: MultiPoly, max_total_degree: int) -> "MultiSeries":
        return cls(p.nvars, max_total_degree,
                   {e: c for e, c in p.terms.items() if sum(e) <= max_total_degree})


def multi_inverse_grz(r: int, D: int, *, max_monomials: int | None = None,
                      force: bool = False) -> MultiSeries:
    """Expansion of ``1 / (1 - sum t_i + r! prod t_i)`` through total degree ``D``.

    Uses ``c_0 = 1`` and ``c_b = sum_i c_{b - e_i} - r! c_{b - 1}``, reading
    coefficients at exponents with a negative entry as zero. Coefficients are
    integers and are stored as ``int``.
    """
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    if D < 0:
        raise InvalidParameterError(f"degree must be >= 0, got {D}")
    limits.check("max-monomials", monomial_count(r, D), limits.max_monomials(max_monomials), force)

    fact = factorial(r)
    coeffs: dict[tuple, int] = {(0,) * r: 1}
    for d in range(1, D + 1):
        for beta in compositions(d, r):
            acc = 0
            lst = list(beta)
            for i in range(r):
                if lst[i]:
                    lst[i] -= 1
                    acc += coeffs[tuple(lst)]
                    lst[i] += 1
            if d >= r and min(beta) >= 1:
                acc -= fact * coeffs[tuple(b - 1 for b in beta)]
            coeffs[beta] = acc
    return MultiSeries(r, D, coeffs)


def min_coefficient(s: MultiSeries) -> tuple[Fraction, tuple]:
    """Minimum stored coefficient and the first exponent attaining it in graded order."""
    if not s.terms:
        raise InvalidInputError("minimum of an empty series")
    best_val = None
    best_key = None
    best_exp = None
    for e, c in s.terms.items():
        key = graded_key(e)
        if best_val is None or c < best_val or (c == best_val and key < best_key):
            best_val, best_key, best_exp = c, key, e
    return Fraction(best_val), best_exp
