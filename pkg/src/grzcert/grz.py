"""Block formulas and checks for the Gillis-Reznick-Zeilberger rational function.

With ``a = e_1`` and ``b = r! e_r`` the degree ``n*r + l`` part of
``1 / (1 - a + b)`` is

    a^l * sum_k (-1)^k C(r(n-k)+k+l, k) a^(r(n-k)) b^k,

and the roots of the companion polynomial

    h(s) = sum_k (-1)^k C(r(n-k)+k+l, k) s^(n-k)

control how that block factors into terms ``e_1^r - alpha * e_r``.
Every coefficient below is computed in closed form from multinomials; the
recurrence oracles live in :mod:`grzcert.series`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import limits
from .errors import (
    EndpointDegenerateError,
    HypothesisViolatedError,
    InvalidInputError,
    InvalidParameterError,
)
from .exact import (
    binomial,
    elementary_symmetric,
    factorial,
    multinomial,
    orbit_size,
    paper_constants,
    partition_count,
    partitions,
    root_bound,
)
from .series import MultiPoly, uni_inverse
from .unipoly import (
    RootInterval,
    UniPoly,
    cauchy_bound,
    count_roots,
    isolate_roots,
    refine_root,
    squarefree_part,
)

PASS, FAIL, FLAGGED = "pass", "fail", "flagged"


@dataclass(frozen=True, order=True)
class BlockId:
    r: int
    n: int
    l: int

    def __post_init__(self):
        if self.r < 2:
            raise InvalidParameterError(f"r must be >= 2, got {self.r}")
        if self.n < 0:
            raise InvalidParameterError(f"n must be >= 0, got {self.n}")
        if not 0 <= self.l < self.r:
            raise InvalidParameterError(f"l must lie in 0..{self.r - 1}, got {self.l}")

    @property
    def degree(self) -> int:
        return self.n * self.r + self.l

    @classmethod
    def from_degree(cls, r: int, d: int) -> "BlockId":
        return cls(r, d // r, d % r)


@dataclass
class CertReport:
    """Outcome of one check.

    ``witness`` is an exponent tuple, a list of :class:`RootInterval`, or a
    rational; it is always set when ``status`` is ``"fail"``. ``value`` holds
    the extremal coefficient of a scan when there is one.
    """

    check_name: str
    params: dict = field(default_factory=dict)
    status: str = PASS
    witness: object = None
    value: Fraction | None = None
    notes: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL, FLAGGED):
            raise InvalidInputError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise InvalidInputError(f"failed report {self.check_name} lacks a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS


# -- h(s) and the univariate closed form -------------------------------------

def h_coefficient(r: int, n: int, l: int, k: int) -> int:
    """Signed coefficient of ``s^(n-k)`` in ``h``."""
    return (-1) ** k * binomial(r * (n - k) + k + l, k)


def build_h(bid: BlockId) -> UniPoly:
    r, n, l = bid.r, bid.n, bid.l
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = h_coefficient(r, n, l, k)
    return UniPoly(coeffs)


def lemma1_coefficient(bid: BlockId, a, b) -> Fraction:
    """Coefficient of ``t^(n*r+l)`` in ``1 / (1 - a t + b t^r)`` from the closed form."""
    r, n, l = bid.r, bid.n, bid.l
    a, b = Fraction(a), Fraction(b)
    total = Fraction(0)
    for k in range(n + 1):
        total += h_coefficient(r, n, l, k) * a ** (r * (n - k)) * b**k
    return a**l * total


# -- the univariate positivity lemma -----------------------------------------

def verify_lemma2_identity(r: int, b=None) -> CertReport:
    """Check ``g(t) - g(u) == (u - t) * (r - b * sum_k u^k t^(r-1-k))`` symbolically.

    ``g(t) = 1 - r t + b t^r``. Variables are ``(t, u)``; when ``b`` is None it
    becomes a third formal variable.
    """
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    nv = 2 if b is not None else 3
    t = MultiPoly.variable(nv, 0)
    u = MultiPoly.variable(nv, 1)
    bb = MultiPoly.constant(nv, Fraction(b)) if b is not None else MultiPoly.variable(nv, 2)

    def g(x):
        return 1 - r * x + bb * x**r

    geometric = MultiPoly(nv)
    for k in range(r):
        geometric = geometric + u**k * t ** (r - 1 - k)
    diff = (g(t) - g(u)) - (u - t) * (r - bb * geometric)
    params = {"r": r, "b": "symbolic" if b is None else Fraction(b)}
    if not diff:
        return CertReport("lemma2_identity", params, PASS, notes="difference expands to 0")
    first = min(diff.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    return CertReport("lemma2_identity", params, FAIL, witness=first,
                      value=diff.terms[first], notes="nonzero residual term")


def _smallest_positive_root(g: UniPoly) -> RootInterval | None:
    hi = Fraction(1)
    bound = cauchy_bound(g)
    while hi <= bound:
        hi *= 2
    roots = isolate_roots(g, 0, hi)
    return roots[0] if roots else None


def lemma2_positivity(r: int, b, N: int, allow_violation: bool = False) -> CertReport:
    """Expand ``1 / (1 - r t + b t^r)`` to order ``N`` and require every coefficient > 0."""
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    b = Fraction(b)
    cap = (r - 1) ** (r - 1)
    violated = b > cap
    if violated and not allow_violation:
        raise HypothesisViolatedError(f"b = {b} exceeds (r-1)^(r-1) = {cap}")

    g = UniPoly([1, -r] + [0] * (r - 2) + [b])
    series = uni_inverse(g, N)
    params: dict = {"r": r, "b": b, "order": N}
    bad = next((m for m, c in enumerate(series.coeffs) if c <= 0), None)
    roots = None
    if b > 0:
        t0 = _smallest_positive_root(g)
        params["t0"] = t0
        roots = [t0] if t0 is not None else []

    if violated:
        outcome = "all positive" if bad is None else f"coefficient {bad} is {series[bad]}"
        return CertReport("lemma2_positivity", params, FLAGGED, witness=(bad,) if bad is not None else roots,
                          value=series[bad] if bad is not None else None,
                          notes=f"hypothesis b <= (r-1)^(r-1) violated; {outcome}")
    if bad is not None:
        return CertReport("lemma2_positivity", params, FAIL, witness=(bad,), value=series[bad],
                          notes="nonpositive coefficient")
    return CertReport("lemma2_positivity", params, PASS, witness=roots, value=min(series.coeffs),
                      notes="all coefficients positive")


# -- multinomial block coefficients ------------------------------------------

def _check_beta(r: int, beta: Sequence[int], degree: int) -> tuple[int, ...]:
    beta = tuple(beta)
    if len(beta) != r or any(x < 0 for x in beta):
        raise InvalidInputError(f"exponent vector {beta} is not a length-{r} nonnegative vector")
    if sum(beta) != degree:
        raise InvalidInputError(f"exponent vector {beta} has degree {sum(beta)}, expected {degree}")
    return beta


def _shift(beta: tuple[int, ...], j: int) -> tuple[int, ...]:
    return tuple(x - j for x in beta)


def block_coefficient(r: int, k: int, l: int, c_val, beta: Sequence[int]) -> Fraction:
    """Coefficient of ``t^beta`` in ``(e_1^r - c_val e_r)^k e_1^(r l)``."""
    if k < 0 or l < 0:
        raise InvalidParameterError("k and l must be nonnegative")
    beta = _check_beta(r, beta, r * (k + l))
    c_val = Fraction(c_val)
    total = Fraction(0)
    for j in range(min(k, min(beta)) + 1):
        total += binomial(k, j) * (-c_val) ** j * multinomial(r * (k - j + l), _shift(beta, j))
    return total


def elementary_product_coefficient(r: int, alphas: Sequence, beta: Sequence[int]) -> Fraction:
    """Coefficient of ``t^beta`` in ``prod_i (e_1^r - alpha_i e_r)``."""
    n = len(alphas)
    beta = _check_beta(r, beta, r * n)
    sig = elementary_symmetric([Fraction(a) for a in alphas])
    total = Fraction(0)
    for j in range(min(n, min(beta)) + 1):
        total += (-1) ** j * sig[j] * multinomial(r * (n - j), _shift(beta, j))
    return total


def theorem_block_coefficient(bid: BlockId, beta: Sequence[int]) -> int:
    """Coefficient of ``t^beta`` in the degree-``(n r + l)`` block of the GRZ expansion."""
    r, n, l = bid.r, bid.n, bid.l
    beta = _check_beta(r, beta, bid.degree)
    fact = factorial(r)
    total = 0
    for k in range(min(n, min(beta)) + 1):
        total += h_coefficient(r, n, l, k) * fact**k * multinomial(r * (n - k) + l, _shift(beta, k))
    return total


def _scan(name: str, r: int, degree: int, coeff: Callable[[tuple], object], params: dict,
          strict: bool, max_partitions: int | None, force: bool) -> CertReport:
    count = partition_count(degree, r)
    cap = limits.DEFAULT_MAX_PARTITIONS if max_partitions is None else max_partitions
    limits.check("max-partitions", count, cap, force)
    best = None
    witness = None
    zeros = 0
    monomials = 0
    for beta in partitions(degree, r):
        v = coeff(beta)
        monomials += orbit_size(beta)
        if v == 0:
            zeros += 1
        if best is None or v < best:
            best, witness = v, beta
    params = dict(params, partitions=count, monomials=monomials, zero_partitions=zeros)
    ok = best > 0 if strict else best >= 0
    want = "> 0" if strict else ">= 0"
    notes = f"minimum {best} over {count} partitions (need {want})"
    return CertReport(name, params, PASS if ok else FAIL, witness=witness, value=Fraction(best), notes=notes)


def lemma4_scan(r: int, k: int, l: int, c_val=None, *, max_partitions: int | None = None,
                force: bool = False) -> CertReport:
    """Require every coefficient of ``(e_1^r - c e_r)^k e_1^(r l)`` to be positive.

    Symmetry lets the scan visit one sorted exponent vector per orbit.
    """
    if k < 0 or l < 0 or k + l < 1:
        raise InvalidParameterError(f"need k, l >= 0 and k + l >= 1, got ({k}, {l})")
    c = paper_constants(r).c if c_val is None else Fraction(c_val)
    params = {"r": r, "k": k, "l": l, "c": c}
    return _scan("lemma4_scan", r, r * (k + l), lambda beta: block_coefficient(r, k, l, c, beta),
                 params, True, max_partitions, force)


def lemma5_scan(r: int, alphas: Sequence, *, max_partitions: int | None = None,
                force: bool = False) -> CertReport:
    """Require every coefficient of ``prod_i (e_1^r - alpha_i e_r)`` to be positive."""
    alphas = [Fraction(a) for a in alphas]
    if len(alphas) < 2:
        raise InvalidParameterError("need at least two alphas")
    c = paper_constants(r).c
    for a in alphas:
        if not 0 <= a <= c:
            raise HypothesisViolatedError(f"alpha {a} outside [0, c] with c = {c}")
    params = {"r": r, "alphas": alphas, "c": c}
    return _scan("lemma5_scan", r, r * len(alphas),
                 lambda beta: elementary_product_coefficient(r, alphas, beta),
                 params, True, max_partitions, force)


def theorem_block_coefficients(bid: BlockId) -> dict[tuple, int]:
    """Block coefficient for every sorted exponent vector of the block's degree."""
    return {beta: theorem_block_coefficient(bid, beta) for beta in partitions(bid.degree, bid.r)}


def theorem_block(bid: BlockId, *, max_partitions: int | None = None, force: bool = False) -> CertReport:
    """Require the block's coefficients to be nonnegative."""
    params = {"r": bid.r, "n": bid.n, "l": bid.l, "degree": bid.degree}
    return _scan("theorem_block", bid.r, bid.degree, lambda beta: theorem_block_coefficient(bid, beta),
                 params, False, max_partitions, force)


# -- real roots of h ----------------------------------------------------------

def count_roots_nudged(p: UniPoly, lo, hi, shifts: list | None = None) -> int:
    """:func:`count_roots` that widens a root endpoint by ``2^-(20+attempt)`` and logs the shift."""
    lo, hi = Fraction(lo), Fraction(hi)
    for attempt in range(64):
        try:
            return count_roots(p, lo, hi)
        except EndpointDegenerateError as exc:
            step = Fraction(1, 2 ** (20 + attempt))
            if exc.endpoint == lo:
                lo -= step
                moved = ("lo", -step)
            else:
                hi += step
                moved = ("hi", step)
            if shifts is not None:
                shifts.append(moved)
    raise EndpointDegenerateError(lo, "endpoint nudging did not terminate")


def _clear_endpoints(q: UniPoly, iv: RootInterval, lo: Fraction, hi: Fraction) -> RootInterval:
    """Refine until the interval sits strictly inside ``(lo, hi)``.

    Terminates because an isolated root of the open interval never equals an endpoint.
    """
    while not iv.exact and (iv.lo <= lo or iv.hi >= hi):
        iv = refine_root(q, iv, (iv.hi - iv.lo) / 2)
    return iv


def certify_roots_in(p: UniPoly, lo, hi, expected: int, notes_prefix: str = "") -> tuple[bool, dict, list]:
    """Sturm certification that ``p`` has ``expected`` simple real roots, all inside ``(lo, hi)``.

    Returns ``(ok, params, intervals)``; on failure ``intervals`` holds the
    offending roots when any lie outside, else every isolated root.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    shifts: list = []
    M = 1 + max(Fraction(1), max(abs(c) for c in p.coeffs) / abs(p.lc))
    total = count_roots_nudged(p, -M, M, shifts)
    inside = count_roots_nudged(p, lo, hi, shifts)
    at_hi = p.eval(hi)
    at_lo = p.eval(lo)
    q = squarefree_part(p)
    intervals = [_clear_endpoints(q, iv, lo, hi) for iv in isolate_roots(p, lo, hi)]
    params = {
        "real_roots": total,
        "roots_inside": inside,
        "cauchy_radius": M,
        "endpoint_shifts": [f"{side}{'+' if d > 0 else ''}{d}" for side, d in shifts],
    }
    ok = (total == expected and inside == expected and at_hi != 0 and at_lo != 0
          and q.degree == p.degree and len(intervals) == expected
          and all(iv.inside(lo, hi) for iv in intervals)
          and all(iv.exact or p.sign_at(iv.lo) * p.sign_at(iv.hi) < 0 for iv in intervals))
    if ok:
        return True, params, intervals
    everywhere = isolate_roots(p, -M, M)
    outside = [iv for iv in everywhere if not (lo < iv.lo and iv.hi < hi)]
    return False, params, outside or everywhere


def lemma3_certify(bid: BlockId) -> CertReport:
    """Certify that ``h`` has ``n`` simple real roots, all in ``(0, r^r / (r-1)^(r-1))``."""
    r, n, l = bid.r, bid.n, bid.l
    bound = root_bound(r)
    params: dict = {"r": r, "n": n, "l": l, "root_bound": bound}
    if n == 0:
        return CertReport("lemma3_certify", params, PASS, witness=[], notes="h is constant; no roots")
    h = build_h(bid)
    ok, extra, intervals = certify_roots_in(h, 0, bound, n)
    params.update(extra)
    # sum of roots is minus the s^(n-1) coefficient
    vieta = -h.coeffs[n - 1]
    sum_lo = sum((iv.lo for iv in intervals), Fraction(0))
    sum_hi = sum((iv.hi for iv in intervals), Fraction(0))
    vieta_ok = ok and sum_lo <= vieta <= sum_hi
    params.update(vieta_sum=vieta, sum_lo=sum_lo, sum_hi=sum_hi, vieta_ok=vieta_ok)
    if ok and vieta_ok:
        return CertReport("lemma3_certify", params, PASS, witness=intervals,
                          notes=f"{n} simple real roots inside (0, {bound})")
    return CertReport("lemma3_certify", params, FAIL, witness=intervals,
                      notes="root count, location or Vieta check failed")


def block_grid(r: int, d_max: int) -> Iterable[BlockId]:
    for d in range(d_max + 1):
        yield BlockId.from_degree(r, d)
