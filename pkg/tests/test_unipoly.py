import random
from fractions import Fraction

import pytest

from grzcert.errors import EndpointDegenerateError, InvalidInputError
from grzcert.unipoly import (
    UniPoly,
    count_real_roots,
    count_roots,
    dyadic_between,
    isolate_roots,
    refine_root,
    sign_variations,
    squarefree_decomposition,
    squarefree_part,
    sturm_chain,
)

SEED = 20261019


def P(*coeffs):
    """Polynomial from coefficients in increasing powers."""
    return UniPoly(coeffs)


def test_eval():
    assert P(-1, 1).eval(1) == 0
    quad = P(1, -3, 1)
    assert quad(0) == 1
    assert quad(3) == 1
    assert quad(Fraction(1, 2)) == Fraction(-1, 4)


def test_zero_polynomial_representation():
    z = UniPoly([0, 0, 0])
    assert z.coeffs == () and z.degree == -1 and not z


def test_arithmetic_roundtrip():
    a = P(1, 2, 3)
    b = P(-1, 0, 1)
    q, r = divmod(a * b + P(5), b)
    assert q == a and r == P(5)
    assert (a - a).is_zero()
    assert a**3 == a * a * a


def test_sturm_chain_examples():
    assert sturm_chain(P(-1, 1)) == [P(-1, 1), P(1)]
    chain = sturm_chain(P(1, 0, 1), normalize=False)
    assert chain == [P(1, 0, 1), P(0, 2), P(-1)]
    neg_inf = [q.sign_at_infinity(False) for q in chain]
    pos_inf = [q.sign_at_infinity(True) for q in chain]

    def var(signs):
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    assert var(neg_inf) - var(pos_inf) == 0
    assert count_real_roots(P(1, -3, 1)) == 2


def test_sturm_chain_rejects_zero():
    with pytest.raises(InvalidInputError):
        sturm_chain(UniPoly())


def test_count_roots_examples():
    # roots (3 +- sqrt 5)/2 and (5 +- sqrt 13)/2
    assert count_roots(P(1, -3, 1), 0, 4) == 2
    assert count_roots(P(-1, 1), 2, 3) == 0
    assert count_roots(P(3, -5, 1), 0, Fraction(27, 4)) == 2


def test_count_roots_endpoint_degenerate():
    with pytest.raises(EndpointDegenerateError) as exc:
        count_roots(P(-1, 1), 1, 3)
    assert exc.value.endpoint == 1


def test_isolate_examples():
    [iv] = isolate_roots(P(-1, 1), 0, 4)
    assert iv.exact and iv.lo == iv.hi == 1

    lo_root, hi_root = isolate_roots(P(1, -3, 1), 0, 4)
    assert 0 <= lo_root.lo and lo_root.hi <= 1
    assert 2 <= hi_root.lo and hi_root.hi <= 3
    for iv in (lo_root, hi_root):
        assert P(1, -3, 1).sign_at(iv.lo) * P(1, -3, 1).sign_at(iv.hi) < 0

    assert isolate_roots(P(1, 0, 1), -10, 10) == []


def test_isolate_non_squarefree_reports_multiplicity():
    # 4t^3 - 3t + 1 = (t + 1)(2t - 1)^2
    g = P(1, -3, 0, 4)
    roots = isolate_roots(g, -4, 4)
    assert [(iv.lo, iv.exact, iv.multiplicity) for iv in roots] == [
        (Fraction(-1), True, 1), (Fraction(1, 2), True, 2)]
    assert squarefree_decomposition(g) == [P(1, 1), P(Fraction(-1, 2), 1)]
    assert squarefree_part(g).degree == 2


def test_isolate_handles_root_at_endpoint():
    p = UniPoly.from_roots([0, Fraction(1, 3), 1])
    roots = isolate_roots(p, 0, 1, max_width=None)
    assert len(roots) == 1
    iv = roots[0]
    assert p.eval(iv.lo) != 0 and p.eval(iv.hi) != 0
    assert iv.lo < Fraction(1, 3) < iv.hi


def test_dyadic_between_is_midpoint_on_dyadic_intervals():
    assert dyadic_between(Fraction(0), Fraction(4)) == 2
    assert dyadic_between(Fraction(3, 8), Fraction(1, 2)) == Fraction(7, 16)
    m = dyadic_between(Fraction(0), Fraction(256, 27))
    assert Fraction(256, 27) / 4 <= m <= 3 * Fraction(256, 27) / 4
    assert (m.denominator & (m.denominator - 1)) == 0


def _random_rational_roots(rng, d):
    roots = set()
    while len(roots) < d:
        roots.add(Fraction(rng.randint(-40, 40), rng.choice((1, 2, 3, 4, 5, 7, 8))))
    return sorted(roots)


def test_count_matches_isolation_on_random_polynomials():
    rng = random.Random(SEED)
    for _ in range(200):
        d = rng.randint(1, 7)
        roots = _random_rational_roots(rng, d)
        scale = Fraction(rng.choice((-3, -1, 1, 2, 5)), rng.randint(1, 4))
        p = UniPoly.from_roots(roots) * scale
        lo = Fraction(rng.randint(-200, 0), 7)
        hi = Fraction(rng.randint(1, 200), 11)
        if p.eval(lo) == 0 or p.eval(hi) == 0:
            continue
        n = count_roots(p, lo, hi)
        ivs = isolate_roots(p, lo, hi)
        assert n == len(ivs) == sum(1 for q in roots if lo < q < hi)
        for iv, q in zip(ivs, [q for q in roots if lo < q < hi]):
            if iv.exact:
                assert iv.lo == q
            else:
                assert iv.lo < q < iv.hi
                assert p.sign_at(iv.lo) * p.sign_at(iv.hi) < 0
        assert count_real_roots(p) == d


def test_sturm_rescaling_invariance():
    rng = random.Random(SEED + 1)
    for _ in range(50):
        d = rng.randint(2, 8)
        p = UniPoly(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(d + 1))
        if p.degree < 1:
            continue
        raw = sturm_chain(p, normalize=False)
        norm = sturm_chain(p, normalize=True)
        assert len(raw) == len(norm)
        for _ in range(10):
            x = Fraction(rng.randint(-100, 100), rng.randint(1, 13))
            assert sign_variations(raw, x) == sign_variations(norm, x)


def test_refine_root_requires_sign_change():
    from grzcert.unipoly import RootInterval
    with pytest.raises(InvalidInputError):
        refine_root(P(1, 0, 1), RootInterval(Fraction(-1), Fraction(1)), Fraction(1, 8))
