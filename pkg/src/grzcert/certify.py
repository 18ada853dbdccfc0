"""Check suites over parameter grids, assembled into deterministic run manifests."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import limits
from .exact import paper_constants
from .grz import (
    FAIL,
    FLAGGED,
    PASS,
    BlockId,
    CertReport,
    block_grid,
    lemma2_positivity,
    lemma3_certify,
    lemma4_scan,
    lemma5_scan,
    theorem_block,
    theorem_block_coefficients,
    verify_lemma2_identity,
)
from .errors import InvalidParameterError
from .series import min_coefficient, monomial_count, multi_inverse_grz

DEFAULT_N_MAX = 15
DEFAULT_ORDER = 100
DEFAULT_KL_MAX = 3
DEFAULT_CROSS_CHECK_MONOMIALS = 200_000
LEMMA4_CASES = ((1, 1), (2, 0), (3, 0))
SUITES = ("lemma2", "lemma3", "lemma4", "lemma5", "theorem", "remark", "expand")


def default_degree(r: int) -> int:
    return min(16, 4 * r)


@dataclass
class RunManifest:
    suite: str
    grid: dict
    caps: dict
    reports: list[CertReport] = field(default_factory=list)
    expectation: str = "holds"

    @property
    def status(self) -> str:
        return FAIL if any(rep.status == FAIL for rep in self.reports) else PASS

    @property
    def violations(self) -> int:
        """Failures among checks whose parameters satisfy the claim's hypothesis."""
        if self.expectation == "exploratory":
            return 0
        return sum(1 for rep in self.reports if rep.status == FAIL and "expected-fail" not in rep.notes)


def _caps(max_monomials=None, max_partitions=None) -> dict:
    return {
        "max_monomials": limits.max_monomials(max_monomials),
        "max_partitions": limits.DEFAULT_MAX_PARTITIONS if max_partitions is None else max_partitions,
    }


def _label(rep: CertReport, in_hypothesis: bool, hypothesis: str) -> CertReport:
    if rep.status == FAIL:
        tag = "violation of the claimed statement" if in_hypothesis else f"expected-fail (outside {hypothesis})"
        rep.notes = f"{rep.notes}; {tag}" if rep.notes else tag
    return rep


def _execute(tasks: Sequence[tuple], jobs: int = 1) -> list:
    """Run ``(key, fn, args, kwargs)`` tasks and return results sorted by key."""
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [(key, pool.submit(fn, *args, **kw)) for key, fn, args, kw in tasks]
            done = [(key, fut.result()) for key, fut in futures]
    else:
        done = [(key, fn(*args, **kw)) for key, fn, args, kw in tasks]
    done.sort(key=lambda kv: kv[0])
    return [res for _, res in done]


# -- expansion ----------------------------------------------------------------

def desk_grz_report(r: int, D: int, max_monomials=None, force=False) -> CertReport:
    s = multi_inverse_grz(r, D, max_monomials=max_monomials, force=force)
    low, where = min_coefficient(s)
    total = monomial_count(r, D)
    params = {"r": r, "degree": D, "monomials": total, "stored": len(s), "zeros": total - len(s)}
    status = PASS if low >= 0 else FAIL
    rep = CertReport("desk_grz", params, status, witness=where, value=low,
                     notes=f"minimum stored coefficient {low} at {where}")
    return _label(rep, r >= 4, "r >= 4")


def run_desk_grz(r: int, D: int, *, max_monomials=None, force=False) -> RunManifest:
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    caps = _caps(max_monomials)
    limits.check("max-monomials", monomial_count(r, D), caps["max_monomials"], force)
    rep = desk_grz_report(r, D, max_monomials, force)
    return RunManifest("expand", {"r": r, "degree": D}, caps, [rep],
                       "holds" if r >= 4 else "out-of-hypothesis")


# -- roots --------------------------------------------------------------------

def run_lemma3_grid(r: int, n_max: int, *, n_min: int = 1, ls: Sequence[int] | None = None,
                    jobs: int = 1) -> RunManifest:
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    ls = list(range(r)) if ls is None else list(ls)
    tasks = [((n, l), lemma3_certify, (BlockId(r, n, l),), {})
             for n in range(n_min, n_max + 1) for l in ls]
    reports = _execute(tasks, jobs)
    grid = {"r": r, "n_min": n_min, "n_max": n_max, "l": ls}
    return RunManifest("lemma3", grid, _caps(), reports)


# -- theorem blocks -------------------------------------------------------------

def run_theorem_blocks(r: int, d_max: int, *, max_partitions=None, max_monomials=None,
                       cross_check_cap: int = DEFAULT_CROSS_CHECK_MONOMIALS, force=False,
                       jobs: int = 1) -> RunManifest:
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    caps = _caps(max_monomials, max_partitions)
    ids = list(block_grid(r, d_max))
    tasks = [(bid.degree, theorem_block, (bid,), {"max_partitions": caps["max_partitions"], "force": force})
             for bid in ids]
    reports = _execute(tasks, jobs)

    cross = monomial_count(r, d_max) <= min(cross_check_cap, caps["max_monomials"])
    if cross:
        oracle = multi_inverse_grz(r, d_max, max_monomials=caps["max_monomials"], force=force)
        for bid, rep in zip(ids, reports):
            mismatch = next((beta for beta, v in theorem_block_coefficients(bid).items()
                             if oracle.coefficient(beta) != v), None)
            rep.params["cross_checked"] = True
            if mismatch is not None:
                rep.status = FAIL
                rep.witness = mismatch
                rep.notes += f"; block formula disagrees with series oracle at {mismatch}"
    else:
        for rep in reports:
            rep.params["cross_checked"] = False
    for rep in reports:
        _label(rep, r >= 4, "r >= 4")
    grid = {"r": r, "d_max": d_max, "cross_checked": cross}
    return RunManifest("theorem", grid, caps, reports, "holds" if r >= 4 else "out-of-hypothesis")


# -- Lemma 4 and the threshold refinement --------------------------------------

def _lemma4_in_hypothesis(r: int, k: int, l: int) -> bool:
    if k + l < 2:
        return False
    return r >= 7 if (k, l) == (1, 1) else r >= 8


def run_lemma4(r: int, cases: Sequence[tuple[int, int]] = LEMMA4_CASES, *, max_partitions=None,
               force=False, jobs: int = 1) -> RunManifest:
    caps = _caps(max_partitions=max_partitions)
    tasks = [((k, l), lemma4_scan, (r, k, l), {"max_partitions": caps["max_partitions"], "force": force})
             for k, l in cases]
    reports = [_label(rep, _lemma4_in_hypothesis(r, rep.params["k"], rep.params["l"]), "r >= 8")
               for rep in _execute(tasks, jobs)]
    grid = {"r": r, "cases": [list(kl) for kl in sorted(cases)]}
    return RunManifest("lemma4", grid, caps, reports, "holds" if r >= 8 else "out-of-hypothesis")


def run_remark_threshold(r: int, kl_max: int, *, max_partitions=None, force=False,
                         jobs: int = 1) -> RunManifest:
    """Scan all ``(k, l)`` with ``1 <= k + l <= kl_max`` and locate the positivity threshold.

    The threshold is the least ``m`` such that every scan with ``k + l >= m``
    passes. Failing scans below it are flagged rather than failed, since the
    refinement only claims positivity from the threshold on.
    """
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    caps = _caps(max_partitions=max_partitions)
    cases = [(k, s - k) for s in range(1, kl_max + 1) for k in range(s + 1)]
    tasks = [((k + l, k, l), lemma4_scan, (r, k, l), {"max_partitions": caps["max_partitions"], "force": force})
             for k, l in cases]
    reports = _execute(tasks, jobs)
    failing = {rep.params["k"] + rep.params["l"] for rep in reports if rep.status == FAIL}
    threshold = max(failing) + 1 if failing else 1
    found = threshold <= kl_max
    for rep in reports:
        if rep.status == FAIL and found:
            rep.status = FLAGGED
            rep.notes += f"; below threshold {threshold}"
    grid = {"r": r, "kl_max": kl_max}
    if found:
        summary = CertReport("remark_threshold", {"r": r, "kl_max": kl_max, "threshold": threshold}, PASS,
                             notes=f"all scans with k + l >= {threshold} pass")
    else:
        worst = max((rep for rep in reports if rep.status == FAIL),
                    key=lambda rep: (rep.params["k"] + rep.params["l"], rep.params["k"]))
        summary = CertReport("remark_threshold", {"r": r, "kl_max": kl_max, "threshold": None}, FAIL,
                             witness=(worst.params["k"], worst.params["l"]),
                             notes="no threshold within the grid; witness is the failing (k, l) with largest k + l")
    return RunManifest("remark", grid, caps, reports + [summary], "exploratory")


# -- Lemma 2 and Lemma 5 ---------------------------------------------------------

def default_lemma2_bs(r: int) -> list[Fraction]:
    return [Fraction(-1), Fraction(0), Fraction(1), Fraction((r - 1) ** (r - 1))]


def run_lemma2(r: int, bs: Sequence | None = None, order: int = DEFAULT_ORDER,
               identity_rs: Sequence[int] | None = None, jobs: int = 1) -> RunManifest:
    bs = default_lemma2_bs(r) if bs is None else [Fraction(b) for b in bs]
    identity_rs = [r] if identity_rs is None else list(identity_rs)
    tasks = [((0, rr, 0), verify_lemma2_identity, (rr,), {}) for rr in identity_rs]
    tasks.append(((0, r, 1), verify_lemma2_identity, (r,), {"b": None}))
    for b in sorted(set(bs)):
        tasks.append(((1, r, b), lemma2_positivity, (r, b, order), {"allow_violation": True}))
    reports = _execute(tasks, jobs)
    grid = {"r": r, "b": sorted(set(bs)), "order": order, "identity_r": identity_rs}
    return RunManifest("lemma2", grid, _caps(), reports)


def default_lemma5_alphas(r: int, seed: int = 0, draws: int = 3) -> list[list[Fraction]]:
    c = paper_constants(r).c
    sets = [[c, c], [c / 2, c], [Fraction(0), c], [Fraction(0), Fraction(0)], [c / 3, 2 * c / 3, c]]
    rng = random.Random(seed)
    for _ in range(draws):
        n = rng.choice((2, 3))
        sets.append([c * Fraction(rng.randint(0, 64), 64) for _ in range(n)])
    return sets


def run_lemma5(r: int, alpha_sets: Sequence[Sequence] | None = None, *, seed: int = 0,
               max_partitions=None, force=False, jobs: int = 1) -> RunManifest:
    caps = _caps(max_partitions=max_partitions)
    if alpha_sets is None:
        alpha_sets = default_lemma5_alphas(r, seed)
    alpha_sets = [sorted(Fraction(a) for a in s) for s in alpha_sets]
    tasks = [((len(s), tuple(s)), lemma5_scan, (r, s), {"max_partitions": caps["max_partitions"], "force": force})
             for s in alpha_sets]
    reports = [_label(rep, r >= 8, "r >= 8") for rep in _execute(tasks, jobs)]
    grid = {"r": r, "alphas": [list(s) for s in sorted(alpha_sets, key=lambda s: (len(s), s))], "seed": seed}
    return RunManifest("lemma5", grid, caps, reports, "holds" if r >= 8 else "out-of-hypothesis")


# -- dispatch -----------------------------------------------------------------

def run_suite(name: str, r: int, *, degree: int | None = None, n_max: int = DEFAULT_N_MAX,
              d_max: int | None = None, kl_max: int = DEFAULT_KL_MAX, bs=None, order: int = DEFAULT_ORDER,
              alpha_sets=None, seed: int = 0, max_monomials=None, max_partitions=None, force=False,
              jobs: int = 1) -> RunManifest:
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    runners: dict[str, Callable[[], RunManifest]] = {
        "expand": lambda: run_desk_grz(r, default_degree(r) if degree is None else degree,
                                       max_monomials=max_monomials, force=force),
        "lemma2": lambda: run_lemma2(r, bs, order, jobs=jobs),
        "lemma3": lambda: run_lemma3_grid(r, n_max, jobs=jobs),
        "lemma4": lambda: run_lemma4(r, max_partitions=max_partitions, force=force, jobs=jobs),
        "lemma5": lambda: run_lemma5(r, alpha_sets, seed=seed, max_partitions=max_partitions,
                                     force=force, jobs=jobs),
        "theorem": lambda: run_theorem_blocks(r, default_degree(r) if d_max is None else d_max,
                                              max_partitions=max_partitions, max_monomials=max_monomials,
                                              force=force, jobs=jobs),
        "remark": lambda: run_remark_threshold(r, kl_max, max_partitions=max_partitions,
                                               force=force, jobs=jobs),
    }
    if name not in runners:
        raise InvalidParameterError(f"unknown suite {name!r}")
    return runners[name]()


def run_all(r: int, **kw) -> list[RunManifest]:
    return [run_suite(name, r, **kw) for name in SUITES]
