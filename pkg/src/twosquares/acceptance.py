"""Acceptance battery: exhaustive sweeps and exact instance checks.

Each check returns a :class:`CheckResult`; ``run_all`` runs them in order.
The pytest module and the ``selftest`` command both drive this file.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .constructions import epsilon_obstruction, minus_one_witness
from .criteria import builtin_descriptors, evaluate, factor_norm, weighted_sum
from .decider import Mode, SearchBounds, Status, decide, find_witness
from .local import (
    dyadic_enum_verdict,
    dyadic_modulus_exponent,
    dyadic_split_verdict,
    local_table,
    places_above,
    solvable_mod_power_of_two,
)
from .ntheory import is_prime
from .pell import solve_pm
from .quadfield import Embedding, IntegralityError, QuadInt, embed_sign, field

SEED = 20100419


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def primes_below(n: int) -> list[int]:
    return [p for p in range(2, n) if is_prime(p)]


def box_elements(d: int, coord_bound: int, norm_bound: int) -> list[QuadInt]:
    """Distinct nonzero (a + b sqrt(d))/den with |a|, |b| <= bound, 0 < |N| <= norm_bound."""
    F = field(d)
    seen: dict[QuadInt, None] = {}
    for den in (1, 2):
        for a in range(-coord_bound, coord_bound + 1):
            for b in range(-coord_bound, coord_bound + 1):
                try:
                    x = QuadInt(F, a, b, den)
                except IntegralityError:
                    continue
                if not x.is_zero() and abs(x.norm()) <= norm_bound:
                    seen.setdefault(x)
    return list(seen)


def check_pell_sweep() -> CheckResult:
    bad = []
    for p in primes_below(1000):
        N = -1 if (p == 2 or p % 4 == 1) else (2 if p % 8 == 7 else -2)
        sol = solve_pm(p, N)
        if sol is None or sol.x0**2 - p * sol.y0**2 != N:
            bad.append(p)
    n = len(primes_below(1000))
    return CheckResult("1 pell sweep p<1000", not bad, f"{n} primes, failures={bad}")


def check_minus_one_sweep() -> CheckResult:
    bad = []
    for p in primes_below(500):
        res = minus_one_witness(p)
        F = field(-p)
        if p % 8 != 7:
            if res.witness is None:
                bad.append(p)
                continue
            x, y = res.witness
            if x * x + y * y != QuadInt(F, -1, 0):
                bad.append(p)
            if p % 8 == 3 and not (x.den == 2 and y.den == 2):
                bad.append(p)
        else:
            minus_one = QuadInt(F, -1, 0)
            places = places_above(F, 2)
            if len(places) != 2 or any(dyadic_split_verdict(minus_one, pl).solvable for pl in places):
                bad.append(p)
    return CheckResult("2 x^2+y^2=-1 sweep p<500", not bad, f"failures={bad}")


def check_epsilon_sweep() -> CheckResult:
    bad = []
    for p in primes_below(300):
        ob = epsilon_obstruction(p)
        if p == 2 or p % 4 == 1:
            ok = (
                ob.failing_place.is_real
                and embed_sign(ob.epsilon, ob.failing_place.embedding) == -1
                and ob.auxiliary is None
            )
        else:
            aux = ob.auxiliary
            ok = (
                aux is not None
                and aux.A**2 - p * aux.B**2 == 1
                and aux.B % 2 == 1
                and embed_sign(aux.epsilon1, Embedding.PLUS) > 0
                and embed_sign(aux.epsilon1, Embedding.MINUS) > 0
                and ob.failing_place.q == 2
                and not dyadic_enum_verdict(ob.epsilon).solvable
            )
        if not ok:
            bad.append(p)
    return CheckResult("3 x^2+y^2=eps obstruction p<300", not bad, f"failures={bad}")


def check_example_minus79() -> CheckResult:
    F = field(-79)
    problems = []
    v2 = decide(QuadInt(F, 2, 0))
    if v2.status is not Status.SOLVABLE or v2.witness != (QuadInt(F, 1, 0), QuadInt(F, 1, 0)):
        problems.append("alpha=2")
    v5 = decide(QuadInt(F, 5, 0))
    if (
        v5.status is not Status.SOLVABLE
        or v5.witness != (QuadInt(F, 1, 0), QuadInt(F, 2, 0))
        or v5.criterion_trace.sum != 2
    ):
        problems.append("alpha=5")
    vh = decide(QuadInt(F, 1, 1, 2))
    if (
        vh.status is not Status.UNSOLVABLE
        or vh.mode is not Mode.EXPLICIT_CRITERION
        or vh.criterion_trace.sum != Fraction(1)
    ):
        problems.append("alpha=(1+sqrt(-79))/2")
    return CheckResult("4 Q(sqrt(-79)) instances", not problems, f"problems={problems}")


def check_example_17() -> CheckResult:
    F = field(17)
    problems = []
    for alpha in (QuadInt(F, 0, 1), QuadInt(F, 4, 1)):
        v = decide(alpha)
        if v.status is not Status.UNSOLVABLE or v.mode is not Mode.LOCAL_OBSTRUCTION:
            problems.append(str(alpha))
        elif not any(not lv.solvable and lv.place.is_real for lv in v.local.verdicts):
            problems.append(f"{alpha} (not a real-place failure)")
    v = decide(QuadInt(F, 17, 4))
    if v.status is not Status.SOLVABLE or v.witness != (QuadInt(F, 3, 1, 2), QuadInt(F, 5, 1, 2)):
        problems.append("17+4*sqrt(17)")
    return CheckResult("5 Q(sqrt(17)) instances", not problems, f"problems={problems}")


@dataclass(frozen=True)
class SweepRow:
    alpha: QuadInt
    local_pass: bool
    accept: bool
    witnessed: bool
    sum: Fraction
    even_violations: tuple[int, ...]


@lru_cache(maxsize=None)
def soundness_sweep(d: int, coord_bound: int = 8, norm_bound: int = 2000, search_bound: int = 200) -> tuple[SweepRow, ...]:
    desc = builtin_descriptors()[d]
    # primes of this class must divide N(alpha) to even powers
    even_class = "D2" if d == -79 else "D1"
    rows = []
    for alpha in box_elements(d, coord_bound, norm_bound):
        table = local_table(alpha)
        nf = factor_norm(alpha, desc)
        total = weighted_sum(desc, nf)
        accept = evaluate(desc, alpha, table)
        w = find_witness(alpha, SearchBounds(search_bound))
        odd_even_class = tuple(p for p, e, tag in nf.odd_primes if tag == even_class and e % 2)
        rows.append(SweepRow(alpha, table.all_pass, accept, w is not None, total, odd_even_class))
    return tuple(rows)


def check_soundness() -> CheckResult:
    details, ok = [], True
    for d in (-79, 17):
        rows = soundness_sweep(d)
        viol = [str(r.alpha) for r in rows if r.witnessed and not (r.local_pass and r.accept)]
        ok &= not viol
        details.append(f"d={d}: {len(rows)} alphas, {sum(r.witnessed for r in rows)} witnessed, violations={viol}")
    return CheckResult("6 soundness sweep", ok, "; ".join(details))


def check_completeness() -> CheckResult:
    details, ok = [], True
    for d in (-79, 17):
        rows = soundness_sweep(d)
        missing = [str(r.alpha) for r in rows if r.accept and not r.witnessed]
        ok &= not missing
        details.append(f"d={d}: unwitnessed solvables={len(missing)} {missing[:5]}")
    return CheckResult("7 completeness monitor (expected 0)", ok, "; ".join(details))


def check_parity() -> CheckResult:
    details, ok = [], True
    for d in (-79, 17):
        rows = soundness_sweep(d)
        non_int = [str(r.alpha) for r in rows if r.sum.denominator != 1]
        odd = [str(r.alpha) for r in rows if r.even_violations]
        ok &= not non_int and not odd
        details.append(f"d={d}: non-integer sums={len(non_int)}, odd exponents={len(odd)}")
    return CheckResult("8 parity properties", ok, "; ".join(details))


def check_hasse_mode(samples: int = 200, norm_bound: int = 300, search_bound: int = 200) -> CheckResult:
    rng = random.Random(SEED)
    population = [a for a in box_elements(-23, 40, norm_bound) if local_table(a).all_pass]
    chosen = rng.choices(population, k=samples)
    found = {a: find_witness(a, SearchBounds(search_bound)) is not None for a in set(chosen)}
    hits = sum(found[a] for a in chosen)
    misses = sorted({str(a) for a in chosen if not found[a]})
    return CheckResult(
        "9 Q(sqrt(-23)) local-global (expected 100%)",
        hits == samples,
        f"{hits}/{samples} witnessed ({len(found)} distinct), misses={misses[:5]}",
    )


def _random_alpha(rng: random.Random, d: int, coord: int, norm_bound: int) -> QuadInt:
    F = field(d)
    while True:
        den = rng.choice((1, 2)) if F.half_basis else 1
        a, b = rng.randint(-coord, coord), rng.randint(-coord, coord)
        if den == 2 and (a - b) % 2:
            continue
        x = QuadInt(F, a, b, den)
        if not x.is_zero() and abs(x.norm()) <= norm_bound:
            return x


def check_dyadic_cross_validation(samples: int = 200) -> CheckResult:
    rng = random.Random(SEED + 1)
    details, ok = [], True
    for d in (17, -79):
        F = field(d)
        bad = 0
        for _ in range(samples):
            alpha = _random_alpha(rng, d, 30, 2000)
            closed = all(dyadic_split_verdict(alpha, pl).solvable for pl in places_above(F, 2))
            n = dyadic_modulus_exponent(alpha)
            bad += closed != solvable_mod_power_of_two(alpha, n)
        ok &= bad == 0
        details.append(f"d={d}: closed form vs enumeration mismatches={bad}")
    for d in (-5, -3, 7):
        bad = 0
        for _ in range(samples):
            alpha = _random_alpha(rng, d, 30, 2000)
            n = dyadic_modulus_exponent(alpha)
            results = {dyadic_enum_verdict(alpha, n + k).solvable for k in range(3)}
            bad += len(results) != 1
        ok &= bad == 0
        details.append(f"d={d}: unstable under n,n+1,n+2={bad}")
    return CheckResult("10 dyadic cross-validation", ok, "; ".join(details))


CHECKS: list[Callable[[], CheckResult]] = [
    check_pell_sweep,
    check_minus_one_sweep,
    check_epsilon_sweep,
    check_example_minus79,
    check_example_17,
    check_soundness,
    check_completeness,
    check_parity,
    check_hasse_mode,
    check_dyadic_cross_validation,
]


def run_all() -> list[CheckResult]:
    out = []
    for check in CHECKS:
        try:
            out.append(check())
        except Exception as exc:  # a crash is a failed criterion, not an abort
            out.append(CheckResult(check.__name__, False, f"raised {type(exc).__name__}: {exc}"))
    return out
