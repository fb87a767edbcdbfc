"""Explicit witnesses for x^2 + y^2 = -1 in Q(sqrt(-p)), and the local
obstruction to x^2 + y^2 = eps for the fundamental unit eps of Q(sqrt(p))."""

from __future__ import annotations

from dataclasses import dataclass

from .local import (
    LocalVerdict,
    Place,
    dyadic_enum_verdict,
    dyadic_split_verdict,
    places_above,
    real_verdicts,
)
from .ntheory import is_prime
from .pell import fundamental_unit, solve_pm
from .quadfield import Embedding, QuadInt, embed_sign, field

__all__ = [
    "MinusOneResult",
    "EpsilonAuxiliary",
    "EpsilonObstruction",
    "minus_one_witness",
    "epsilon_obstruction",
    "unit_exponent",
]


@dataclass(frozen=True)
class MinusOneResult:
    witness: tuple[QuadInt, QuadInt] | None = None
    obstruction: tuple[Place, ...] = ()

    def __post_init__(self) -> None:
        if (self.witness is None) == (not self.obstruction):
            raise ValueError("exactly one of witness / obstruction must be given")
        if self.witness is not None:
            x, y = self.witness
            if x * x + y * y != -1:
                raise AssertionError(f"{x}^2 + {y}^2 != -1")


@dataclass(frozen=True)
class EpsilonAuxiliary:
    epsilon1: QuadInt
    A: int
    B: int


@dataclass(frozen=True)
class EpsilonObstruction:
    epsilon: QuadInt
    failing_place: Place
    verdict: LocalVerdict
    auxiliary: EpsilonAuxiliary | None = None


def _check_prime(p: int) -> None:
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")


def minus_one_witness(p: int) -> MinusOneResult:
    """Solve x^2 + y^2 = -1 in Q(sqrt(-p)), or name the places above 2 where it fails."""
    _check_prime(p)
    F = field(-p)
    if p == 2 or p % 4 == 1:
        sol = solve_pm(p, -1)
        assert sol is not None, f"x^2 - {p}y^2 = -1 has no solution"
        return MinusOneResult(witness=(QuadInt(F, sol.x0, 0), QuadInt(F, 0, sol.y0)))
    if p % 8 == 3:
        sol = solve_pm(p, -2)
        assert sol is not None, f"x^2 - {p}y^2 = -2 has no solution"
        assert sol.x0 % 2 == 1 and sol.y0 % 2 == 1
        x = QuadInt(F, sol.x0, sol.y0, 2)
        return MinusOneResult(witness=(x, x.conj()))
    # p = 7 mod 8: 2 splits and -1 = 3 mod 4 is not a 2-adic sum of two squares
    minus_one = QuadInt(F, -1, 0)
    places = places_above(F, 2)
    for place in places:
        if dyadic_split_verdict(minus_one, place).solvable:
            raise AssertionError(f"x^2 + y^2 = -1 unexpectedly solvable at {place}")
    return MinusOneResult(obstruction=tuple(places))


def unit_exponent(unit: QuadInt, eps: QuadInt, limit: int = 64) -> int | None:
    """m >= 1 with unit = eps^m, found by repeated exact division, else None."""
    cur = unit
    for m in range(1, limit + 1):
        q = cur.exact_div(eps)
        if q is None:
            return None
        if q == QuadInt(eps.field, 1, 0):
            return m
        cur = q
    return None


def epsilon_obstruction(p: int) -> EpsilonObstruction:
    """A place of Q(sqrt(p)) where x^2 + y^2 = eps has no local integral solution."""
    _check_prime(p)
    F = field(p)
    eps = fundamental_unit(F)
    if p == 2 or p % 4 == 1:
        if eps.norm() != -1:
            raise AssertionError(f"fundamental unit of {F} should have norm -1")
        for v in real_verdicts(eps):
            if not v.solvable:
                return EpsilonObstruction(eps, v.place, v)
        raise AssertionError("a norm -1 unit must be negative at one real place")

    N = 2 if p % 8 == 7 else -2
    sol = solve_pm(p, N)
    if sol is None or solve_pm(p, -N) is not None:
        raise AssertionError(f"expected x^2 - {p}y^2 = {N} solvable and = {-N} not")
    x0, y0 = sol.x0, sol.y0
    assert x0 % 2 == 1 and y0 % 2 == 1
    A, B = (x0 * x0 + p * y0 * y0) // 2, x0 * y0
    eps1 = QuadInt(F, A, B)
    assert A * A - p * B * B == 1 and B % 2 == 1
    assert embed_sign(eps1, Embedding.PLUS) > 0 and embed_sign(eps1, Embedding.MINUS) > 0
    if eps.norm() != 1:
        raise AssertionError(f"fundamental unit of {F} should have norm +1")
    if unit_exponent(eps1, eps) is None:
        raise AssertionError(f"{eps1} is not a power of {eps}")
    verdict = dyadic_enum_verdict(eps)
    if verdict.solvable:
        raise AssertionError(f"x^2 + y^2 = {eps} unexpectedly solvable above 2")
    return EpsilonObstruction(eps, verdict.place, verdict, EpsilonAuxiliary(eps1, A, B))
