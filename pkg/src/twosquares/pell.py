"""Continued fractions of sqrt(D), fundamental units, and x^2 - D*y^2 = N for |N| <= 2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .ntheory import is_prime
from .quadfield import FieldDesc, QuadInt, embed_sign

__all__ = [
    "PellSolution",
    "CFExpansion",
    "cf_sqrt",
    "convergents",
    "fundamental_unit",
    "solve_pm",
    "PellCase",
    "yokoi_check",
]


@dataclass(frozen=True)
class PellSolution:
    D: int
    N: int
    x0: int
    y0: int

    def __post_init__(self) -> None:
        if self.x0 * self.x0 - self.D * self.y0 * self.y0 != self.N:
            raise AssertionError(f"{self} does not solve x^2 - {self.D}y^2 = {self.N}")


@dataclass(frozen=True)
class CFExpansion:
    """sqrt(D) = [a0; period, period, ...]."""

    a0: int
    period: tuple[int, ...]

    def terms(self) -> Iterator[int]:
        yield self.a0
        while True:
            yield from self.period


def cf_sqrt(D: int) -> CFExpansion:
    if D < 2:
        raise ValueError(f"D must be >= 2, got {D}")
    a0 = math.isqrt(D)
    if a0 * a0 == D:
        raise ValueError(f"{D} is a perfect square")
    period = []
    P, Q, a = 0, 1, a0
    while True:
        P = a * Q - P
        Q = (D - P * P) // Q
        a = (a0 + P) // Q
        period.append(a)
        if a == 2 * a0:
            break
    return CFExpansion(a0, tuple(period))


def convergents(D: int, count: int) -> Iterator[tuple[int, int]]:
    """The first ``count`` convergents h/k of sqrt(D)."""
    h_prev, h = 1, 0
    k_prev, k = 0, 1
    terms = cf_sqrt(D).terms()
    for _ in range(count):
        a = next(terms)
        h_prev, h = a * h_prev + h, h_prev
        k_prev, k = a * k_prev + k, k_prev
        yield h_prev, k_prev


def _scan_small(D: int, N: int, ymax: int) -> PellSolution | None:
    for y in range(ymax + 1):
        t = N + D * y * y
        if t >= 0:
            x = math.isqrt(t)
            if x * x == t:
                return PellSolution(D, N, x, y)
    return None


def solve_pm(D: int, N: int) -> PellSolution | None:
    """Solution of x^2 - D*y^2 = N, N in {+-1, +-2}, with the smallest y >= 0.

    For |N| < sqrt(D) every primitive solution is a convergent of sqrt(D), and
    two periods reach the first one; for D < 5 a direct scan y <= 4 is used.
    """
    if N not in (1, -1, 2, -2):
        raise ValueError(f"N must be in {{+-1, +-2}}, got {N}")
    if D < 2 or math.isqrt(D) ** 2 == D:
        raise ValueError(f"D must be a positive nonsquare, got {D}")
    if D < 5:
        return _scan_small(D, N, 4)
    if N == 1:
        return PellSolution(D, 1, 1, 0)
    period = len(cf_sqrt(D).period)
    for h, k in convergents(D, 2 * period + 1):
        if h * h - D * k * k == N:
            return PellSolution(D, N, h, k)
    return None


def fundamental_unit(fld: FieldDesc) -> QuadInt:
    """The unit eps > 1 generating the unit group modulo -1."""
    if not fld.is_real:
        raise ValueError(f"{fld} is imaginary; its unit group is finite")
    d = fld.d
    if fld.half_basis:
        # (u + v*sqrt(d))/2 with u^2 - d*v^2 = +-4; below d = 17 such u/v need
        # not be convergents, so scan directly
        if d < 17:
            for v in range(1, 100):
                for t in (d * v * v - 4, d * v * v + 4):
                    u = math.isqrt(t) if t > 0 else -1
                    if u * u == t:
                        return QuadInt.from_halves(fld, u, v)
            raise AssertionError(f"no unit found for {fld}")
        period = len(cf_sqrt(d).period)
        for h, k in convergents(d, 2 * period + 1):
            n = abs(h * h - d * k * k)
            if n == 1:
                return QuadInt(fld, h, k)
            if n == 4 and h % 2 and k % 2:
                return QuadInt(fld, h, k, 2)
        raise AssertionError(f"no unit found for {fld}")
    period = len(cf_sqrt(d).period)
    for h, k in convergents(d, 2 * period + 1):
        if abs(h * h - d * k * k) == 1:
            eps = QuadInt(fld, h, k)
            assert embed_sign(eps, "plus_root") > 0
            return eps
    raise AssertionError(f"no unit found for {fld}")


class PellCase(str, Enum):
    M1MOD4 = "m1mod4"
    M7MOD8 = "m7mod8"
    M3MOD8 = "m3mod8"
    P2 = "p2"


@dataclass(frozen=True)
class PellCaseResult:
    case: PellCase
    solution: PellSolution


def yokoi_check(p: int) -> PellCaseResult:
    """Solve the equation that the residue of p mod 8 guarantees to be solvable.

    p = 2 or 1 mod 4: x^2 - p y^2 = -1; p = 7 mod 8: = 2; p = 3 mod 8: = -2.
    Failing to find a solution raises AssertionError.
    """
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        case, N = PellCase.P2, -1
    elif p % 4 == 1:
        case, N = PellCase.M1MOD4, -1
    elif p % 8 == 7:
        case, N = PellCase.M7MOD8, 2
    else:
        case, N = PellCase.M3MOD8, -2
    sol = solve_pm(p, N)
    if sol is None:
        raise AssertionError(f"x^2 - {p}y^2 = {N} should be solvable but no solution was found")
    return PellCaseResult(case, sol)
