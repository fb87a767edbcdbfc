"""Explicit norm-factorization criteria for Q(sqrt(-79)) and Q(sqrt(17)).

A criterion classifies the odd primes p != |d| dividing N(alpha) by a few
Legendre symbols and by whether an auxiliary polynomial h has a root mod p,
forms a weighted exponent sum, and accepts alpha when that sum passes a
fixed predicate. Descriptors are plain data and can be loaded from JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .local import LocalTable
from .ntheory import factor, jacobi, poly_has_root_mod_p, valuation
from .quadfield import QuadInt

__all__ = [
    "InvariantViolation",
    "ClassRule",
    "CriterionDescriptor",
    "NormFactorization",
    "builtin_descriptors",
    "load_descriptors",
    "descriptor_from_dict",
    "descriptor_to_dict",
    "classify_prime",
    "factor_norm",
    "weighted_sum",
    "evaluate",
    "hasse_field_list",
]

ACCEPT_NOT_EQUAL_ONE = "not_equal_one"
ACCEPT_EVEN_TOTAL = "even_total"
OTHER = "other"


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class ClassRule:
    name: str
    symbol_conditions: tuple[tuple[int, int], ...]
    require_poly_insolvable: bool
    weight: Fraction

    def matches(self, q: int, h_coeffs: tuple[int, ...]) -> bool:
        for base, required in self.symbol_conditions:
            if jacobi(base, q) != required:
                return False
        if self.require_poly_insolvable and poly_has_root_mod_p(list(h_coeffs), q):
            return False
        return True


@dataclass(frozen=True)
class CriterionDescriptor:
    d: int
    h_coeffs: tuple[int, ...]
    classes: tuple[ClassRule, ...]
    include_s1: bool
    accept: str

    def __post_init__(self) -> None:
        if self.accept not in (ACCEPT_NOT_EQUAL_ONE, ACCEPT_EVEN_TOTAL):
            raise ValueError(f"unknown accept predicate {self.accept!r}")
        if any(c.require_poly_insolvable for c in self.classes) and not self.h_coeffs:
            raise ValueError("a class needs h(x) but no coefficients were given")
        signatures = [tuple(sorted(c.symbol_conditions)) for c in self.classes]
        if len(set(signatures)) != len(signatures):
            raise ValueError("class rules must have distinct symbol signatures")

    def rule(self, name: str) -> ClassRule:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(name)


@dataclass(frozen=True)
class NormFactorization:
    """|N(alpha)| = 2^s1 * |d|^s2 * prod(p^e) with p odd and p != |d|."""

    s1: int
    s2: int
    odd_primes: tuple[tuple[int, int, str], ...]


_HALF = Fraction(1, 2)


def builtin_descriptors() -> dict[int, CriterionDescriptor]:
    return {
        -79: CriterionDescriptor(
            d=-79,
            h_coeffs=(1772, -307, 0, 1),
            classes=(
                ClassRule("D1", ((79, 1), (-1, 1)), True, Fraction(1)),
                ClassRule("D2", ((79, 1), (-1, -1)), True, _HALF),
            ),
            include_s1=False,
            accept=ACCEPT_NOT_EQUAL_ONE,
        ),
        17: CriterionDescriptor(
            d=17,
            h_coeffs=(17, 0, -2, 0, 1),
            classes=(
                ClassRule("D1", ((-17, 1), (-1, -1)), False, _HALF),
                ClassRule("D2", ((-17, 1), (-1, 1)), True, Fraction(1)),
            ),
            include_s1=True,
            accept=ACCEPT_EVEN_TOTAL,
        ),
    }


def _parse_weight(w: str | int) -> Fraction:
    weight = Fraction(str(w))
    if weight not in (Fraction(1), _HALF):
        raise ValueError(f"weight must be '1' or '1/2', got {w!r}")
    return weight


def descriptor_from_dict(data: dict) -> CriterionDescriptor:
    classes = tuple(
        ClassRule(
            name=c["name"],
            symbol_conditions=tuple((int(b), int(s)) for b, s in c["symbols"]),
            require_poly_insolvable=bool(c["poly_insolvable"]),
            weight=_parse_weight(c["weight"]),
        )
        for c in data["classes"]
    )
    return CriterionDescriptor(
        d=int(data["d"]),
        h_coeffs=tuple(int(c) for c in data.get("h", [])),
        classes=classes,
        include_s1=bool(data["include_s1"]),
        accept=data["accept"],
    )


def descriptor_to_dict(desc: CriterionDescriptor) -> dict:
    return {
        "d": desc.d,
        "h": list(desc.h_coeffs),
        "classes": [
            {
                "name": c.name,
                "symbols": [[b, s] for b, s in c.symbol_conditions],
                "poly_insolvable": c.require_poly_insolvable,
                "weight": str(c.weight),
            }
            for c in desc.classes
        ],
        "include_s1": desc.include_s1,
        "accept": desc.accept,
    }


def load_descriptors(path: str | Path) -> dict[int, CriterionDescriptor]:
    """Read one descriptor object or a list of them from a JSON file."""
    data = json.loads(Path(path).read_text())
    items = data if isinstance(data, list) else [data]
    out = {}
    for item in items:
        desc = descriptor_from_dict(item)
        out[desc.d] = desc
    return out


def classify_prime(desc: CriterionDescriptor, q: int) -> str:
    if q % 2 == 0 or q < 3 or abs(desc.d) % q == 0:
        raise ValueError(f"classify_prime needs an odd prime not dividing 2*{abs(desc.d)}, got {q}")
    for rule in desc.classes:
        if rule.matches(q, desc.h_coeffs):
            return rule.name
    return OTHER


def factor_norm(alpha: QuadInt, desc: CriterionDescriptor) -> NormFactorization:
    n = abs(alpha.norm())
    if n == 0:
        raise ValueError("alpha must be nonzero")
    ad = abs(desc.d)
    s1 = valuation(n, 2)
    s2 = valuation(n, ad) if ad != 2 else 0
    rows = []
    for p, e in factor(n).factors:
        if p == 2 or p == ad:
            continue
        rows.append((p, e, classify_prime(desc, p)))
    return NormFactorization(s1, s2, tuple(rows))


def weighted_sum(desc: CriterionDescriptor, nf: NormFactorization) -> Fraction:
    weights = {c.name: c.weight for c in desc.classes}
    total = Fraction(nf.s1 if desc.include_s1 else 0)
    for _, e, tag in nf.odd_primes:
        total += weights.get(tag, 0) * e
    return total


def accepts(desc: CriterionDescriptor, total: Fraction) -> bool:
    if desc.accept == ACCEPT_NOT_EQUAL_ONE:
        return total != 1
    if total.denominator != 1:
        raise InvariantViolation(f"weighted sum {total} is not an integer")
    return total.numerator % 2 == 0


def evaluate(desc: CriterionDescriptor, alpha: QuadInt, table: LocalTable) -> bool:
    """True when alpha is a sum of two squares according to the criterion."""
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    if not table.all_pass:
        return False
    return accepts(desc, weighted_sum(desc, factor_norm(alpha, desc)))


def hasse_field_list() -> frozenset[int]:
    """Fields Q(sqrt(d)) where passing every local test already suffices."""
    return frozenset({-23, -31, -47, -59, -71})
