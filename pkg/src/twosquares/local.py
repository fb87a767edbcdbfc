"""Local solvability of x^2 + y^2 = alpha at every place of Q(sqrt(+-p)).

Real places need alpha > 0 under the embedding. At an odd place with
residue field of size k the equation is solvable iff k = 1 mod 4 or the
valuation of alpha is even. At a place above 2 the answer comes from the
2-adic norm criterion when 2 splits, and from a residue-ring enumeration
(justified by Hensel's lemma) otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

import numpy as np

from .ntheory import factor, valuation
from .quadfield import (
    Embedding,
    FieldDesc,
    QuadInt,
    Splitting,
    embed_sign,
    split_root,
    splitting_type,
    valuations_above,
)

__all__ = [
    "Place",
    "Reason",
    "LocalVerdict",
    "LocalTable",
    "real_verdicts",
    "odd_place_verdict",
    "dyadic_split_verdict",
    "dyadic_enum_verdict",
    "dyadic_modulus_exponent",
    "solvable_mod_power_of_two",
    "dyadic_image",
    "places_above",
    "local_table",
]

# enumeration tables above this many residues are refused rather than allocated
_MAX_RING_EXPONENT = 13


@dataclass(frozen=True)
class Place:
    kind: str  # "real" or "finite"
    embedding: Embedding | None = None
    q: int | None = None
    splitting: Splitting | None = None
    index: int | None = None

    @classmethod
    def real(cls, embedding: Embedding | str) -> Place:
        return cls("real", embedding=Embedding(embedding))

    @classmethod
    def finite(cls, q: int, splitting: Splitting, index: int | None = None) -> Place:
        if (splitting is Splitting.SPLIT) != (index is not None):
            raise ValueError("a place index is used exactly for split primes")
        return cls("finite", q=q, splitting=splitting, index=index)

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    def __str__(self) -> str:
        if self.is_real:
            return "real(+)" if self.embedding is Embedding.PLUS else "real(-)"
        if self.splitting is Splitting.SPLIT:
            return f"q={self.q}#{self.index}"
        tag = "ram" if self.splitting is Splitting.RAMIFIED else "inert"
        return f"q={self.q}({tag})"


class Reason(str, Enum):
    POSITIVE_EMBEDDING = "positive_embedding"
    SIGN_OBSTRUCTION = "sign_obstruction"
    MINUS_ONE_LOCAL_SQUARE = "minus_one_local_square"
    EVEN_VALUATION = "even_valuation"
    ODD_VALUATION_OBSTRUCTION = "odd_valuation_obstruction"
    DYADIC_CLOSED_FORM = "dyadic_closed_form"
    DYADIC_ENUMERATION = "dyadic_enumeration"


@dataclass(frozen=True)
class LocalVerdict:
    place: Place
    solvable: bool
    reason: Reason
    valuation: int | None = None
    modulus_exponent: int | None = None

    def __post_init__(self) -> None:
        real_reasons = (Reason.POSITIVE_EMBEDDING, Reason.SIGN_OBSTRUCTION)
        if self.place.is_real != (self.reason in real_reasons):
            raise ValueError(f"reason {self.reason.value} does not fit place {self.place}")
        if self.reason in (Reason.ODD_VALUATION_OBSTRUCTION, Reason.SIGN_OBSTRUCTION) and self.solvable:
            raise ValueError(f"{self.reason.value} must come with solvable=False")


@dataclass(frozen=True)
class LocalTable:
    alpha: QuadInt
    verdicts: tuple[LocalVerdict, ...] = dc_field(default_factory=tuple)

    @property
    def all_pass(self) -> bool:
        return all(v.solvable for v in self.verdicts)

    def failing(self) -> list[LocalVerdict]:
        return [v for v in self.verdicts if not v.solvable]


def _nonzero(alpha: QuadInt) -> None:
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")


def real_verdicts(alpha: QuadInt) -> list[LocalVerdict]:
    _nonzero(alpha)
    if not alpha.field.is_real:
        return []
    out = []
    for emb in (Embedding.PLUS, Embedding.MINUS):
        ok = embed_sign(alpha, emb) > 0
        reason = Reason.POSITIVE_EMBEDDING if ok else Reason.SIGN_OBSTRUCTION
        out.append(LocalVerdict(Place.real(emb), ok, reason))
    return out


def places_above(fld: FieldDesc, q: int) -> list[Place]:
    st = splitting_type(fld, q)
    if st.variant is Splitting.SPLIT:
        return [Place.finite(q, st.variant, 1), Place.finite(q, st.variant, 2)]
    return [Place.finite(q, st.variant)]


def odd_place_verdict(alpha: QuadInt, place: Place) -> LocalVerdict:
    _nonzero(alpha)
    q = place.q
    if place.is_real or q is None:
        raise ValueError("odd_place_verdict needs a finite place")
    if q == 2:
        raise ValueError("places above 2 are handled by the dyadic verdicts")
    v = valuations_above(alpha, q)[place.index or 1]
    k = q * q if place.splitting is Splitting.INERT else q
    if k % 4 == 1:
        return LocalVerdict(place, True, Reason.MINUS_ONE_LOCAL_SQUARE, v)
    if v % 2 == 0:
        return LocalVerdict(place, True, Reason.EVEN_VALUATION, v)
    return LocalVerdict(place, False, Reason.ODD_VALUATION_OBSTRUCTION, v)


def dyadic_image(alpha: QuadInt, index: int, k: int) -> int:
    """alpha mod 2^k under the embedding into Z_2 at place ``index`` (2 split)."""
    r = split_root(alpha.field, 2, k + 1)
    if index == 2:
        r = -r
    mod = 1 << (k + 1)
    num = (alpha.a2 + alpha.b2 * r) % mod
    if num % 2:
        raise AssertionError("2-adic image is not integral")
    return num // 2


def dyadic_split_verdict(alpha: QuadInt, place: Place, root_precision: int | None = None) -> LocalVerdict:
    """At a split place over 2 the completion is Q_2: solvable iff odd part = 1 mod 4."""
    _nonzero(alpha)
    if alpha.field.d % 8 != 1:
        raise ValueError(f"2 does not split in {alpha.field}")
    if place.q != 2 or place.index not in (1, 2):
        raise ValueError(f"{place} is not a split place above 2")
    k = root_precision if root_precision is not None else valuation(alpha.norm(), 2) + 6
    image = dyadic_image(alpha, place.index, k)
    if image == 0:
        raise ValueError(f"root precision {k} too low to see the valuation")
    v = valuation(image, 2)
    if v > k - 2:
        raise ValueError(f"root precision {k} too low to read the odd part mod 4")
    odd = image >> v
    return LocalVerdict(place, odd % 4 == 1, Reason.DYADIC_CLOSED_FORM, v)


def _ring_coordinates(alpha: QuadInt) -> tuple[int, int]:
    """Coordinates of alpha in the basis (1, omega)."""
    if alpha.field.half_basis:
        return (alpha.a2 - alpha.b2) // 2, alpha.b2
    return alpha.a, alpha.b


def _omega_square(fld: FieldDesc) -> tuple[int, int]:
    return ((fld.d - 1) // 4, 1) if fld.half_basis else (fld.d, 0)


def solvable_mod_power_of_two(alpha: QuadInt, n: int) -> bool:
    """Whether x^2 + y^2 = alpha has a solution in the ring of integers mod 2^n.

    Squares mod 2^n only depend on x mod 2^(n-1), so the square table is
    built from a quarter of the ring and alpha - x^2 is looked up in it.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > _MAX_RING_EXPONENT:
        raise ValueError(f"modulus 2^{n} exceeds the enumeration limit 2^{_MAX_RING_EXPONENT}")
    m = 1 << n
    c0, c1 = _omega_square(alpha.field)
    c0 %= m
    half = m // 2 if n > 1 else m
    u = np.arange(half, dtype=np.int64)[:, None]
    w = np.arange(half, dtype=np.int64)[None, :]
    s0 = (u * u + c0 * ((w * w) % m)) % m
    s1 = (2 * u * w + c1 * w * w) % m
    squares = np.unique((s0 * m + s1).ravel())
    table = np.zeros(m * m, dtype=bool)
    table[squares] = True
    a0, a1 = _ring_coordinates(alpha)
    t0 = (a0 - squares // m) % m
    t1 = (a1 - squares % m) % m
    return bool(table[t0 * m + t1].any())


def dyadic_modulus_exponent(alpha: QuadInt) -> int:
    """Smallest n with 2^n inside p^(v+2e+1) for every place p above 2.

    Any solution modulo that ideal has a coordinate of valuation <= v/2, so
    Hensel's lemma lifts it; solvability mod 2^n therefore decides the
    local question for every n at least this large.
    """
    _nonzero(alpha)
    st = splitting_type(alpha.field, 2)
    vals = valuations_above(alpha, 2)
    if st.variant is Splitting.RAMIFIED:
        return (vals[1] + 5 + 1) // 2
    return max(vals.values()) + 3


def dyadic_enum_verdict(alpha: QuadInt, n: int | None = None) -> LocalVerdict:
    """Local verdict at the single place above 2 (2 inert or ramified)."""
    _nonzero(alpha)
    st = splitting_type(alpha.field, 2)
    if st.variant is Splitting.SPLIT:
        raise ValueError(f"2 splits in {alpha.field}; use dyadic_split_verdict")
    n0 = dyadic_modulus_exponent(alpha)
    if n is None:
        n = n0
    elif n < n0:
        raise ValueError(f"modulus exponent {n} is below the provable cutoff {n0}")
    v = valuations_above(alpha, 2)[1]
    ok = solvable_mod_power_of_two(alpha, n)
    return LocalVerdict(Place.finite(2, st.variant), ok, Reason.DYADIC_ENUMERATION, v, n)


def local_table(alpha: QuadInt) -> LocalTable:
    """Verdicts at the real places and at every place above a prime dividing 2*d*N(alpha).

    All remaining places are odd with alpha a unit there, hence solvable.
    """
    _nonzero(alpha)
    fld = alpha.field
    verdicts = real_verdicts(alpha)
    primes = set(factor(2 * abs(fld.d) * abs(alpha.norm())).primes())
    for q in sorted(primes):
        for place in places_above(fld, q):
            if q != 2:
                verdicts.append(odd_place_verdict(alpha, place))
            elif place.splitting is Splitting.SPLIT:
                verdicts.append(dyadic_split_verdict(alpha, place))
            else:
                verdicts.append(dyadic_enum_verdict(alpha))
    return LocalTable(alpha, tuple(verdicts))

