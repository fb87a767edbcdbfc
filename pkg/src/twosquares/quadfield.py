"""Exact arithmetic in the ring of integers of Q(sqrt(d)), d = +-p."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .ntheory import is_prime, kronecker, sqrt_mod_prime_power, valuation

__all__ = [
    "IntegralityError",
    "FieldMismatchError",
    "ImaginaryFieldError",
    "FieldDesc",
    "QuadInt",
    "Embedding",
    "Splitting",
    "SplittingType",
    "field",
    "make",
    "embed_sign",
    "splitting_type",
    "split_root",
    "valuations_above",
    "ParseError",
    "parse_alpha",
    "render",
]


class IntegralityError(ValueError):
    pass


class FieldMismatchError(ValueError):
    pass


class ImaginaryFieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldDesc:
    d: int

    def __post_init__(self) -> None:
        if self.d in (0, 1, -1) or not is_prime(abs(self.d)):
            raise ValueError(f"unsupported field Q(sqrt({self.d})): need d = +-p, p prime")

    @property
    def half_basis(self) -> bool:
        return self.d % 4 == 1

    @property
    def discriminant(self) -> int:
        return self.d if self.half_basis else 4 * self.d

    @property
    def is_real(self) -> bool:
        return self.d > 0

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


def field(d: int) -> FieldDesc:
    return FieldDesc(d)


@dataclass(frozen=True)
class QuadInt:
    """The element ``(a + b*sqrt(d)) / den`` with den in {1, 2}, kept canonical."""

    field: FieldDesc
    a: int
    b: int
    den: int = 1

    def __post_init__(self) -> None:
        if self.den not in (1, 2):
            raise IntegralityError(f"denominator must be 1 or 2, got {self.den}")
        if self.den == 2:
            if not self.field.half_basis or (self.a - self.b) % 2:
                raise IntegralityError(
                    f"({self.a}+{self.b}*sqrt({self.field.d}))/2 is not integral"
                )
            if self.a % 2 == 0 and self.b % 2 == 0:
                object.__setattr__(self, "a", self.a // 2)
                object.__setattr__(self, "b", self.b // 2)
                object.__setattr__(self, "den", 1)

    # doubled coordinates: self == (a2 + b2*sqrt(d)) / 2
    @property
    def a2(self) -> int:
        return self.a * (2 // self.den)

    @property
    def b2(self) -> int:
        return self.b * (2 // self.den)

    @classmethod
    def from_halves(cls, fld: FieldDesc, a2: int, b2: int) -> QuadInt:
        return cls(fld, a2, b2, 2) if (a2 % 2 or b2 % 2) else cls(fld, a2 // 2, b2 // 2, 1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.den == 1 and self.a == other
        if isinstance(other, QuadInt):
            return (self.field, self.a, self.b, self.den) == (other.field, other.a, other.b, other.den)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.d, self.a, self.b, self.den))

    def _coerce(self, other: object) -> QuadInt:
        if isinstance(other, QuadInt):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return QuadInt(self.field, other, 0)
        return NotImplemented

    def __add__(self, other: QuadInt | int) -> QuadInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadInt.from_halves(self.field, self.a2 + o.a2, self.b2 + o.b2)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(self.field, -self.a, -self.b, self.den)

    def __sub__(self, other: QuadInt | int) -> QuadInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: int) -> QuadInt:
        return (-self) + other

    def __mul__(self, other: QuadInt | int) -> QuadInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.d
        # (x1 + y1 s)(x2 + y2 s)/4 with doubled coordinates
        a4 = self.a2 * o.a2 + d * self.b2 * o.b2
        b4 = self.a2 * o.b2 + self.b2 * o.a2
        if a4 % 2 or b4 % 2:
            raise AssertionError("product left the ring of integers")
        return QuadInt.from_halves(self.field, a4 // 2, b4 // 2)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadInt:
        if n < 0:
            raise ValueError("negative powers are not integral in general")
        out, base = QuadInt(self.field, 1, 0), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> QuadInt:
        return QuadInt(self.field, self.a, -self.b, self.den)

    def norm(self) -> int:
        return (self.a * self.a - self.field.d * self.b * self.b) // (self.den * self.den)

    def trace(self) -> int:
        return 2 * self.a // self.den

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def exact_div(self, other: QuadInt | int) -> QuadInt | None:
        """self / other when the quotient lies in the ring, else None."""
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError
        num = self * o.conj()
        a2, b2 = num.a2, num.b2
        if a2 % n or b2 % n:
            return None
        try:
            return QuadInt.from_halves(self.field, a2 // n, b2 // n)
        except IntegralityError:
            return None

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"QuadInt({self.field.d}, {self.a}, {self.b}, {self.den})"


def make(fld: FieldDesc, a: int, b: int, den: int = 1) -> QuadInt:
    return QuadInt(fld, a, b, den)


class Embedding(str, Enum):
    PLUS = "plus_root"
    MINUS = "minus_root"


def embed_sign(x: QuadInt, embedding: Embedding | str) -> int:
    """Exact sign of x under sqrt(d) -> +sqrt(d) or -sqrt(d); no floating point."""
    if not x.field.is_real:
        raise ImaginaryFieldError(f"{x.field} has no real embeddings")
    emb = Embedding(embedding)
    a, b = x.a, x.b if emb is Embedding.PLUS else -x.b
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with d*b^2
    diff = a * a - x.field.d * b * b
    return sa if diff > 0 else sb  # diff == 0 impossible, d is not a square


class Splitting(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class SplittingType:
    variant: Splitting
    root_seed: int | None = None

    @property
    def places(self) -> int:
        return 2 if self.variant is Splitting.SPLIT else 1


def splitting_type(fld: FieldDesc, q: int) -> SplittingType:
    if q < 2 or not is_prime(q):
        raise ValueError(f"{q} is not prime")
    k = kronecker(fld.discriminant, q)
    if k == 0:
        return SplittingType(Splitting.RAMIFIED)
    if k == -1:
        return SplittingType(Splitting.INERT)
    return SplittingType(Splitting.SPLIT, split_root(fld, q, 1 if q > 2 else 6))


@lru_cache(maxsize=4096)
def split_root(fld: FieldDesc, q: int, k: int) -> int:
    """Image of sqrt(d) modulo q^k at the first place above a split prime q.

    The first place is fixed by the smallest root mod q (odd q) or the
    smallest root mod 64 (q = 2, read mod 32); lifting preserves it.
    """
    d = fld.d
    if q == 2:
        seeds = [r for r in range(64) if (r * r - d) % 64 == 0]
        if not seeds:
            raise ValueError(f"2 does not split in {fld}")
        r, m = seeds[0], 6
        while m < k:
            if (r * r - d) % (1 << (m + 1)):
                r += 1 << (m - 1)
            m += 1
        return r % (1 << k)
    r0 = sqrt_mod_prime_power(d, q, 1)
    if r0 is None or d % q == 0:
        raise ValueError(f"{q} does not split in {fld}")
    r, qi = r0, q
    for _ in range(1, k):
        qi *= q
        r = (r - (r * r - d) * pow(2 * r, -1, qi)) % qi
    return r


def _image_valuation(x: QuadInt, q: int, root: int, k: int) -> int:
    mod = q**k
    if q == 2:
        # (a2 + b2*r)/2 needs one extra bit before halving
        num = (x.a2 + x.b2 * root) % (mod * 2)
        num //= 2
    else:
        num = (x.a + x.b * root) * pow(x.den, -1, mod) % mod
    if num == 0:
        return k
    return valuation(num, q)


def valuations_above(x: QuadInt, q: int) -> dict[int, int]:
    """Valuation of x at each place above q, keyed by place index 1 (and 2)."""
    if x.is_zero():
        raise ValueError("valuation of zero is infinite")
    st = splitting_type(x.field, q)
    vn = valuation(x.norm(), q)
    if st.variant is Splitting.RAMIFIED:
        return {1: vn}
    if st.variant is Splitting.INERT:
        return {1: vn // 2}
    k = vn + 6
    root = split_root(x.field, q, k + (1 if q == 2 else 0))
    v1 = _image_valuation(x, q, root, k)
    v2 = _image_valuation(x, q, -root, k)
    if v1 + v2 != vn:
        raise AssertionError("split valuations do not add up to v_q(N)")
    return {1: v1, 2: v2}


class ParseError(ValueError):
    pass


class _Scanner:
    def __init__(self, text: str) -> None:
        self.s = re.sub(r"\s+", "", text)
        self.i = 0

    def peek(self) -> str:
        return self.s[self.i : self.i + 1]

    def take(self, lit: str) -> bool:
        if self.s.startswith(lit, self.i):
            self.i += len(lit)
            return True
        return False

    def expect(self, lit: str) -> None:
        if not self.take(lit):
            self.fail(f"expected {lit!r}")

    def integer(self, signed: bool = True) -> int:
        m = re.compile(r"[+-]?\d+" if signed else r"\d+").match(self.s, self.i)
        if not m:
            self.fail("expected an integer")
        self.i = m.end()
        return int(m.group())

    def fail(self, msg: str):
        raise ParseError(f"{msg} at position {self.i} in {self.s!r}")


def _parse_sum(sc: _Scanner, fld: FieldDesc) -> tuple[int, int]:
    a = sc.integer()
    b = 0
    sign = sc.peek()
    if sign in ("+", "-"):
        sc.i += 1
        if sc.peek().isdigit():
            b = sc.integer(signed=False)
            sc.expect("*")
        else:
            b = 1  # "1+sqrt(d)"
        if sign == "-":
            b = -b
        sc.expect("sqrt(")
        d = sc.integer()
        if d != fld.d:
            raise FieldMismatchError(f"expression uses sqrt({d}) but field is {fld}")
        sc.expect(")")
    return a, b


def parse_alpha(text: str, fld: FieldDesc) -> QuadInt:
    """Parse ``(a+b*sqrt(d))/den``; a bare integer is accepted as shorthand."""
    sc = _Scanner(text)
    den = 1
    if sc.take("("):
        a, b = _parse_sum(sc, fld)
        sc.expect(")")
        if sc.take("/"):
            den = sc.integer(signed=False)
    else:
        a, b = _parse_sum(sc, fld)
    if sc.i != len(sc.s):
        sc.fail("unexpected trailing input")
    return QuadInt(fld, a, b, den)


def render(x: QuadInt) -> str:
    """Inverse of parse_alpha: ``(a+b*sqrt(d))/den``, or a bare integer."""
    if x.b == 0 and x.den == 1:
        return str(x.a)
    body = f"({x.a}{x.b:+d}*sqrt({x.field.d}))"
    return body if x.den == 1 else f"{body}/{x.den}"

