"""Rational-integer primitives: symbols, primality, factorization, roots mod p."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

__all__ = [
    "Factorization",
    "jacobi",
    "kronecker",
    "is_prime",
    "factor",
    "valuation",
    "poly_has_root_mod_p",
    "poly_has_root_by_scan",
    "sqrt_mod_prime",
    "sqrt_mod_prime_power",
    "is_square",
]

# deterministic Miller-Rabin witnesses, valid for n < 3.317e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981
_TRIAL_LIMIT = 10**6

_small_primes_cache: list[int] | None = None


def _small_primes() -> list[int]:
    global _small_primes_cache
    if _small_primes_cache is None:
        n = _TRIAL_LIMIT
        sieve = bytearray([1]) * (n + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, math.isqrt(n) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
        _small_primes_cache = [i for i, flag in enumerate(sieve) if flag]
    return _small_primes_cache


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e for p, e in factors)`` with primes strictly increasing."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; 0 when gcd(a, n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n <= 0:
        raise ValueError("kronecker needs a positive modulus")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, n)


def is_prime(n: int) -> bool:
    if n < 2:
        raise ValueError(f"is_prime expects n >= 2, got {n}")
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_LIMIT:
        bases = _MR_BASES
    else:
        # beyond the proven range: add random bases, error probability < 4**-40
        rng = random.Random(n)
        bases = _MR_BASES + tuple(rng.randrange(2, n - 1) for _ in range(40))
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    """Return a nontrivial factor of the composite odd n (Pollard rho, Brent cycles)."""
    seed = 1
    while True:
        rng = random.Random(seed * 1_000_003 + n)
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        seed += 1


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    g = _brent(n)
    _split_large(g, out)
    _split_large(n // g, out)


def factor(n: int) -> Factorization:
    """Trial division up to 10**6, then Pollard-Brent rho on the cofactor."""
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    m = abs(n)
    found: dict[int, int] = {}
    if m > 1:
        for p in _small_primes():
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                found[p] = e
        if m > 1:
            if m <= _TRIAL_LIMIT**2:
                found[m] = found.get(m, 0) + 1
            else:
                _split_large(m, found)
    return Factorization(sign, tuple(sorted(found.items())))


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


# polynomials over GF(p): coefficient lists, lowest degree first, no trailing zeros


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _polymod(f: list[int], g: list[int], p: int) -> list[int]:
    f = f[:]
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        _trim(f)
    return f


def _polymulmod(f: list[int], g: list[int], h: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _polymod(_trim(out), h, p)


def _polygcd(f: list[int], g: list[int], p: int) -> list[int]:
    while g:
        f, g = g, _polymod(f, g, p)
    return f


def poly_has_root_by_scan(coeffs: list[int], p: int) -> bool:
    """Exhaustive check of h(x) = 0 mod p over x in 0..p-1."""
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def poly_has_root_mod_p(coeffs: list[int], p: int) -> bool:
    """Whether ``sum(coeffs[i] * x**i)`` has a root modulo the prime p.

    Uses deg gcd(x^p - x, h) >= 1 over GF(p); only root existence is decided,
    no factorization is attempted.
    """
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    h = _trim([c % p for c in coeffs])
    if not h:
        return True  # zero polynomial
    if len(h) == 1:
        return False
    # x^p mod h by square-and-multiply
    result = [1]
    base = _polymod([0, 1], h, p)
    e = p
    while e:
        if e & 1:
            result = _polymulmod(result, base, h, p)
        base = _polymulmod(base, base, h, p)
        e >>= 1
    xp_minus_x = result + [0] * max(0, 2 - len(result))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    xp_minus_x = _trim(xp_minus_x)
    if not xp_minus_x:
        return True  # h divides x^p - x: h splits completely
    return len(_polygcd(h, xp_minus_x, p)) >= 2


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Tonelli-Shanks; returns the smaller of the two roots, or None."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def _sqrt_unit_2adic(a: int, k: int) -> int | None:
    """Root of r^2 = a mod 2^k for odd a; lifting keeps r fixed mod 2^(m-1)."""
    if k == 1:
        return 1
    if k == 2:
        return 1 if a % 4 == 1 else None
    if a % 8 != 1:
        return None
    r = 1
    for m in range(3, k):
        # r^2 = a mod 2^m; fix the next bit
        if (r * r - a) % (1 << (m + 1)):
            r += 1 << (m - 1)
    return r % (1 << k)


def sqrt_mod_prime_power(a: int, q: int, k: int) -> int | None:
    """Some r with r^2 = a mod q^k, or None when no root exists."""
    if k < 1:
        raise ValueError("k must be positive")
    mod = q**k
    a %= mod
    if a == 0:
        return 0
    v = valuation(a, q)
    if v % 2:
        return None
    unit = a // q**v
    kk = k - v
    if q == 2:
        s = _sqrt_unit_2adic(unit, kk)
    else:
        s = sqrt_mod_prime(unit, q)
        if s is None:
            return None
        # Hensel: derivative 2s is a unit for odd q
        qi = q
        for _ in range(1, kk):
            qi *= q
            s = (s - (s * s - unit) * pow(2 * s, -1, qi)) % qi
    if s is None:
        return None
    return s * q ** (v // 2) % mod
