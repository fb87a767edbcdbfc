"""End-to-end verdicts and the bounded witness search used as an oracle."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .criteria import (
    CriterionDescriptor,
    NormFactorization,
    accepts,
    builtin_descriptors,
    factor_norm,
    hasse_field_list,
    weighted_sum,
)
from .local import LocalTable, local_table
from .quadfield import FieldDesc, QuadInt

__all__ = [
    "Status",
    "Mode",
    "SearchBounds",
    "CriterionTrace",
    "Verdict",
    "criterion_trace",
    "find_witness",
    "decide",
    "batch_decide",
]

DEFAULT_BOUND = 200


class Status(str, Enum):
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    UNKNOWN = "unknown"


class Mode(str, Enum):
    EXPLICIT_CRITERION = "explicit_criterion"
    HASSE_MODE = "hasse_mode"
    WITNESS_FOUND = "witness_found"
    LOCAL_OBSTRUCTION = "local_obstruction"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchBounds:
    coeff_bound: int = DEFAULT_BOUND

    def __post_init__(self) -> None:
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be positive")


@dataclass(frozen=True)
class CriterionTrace:
    factorization: NormFactorization
    sum: Fraction
    accept: bool


@dataclass(frozen=True)
class Verdict:
    alpha: QuadInt
    status: Status
    mode: Mode
    local: LocalTable
    witness: tuple[QuadInt, QuadInt] | None = None
    criterion_trace: CriterionTrace | None = None

    def __post_init__(self) -> None:
        if self.witness is not None:
            x, y = self.witness
            if x * x + y * y != self.alpha:
                raise AssertionError("witness does not satisfy x^2 + y^2 = alpha")
        if self.status is Status.UNSOLVABLE and self.mode not in (
            Mode.LOCAL_OBSTRUCTION,
            Mode.EXPLICIT_CRITERION,
        ):
            raise AssertionError(f"unsolvable verdict with mode {self.mode.value}")
        if self.mode is Mode.WITNESS_FOUND and self.witness is None:
            raise AssertionError("witness_found without a witness")
        if self.status is Status.UNKNOWN and self.mode is not Mode.INCONCLUSIVE:
            raise AssertionError("unknown verdicts are inconclusive by definition")


# --- witness search -------------------------------------------------------


def _box(fld: FieldDesc, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Doubled coordinates (U, V) of every y = (c + e*sqrt(d))/den in the box.

    Ordered by max(|U|, |V|), then U, then V, which fixes the scan order.
    """
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    U, V = np.meshgrid(2 * r, 2 * r, indexing="ij")
    U, V = U.ravel(), V.ravel()
    if fld.half_basis:
        odd = r[r % 2 != 0]
        Uo, Vo = np.meshgrid(odd, odd, indexing="ij")
        U = np.concatenate([U, Uo.ravel()])
        V = np.concatenate([V, Vo.ravel()])
    order = np.lexsort((V, U, np.maximum(np.abs(U), np.abs(V))))
    return U[order], V[order]


def _isqrt_vec(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(root, is_square) elementwise; negative entries are never squares."""
    ok = n >= 0
    root = np.sqrt(np.where(ok, n, 0).astype(np.float64)).astype(np.int64)
    for _ in range(2):  # float rounding repair
        root = np.where(root * root > n, root - 1, root)
        root = np.where((root + 1) * (root + 1) <= n, root + 1, root)
    return root, ok & (root * root == n)


def _square_root(beta: QuadInt) -> QuadInt | None:
    """Exact square root of beta in the ring of integers, if any."""
    P, Q = 2 * beta.a2, 2 * beta.b2  # beta = (P + Q*sqrt(d)) / 4
    d = beta.field.d
    disc = P * P - d * Q * Q
    if disc < 0:
        return None
    S = math.isqrt(disc)
    if S * S != disc:
        return None
    for s in (S, -S):
        r2 = P + s
        if r2 < 0 or r2 % 2:
            continue
        r = math.isqrt(r2 // 2)
        if r * r != r2 // 2:
            continue
        if r == 0:
            w2 = P - s
            if w2 % (2 * d):
                continue
            w = math.isqrt(w2 // (2 * d)) if w2 // (2 * d) >= 0 else -1
            if w < 0 or w * w != w2 // (2 * d):
                continue
        else:
            if Q % (2 * r):
                continue
            w = Q // (2 * r)
        if (r - w) % 2 or (r % 2 and not beta.field.half_basis):
            continue
        x = QuadInt.from_halves(beta.field, r, w)
        if x * x == beta:
            return x
    return None


def _canonical(x: QuadInt) -> QuadInt:
    if x.a < 0 or (x.a == 0 and x.b < 0):
        return -x
    return x


def _height(x: QuadInt) -> tuple[int, int, int]:
    return (max(abs(x.a2), abs(x.b2)), x.a2, x.b2)


def _canonical_pair(x: QuadInt, y: QuadInt) -> tuple[QuadInt, QuadInt]:
    x, y = _canonical(x), _canonical(y)
    return (x, y) if _height(x) <= _height(y) else (y, x)


def find_witness(alpha: QuadInt, bounds: SearchBounds | None = None) -> tuple[QuadInt, QuadInt] | None:
    """Search y over a coordinate box and solve x^2 = alpha - y^2 exactly.

    Writing beta = alpha - y^2, a root x of beta has N(x)^2 = N(beta) and
    Tr(x)^2 = Tr(beta) + 2 N(x), so x is pinned down without a second loop.
    Returns the first hit in scan order as a sign-normalised pair with the
    smaller element first. A miss proves nothing.
    """
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    bounds = bounds or SearchBounds()
    fld = alpha.field
    d = fld.d
    U, V = _box(fld, bounds.coeff_bound)
    # beta = (P + Q sqrt(d)) / 4
    big = (abs(alpha.a2) + 4 * bounds.coeff_bound**2 * (abs(d) + 1)) ** 2 * (abs(d) + 1)
    if big >= 2**62:
        U, V = U.astype(object), V.astype(object)
    P = 2 * alpha.a2 - U * U - d * V * V
    Q = 2 * alpha.b2 - 2 * U * V
    disc = P * P - d * Q * Q
    if U.dtype == object:
        hits = range(len(U))
    else:
        S, sq = _isqrt_vec(disc)
        # (P + S)/2 or (P - S)/2 must be a nonnegative square
        r_plus, ok_plus = _isqrt_vec(np.where((P + S) % 2 == 0, (P + S) // 2, -1))
        r_minus, ok_minus = _isqrt_vec(np.where((P - S) % 2 == 0, (P - S) // 2, -1))
        hits = np.nonzero(sq & (ok_plus | ok_minus))[0]
    for i in hits:
        y = QuadInt.from_halves(fld, int(U[i]), int(V[i]))
        x = _square_root(alpha - y * y)
        if x is not None:
            return _canonical_pair(x, y)
    return None


# --- decision pipeline ----------------------------------------------------


def criterion_trace(desc: CriterionDescriptor, alpha: QuadInt) -> CriterionTrace:
    nf = factor_norm(alpha, desc)
    total = weighted_sum(desc, nf)
    return CriterionTrace(nf, total, accepts(desc, total))


def decide(
    alpha: QuadInt,
    bounds: SearchBounds | None = None,
    descriptors: dict[int, CriterionDescriptor] | None = None,
) -> Verdict:
    """Is alpha a sum of two squares in its ring of integers?

    Local obstructions are checked first; then the field's explicit
    criterion, the local-global fields, and finally the bounded search.
    """
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    bounds = bounds or SearchBounds()
    if descriptors is None:
        descriptors = builtin_descriptors()
    table = local_table(alpha)
    d = alpha.field.d
    desc = descriptors.get(d)
    trace = criterion_trace(desc, alpha) if desc is not None else None
    if not table.all_pass:
        return Verdict(alpha, Status.UNSOLVABLE, Mode.LOCAL_OBSTRUCTION, table, criterion_trace=trace)
    if desc is not None:
        if not trace.accept:
            return Verdict(alpha, Status.UNSOLVABLE, Mode.EXPLICIT_CRITERION, table, criterion_trace=trace)
        witness = find_witness(alpha, bounds)
        return Verdict(alpha, Status.SOLVABLE, Mode.EXPLICIT_CRITERION, table, witness, trace)
    if d in hasse_field_list():
        witness = find_witness(alpha, bounds)
        return Verdict(alpha, Status.SOLVABLE, Mode.HASSE_MODE, table, witness)
    witness = find_witness(alpha, bounds)
    if witness is not None:
        return Verdict(alpha, Status.SOLVABLE, Mode.WITNESS_FOUND, table, witness)
    return Verdict(alpha, Status.UNKNOWN, Mode.INCONCLUSIVE, table)


def batch_decide(
    alphas: list[QuadInt],
    bounds: SearchBounds | None = None,
    descriptors: dict[int, CriterionDescriptor] | None = None,
    workers: int = 1,
) -> list[Verdict | Exception]:
    """decide() over a list of elements of one field, order preserved.

    Per-element failures are returned in place of the verdict.
    """
    if len({a.field for a in alphas}) > 1:
        raise ValueError("batch_decide needs all elements in the same field")

    def one(alpha: QuadInt) -> Verdict | Exception:
        try:
            return decide(alpha, bounds, descriptors)
        except Exception as exc:  # collected, not raised
            return exc

    if workers <= 1:
        return [one(a) for a in alphas]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, alphas))
