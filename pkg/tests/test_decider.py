import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rand_elem
from twosquares.decider import (
    Mode,
    SearchBounds,
    Status,
    Verdict,
    batch_decide,
    decide,
    find_witness,
)
from twosquares.local import local_table
from twosquares.quadfield import QuadInt, field


def box(F, bound):
    """Every (a + b*sqrt(d))/den in the ring with |a|, |b| <= bound."""
    out = []
    for a, b in itertools.product(range(-bound, bound + 1), repeat=2):
        out.append(QuadInt(F, a, b))
        if F.half_basis and a % 2 and b % 2:
            out.append(QuadInt(F, a, b, 2))
    return out


def brute_representable(F, bound, norm_bound):
    """alpha -> True for every alpha = x^2 + y^2 with x, y in the box."""
    squares = [z * z for z in box(F, bound)]
    found = set()
    for s, t in itertools.combinations_with_replacement(squares, 2):
        alpha = s + t
        if not alpha.is_zero() and abs(alpha.norm()) <= norm_bound:
            found.add(alpha)
    return found


# examples


def test_decide_examples_minus79():
    F = field(-79)
    v = decide(QuadInt(F, 2, 0))
    assert v.status is Status.SOLVABLE and v.witness == (QuadInt(F, 1, 0), QuadInt(F, 1, 0))
    v = decide(QuadInt(F, 5, 0))
    assert v.status is Status.SOLVABLE and v.witness == (QuadInt(F, 1, 0), QuadInt(F, 2, 0))
    assert v.criterion_trace.sum == 2 and v.mode is Mode.EXPLICIT_CRITERION
    v = decide(QuadInt(F, 1, 1, 2))
    assert v.status is Status.UNSOLVABLE and v.mode is Mode.EXPLICIT_CRITERION
    assert v.criterion_trace.sum == 1 and v.witness is None


def test_decide_examples_17():
    F = field(17)
    for alpha in (QuadInt(F, 0, 1), QuadInt(F, 4, 1)):
        v = decide(alpha)
        assert v.status is Status.UNSOLVABLE and v.mode is Mode.LOCAL_OBSTRUCTION
        assert v.criterion_trace is not None
    v = decide(QuadInt(F, 17, 4))
    assert v.status is Status.SOLVABLE
    assert v.witness == (QuadInt(F, 3, 1, 2), QuadInt(F, 5, 1, 2))


def test_decide_modes_elsewhere():
    v = decide(QuadInt(field(-7), -1, 0))
    assert v.status is Status.UNSOLVABLE and v.mode is Mode.LOCAL_OBSTRUCTION
    assert v.criterion_trace is None
    v = decide(QuadInt(field(-5), 2, 0))
    assert v.status is Status.SOLVABLE and v.mode is Mode.WITNESS_FOUND
    v = decide(QuadInt(field(-23), 2, 0))
    assert v.mode is Mode.HASSE_MODE and v.status is Status.SOLVABLE


def test_unknown_without_descriptor():
    # locally fine, globally not a sum of two squares; without the criterion
    # the engine can only report that its search came up empty
    alpha = QuadInt(field(-79), 1, 1, 2)
    assert local_table(alpha).all_pass
    assert find_witness(alpha, SearchBounds(50)) is None
    v = decide(alpha, SearchBounds(20), descriptors={})
    assert v.status is Status.UNKNOWN and v.mode is Mode.INCONCLUSIVE


def test_decide_rejects_zero():
    with pytest.raises(ValueError):
        decide(QuadInt(field(17), 0, 0))
    with pytest.raises(ValueError):
        find_witness(QuadInt(field(17), 0, 0))
    with pytest.raises(ValueError):
        SearchBounds(0)


# find_witness against brute force


@pytest.mark.parametrize("d", [-79, 17, -5, 7, -3, 2])
def test_find_witness_matches_brute_force(d):
    F = field(d)
    bound = 5
    reps = brute_representable(F, bound, 10**6)
    for alpha in reps:
        w = find_witness(alpha, SearchBounds(bound))
        assert w is not None, alpha
        x, y = w
        assert x * x + y * y == alpha


@pytest.mark.parametrize("d", [-79, 17, -5])
def test_find_witness_misses_are_genuine(d):
    # anything the search misses must not be representable inside its box
    F = field(d)
    reps = brute_representable(F, 4, 400)
    rng = random.Random(d)
    for _ in range(300):
        alpha = rand_elem(rng, F, 20)
        if abs(alpha.norm()) > 400:
            continue
        if find_witness(alpha, SearchBounds(4)) is None:
            assert alpha not in reps, alpha


def test_find_witness_large_coordinates():
    F = field(-79)
    x = QuadInt(F, 10**12 + 1, 3)
    alpha = x * x + 1
    w = find_witness(alpha, SearchBounds(3))
    assert w is not None and w[0] * w[0] + w[1] * w[1] == alpha


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([-79, 17, -7, 13]), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_witness_soundness(d, a, b, c, e):
    F = field(d)
    alpha = QuadInt(F, a, b) ** 2 + QuadInt(F, c, e) ** 2
    if alpha.is_zero():
        return
    w = find_witness(alpha, SearchBounds(30))
    assert w is not None
    x, y = w
    assert x * x + y * y == alpha
    assert local_table(alpha).all_pass
    v = decide(alpha, SearchBounds(30))
    assert v.status is Status.SOLVABLE


def test_witness_is_canonical():
    F = field(17)
    x, y = find_witness(QuadInt(F, 17, 4))
    for z in (x, y):
        assert z.a > 0 or (z.a == 0 and z.b > 0)
    assert (max(abs(x.a2), abs(x.b2)), x.a2, x.b2) <= (max(abs(y.a2), abs(y.b2)), y.a2, y.b2)


# verdict record


def test_verdict_invariants():
    F = field(-79)
    alpha = QuadInt(F, 2, 0)
    table = local_table(alpha)
    one = QuadInt(F, 1, 0)
    with pytest.raises(AssertionError):
        Verdict(alpha, Status.SOLVABLE, Mode.WITNESS_FOUND, table, (one, one + one))
    with pytest.raises(AssertionError):
        Verdict(alpha, Status.UNSOLVABLE, Mode.WITNESS_FOUND, table, (one, one))
    with pytest.raises(AssertionError):
        Verdict(alpha, Status.SOLVABLE, Mode.WITNESS_FOUND, table)
    with pytest.raises(AssertionError):
        Verdict(alpha, Status.UNKNOWN, Mode.HASSE_MODE, table)


def test_decide_is_pure():
    rng = random.Random(9)
    F = field(17)
    for _ in range(20):
        alpha = rand_elem(rng, F, 30)
        assert decide(alpha, SearchBounds(40)) == decide(alpha, SearchBounds(40))


# batches


def test_batch_decide():
    assert batch_decide([]) == []
    rng = random.Random(10)
    F = field(-79)
    alphas = [rand_elem(rng, F, 30) for _ in range(40)]
    serial = batch_decide(alphas, SearchBounds(40))
    parallel = batch_decide(alphas, SearchBounds(40), workers=4)
    assert serial == parallel
    assert [v.alpha for v in serial] == alphas


def test_batch_collects_errors():
    F = field(-79)
    out = batch_decide([QuadInt(F, 2, 0), QuadInt(F, 0, 0)])
    assert isinstance(out[0], Verdict) and isinstance(out[1], ValueError)
    with pytest.raises(ValueError):
        batch_decide([QuadInt(F, 2, 0), QuadInt(field(17), 2, 0)])
