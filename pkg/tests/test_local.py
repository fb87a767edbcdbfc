import itertools
import random

import numpy as np
import pytest
from sympy import primerange

from twosquares.local import (
    LocalVerdict,
    Place,
    Reason,
    dyadic_enum_verdict,
    dyadic_image,
    dyadic_modulus_exponent,
    dyadic_split_verdict,
    local_table,
    odd_place_verdict,
    places_above,
    real_verdicts,
    solvable_mod_power_of_two,
)
from oracles import naive_ring_solvable, rand_elem
from twosquares.quadfield import Embedding, QuadInt, Splitting, field, split_root, splitting_type, valuations_above


def v2(n):
    return (n & -n).bit_length() - 1


# places and verdict records


def test_place_strings():
    assert str(Place.real(Embedding.PLUS)) == "real(+)"
    assert str(Place.real(Embedding.MINUS)) == "real(-)"
    assert [str(p) for p in places_above(field(17), 2)] == ["q=2#1", "q=2#2"]
    assert [str(p) for p in places_above(field(-79), 79)] == ["q=79(ram)"]
    assert [str(p) for p in places_above(field(-79), 5)] == ["q=5#1", "q=5#2"]
    assert [str(p) for p in places_above(field(-3), 5)] == ["q=5(inert)"]
    with pytest.raises(ValueError):
        Place.finite(5, Splitting.SPLIT)


def test_verdict_invariants():
    real = Place.real(Embedding.PLUS)
    with pytest.raises(ValueError):
        LocalVerdict(real, True, Reason.EVEN_VALUATION)
    with pytest.raises(ValueError):
        LocalVerdict(Place.finite(3, Splitting.INERT), False, Reason.SIGN_OBSTRUCTION)
    with pytest.raises(ValueError):
        LocalVerdict(Place.finite(3, Splitting.INERT), True, Reason.ODD_VALUATION_OBSTRUCTION, 1)


def test_real_places_examples():
    F = field(17)
    sqrt17 = QuadInt(F, 0, 1)
    verdicts = real_verdicts(sqrt17)
    assert [(str(v.place), v.solvable) for v in verdicts] == [("real(+)", True), ("real(-)", False)]
    assert verdicts[1].reason is Reason.SIGN_OBSTRUCTION
    assert real_verdicts(QuadInt(field(-79), 1, 1, 2)) == []
    assert not local_table(QuadInt(F, 4, 1)).all_pass  # 4 - sqrt17 < 0


def test_odd_place_examples():
    F = field(-79)
    # 5 splits and 5 = 1 mod 4, so every valuation is fine
    for pl in places_above(F, 5):
        assert odd_place_verdict(QuadInt(F, 5, 0), pl).solvable
    # (-79/3) = -1: 3 is inert, residue field F_9, 9 = 1 mod 4
    (pl,) = places_above(F, 3)
    assert pl.splitting is Splitting.INERT
    assert odd_place_verdict(QuadInt(F, 3, 0), pl).reason is Reason.MINUS_ONE_LOCAL_SQUARE
    # (-3/7) = 1: 7 splits, residue field F_7, 7 = 3 mod 4
    G = field(-3)
    x = QuadInt(G, 2, 1)  # norm 7
    verdicts = [odd_place_verdict(x, pl) for pl in places_above(G, 7)]
    assert sorted((v.valuation, v.solvable) for v in verdicts) == [(0, True), (1, False)]
    with pytest.raises(ValueError):
        odd_place_verdict(x, places_above(G, 2)[0])


def test_table_covers_expected_places():
    F = field(-79)
    t = local_table(QuadInt(F, 1, 1, 2))  # norm 20
    assert [str(v.place) for v in t.verdicts] == ["q=2#1", "q=2#2", "q=5#1", "q=5#2", "q=79(ram)"]
    assert t.all_pass
    assert t.failing() == []
    # sqrt17 maps to r and -r in Z_2; exactly one of them is 3 mod 4
    t = local_table(QuadInt(field(17), 0, 1))
    failing = [str(v.place) for v in t.failing()]
    assert failing[0] == "real(-)" and failing[1:] in (["q=2#1"], ["q=2#2"])


# odd places against brute force


def _squares_code(q, M, d):
    """All squares in o_F / q^M (basis 1, sqrt d; q odd) as codes A*q^M + B."""
    m = q**M
    a = np.arange(m, dtype=np.int64)[:, None]
    b = np.arange(m, dtype=np.int64)[None, :]
    A = (a * a + d * b * b) % m
    B = (2 * a * b) % m
    return A, B, m


def _primitive_solution_ring(alpha_ab, q, M, d, unit_mask):
    """Exists x unit, y with x^2 + y^2 = alpha mod q^M o_F (brute force)."""
    A, B, m = _squares_code(q, M, d)
    table = np.zeros(m * m, dtype=bool)
    table[(A * m + B).ravel()] = True
    a0, b0 = alpha_ab
    tA = (a0 - A[unit_mask]) % m
    tB = (b0 - B[unit_mask]) % m
    return bool(table[tA * m + tB].any())


def _primitive_solution_zq(target, q, M):
    """Exists x unit, y with x^2 + y^2 = target mod q^M (brute force in Z/q^M)."""
    m = q**M
    x = np.arange(m, dtype=np.int64)
    sq = np.zeros(m, dtype=bool)
    sq[(x * x) % m] = True
    units = x[x % q != 0]
    return bool(sq[(target - units * units) % m].any())


def _odd_oracle(alpha, place):
    """Brute-force local solvability at an odd place.

    A solution with a unit coordinate lifts by Hensel (derivative 2x is a
    unit), and any solution divides down to one; so try alpha / pi^(2j).
    """
    F = alpha.field
    q, d = place.q, F.d
    v = valuations_above(alpha, q)[place.index or 1]
    for j in range(v // 2 + 1):
        w = v - 2 * j
        M = w + 1
        if place.splitting is Splitting.SPLIT:
            r = split_root(F, q, M + 2 * j)
            if place.index == 2:
                r = -r
            mod = q ** (M + 2 * j)
            image = (alpha.a + alpha.b * r) * pow(alpha.den, -1, mod) % mod
            assert image % q ** (2 * j) == 0
            if _primitive_solution_zq(image // q ** (2 * j), q, M):
                return True
        else:
            pi2 = QuadInt(F, d, 0) if place.splitting is Splitting.RAMIFIED else QuadInt(F, q * q, 0)
            beta = alpha.exact_div(pi2**j)
            assert beta is not None
            # ramified: pi^(w+1) contains q^ceil((w+1)/2); inert: q^(w+1)
            Mq = (M + 1) // 2 if place.splitting is Splitting.RAMIFIED else M
            m = q**Mq
            inv = pow(beta.den, -1, m)
            ab = (beta.a * inv % m, beta.b * inv % m)
            grid_a = np.arange(m)[:, None] % q != 0
            grid_b = np.arange(m)[None, :] % q != 0
            if place.splitting is Splitting.RAMIFIED:
                unit = np.broadcast_to(grid_a, (m, m))
            else:
                unit = grid_a | grid_b
            if _primitive_solution_ring(ab, q, Mq, d, unit):
                return True
    return False


@pytest.mark.parametrize("d", [-79, 17, -7, 7, -3, -5, 13, -23, 41])
def test_odd_place_split_matches_brute_force(d):
    rng = random.Random(d)
    F = field(d)
    checked = 0
    for q in (int(q) for q in primerange(3, 51)):
        if splitting_type(F, q).variant is not Splitting.SPLIT:
            continue
        for pl in places_above(F, q):
            for _ in range(15):
                # bias toward alpha divisible by q so valuations 0, 1, 2 all appear
                alpha = rand_elem(rng, F, 60) * QuadInt(F, rng.choice((1, 1, q)), 0)
                if valuations_above(alpha, q)[pl.index] > 2:
                    continue
                assert odd_place_verdict(alpha, pl).solvable == _odd_oracle(alpha, pl), (alpha, pl)
                checked += 1
    assert checked > 0


@pytest.mark.parametrize("d", [-3, 5, -79, 13, -7, -5])
def test_odd_place_inert_matches_brute_force(d):
    rng = random.Random(2 * d)
    F = field(d)
    qs = [q for q in (3, 5, 7, 11, 13) if splitting_type(F, q).variant is Splitting.INERT][:2]
    assert qs
    for q in qs:
        (pl,) = places_above(F, q)
        assert pl.splitting is Splitting.INERT
        for _ in range(12):
            alpha = rand_elem(rng, F, 40) * QuadInt(F, rng.choice((1, q)), 0)
            if valuations_above(alpha, q)[1] > 1:
                continue
            assert odd_place_verdict(alpha, pl).solvable == _odd_oracle(alpha, pl), alpha


@pytest.mark.parametrize("d", [-3, 5, -7, 13, -11, 17, -19, 23])
def test_odd_place_ramified_matches_brute_force(d):
    rng = random.Random(3 * d)
    F = field(d)
    q = abs(d)
    (pl,) = places_above(F, q)
    assert pl.splitting is Splitting.RAMIFIED
    seen = set()
    for _ in range(40):
        alpha = rand_elem(rng, F, 30) * QuadInt(F, 0, 1) ** rng.randint(0, 2)
        v = valuations_above(alpha, q)[1]
        if v > 2:
            continue
        seen.add(v)
        assert odd_place_verdict(alpha, pl).solvable == _odd_oracle(alpha, pl), alpha
    assert {0, 1} <= seen


# places above 2


def _brute_z2(a, n):
    """x^2 + y^2 = a solvable mod 2^n."""
    m = 1 << n
    x = np.arange(m)
    sq = np.zeros(m, dtype=bool)
    sq[(x * x) % m] = True
    return bool(sq[(a - x * x) % m].any())


@pytest.mark.parametrize("d", [17, -7])
def test_dyadic_split_matches_classical_rule(d):
    F = field(d)
    for a in itertools.chain(range(-10_000, 0), range(1, 10_001)):
        odd = a >> v2(a)
        want = odd % 4 == 1
        for pl in places_above(F, 2):
            assert dyadic_split_verdict(QuadInt(F, a, 0), pl).solvable == want, a


def test_classical_rule_matches_brute_force():
    # x^2 + y^2 = a in Z_2: primitive solutions lift from mod 2^(v+3)
    for a in range(1, 2000):
        v = v2(a)
        odd = a >> v
        assert _brute_z2(a, v + 3) == (odd % 4 == 1)


def test_dyadic_image_is_a_ring_map():
    rng = random.Random(5)
    F = field(-79)
    for _ in range(300):
        x, y = rand_elem(rng, F, 500), rand_elem(rng, F, 500)
        for idx in (1, 2):
            k = 20
            m = 1 << k
            assert dyadic_image(x * y, idx, k) == dyadic_image(x, idx, k) * dyadic_image(y, idx, k) % m
            assert dyadic_image(x + y, idx, k) == (dyadic_image(x, idx, k) + dyadic_image(y, idx, k)) % m


def test_dyadic_split_on_minus_one():
    for p in (7, 23, 31, 47, 71, 79):
        F = field(-p)
        assert not any(dyadic_split_verdict(QuadInt(F, -1, 0), pl).solvable for pl in places_above(F, 2))


def test_dyadic_split_rejects_wrong_field():
    with pytest.raises(ValueError):
        dyadic_split_verdict(QuadInt(field(-5), 1, 0), places_above(field(17), 2)[0])


@pytest.mark.parametrize("d", [-3, 5, -5, 7, 2, -2, 17, -79])
def test_solvable_mod_power_of_two_matches_naive(d):
    rng = random.Random(4 * d)
    F = field(d)
    for n in (1, 2, 3, 4):
        for _ in range(8):
            alpha = rand_elem(rng, F, 50)
            assert solvable_mod_power_of_two(alpha, n) == naive_ring_solvable(alpha, n), (alpha, n)


def test_solvable_mod_power_of_two_limits():
    x = QuadInt(field(-5), 1, 0)
    with pytest.raises(ValueError):
        solvable_mod_power_of_two(x, 0)
    with pytest.raises(ValueError):
        solvable_mod_power_of_two(x, 14)


NON_SPLIT = [-3, 5, 13, -11, -5, 7, 2, -2, 3, -19]


@pytest.mark.parametrize("d", NON_SPLIT)
def test_dyadic_enum_stable_under_larger_modulus(d):
    rng = random.Random(6 * d)
    F = field(d)
    for _ in range(200):
        alpha = rand_elem(rng, F, 40)
        n = dyadic_modulus_exponent(alpha)
        if n + 2 > 13:
            continue
        results = {dyadic_enum_verdict(alpha, n + k).solvable for k in range(3)}
        assert len(results) == 1, alpha


def test_dyadic_enum_guards():
    F = field(-5)
    alpha = QuadInt(F, 1, 1)
    n = dyadic_modulus_exponent(alpha)
    with pytest.raises(ValueError):
        dyadic_enum_verdict(alpha, n - 1)
    with pytest.raises(ValueError):
        dyadic_enum_verdict(QuadInt(field(17), 1, 0))
    v = dyadic_enum_verdict(alpha)
    assert v.reason is Reason.DYADIC_ENUMERATION and v.modulus_exponent == n


def test_minus_one_at_two_examples():
    # -1 is a global sum of two squares here: w^2 + conj(w)^2, 2^2 + (sqrt-5)^2, 1 + (sqrt-2)^2
    for d in (-3, -5, -2):
        assert dyadic_enum_verdict(QuadInt(field(d), -1, 0)).solvable


# witnesses imply local solvability


@pytest.mark.parametrize("d", [-79, 17, -7, 7, -3, -5])
def test_witness_implies_local(d):
    rng = random.Random(8 * d)
    F = field(d)
    done = 0
    while done < 500:
        x, y = rand_elem(rng, F, 25), rand_elem(rng, F, 25)
        alpha = x * x + y * y
        if alpha.is_zero():
            continue
        t = local_table(alpha)
        assert t.all_pass, (alpha, [str(v.place) for v in t.failing()])
        done += 1
