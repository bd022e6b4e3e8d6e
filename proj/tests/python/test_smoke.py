import itertools

import pytest

zqadd = pytest.importorskip("zqadd")


def brute_xi(a, n, q):
    return min(len({(x + y) % q for x in a for y in b}) for b in itertools.combinations(range(q), n))


def test_sumset_and_basics():
    s = zqadd.ResidueSet(5, [0, 1]) + zqadd.ResidueSet(5, [0, 2])
    assert s.elements() == [0, 1, 2, 3]
    assert zqadd.interval(10, 2, 12).elements() == [0, 1, 2, 10, 11]
    assert zqadd.seminorm(7, 12) == 5
    assert zqadd.period_order(zqadd.ResidueSet(12, [0, 3, 6, 9])) == 4


def test_bad_element_raises():
    with pytest.raises(ValueError):
        zqadd.ResidueSet(7, [0, 7])


def test_xi_matches_brute_force():
    r = zqadd.xi(zqadd.ResidueSet(7, [0, 1, 3]), 2)
    assert r["value"] == 5
    for q, a, n in [(8, [0, 1, 4], 3), (9, [0, 2, 3, 7], 2), (10, [0, 5], 4)]:
        assert zqadd.xi(zqadd.ResidueSet(q, a), n, exact=True)["value"] == brute_xi(a, n, q)


def test_alpha_identity():
    q, a = 12, [0, 1, 2, 7, 8]
    prof = zqadd.alpha_profile(zqadd.ResidueSet(q, a))
    for t in range(1, q):
        assert len({(x + y) % q for x in a for y in (0, t)}) == len(a) + prof[t]
    assert zqadd.min_alpha(zqadd.ResidueSet(q, a)) == 1


def test_digital_and_mu():
    assert zqadd.is_digital(zqadd.ResidueSet(8, [0, 3]))
    assert not zqadd.is_digital(zqadd.ResidueSet(8, [0, 2]))
    assert zqadd.prime_condition(6, 36)
    assert zqadd.digital_set_count(5, 25) == 3125
    assert zqadd.mu(7)["mu"] == 4
    assert zqadd.projection(3)["p"] == 67


def test_suite_runs_deterministically():
    assert "xi-oracle" in zqadd.suites()
    one = zqadd.run_suite("alpha-identity", seed=42, workers=1)
    four = zqadd.run_suite("alpha-identity", seed=42, workers=4)
    assert one == four
    assert one["counterexamples"] == []
