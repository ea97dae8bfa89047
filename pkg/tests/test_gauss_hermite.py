import math
import threading

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gausscub.gauss_hermite import (
    gauss_hermite_rule,
    gaussian_moment,
    hermite_eval,
)

from oracles import gauss_hermite_mp, gaussian_moment_mp


def test_hermite_low_degrees():
    assert hermite_eval(0, 3.7) == 1.0
    assert hermite_eval(1, 2.0) == 2.0
    assert hermite_eval(2, 1.0) == 0.0


CLOSED_FORMS = {
    0: lambda x: np.ones_like(x),
    1: lambda x: x,
    2: lambda x: (x**2 - 1) / math.sqrt(2),
    3: lambda x: (x**3 - 3 * x) / math.sqrt(6),
    4: lambda x: (x**4 - 6 * x**2 + 3) / math.sqrt(24),
}


@pytest.mark.parametrize("k", sorted(CLOSED_FORMS))
def test_recurrence_matches_closed_forms(k):
    x = np.random.default_rng(k).uniform(-5, 5, 100)
    expected = CLOSED_FORMS[k](x)
    np.testing.assert_allclose(hermite_eval(k, x), expected, rtol=1e-12, atol=1e-12)


def test_hermite_rejects_negative_degree():
    with pytest.raises(ValueError):
        hermite_eval(-1, 0.0)


def test_small_rules():
    r1 = gauss_hermite_rule(1)
    assert list(r1.nodes) == [0.0] and list(r1.weights) == [1.0]
    r2 = gauss_hermite_rule(2)
    np.testing.assert_allclose(r2.nodes, [-1, 1], atol=1e-14)
    np.testing.assert_allclose(r2.weights, [0.5, 0.5], atol=1e-14)
    r3 = gauss_hermite_rule(3)
    np.testing.assert_allclose(r3.nodes, [-math.sqrt(3), 0, math.sqrt(3)], atol=1e-14)
    np.testing.assert_allclose(r3.weights, [1 / 6, 2 / 3, 1 / 6], atol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 7, 12])
def test_rule_matches_high_precision_golub_welsch(n):
    nodes, weights = gauss_hermite_mp(n)
    rule = gauss_hermite_rule(n)
    np.testing.assert_allclose(rule.nodes, nodes, rtol=0, atol=1e-13)
    np.testing.assert_allclose(rule.weights, weights, rtol=1e-12, atol=1e-15)


def test_rule_rejects_zero_nodes():
    with pytest.raises(ValueError):
        gauss_hermite_rule(0)


@given(st.integers(min_value=1, max_value=300))
@settings(max_examples=40, deadline=None)
def test_rule_invariants(n):
    rule = gauss_hermite_rule(n)
    assert len(rule) == n
    assert abs(math.fsum(rule.weights) - 1.0) <= 1e-13
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)
    np.testing.assert_array_equal(rule.nodes, -rule.nodes[::-1])


def test_rules_are_immutable_and_cached():
    rule = gauss_hermite_rule(9)
    assert gauss_hermite_rule(9) is rule
    with pytest.raises(ValueError):
        rule.nodes[0] = 1.0


def test_concurrent_first_build_yields_one_rule():
    n = 513
    results = []
    threads = [threading.Thread(target=lambda: results.append(gauss_hermite_rule(n))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)


def test_moments():
    assert gaussian_moment(0) == 1
    assert gaussian_moment(1) == 0
    assert gaussian_moment(6) == 15
    assert gaussian_moment_mp(6) == pytest.approx(15.0, rel=1e-20)
    for k in range(0, 13):
        assert gaussian_moment(k) == pytest.approx(gaussian_moment_mp(k), rel=1e-14, abs=1e-14)


def test_moment_overflow():
    with pytest.raises(OverflowError):
        gaussian_moment(400)


@pytest.mark.parametrize("n", range(1, 21))
def test_exactness(n):
    rule = gauss_hermite_rule(n)
    for k in range(2 * n):
        exact = gaussian_moment(k)
        # scalar powers are sign-symmetric, unlike numpy's vectorised ones,
        # so the symmetric rule cancels odd moments exactly
        approx = math.fsum(w * x**k for w, x in zip(rule.weights.tolist(), rule.nodes.tolist()))
        assert abs(approx - exact) <= 1e-10 * max(1.0, exact)


def test_hermite_orthonormality():
    rule = gauss_hermite_rule(40)
    H = np.array([hermite_eval(a, rule.nodes) for a in range(16)])
    gram = (H * rule.weights) @ H.T
    assert np.abs(gram - np.eye(16)).max() <= 1e-9
