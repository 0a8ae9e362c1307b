import math

import pytest

import pplab


def test_thresholds_match():
    got = [pplab.threshold(t)["derived"] for t in range(1, 7)]
    assert got == ["39/29", "6/5", "39/29", "378/181", "3581/3106", "609/293"]


def test_omega():
    assert pplab.omega(1.5) == 2 / 3
    assert abs(pplab.omega(3) - (1 + math.log(2)) / 3) < 1e-6


def test_counts_and_engines():
    assert pplab.count_equation(3, 1.5, 15, X=16)["raw"] == 1
    a = pplab.count_inequality(3, 1.3, 20000, X=2000, eps=3)
    b = pplab.count_inequality(3, 1.3, 20000, X=2000, eps=3, engine="naive")
    assert a["raw"] == b["raw"]


def test_expsum_at_zero_counts_primes():
    (v,) = pplab.expsum(100, 1.5, [0.0])
    assert v == pytest.approx(20)
    assert len(pplab.window_primes(100)) == 20


def test_smoothing():
    s = pplab.SmoothedIndicator(0.3, 4)
    assert s.phi(0.0) == 1.0 and s.phi(0.3) == 0.0
    ch = pplab.choose_smoothing(1.2, 0.01, 1e5)
    assert not ch["admissible"] and ch["least_K"] > ch["K"]


def test_weights_dominate_primes():
    rho = pplab.weights(2000, "prime")
    plus = pplab.weights(2000, "thm4-plus")
    assert all(p >= r for p, r in zip(plus, rho))


def test_main_terms():
    L = pplab.singular_sum(2, 1.5, 10, X=16)
    assert L == pytest.approx(0.782345205491, rel=1e-10)
    v, err = pplab.singular_integral(2, 1.2, 5000, X=1000)
    assert v > 0 and err >= 0


def test_errors_are_typed():
    with pytest.raises(pplab.DomainError):
        pplab.count_equation(3, 2.0, 100)
    with pytest.raises(pplab.ResourceError):
        pplab.count_equation(5, 1.5, 100000, X=1e5)
    assert issubclass(pplab.ResourceError, pplab.Error)
