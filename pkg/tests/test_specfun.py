import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from mqlandau import DomainError, NonConvergenceError
from mqlandau.specfun import gamma_fn, hyp0f1, kummer_m, kummer_m_asymptotic


@pytest.mark.parametrize("x, expected", [(1, 1.0), (5, 24.0), (0.5, math.sqrt(math.pi))])
def test_gamma_values(x, expected):
    assert gamma_fn(x) == pytest.approx(expected, rel=1e-14)


def test_gamma_range_against_mpmath():
    for x in np.linspace(1, 30, 59):
        assert gamma_fn(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-12)


@pytest.mark.parametrize("x", [0, -1, -0.5])
def test_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        gamma_fn(x)


def test_kummer_trivial_cases():
    assert kummer_m(-3.7, 2, 0) == 1.0
    assert kummer_m(1.5, 1.5, 1.0) == pytest.approx(math.e, rel=1e-14)
    assert kummer_m(1, 2, 1) == pytest.approx(math.e - 1, rel=1e-14)


def test_kummer_equal_parameters_gives_exponential():
    for x in np.linspace(0, 5, 26):
        assert kummer_m(2.3, 2.3, x) == pytest.approx(math.exp(x), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(-20, 5), st.integers(1, 6), st.floats(0, 4))
def test_kummer_against_scipy(a, b, x):
    ref = float(mpmath.hyp1f1(a, b, x))
    # near a zero the series can only resolve to eps times its largest term
    scale = sum(abs(float(mpmath.rf(a, k) / mpmath.rf(b, k))) * x**k / math.factorial(k) for k in range(80))
    assert abs(kummer_m(a, b, x) - ref) <= 1e-13 * max(scale, 1.0)
    assert abs(special.hyp1f1(a, b, x) - kummer_m(a, b, x)) <= 1e-9 * max(scale, 1.0)


def _ode_cases(seed=7, count=20):
    rng = np.random.default_rng(seed)
    return [(rng.uniform(-20, 5), rng.uniform(1, 6), rng.uniform(1e-3, 4)) for _ in range(count)]


def test_kummer_ode_with_contiguous_derivatives():
    # M' = a/b M(a+1, b+1), M'' = a(a+1)/(b(b+1)) M(a+2, b+2)
    for a, b, x in _ode_cases():
        M0 = kummer_m(a, b, x)
        M1 = a / b * kummer_m(a + 1, b + 1, x)
        M2 = a * (a + 1) / (b * (b + 1)) * kummer_m(a + 2, b + 2, x)
        assert abs(x * M2 + (b - x) * M1 - a * M0) < 1e-10


@pytest.mark.xfail(strict=True, reason="h=1e-4 central differences cannot reach 1e-9 in double precision")
def test_kummer_ode_central_differences():
    h = 1e-4
    worst = 0.0
    for a, b, x in _ode_cases():
        if x <= h:
            continue
        f = lambda t: kummer_m(a, b, t)
        d1 = (f(x + h) - f(x - h)) / (2 * h)
        d2 = (f(x + h) - 2 * f(x) + f(x - h)) / h**2
        worst = max(worst, abs(x * d2 + (b - x) * d1 - a * f(x)))
    assert worst < 1e-9


def test_hyp0f1_is_bessel_limit():
    for x in (0.5, 2.0, 7.5):
        assert hyp0f1(1, -x * x / 4) == pytest.approx(special.j0(x), abs=1e-14)
        assert hyp0f1(2, -x * x / 4) * x / 2 == pytest.approx(special.j1(x), abs=1e-14)


@pytest.mark.parametrize("a, bar", [(-50, 0.02), (-200, 0.005)])
def test_asymptotic_examples(a, bar):
    exact = kummer_m(a, 1, 0.5)
    assert abs(kummer_m_asymptotic(a, 1, 0.5) - exact) / abs(exact) < bar


def _rel_err(a, b=1, x=0.5):
    exact = kummer_m(a, b, x)
    return abs(kummer_m_asymptotic(a, b, x) - exact) / abs(exact)


def test_asymptotic_error_envelope_decreases():
    # worst error over an octave of a, well away from the sampling of cosine zeros
    worst = []
    for A in (-25, -50, -100, -200):
        a = np.linspace(2 * A, A, 401)
        exact = np.array([kummer_m(v, 1, 0.5) for v in a])
        approx = np.array([kummer_m_asymptotic(v, 1, 0.5) for v in a])
        worst.append(float(np.max(np.abs(approx - exact)) / np.max(np.abs(exact))))
    assert all(b < a for a, b in zip(worst, worst[1:]))


@pytest.mark.xfail(strict=True, reason="pointwise error at a=-100 sits near a cosine zero and jumps up")
def test_asymptotic_error_monotone_pointwise():
    errs = [_rel_err(a) for a in (-25, -50, -100, -200)]
    inversions = [(e0, e1) for e0, e1 in zip(errs, errs[1:]) if e1 > e0]
    assert len(inversions) <= 1 and all(e1 - e0 <= 0.1 * e0 for e0, e1 in inversions)


def test_asymptotic_zeros_give_energy_condition():
    # cos(sqrt(2bx - 4ax) - b pi/2 + pi/4) = 0 with b = |l| + 1 is the
    # condition behind the energy formula: sqrt(...) = n pi + |l| pi/2 + 3 pi/4
    for l in (0, 1, 2):
        b, x = l + 1, 0.3
        for n in range(3):
            s = n * math.pi + l * math.pi / 2 + 3 * math.pi / 4
            a = (2 * b * x - s**2) / (4 * x)
            assert abs(kummer_m_asymptotic(a, b, x)) < 1e-12 * abs(kummer_m_asymptotic(a - 0.5, b, x)) + 1e-14


def test_asymptotic_domain():
    with pytest.raises(DomainError):
        kummer_m_asymptotic(1.0, 2.0, 0.5)


@pytest.mark.parametrize("b", [0, -1, -3])
def test_poles_rejected(b):
    with pytest.raises(DomainError):
        kummer_m(1.0, b, 1.0)


def test_nonconvergence_carries_partial_sum(monkeypatch):
    import mqlandau.specfun as sf

    monkeypatch.setattr(sf, "MAX_TERMS", 5)
    with pytest.raises(NonConvergenceError) as err:
        sf.kummer_m(1.0, 1.0, 10.0)
    assert err.value.partial == pytest.approx(sum(10.0**k / math.factorial(k) for k in range(6)))
