"""Real-argument special functions for the hard-wall problem.

Only what the Kummer-zero quantization needs: the gamma function on positive
reals, the confluent hypergeometric series M(a, b, x), its Bessel-type limit
0F1(; b; z), and the oscillatory large-|a| asymptotic form of M.
"""

from __future__ import annotations

import math

from mqlandau.errors import DomainError, NonConvergenceError

#: Relative size below which a series term is considered negligible.
TERM_RTOL = 1e-16
#: Hard cap on the number of series terms.
MAX_TERMS = 10_000


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"gamma_fn needs a positive argument, got {x}")
    return math.gamma(x)


def _check_b(b: float) -> None:
    if b <= 0 and float(b).is_integer():
        raise DomainError(f"b must not be zero or a negative integer, got {b}")


def _sum_series(ratio, what: str) -> float:
    # Terms t_k with t_{k+1} = t_k * ratio(k). Stops after two consecutive
    # terms fall below TERM_RTOL times the larger of |sum| and the biggest
    # term seen; near a zero of the function the bare |sum| would never be
    # reached, and roundoff already limits accuracy to eps * max|term|.
    total = term = 1.0
    biggest = 1.0
    quiet = 0
    for k in range(MAX_TERMS):
        term *= ratio(k)
        total += term
        biggest = max(biggest, abs(term))
        if abs(term) <= TERM_RTOL * max(abs(total), biggest):
            quiet += 1
            if quiet == 2:
                return total
        else:
            quiet = 0
    raise NonConvergenceError(
        f"{what} did not converge within {MAX_TERMS} terms", partial=total
    )


def kummer_m(a: float, b: float, x: float) -> float:
    """Confluent hypergeometric function M(a, b, x) = sum (a)_k/(b)_k x^k/k!."""
    _check_b(b)
    if x == 0:
        return 1.0
    return _sum_series(lambda k: (a + k) / ((b + k) * (k + 1)) * x, "Kummer series")


def hyp0f1(b: float, z: float) -> float:
    """0F1(; b; z) = sum z^k / ((b)_k k!).

    This is the limit of M(a, b, z/a) as |a| grows; with z = -x^2/4 it is
    Gamma(b) (x/2)^(1-b) J_{b-1}(x).
    """
    _check_b(b)
    if z == 0:
        return 1.0
    return _sum_series(lambda k: z / ((b + k) * (k + 1)), "0F1 series")


def kummer_m_asymptotic(a: float, b: float, x: float) -> float:
    """Large negative ``a`` approximation of M(a, b, x) at fixed x.

    Gamma(b)/sqrt(pi) e^(x/2) (bx/2 - ax)^(1/4 - b/2) cos(sqrt(2bx - 4ax) - b pi/2 + pi/4)
    """
    _check_b(b)
    w = b * x / 2 - a * x
    if not w > 0:
        raise DomainError(f"asymptotic form needs b*x/2 - a*x > 0, got {w}")
    phase = math.sqrt(4 * w) - b * math.pi / 2 + math.pi / 4
    return gamma_fn(b) / math.sqrt(math.pi) * math.exp(x / 2) * w ** (0.25 - b / 2) * math.cos(phase)
