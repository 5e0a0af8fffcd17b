"""Modified Bessel functions of the first kind, orders 0 and 1.

Power series below the crossover, Hankel asymptotic series above it.
Exponentially scaled variants avoid overflow in ratios and mode columns.
"""

import math

CROSSOVER = 20.0
MAX_ARG = 700.0
SMALL_RATIO_ARG = 1e-4


class BesselDomainError(ValueError):
    """Argument outside the supported range."""


def _check(order: int, x: float) -> None:
    if order not in (0, 1):
        raise BesselDomainError(f"order must be 0 or 1, got {order}")
    if not math.isfinite(x) or x < 0.0:
        raise BesselDomainError(f"argument must be finite and >= 0, got {x}")


def _series(order: int, x: float) -> float:
    y = 0.25 * x * x
    term = (0.5 * x) ** order / math.factorial(order)
    terms = [term]
    m = 0
    while True:
        m += 1
        term *= y / (m * (m + order))
        terms.append(term)
        if term < 1e-18 * terms[0] and term < 1e-18 * sum(terms):
            break
        if m > 500:
            break
    return math.fsum(terms)


def _asymptotic_scaled(order: int, x: float) -> float:
    # e^{-x} I_n(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(n) / x^k
    mu4 = 4.0 * order * order
    term = 1.0
    terms = [1.0]
    k = 0
    while True:
        k += 1
        nxt = -term * (mu4 - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(nxt) >= abs(term) or abs(nxt) < 1e-18:
            if abs(nxt) < abs(term):
                terms.append(nxt)
            break
        term = nxt
        terms.append(term)
    return math.fsum(terms) / math.sqrt(2.0 * math.pi * x)


def bessel_i(order: int, x: float) -> float:
    """Return I_order(x) for order in {0, 1} and 0 <= x <= 700."""
    _check(order, x)
    if x > MAX_ARG:
        raise BesselDomainError(f"argument {x} exceeds {MAX_ARG}; use bessel_i_scaled")
    if x <= CROSSOVER:
        return _series(order, x)
    return _asymptotic_scaled(order, x) * math.exp(x)


def bessel_i_scaled(order: int, x: float) -> float:
    """Return exp(-x) * I_order(x); valid for any finite x >= 0."""
    _check(order, x)
    if x <= CROSSOVER:
        return _series(order, x) * math.exp(-x)
    return _asymptotic_scaled(order, x)


def bessel_i_deriv(order: int, x: float) -> float:
    """Derivative of I_order at x: I0' = I1, I1' = I0 - I1/x (1/2 at x = 0)."""
    if order == 0:
        return bessel_i(1, x)
    _check(order, x)
    if x == 0.0:
        return 0.5
    return bessel_i(0, x) - bessel_i(1, x) / x


def bessel_i2(x: float) -> float:
    """I_2 from the recurrence I2 = I0 - 2 I1 / x, with the series for small x."""
    _check(0, x)
    if x < 1.0:
        y = 0.25 * x * x
        term = y / 2.0
        total = term
        m = 0
        while term > 1e-18 * total and m < 100:
            m += 1
            term *= y / (m * (m + 2))
            total += term
        return total
    return bessel_i(0, x) - 2.0 * bessel_i(1, x) / x


def bessel_i_ratio01(x: float) -> float:
    """Return I0(x)/I1(x) for x > 0.

    Below ``SMALL_RATIO_ARG`` the Laurent expansion 2/x + x/4 is used.
    """
    if not math.isfinite(x) or x <= 0.0:
        raise BesselDomainError(f"ratio needs x > 0, got {x}")
    if x < SMALL_RATIO_ARG:
        return 2.0 / x + 0.25 * x
    return bessel_i_scaled(0, x) / bessel_i_scaled(1, x)
