"""Gamma-function Taylor data and the modified Bessel functions K0, K1."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

EULER_GAMMA = 0.57721566490153286061

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
)


def loggamma(z: complex) -> complex:
    """log Gamma(z) by the Lanczos approximation (about 15 digits), Re z >= 1/2."""
    z = complex(z) - 1.0
    x = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        x += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (z + 0.5) * np.log(t) - t + np.log(x)


def gamma(z: complex) -> complex:
    z = complex(z)
    if z.real < 0.5:
        return math.pi / (np.sin(math.pi * z) * gamma(1.0 - z))
    return complex(np.exp(loggamma(z)))


@lru_cache(maxsize=None)
def _bernoulli(m: int) -> tuple[Fraction, ...]:
    b = [Fraction(1)]
    for n in range(1, m + 1):
        b.append(-sum(math.comb(n + 1, k) * b[k] for k in range(n)) / (n + 1))
    return tuple(b)


def polygamma(m: int, z: complex) -> complex:
    """psi^(m)(z) for complex z off the poles, by upward recurrence and the asymptotic series."""
    z = complex(z)
    if z.real <= 0 and abs(z.imag) < 1e-12 and abs(z.real - round(z.real)) < 1e-12:
        raise ValueError("pole of the polygamma function")
    shift = 0j
    fm = math.factorial(m)
    sign = -1.0 if m % 2 else 1.0
    while abs(z) < 20.0 + m:
        # psi^(m)(z) = psi^(m)(z+1) - (-1)^m m! / z^(m+1)
        shift -= sign * fm / z ** (m + 1)
        z += 1.0
    b = _bernoulli(24)
    if m == 0:
        acc = np.log(z) - 0.5 / z
        for k in range(1, 12):
            acc -= float(b[2 * k]) / (2 * k * z ** (2 * k))
    else:
        acc = math.factorial(m - 1) / z ** m + fm / (2 * z ** (m + 1))
        for k in range(1, 12):
            acc += float(b[2 * k]) * math.factorial(2 * k + m - 1) / (math.factorial(2 * k) * z ** (2 * k + m))
        acc *= -sign
    return complex(acc + shift)


def _bell_series(alpha: complex, order: int, sign: float) -> list[complex]:
    """Normalized derivatives d_k with d_0 = 1 and d_{k+1} = sign * sum_j C(k,j) psi^(j) d_{k-j}."""
    psis = [polygamma(j, alpha) for j in range(order)]
    d = [1.0 + 0j]
    for k in range(order - 1):
        d.append(sign * sum(math.comb(k, j) * psis[j] * d[k - j] for j in range(k + 1)))
    return d


def gamma_taylor(alpha: complex, order: int) -> list[complex]:
    """Taylor coefficients Gamma^(k)(alpha)/k! for k < order."""
    g = gamma(alpha)
    d = _bell_series(alpha, order, 1.0)
    return [g * d[k] / math.factorial(k) for k in range(order)]


def rgamma_taylor(alpha: complex, order: int) -> list[complex]:
    """Taylor coefficients of 1/Gamma at alpha."""
    g = gamma(alpha)
    d = _bell_series(alpha, order, -1.0)
    return [d[k] / (g * math.factorial(k)) for k in range(order)]


# ---------------------------------------------------------------------------
# modified Bessel functions of the second kind


def _k_series(x: float) -> tuple[float, float]:
    y = 0.25 * x * x
    lg = math.log(0.5 * x) + EULER_GAMMA
    i0 = k0s = 0.0
    i1 = k1s = 0.0
    term = 1.0
    harm = 0.0
    k = 0
    while True:
        # term = y^k / (k!)^2
        i0 += term
        k0s += term * harm
        t1 = term / (k + 1)
        i1 += t1
        # psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
        k1s += t1 * (2 * harm + 1.0 / (k + 1))
        k += 1
        harm += 1.0 / k
        term *= y / (k * k)
        if term < 1e-18 * i0:
            break
    k0 = -lg * i0 + k0s
    i1 *= 0.5 * x
    k1 = 1.0 / x + lg * i1 - 0.25 * x * k1s
    return k0, k1


def _k_continued_fraction(x: float) -> tuple[float, float]:
    # Steed's method for the ratio K1/K0 together with the normalization sum
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 100000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    h *= a1
    k0 = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def bessel_k01(x: float) -> tuple[float, float]:
    """(K0(x), K1(x)) for x > 0: power series up to 2, exponentially scaled continued fraction above."""
    x = float(x)
    if not x > 0.0:
        raise ValueError("K0 is defined here for x > 0")
    if x <= 2.0:
        return _k_series(x)
    return _k_continued_fraction(x)


def bessel_k0(x: float) -> float:
    return bessel_k01(x)[0]


def bessel_k0_prime(x: float) -> float:
    return -bessel_k01(x)[1]
