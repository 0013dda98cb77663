"""Exact and modular binomial coefficients.

``binom_exact`` is the arbitrary-precision reference value.  ``binom_mod_p``
reduces through the base-p digit product (Lucas), iteratively and without
recursion; at p = 2 it collapses to a bitwise domination test.
"""

from __future__ import annotations

import math

from .errors import NonPrimeModulus


def is_prime(p: int) -> bool:
    """Deterministic trial division; moduli here are word-sized."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def binom_exact(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _digit_binom(n: int, k: int, p: int) -> int:
    # n, k < p: running product with exact division
    if k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        out = out * (n - k + i) // i
    return out % p


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by the digit product in base p; requires p prime."""
    if not is_prime(p):
        raise NonPrimeModulus(f"modulus {p} is not prime")
    if k < 0 or k > n:
        return 0
    if p == 2:
        # odd iff every set bit of k is also set in n
        return 1 if (k & ~n) == 0 else 0
    out = 1
    while k or n:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        out = (out * _digit_binom(ni, ki, p)) % p
        n //= p
        k //= p
    return out
