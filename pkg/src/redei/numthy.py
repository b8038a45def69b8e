"""Exact integer kernel.

Factorization, totients, multiplicative orders, p-adic valuations, and
gcd(m**r - 1, n) computed without ever forming the full power m**r.
Everything here is pure and deterministic; results are cached where the
same small inputs recur in sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "PrimeFactorization",
    "is_prime",
    "factorize",
    "euler_phi",
    "divisors",
    "mult_order",
    "padic_valuation",
    "lte_valuation",
    "gcd_power_minus_one",
    "prime_power_decomposition",
]

_TRIAL_LIMIT = 10_000

# Deterministic Miller-Rabin witness set for n < 3.3 * 10**24, which covers
# every 64-bit input and then some.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class PrimeFactorization:
    """Factored form of a positive integer.

    Primes are strictly increasing, every exponent is >= 1, and the product
    of the prime powers reconstructs ``value``.  ``value == 1`` iff
    ``factors`` is empty.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent_of(self, p: int) -> int:
        for prime, exp in self.factors:
            if prime == p:
                return exp
        return 0

    def reconstruct(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic far beyond 64 bits."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of an odd composite n.

    Brent's cycle-finding variant with a fixed parameter sequence, so the
    result (and hence factorize) is deterministic.
    """
    c = 1
    while True:
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if g != n:
            return g
        c += 1


def _factor_into(n: int, counts: dict[int, int]) -> None:
    while n > 1:
        if is_prime(n):
            counts[n] = counts.get(n, 0) + 1
            return
        d = _brent_rho(n)
        _factor_into(d, counts)
        n //= d


@lru_cache(maxsize=65536)
def factorize(n: int) -> PrimeFactorization:
    """Factor a positive integer into its unique prime-power form.

    Trial division by small primes first, then Brent's rho with
    deterministic primality certification on what remains.

    >>> factorize(48).factors
    ((2, 4), (3, 1))
    >>> factorize(1).factors
    ()
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}: need a positive integer")
    counts: dict[int, int] = {}
    rest = n
    while rest % 2 == 0:
        counts[2] = counts.get(2, 0) + 1
        rest //= 2
    f = 3
    while f <= _TRIAL_LIMIT and f * f <= rest:
        while rest % f == 0:
            counts[f] = counts.get(f, 0) + 1
            rest //= f
        f += 2
    if rest > 1:
        if f * f > rest:
            counts[rest] = counts.get(rest, 0) + 1
        else:
            _factor_into(rest, counts)
    return PrimeFactorization(n, tuple(sorted(counts.items())))


@lru_cache(maxsize=65536)
def euler_phi(n: int) -> int:
    """Euler's totient, computed from the factorization.

    >>> euler_phi(50)
    20
    """
    out = n
    for p, _ in factorize(n).factors:
        out -= out // p
    return out


@lru_cache(maxsize=65536)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    out = [1]
    for p, e in factorize(n).factors:
        out = [d * p**i for d in out for i in range(e + 1)]
    return tuple(sorted(out))


def mult_order(m: int, d: int) -> int:
    """Least theta >= 1 with m**theta == 1 (mod d); requires gcd(m, d) == 1.

    >>> mult_order(3, 5)
    4
    """
    if d < 1:
        raise ValueError(f"modulus must be positive, got {d}")
    if d == 1:
        return 1
    m %= d
    if math.gcd(m, d) != 1:
        raise ValueError(f"order of {m} mod {d} undefined: gcd != 1")
    return _order_reduced(m, d)


@lru_cache(maxsize=1 << 18)
def _order_reduced(m: int, d: int) -> int:
    # Refine phi(d) downward one prime at a time; the order divides phi(d).
    e = euler_phi(d)
    for p, _ in factorize(e).factors:
        while e % p == 0 and pow(m, e // p, d) == 1:
            e //= p
    return e


def padic_valuation(p: int, z: int) -> int:
    """Exact exponent of the prime p in the nonzero integer z."""
    if z == 0:
        raise ValueError("valuation of 0 is infinite")
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    z = abs(z)
    v = 0
    while z % p == 0:
        z //= p
        v += 1
    return v


def _power_minus_one_valuation(m: int, e: int, p: int) -> int:
    # Exponent of p in m**e - 1 found by growing the modulus, so m**e is
    # never materialized.
    v, mod = 0, p
    while pow(m, e, mod) == 1:
        v += 1
        mod *= p
    return v


def lte_valuation(p: int, m: int, r: int) -> int:
    """Exponent of p in m**r - 1 via the lifting-the-exponent case split.

    For odd p (or p == 2 with 4 | m - 1): 0 unless theta | r, where theta
    is the order of m mod p, and otherwise v_p(m**theta - 1) + v_p(r/theta).
    For p == 2 with m == 3 (mod 4): v_2(m - 1) for odd r, else
    v_2(m**2 - 1) + v_2(r) - 1.  Never forms m**r.

    >>> lte_valuation(2, 7, 2)
    4
    """
    if r < 1:
        raise ValueError(f"iteration count must be >= 1, got {r}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1 or m % p == 0:
        raise ValueError(f"need p coprime to m, got p={p}, m={m}")
    if m == 1:
        raise ValueError("m == 1 makes m**r - 1 vanish; valuation is infinite")
    if p == 2 and (m - 1) % 4 == 2:
        if r % 2:
            return 1
        return padic_valuation(2, m * m - 1) + padic_valuation(2, r) - 1
    theta = mult_order(m, p)
    if r % theta:
        return 0
    return _power_minus_one_valuation(m, theta, p) + padic_valuation(p, r // theta)


def gcd_power_minus_one(m: int, r: int, n: int) -> int:
    """gcd(m**r - 1, n) by modular exponentiation.

    Uses gcd(x mod n, n) == gcd(x, n); returns n itself when m**r == 1
    (mod n).

    >>> gcd_power_minus_one(9, 2, 25)
    5
    """
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if m < 0 or r < 1:
        raise ValueError("need m >= 0 and r >= 1")
    return math.gcd((pow(m, r, n) - 1) % n, n)


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q == p**k for prime p, or None if q is not a
    prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f.factors) != 1:
        return None
    return f.factors[0]
