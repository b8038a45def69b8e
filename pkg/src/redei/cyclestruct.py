"""Cycle structures from divisor and order data, fixed-point counts, and
the arithmetic criteria deciding when two Redei permutations over the same
field and character share a cycle structure.

This module is field-free: the character is always passed as an explicit
chi in {-1, +1}, never inferred from a field element.  Throughout, the
relevant modulus is q - chi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .numthy import (
    divisors,
    euler_phi,
    factorize,
    gcd_power_minus_one,
    mult_order,
    padic_valuation,
)

__all__ = [
    "CycleStructure",
    "cycle_structure",
    "fixed_point_count",
    "iterated_fixed_point_count",
    "same_structure_by_iterates",
    "prime_power_gcds_agree",
    "shares_cycle_structure",
    "half_shift_shares_structure",
]


@dataclass(frozen=True)
class CycleStructure:
    """Multiset of cycle lengths: (length, multiplicity) pairs, lengths
    ascending, no zero multiplicities.  Equality is exact map equality."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_counts(cls, counts: Mapping[int, int] | Iterable[tuple[int, int]]) -> "CycleStructure":
        merged: dict[int, int] = {}
        items = counts.items() if isinstance(counts, Mapping) else counts
        for length, mult in items:
            if length < 1:
                raise ValueError(f"cycle length must be >= 1, got {length}")
            if mult < 0:
                raise ValueError(f"multiplicity must be >= 0, got {mult}")
            if mult:
                merged[length] = merged.get(length, 0) + mult
        return cls(tuple(sorted(merged.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def multiplicity(self, length: int) -> int:
        for ln, mult in self.counts:
            if ln == length:
                return mult
        return 0

    def total_points(self) -> int:
        """Total mass: sum of length * multiplicity."""
        return sum(ln * mult for ln, mult in self.counts)

    def drop_fixed_points(self, count: int) -> "CycleStructure":
        """Structure with `count` fixed points removed."""
        have = self.multiplicity(1)
        if have < count:
            raise ValueError(f"cannot drop {count} fixed points, only {have}")
        out = dict(self.counts)
        out[1] = have - count
        return CycleStructure.from_counts(out)

    def to_json_obj(self) -> dict[str, int]:
        """Keys are decimal length strings, ascending numerically."""
        return {str(ln): mult for ln, mult in self.counts}

    def __str__(self) -> str:
        inner = ", ".join(f"{ln}: {mult}" for ln, mult in self.counts)
        return "{" + inner + "}"


def _modulus(q: int, chi: int) -> int:
    if chi not in (-1, 1):
        raise ValueError(f"chi must be -1 or +1, got {chi}")
    n = q - chi
    if n < 2:
        raise ValueError(f"q={q}, chi={chi} leaves no permutation domain")
    return n


def _require_coprime(m: int, n: int) -> None:
    if m < 1 or math.gcd(m, n) != 1:
        raise ValueError(f"m={m} is not coprime to {n}: not a permutation")


def cycle_structure(m: int, q: int, chi: int) -> CycleStructure:
    """Cycle structure of the index-m Redei permutation with character chi.

    One block of phi(d)/o_d(m) cycles of length o_d(m) for every divisor d
    of q - chi, plus 1 + chi extra fixed points.  Total mass is q + 1.

    >>> cycle_structure(3, 49, -1).as_dict()
    {1: 2, 4: 2, 20: 2}
    """
    n = _modulus(q, chi)
    _require_coprime(m, n)
    counts: dict[int, int] = {}
    for d in divisors(n):
        o = mult_order(m, d)
        counts[o] = counts.get(o, 0) + euler_phi(d) // o
    counts[1] += 1 + chi
    return CycleStructure.from_counts(counts)


def fixed_point_count(m: int, q: int, chi: int) -> int:
    """Number of fixed points: gcd(m - 1, q - chi) + chi + 1."""
    n = _modulus(q, chi)
    _require_coprime(m, n)
    return math.gcd(m - 1, n) + chi + 1


def iterated_fixed_point_count(m: int, r: int, q: int, chi: int) -> int:
    """Fixed points of the r-th iterate: gcd(m**r - 1, q - chi) + chi + 1."""
    n = _modulus(q, chi)
    _require_coprime(m, n)
    if r < 1:
        raise ValueError(f"iterate index must be >= 1, got {r}")
    return gcd_power_minus_one(m, r, n) + chi + 1


def same_structure_by_iterates(m: int, n: int, q: int, chi: int) -> bool:
    """Decide structure equality by comparing fixed-point counts of
    iterates.

    Checking r over the divisors of lcm(o(m), o(n)) mod q - chi suffices:
    every cycle length of either permutation divides that lcm, and the
    fixed count of iterate r depends only on which cycle lengths divide r.
    """
    modulus = _modulus(q, chi)
    _require_coprime(m, modulus)
    _require_coprime(n, modulus)
    bound = math.lcm(mult_order(m, modulus), mult_order(n, modulus))
    for r in divisors(bound):
        if gcd_power_minus_one(m, r, modulus) != gcd_power_minus_one(n, r, modulus):
            return False
    return True


def prime_power_gcds_agree(p: int, alpha: int, m: int, n: int) -> bool:
    """Whether gcd(m**r - 1, p**alpha) == gcd(n**r - 1, p**alpha) for every
    r >= 1, decided by a finite case split.

    Requires equal orders of m and n mod p; then alpha == 1 settles it, odd
    p needs one gcd comparison at r = order, and p == 2 needs comparisons
    at r = 1 (and also r = 2 when m == 3 mod 4).
    """
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if m < 1 or n < 1 or m % p == 0 or n % p == 0:
        raise ValueError(f"p={p} must divide neither m={m} nor n={n}")
    theta = mult_order(m, p)
    if mult_order(n, p) != theta:
        return False
    if alpha == 1:
        return True
    pa = p**alpha
    if p != 2:
        return gcd_power_minus_one(m, theta, pa) == gcd_power_minus_one(n, theta, pa)
    if m == 1 or padic_valuation(2, m - 1) > 1:
        return math.gcd(m - 1, pa) == math.gcd(n - 1, pa)
    return (
        math.gcd(m - 1, pa) == math.gcd(n - 1, pa)
        and math.gcd(m * m - 1, pa) == math.gcd(n * n - 1, pa)
    )


def shares_cycle_structure(m: int, n: int, q: int, chi: int) -> bool:
    """Decide whether the index-m and index-n permutations share a cycle
    structure, using only gcd, order, and valuation arithmetic.

    Writes n = m + k * (q - chi) / d with d = (q - chi) / gcd(n - m, q - chi)
    and checks, for each prime power p**a exactly dividing q - chi with
    p | d: equal orders mod p, equal gcds at r = order when a > 1, and for
    p == 2, a > 1, m == 3 (mod 4) also equal gcds at r = 2.  Symmetric in
    m and n, and equivalent to exact structure equality.

    >>> shares_cycle_structure(5, 29, 49, 1)
    True
    """
    modulus = _modulus(q, chi)
    for value in (m, n):
        if not 1 <= value < modulus:
            raise ValueError(f"index {value} outside [1, {modulus})")
    _require_coprime(m, modulus)
    _require_coprime(n, modulus)
    if m == n:
        return True
    d = modulus // math.gcd(n - m, modulus)
    for p, alpha in factorize(modulus).factors:
        if d % p:
            continue
        theta = mult_order(m, p)
        if n % p == 0 or mult_order(n, p) != theta:
            return False
        if alpha == 1:
            continue
        pa = p**alpha
        if gcd_power_minus_one(m, theta, pa) != gcd_power_minus_one(n, theta, pa):
            return False
        if p == 2 and m != 1 and padic_valuation(2, m - 1) == 1:
            if math.gcd(m * m - 1, pa) != math.gcd(n * n - 1, pa):
                return False
    return True


def half_shift_shares_structure(m: int, q: int, chi: int) -> bool:
    """Whether m and m + (q - chi)/2 give permutations with the same cycle
    structure.

    False outright when 2 exactly divides q - chi (the shifted index is
    even, so it does not permute at all); otherwise true iff m is not 1
    modulo 2**(alpha - 1), where alpha is the 2-adic valuation of q - chi.
    """
    modulus = _modulus(q, chi)
    _require_coprime(m, modulus)
    alpha = padic_valuation(2, modulus)
    if alpha == 1:
        return False
    return m % (1 << (alpha - 1)) != 1


@lru_cache(maxsize=64)
def structures_by_index(q: int, chi: int) -> dict[int, CycleStructure]:
    """Cycle structure of every valid index m in [1, q - chi).  Cached;
    treat the returned dict as read-only."""
    n = _modulus(q, chi)
    return {
        m: cycle_structure(m, q, chi)
        for m in range(1, n)
        if math.gcd(m, n) == 1
    }
