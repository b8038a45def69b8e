"""Redei maps evaluated point by point on the projective line, explicit
permutation tables with brute-force cycle decomposition, and the two
isomorphic cyclic-group oracles (x -> m*x on Z_n, x -> x**m on cyclic
subgroups of a field).

These are the slow-but-independent routes that the closed-form results in
`cyclestruct` are checked against; nothing here consults the divisor
formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclestruct import CycleStructure
from .gf import INFINITY, Field, build_field, point_str, quadratic_character
from .numthy import factorize

__all__ = [
    "NotAPermutation",
    "PermutationTable",
    "redei_eval",
    "build_permutation",
    "cycle_decomposition",
    "mult_map_structure",
    "power_map_structure",
]


class NotAPermutation(ValueError):
    """The requested index does not induce a bijection."""


def _quad_pow_elems(field: Field, x: tuple, a: tuple, m: int) -> tuple[tuple, tuple]:
    # (x + s)**m in F_q[s] / (s**2 - a), square-and-multiply.
    mul, add = field.mul, field.add
    rn, rd = field.one, field.zero
    bn, bd = x, field.one
    e = m
    while True:
        if e & 1:
            rn, rd = (
                add(mul(rn, bn), mul(a, mul(rd, bd))),
                add(mul(rn, bd), mul(rd, bn)),
            )
        e >>= 1
        if not e:
            return rn, rd
        t = mul(bn, bd)
        bn, bd = add(mul(bn, bn), mul(a, mul(bd, bd))), add(t, t)


def _quad_pow_ints(x: int, c: int, m: int, p: int) -> tuple[int, int]:
    # Same computation in a prime field, on bare residues.
    rn, rd = 1, 0
    bn, bd = x, 1
    e = m
    while True:
        if e & 1:
            rn, rd = (rn * bn + c * rd * bd) % p, (rn * bd + rd * bn) % p
        e >>= 1
        if not e:
            return rn, rd
        bn, bd = (bn * bn + c * bd * bd) % p, 2 * bn * bd % p


def redei_eval(field: Field, m: int, a: tuple, x):
    """Evaluate the index-m Redei map with parameter a at a projective
    point.

    Expands (x + s)**m in the quadratic ring F_q[s]/(s**2 - a) to N + D*s
    and returns N/D, or INFINITY when D vanishes or x is INFINITY.  Works
    identically whether or not a is a square: no square root is ever taken.
    """
    if m < 1:
        raise ValueError(f"index must be >= 1, got {m}")
    if a == field.zero:
        raise ValueError("parameter a must be nonzero")
    if x is INFINITY:
        return INFINITY
    num, den = _quad_pow_elems(field, x, a, m)
    if den == field.zero:
        return INFINITY
    return field.mul(num, field.inv(den))


@dataclass
class PermutationTable:
    """Explicit permutation of the projective line.

    `points` lists all q + 1 points in enumeration order with INFINITY
    last (shared with the field's cache; read-only), and `image[i]` is the
    index of the image of `points[i]`.
    """

    field: Field
    points: list
    image: list[int]

    def to_csv(self) -> str:
        lines = ["point,image"]
        for pt, j in zip(self.points, self.image):
            lines.append(f"{point_str(pt)},{point_str(self.points[j])}")
        return "\n".join(lines) + "\n"


def build_permutation(field: Field, m: int, a: tuple) -> PermutationTable:
    """Evaluate the Redei map at every point of the projective line.

    Raises NotAPermutation when gcd(m, q - chi(a)) != 1, and also if the
    resulting table somehow fails to be a bijection (which would mean a
    bug, since coprimality is exactly the permutation criterion).
    """
    if m < 1:
        raise ValueError(f"index must be >= 1, got {m}")
    q = field.q
    chi = quadratic_character(field, a)
    if math.gcd(m, q - chi) != 1:
        raise NotAPermutation(
            f"gcd({m}, {q - chi}) != 1: index {m} does not permute"
        )
    image = [0] * (q + 1)
    if field.k == 1:
        p, c = field.p, a[0]
        for x in range(p):
            num, den = _quad_pow_ints(x, c, m, p)
            image[x] = p if den == 0 else num * pow(den, p - 2, p) % p
    else:
        zero = field.zero
        for i in range(q):
            num, den = _quad_pow_elems(field, field.element(i), a, m)
            image[i] = q if den == zero else field.index(field.mul(num, field.inv(den)))
    image[q] = q
    seen = bytearray(q + 1)
    for j in image:
        if seen[j]:
            raise NotAPermutation("image collision: table is not a bijection")
        seen[j] = 1
    return PermutationTable(field, field.projective_points(), image)


def _structure_from_images(image: list[int]) -> CycleStructure:
    # Visited-marking orbit walk.
    n = len(image)
    seen = bytearray(n)
    counts: dict[int, int] = {}
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = 1
            cur = image[cur]
            length += 1
        counts[length] = counts.get(length, 0) + 1
    return CycleStructure.from_counts(counts)


def cycle_decomposition(table: PermutationTable) -> CycleStructure:
    """Disjoint-cycle multiset of an explicit permutation table."""
    return _structure_from_images(table.image)


def mult_map_structure(m: int, n: int) -> CycleStructure:
    """Cycle structure of x -> m*x on Z_n by direct orbit walk.

    >>> mult_map_structure(3, 8).as_dict()
    {1: 2, 2: 3}
    """
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    if math.gcd(m, n) != 1:
        raise ValueError(f"gcd({m}, {n}) != 1: multiplication is not a bijection")
    m %= n
    return _structure_from_images([m * x % n for x in range(n)])


_NORM_ONE_CACHE: dict[tuple[int, int], tuple[Field, list]] = {}


def _norm_one_subgroup(field: Field) -> tuple[Field, list]:
    # The cyclic subgroup of order q + 1 inside F_{q**2}, realized inside a
    # degree-2k extension of Z_p.  Generated from the first element whose
    # (q - 1)-th power has full order q + 1; every member satisfies
    # x**(q + 1) == 1, and the cardinality check pins the subgroup exactly.
    key = (field.p, field.k)
    cached = _NORM_ONE_CACHE.get(key)
    if cached is not None:
        return cached
    q = field.q
    ext = build_field(field.p, 2 * field.k)
    order = q + 1
    prime_divs = factorize(order).primes()
    one = ext.one
    gen = None
    for i in range(1, ext.q):
        cand = ext.pow(ext.element(i), q - 1)
        if cand == one:
            continue
        if ext.pow(cand, order) != one:
            raise AssertionError("norm map left the order-(q+1) subgroup")
        if all(ext.pow(cand, order // r) != one for r in prime_divs):
            gen = cand
            break
    if gen is None:
        raise AssertionError("cyclic subgroup has a generator")
    members = [one]
    cur = gen
    while cur != one:
        members.append(cur)
        cur = ext.mul(cur, gen)
    if len(members) != order or len(set(members)) != order:
        raise AssertionError("subgroup construction produced a wrong count")
    _NORM_ONE_CACHE[key] = (ext, members)
    return ext, members


def power_map_structure(field: Field, m: int, subgroup: str) -> CycleStructure:
    """Cycle structure of x -> x**m on a cyclic group attached to the
    field, by direct orbit walk.

    subgroup "units" walks the multiplicative group of the field itself
    (order q - 1); "norm_one" walks the subgroup of order q + 1 inside the
    quadratic extension.
    """
    if subgroup == "units":
        order = field.q - 1
        group_field = field
        members = [field.element(i) for i in range(1, field.q)]
    elif subgroup == "norm_one":
        order = field.q + 1
        group_field, members = _norm_one_subgroup(field)
    else:
        raise ValueError(f"unknown subgroup {subgroup!r}")
    if math.gcd(m, order) != 1:
        raise ValueError(f"gcd({m}, {order}) != 1: power map is not a bijection")
    exponent = m % order
    index = {el: i for i, el in enumerate(members)}
    image = [index[group_field.pow(el, exponent)] for el in members]
    return _structure_from_images(image)
