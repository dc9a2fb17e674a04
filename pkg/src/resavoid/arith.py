"""Integer primitives: factorization, totient, lcm and primitive roots.

Rationals are plain :class:`fractions.Fraction` objects throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

MAX_INPUT = 2**63
WORD_LIMIT = 2**63


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization as ascending ``(prime, exponent)`` pairs."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            last = p

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


def factorize(n: int) -> Factorization:
    _check_positive(n)
    if n > MAX_INPUT:
        raise ValueError(f"{n} exceeds the factorization cap 2**63")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # 6k +/- 1 wheel
    p, step = 5, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return Factorization(tuple(out))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factorize(n)
    return f.factors == ((n, 1),)


def euler_phi(n: int | Factorization) -> int:
    f = n if isinstance(n, Factorization) else factorize(n)
    return math.prod(p ** (e - 1) * (p - 1) for p, e in f)


def lcm_many(values) -> int:
    values = list(values)
    if not values:
        raise ValueError("lcm_many needs at least one value")
    for v in values:
        _check_positive(v)

    def step(acc, v):
        out = math.lcm(acc, v)
        if out >= WORD_LIMIT:
            raise OverflowError(f"lcm of {values} exceeds 2**63")
        return out

    return reduce(step, values, 1)


def find_primitive_root(p: int, e: int = 1) -> int:
    """Smallest generator of the unit group modulo ``p**e``.

    Only defined when that group is cyclic, i.e. ``p`` odd or ``p**e`` in {2, 4}.
    """
    _check_positive(e)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2 and e >= 3:
        raise ValueError(f"no primitive root modulo 2**{e}")
    q = p**e
    order = p ** (e - 1) * (p - 1)
    cofactors = [order // r for r in factorize(order).primes]
    g = 1
    while True:
        if g % p and all(pow(g, c, q) != 1 for c in cofactors):
            # g = 1 only survives when the group is trivial
            return g
        g += 1
