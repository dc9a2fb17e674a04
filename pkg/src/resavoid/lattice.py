"""Counting lattice points of a box that avoid ``x == 0 (mod a_i)`` for every i.

A point ``x`` avoids ``a`` when at least one coordinate ``j`` has
``x_j % a_j != 0``. The box is ``[1, b_1] x ... x [1, b_d]`` and every ``a_i``
divides ``b`` componentwise, which makes the set of avoiders periodic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, InvariantViolation

ENUM_BUDGET = 10**7
IE_BUDGET = 24


def norm(v) -> int:
    """Component product."""
    return math.prod(v)


@dataclass(frozen=True)
class LatticeInstance:
    avoiders: tuple[tuple[int, ...], ...]
    box: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "box", tuple(int(c) for c in self.box))
        object.__setattr__(self, "avoiders", tuple(tuple(int(c) for c in a) for a in self.avoiders))
        if not self.box:
            raise ValueError("dimension must be at least 1")
        if any(c < 1 for c in self.box):
            raise ValueError(f"box components must be >= 1: {self.box}")
        for a in self.avoiders:
            if len(a) != self.d:
                raise ValueError(f"avoider {a} has wrong dimension (d={self.d})")
            if any(c < 1 for c in a):
                raise ValueError(f"avoider components must be >= 1: {a}")
            if any(bj % aj for aj, bj in zip(a, self.box)):
                raise ValueError(f"box {self.box} is not a multiple of avoider {a}")

    @property
    def d(self) -> int:
        return len(self.box)

    @property
    def k(self) -> int:
        return len(self.avoiders)

    def distinct_avoiders(self) -> tuple[tuple[int, ...], ...]:
        return tuple(dict.fromkeys(self.avoiders))


@dataclass(frozen=True)
class LemmaReport:
    count: int
    bound_value: Fraction
    holds: bool


@dataclass(frozen=True)
class TranslateBlock:
    t: tuple[int, ...]
    block_count: int


def _zero_mask(avoiders, box) -> np.ndarray:
    """Boolean array over ``box``; True where the point is 0 mod some avoider."""
    hit = np.zeros(box, dtype=bool)
    for a in avoiders:
        m = np.ones((), dtype=bool)
        for aj, bj in zip(a, box):
            axis = np.arange(1, bj + 1) % aj == 0
            m = np.logical_and.outer(m, axis)
        hit |= m
    return hit


def avoider_mask(avoiders, box) -> np.ndarray:
    n = norm(box)
    if n > ENUM_BUDGET:
        raise BudgetExceeded(
            f"box of size {n} exceeds the enumeration budget {ENUM_BUDGET}; "
            "use count_avoiders_ie"
        )
    return ~_zero_mask(avoiders, tuple(box))


def count_avoiders_bruteforce(instance: LatticeInstance) -> int:
    return int(avoider_mask(instance.avoiders, instance.box).sum())


def lcm_terms(moduli, combine) -> dict:
    """Collapse the inclusion-exclusion sum over subsets into ``{lcm: coefficient}``.

    ``combine(x, y)`` is the lcm operation on whatever the moduli are (ints or
    tuples). Subsets sharing an lcm are merged as they are generated, so the
    dictionary never outgrows the divisor lattice of the overall lcm.
    """
    terms: dict = {}
    for m in moduli:
        new = dict(terms)
        for key, coef in terms.items():
            joined = combine(key, m)
            new[joined] = new.get(joined, 0) - coef
        new[m] = new.get(m, 0) - 1
        terms = {key: c for key, c in new.items() if c}
    return terms


def _vec_lcm(u, v):
    return tuple(math.lcm(x, y) for x, y in zip(u, v))


def count_avoiders_ie(instance: LatticeInstance) -> int:
    avoiders = instance.distinct_avoiders()
    if len(avoiders) > IE_BUDGET:
        raise BudgetExceeded(f"{len(avoiders)} avoiders exceed the subset budget {IE_BUDGET}")
    total = norm(instance.box)
    for vec, coef in lcm_terms(avoiders, _vec_lcm).items():
        total += coef * math.prod(bj // cj for bj, cj in zip(instance.box, vec))
    return total


def chung_bound(instance: LatticeInstance) -> Fraction:
    return math.prod((1 - Fraction(1, norm(a)) for a in instance.avoiders), start=Fraction(1))


def count_avoiders(instance: LatticeInstance) -> int:
    """Exact count via whichever path fits the budgets (enumeration first)."""
    if norm(instance.box) <= ENUM_BUDGET:
        return count_avoiders_bruteforce(instance)
    return count_avoiders_ie(instance)


def verify_lemma(instance: LatticeInstance) -> LemmaReport:
    count = count_avoiders(instance)
    bound = chung_bound(instance)
    return LemmaReport(count, bound, count >= norm(instance.box) * bound)


def best_translate_block(instance: LatticeInstance) -> TranslateBlock:
    """Pigeonhole step: split the big periodic box into translates of ``box``.

    The big box is ``c = lcm(box, a_1 * ... * a_k)`` componentwise. Returns the
    lexicographically smallest block index ``t`` (1-based) holding the most
    avoiders, after checking that reduction mod ``box`` injects that block into
    the avoiders of ``box``.
    """
    box = instance.box
    prod = [math.prod(col) for col in zip(*instance.avoiders)] or [1] * instance.d
    c = tuple(math.lcm(bj, pj) for bj, pj in zip(box, prod))
    if norm(c) > ENUM_BUDGET:
        raise BudgetExceeded(f"big box of size {norm(c)} exceeds the enumeration budget")

    y_mask = avoider_mask(instance.avoiders, c)
    blocks = tuple(cj // bj for cj, bj in zip(c, box))
    split = y_mask.reshape([s for pair in zip(blocks, box) for s in pair])
    d = instance.d
    counts = split.sum(axis=tuple(range(1, 2 * d, 2)))
    flat = int(np.argmax(counts))
    t0 = np.unravel_index(flat, blocks)
    block_count = int(counts[t0])

    x_mask = avoider_mask(instance.avoiders, box)
    # block t0 covers ]box*t0, box*(t0+1)] whose residues mod box are exactly 1..box
    block = split[tuple(v for i in t0 for v in (int(i), slice(None)))]
    if np.any(block & ~x_mask):
        raise InvariantViolation(f"translate block {t0} does not inject into the avoider set")
    if block_count * norm(blocks) < y_mask.sum():
        raise InvariantViolation("best block is below the average block size")
    return TranslateBlock(tuple(int(i) + 1 for i in t0), block_count)


def random_instance(rng, max_d: int = 3, max_k: int = 4, max_component: int = 6, max_factor: int = 3) -> LatticeInstance:
    """Random instance whose box is the componentwise lcm of the avoiders times a small factor."""
    d = rng.randint(1, max_d)
    k = rng.randint(0, max_k)
    avoiders = [tuple(rng.randint(1, max_component) for _ in range(d)) for _ in range(k)]
    box = []
    for j in range(d):
        base = math.lcm(*(a[j] for a in avoiders)) if avoiders else 1
        box.append(base * rng.randint(1, max_factor))
    return LatticeInstance(tuple(avoiders), tuple(box))
