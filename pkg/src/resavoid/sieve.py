"""Segmented odd-only sieve and empirical convergence of matching-prime ratios."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .density import ModuliList, exact_relative_density
from .errors import BudgetExceeded

MAX_LIMIT = 10**10
MIN_SEGMENT = 2**10
DEFAULT_SEGMENT = 2**20
DEFAULT_TOLERANCE = 0.005

CSV_HEADER = ("x", "pi_x", "match_count", "ratio_pi", "ratio_xlogx", "exact_target")


def default_checkpoints(limit: int) -> list[int]:
    """Powers of ten up to ``limit``, plus ``limit`` itself."""
    out = []
    x = 10
    while x <= limit:
        out.append(x)
        x *= 10
    if not out or out[-1] != limit:
        out.append(limit)
    return out


@dataclass
class SieveConfig:
    limit: int
    segment_size: int = DEFAULT_SEGMENT
    checkpoints: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.limit = int(self.limit)
        if self.limit < 0 or self.limit > MAX_LIMIT:
            raise ValueError(f"limit must be in [0, 10**10], got {self.limit}")
        if self.segment_size < MIN_SEGMENT:
            raise ValueError(f"segment_size must be at least {MIN_SEGMENT}")
        if not self.checkpoints:
            self.checkpoints = default_checkpoints(self.limit) if self.limit >= 2 else []
        self.checkpoints = [int(x) for x in self.checkpoints]
        if self.checkpoints != sorted(self.checkpoints):
            raise ValueError("checkpoints must be ascending")
        if self.checkpoints and (self.checkpoints[0] < 2 or self.checkpoints[-1] > self.limit):
            raise ValueError(f"checkpoints must lie in [2, {self.limit}]")


def naive_sieve(limit: int) -> np.ndarray:
    """One-shot sieve of the whole range; the reference oracle."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def iter_segments(config: SieveConfig) -> Iterator[np.ndarray]:
    """Yield ascending arrays of primes, one per segment.

    Each segment holds ``segment_size`` flags for consecutive odd numbers.
    """
    limit = config.limit
    if limit < 2:
        return
    yield np.array([2], dtype=np.int64)
    base = naive_sieve(math.isqrt(limit))[1:].tolist()
    span = 2 * config.segment_size
    low = 3
    while low <= limit:
        high = min(low + span, limit + 1)  # exclusive
        flags = np.ones((high - low + 1) // 2, dtype=bool)  # flags[i] <-> low + 2i
        for p in base:
            if p * p >= high:
                break
            start = max(p * p, (low + p - 1) // p * p)
            if start % 2 == 0:
                start += p
            flags[(start - low) // 2 :: p] = False
        yield low + 2 * np.flatnonzero(flags).astype(np.int64)
        low = high + (high % 2 == 0)


def sieve_primes(config: SieveConfig, visitor: Callable[[int], None] | None = None) -> Iterator[int]:
    """Stream the primes up to ``config.limit`` in ascending order."""
    for seg in iter_segments(config):
        for p in seg.tolist():
            if visitor is not None:
                visitor(p)
            yield p


def matches(primes: np.ndarray, moduli) -> np.ndarray:
    """Mask of primes with ``p != 1 (mod a)`` for every modulus (as a congruence)."""
    keep = np.ones(primes.shape, dtype=bool)
    for a in moduli:
        keep &= (primes - 1) % a != 0
    return keep


@dataclass(frozen=True)
class ConvergenceRow:
    x: int
    pi_x: int
    match_count: int
    ratio_pi: float
    ratio_li: float
    exact_target: Fraction | None

    def fields(self) -> dict:
        return {
            "x": self.x,
            "pi_x": self.pi_x,
            "match_count": self.match_count,
            "ratio_pi": fmt(self.ratio_pi),
            "ratio_xlogx": fmt(self.ratio_li),
            "exact_target": "" if self.exact_target is None else fmt(float(self.exact_target)),
        }


def fmt(v: float) -> str:
    return f"{v:.10g}"


def count_matching(moduli, config: SieveConfig, exact_target: Fraction | None = None) -> list[ConvergenceRow]:
    m = ModuliList.of(moduli)
    cps = config.checkpoints
    pi = [0] * len(cps)
    hits = [0] * len(cps)
    for seg in iter_segments(config):
        good = seg[matches(seg, m.raw)]
        # primes in this segment that are <= each checkpoint
        pi_add = np.searchsorted(seg, cps, side="right")
        hit_add = np.searchsorted(good, cps, side="right")
        for i in range(len(cps)):
            pi[i] += int(pi_add[i])
            hits[i] += int(hit_add[i])
    rows = []
    for x, p, h in zip(cps, pi, hits):
        rows.append(
            ConvergenceRow(
                x=x,
                pi_x=p,
                match_count=h,
                ratio_pi=h / p if p else 0.0,
                ratio_li=h * math.log(x) / x,
                exact_target=exact_target,
            )
        )
    return rows


@dataclass
class ConvergenceReport:
    moduli: tuple[int, ...]
    rows: list[ConvergenceRow]
    exact: Fraction | None
    tolerance: float
    deviation: float | None
    status: str  # PASS, FAIL or UNVERIFIED

    @property
    def note(self) -> str:
        return (
            "primes dividing lcm(a) are counted by the literal predicate; "
            "they shift match_count by O(1) against #S/phi(l)"
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow(r.fields())
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "moduli": list(self.moduli),
            "exact": None if self.exact is None else {"num": self.exact.numerator, "den": self.exact.denominator},
            "tolerance": self.tolerance,
            "deviation": None if self.deviation is None else fmt(self.deviation),
            "status": self.status,
            "note": self.note,
            "rows": [r.fields() for r in self.rows],
        }


def convergence_report(moduli, config: SieveConfig, tolerance: float = DEFAULT_TOLERANCE) -> ConvergenceReport:
    m = ModuliList.of(moduli)
    try:
        exact = exact_relative_density(m)
    except (BudgetExceeded, OverflowError):
        exact = None
    rows = count_matching(m, config, exact)
    deviation = None
    status = "UNVERIFIED"
    if exact is not None and rows:
        deviation = abs(rows[-1].ratio_pi - float(exact))
        status = "PASS" if deviation <= tolerance else "FAIL"
    return ConvergenceReport(m.raw, rows, exact, tolerance, deviation, status)
