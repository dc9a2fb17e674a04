"""Cyclic decomposition of the unit group mod l and the discrete-log coordinates.

Each odd prime power (and 2 or 4) contributes one cyclic factor generated by
its smallest primitive root. When 8 divides l the 2-part contributes two
factors instead, generated by -1 (order 2) and 5 (order 2**(e-2)).

Exponents live in ``[1, order]``, so the identity has coordinate ``order``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .arith import euler_phi, factorize, find_primitive_root, lcm_many
from .errors import BudgetExceeded, InvariantViolation
from .lattice import ENUM_BUDGET, LatticeInstance, count_avoiders

TABLE_BUDGET = ENUM_BUDGET


@dataclass(frozen=True)
class Component:
    generator: int
    order: int
    prime: int
    prime_power: int
    kind: str = "cyclic"  # "cyclic", or "sign" / "five" for the two 2-adic factors

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "generator": self.generator,
            "order": self.order,
            "prime_power": self.prime_power,
        }


@dataclass(frozen=True)
class UnitGroupBasis:
    modulus: int
    components: tuple[Component, ...]
    two_adic_mode: bool

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.components)

    @property
    def d(self) -> int:
        return len(self.components)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "two_adic_mode": self.two_adic_mode,
            "orders": list(self.orders),
            "components": [c.to_json() for c in self.components],
        }

    @cached_property
    def _groups(self) -> list[_PrimePowerPart]:
        if self.modulus > TABLE_BUDGET:
            raise BudgetExceeded(f"modulus {self.modulus} too large for discrete-log tables")
        parts: dict[int, list[int]] = {}
        for j, c in enumerate(self.components):
            parts.setdefault(c.prime_power, []).append(j)
        return [_PrimePowerPart(q, [self.components[j] for j in idx], idx) for q, idx in parts.items()]

    def dlog_many(self, ns) -> np.ndarray:
        """Coordinates for an array of units; shape ``(len(ns), d)``."""
        ns = np.asarray(ns, dtype=np.int64) % self.modulus
        out = np.empty((ns.size, self.d), dtype=np.int64)
        for part in self._groups:
            out[:, part.columns] = part.dlog(ns % part.q)
        return out

    def from_dlog_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64).reshape(-1, self.d)
        n = np.zeros(xs.shape[0], dtype=np.int64)
        for part in self._groups:
            r = part.power(xs[:, part.columns])
            m = self.modulus // part.q
            coef = m * pow(m, -1, part.q) % self.modulus
            n = (n + r * coef) % self.modulus
        return n


@dataclass
class _PrimePowerPart:
    """Lookup tables for the generators living on one prime power ``q``."""

    q: int
    comps: list[Component]
    columns: list[int]
    log_table: np.ndarray = field(init=False, repr=False)
    pow_tables: list[np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        q = self.q
        self.pow_tables = []
        for c in self.comps:
            t = np.empty(c.order + 1, dtype=np.int64)
            t[0] = 1
            for x in range(1, c.order + 1):
                t[x] = t[x - 1] * c.generator % q
            if t[c.order] != 1:
                raise InvariantViolation(f"generator {c.generator} does not have order {c.order} mod {q}")
            self.pow_tables.append(t)
        # log_table[r, j] = exponent of component j for residue r; -1 marks non-units
        self.log_table = np.full((q, len(self.comps)), -1, dtype=np.int64)
        grids = np.meshgrid(*[np.arange(1, c.order + 1) for c in self.comps], indexing="ij")
        exps = np.stack([g.ravel() for g in grids], axis=1)
        residues = self.power(exps)
        if len(np.unique(residues)) != len(residues):
            raise InvariantViolation(f"generators do not give a direct product mod {q}")
        self.log_table[residues] = exps

    def power(self, exps: np.ndarray) -> np.ndarray:
        r = np.ones(exps.shape[0], dtype=np.int64)
        for j, t in enumerate(self.pow_tables):
            r = r * t[exps[:, j]] % self.q
        return r

    def dlog(self, residues: np.ndarray) -> np.ndarray:
        return self.log_table[residues]


def build_basis(modulus: int) -> UnitGroupBasis:
    if modulus < 2:
        raise ValueError("the unit group mod 1 is degenerate; modulus must be >= 2")
    comps = []
    two_adic = modulus % 8 == 0
    for p, e in factorize(modulus):
        q = p**e
        if p == 2 and e >= 3:
            comps.append(Component(q - 1, 2, 2, q, "sign"))
            comps.append(Component(5, 2 ** (e - 2), 2, q, "five"))
        else:
            comps.append(Component(find_primitive_root(p, e), euler_phi(q), p, q))
    basis = UnitGroupBasis(modulus, tuple(comps), two_adic)
    if math.prod(basis.orders) != euler_phi(modulus):
        raise InvariantViolation(f"component orders {basis.orders} do not multiply to phi({modulus})")
    return basis


def _check_unit(n: int, basis: UnitGroupBasis) -> None:
    if math.gcd(n, basis.modulus) != 1:
        raise ValueError(f"{n} is not a unit modulo {basis.modulus}")


def dlog_vector(n: int, basis: UnitGroupBasis) -> tuple[int, ...]:
    _check_unit(n, basis)
    return tuple(int(v) for v in basis.dlog_many([n])[0])


def from_dlog_vector(x, basis: UnitGroupBasis) -> int:
    x = tuple(int(v) for v in x)
    if len(x) != basis.d:
        raise ValueError(f"expected {basis.d} coordinates, got {len(x)}")
    for xj, bj in zip(x, basis.orders):
        if not 1 <= xj <= bj:
            raise ValueError(f"coordinate {xj} outside [1, {bj}]")
    return int(basis.from_dlog_many([x])[0])


def avoider_vector(a: int, basis: UnitGroupBasis) -> tuple[int, ...]:
    """Lattice vector whose multiples are exactly the coordinates of units = 1 mod a."""
    if a < 1 or basis.modulus % a:
        raise ValueError(f"{a} does not divide {basis.modulus}")
    fa = factorize(a)
    out = []
    for c in basis.components:
        alpha = fa.exponent(c.prime)
        if c.kind == "sign":
            out.append(2 ** (max(0, alpha - 1) - max(0, alpha - 2)))
        elif c.kind == "five":
            out.append(2 ** max(0, alpha - 2))
        else:
            out.append(euler_phi(c.prime**alpha))
    return tuple(out)


@dataclass(frozen=True)
class TransportReport:
    s_count: int
    x_count: int
    agree: bool


def unit_residues(modulus: int) -> np.ndarray:
    n = np.arange(1, modulus + 1, dtype=np.int64)
    return n[np.gcd(n, modulus) == 1]


def avoids_one(ns: np.ndarray, moduli) -> np.ndarray:
    keep = np.ones(ns.shape, dtype=bool)
    for a in moduli:
        keep &= (ns - 1) % a != 0
    return keep


def membership_transport(moduli, modulus: int | None = None, basis: UnitGroupBasis | None = None) -> TransportReport:
    """Check that discrete logs carry the avoidance set S onto the lattice set X."""
    moduli = [int(a) for a in moduli]
    if modulus is None:
        modulus = lcm_many(moduli)
    if modulus != lcm_many(moduli):
        raise ValueError(f"modulus {modulus} is not the lcm of {moduli}")
    if modulus > ENUM_BUDGET:
        raise BudgetExceeded(f"modulus {modulus} exceeds the enumeration budget")
    if basis is None:
        basis = build_basis(modulus)

    vectors = tuple(avoider_vector(a, basis) for a in moduli)
    instance = LatticeInstance(vectors, basis.orders)
    x_count = count_avoiders(instance)

    units = unit_residues(modulus)
    in_s = avoids_one(units, moduli)
    xs = basis.dlog_many(units)
    in_x = np.ones(units.shape, dtype=bool)
    if vectors:
        in_x = ~np.any(np.all(xs[:, None, :] % np.array(vectors)[None, :, :] == 0, axis=2), axis=1)
    # mixed-radix index of each vector; distinct indices means the map is injective
    flat = np.ravel_multi_index(tuple((xs - 1).T), basis.orders) if basis.d else np.zeros(len(units), dtype=np.int64)
    injective = len(np.unique(flat)) == len(units) == math.prod(basis.orders)
    s_count = int(in_s.sum())
    agree = bool(injective and np.array_equal(in_s, in_x) and s_count == x_count)
    return TransportReport(s_count, x_count, agree)
