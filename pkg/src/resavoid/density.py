"""Exact densities for integers avoiding ``0 mod a_i`` and primes avoiding ``1 mod a_i``.

Every density is a :class:`~fractions.Fraction`. The prime density is the
residue count ``#S / phi(l)``, where S holds the units n mod ``l = lcm(a)``
with ``n != 1 (mod a_i)`` for all i. By Dirichlet's theorem this is the
relative density of the corresponding set of primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import euler_phi, lcm_many
from .errors import BudgetExceeded, InvariantViolation
from .lattice import ENUM_BUDGET, IE_BUDGET, lcm_terms
from .unitgroup import avoids_one, membership_transport, unit_residues


@dataclass(frozen=True)
class ModuliList:
    raw: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "raw", tuple(int(a) for a in self.raw))
        if any(a < 1 for a in self.raw):
            raise ValueError(f"moduli must be positive: {self.raw}")

    @classmethod
    def of(cls, moduli) -> ModuliList:
        return moduli if isinstance(moduli, cls) else cls(tuple(moduli))

    @property
    def reduced(self) -> tuple[int, ...]:
        """Divisibility antichain: drop any a_j that is a multiple of another a_i."""
        distinct = sorted(set(self.raw))
        return tuple(b for b in distinct if not any(b % a == 0 for a in distinct if a < b))

    @property
    def lcm(self) -> int:
        return lcm_many(self.raw) if self.raw else 1

    def __len__(self):
        return len(self.raw)


@dataclass(frozen=True)
class DensityReport:
    moduli: tuple[int, ...]
    exact: Fraction
    bound: Fraction
    bound_reduced: Fraction
    l: int
    phi_l: int
    s_count: int
    methods_agree: bool
    transport_agree: bool | None = None
    methods_run: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return 0 <= self.bound <= self.exact <= 1

    @property
    def ok(self) -> bool:
        return self.holds and self.methods_agree and self.transport_agree is not False

    def to_json(self) -> dict:
        return {
            "moduli": list(self.moduli),
            "l": self.l,
            "phi_l": self.phi_l,
            "s_count": self.s_count,
            "exact": fraction_json(self.exact),
            "bound": fraction_json(self.bound),
            "bound_reduced": fraction_json(self.bound_reduced),
            "methods_agree": self.methods_agree,
            "transport_agree": self.transport_agree,
            "holds": self.holds,
        }


def fraction_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def _product_bound(values) -> Fraction:
    return math.prod((1 - Fraction(1, v) for v in values), start=Fraction(1))


def theorem2_bound(moduli, reduced: bool = False) -> Fraction:
    """``prod(1 - 1/phi(a_i))`` over the raw list, or over the reduced one."""
    m = ModuliList.of(moduli)
    return _product_bound(euler_phi(a) for a in (m.reduced if reduced else m.raw))


def theorem1_bound(moduli) -> Fraction:
    return _product_bound(ModuliList.of(moduli).raw)


def _relative_enum(m: ModuliList) -> tuple[int, int]:
    l = m.lcm
    if l > ENUM_BUDGET:
        raise BudgetExceeded(f"l = {l} exceeds the enumeration budget; use the inclusion-exclusion path")
    units = unit_residues(l)
    return int(avoids_one(units, m.raw).sum()), len(units)


def exact_relative_density_enum(moduli) -> DensityReport:
    m = ModuliList.of(moduli)
    s_count, phi_l = _relative_enum(m)
    return DensityReport(
        moduli=m.raw,
        exact=Fraction(s_count, phi_l),
        bound=theorem2_bound(m),
        bound_reduced=theorem2_bound(m, reduced=True),
        l=m.lcm,
        phi_l=phi_l,
        s_count=s_count,
        methods_agree=True,
        methods_run=("enum",),
    )


def _check_ie_budget(reduced) -> None:
    if len(reduced) > IE_BUDGET:
        raise BudgetExceeded(f"{len(reduced)} reduced moduli exceed the subset budget {IE_BUDGET}")


def exact_relative_density_ie(moduli) -> Fraction:
    """Sum over subsets T of ``(-1)**|T| / phi(lcm(T))``.

    Units that are 1 mod ``m`` (for ``m | l``) form the kernel of the surjection
    onto the units mod ``m``, a fraction ``1/phi(m)`` of all units mod ``l``.
    """
    reduced = ModuliList.of(moduli).reduced
    _check_ie_budget(reduced)
    total = Fraction(1)
    for m, coef in lcm_terms(reduced, math.lcm).items():
        total += Fraction(coef, euler_phi(m))
    return total


def exact_natural_density(moduli, cross_check: bool = True) -> Fraction:
    """Density of ``{n : n != 0 (mod a_i) for all i}``.

    Computed by inclusion-exclusion over lcms; when ``lcm(a)`` is within the
    enumeration budget the result is also checked against a direct count of
    one full period.
    """
    m = ModuliList.of(moduli)
    _check_ie_budget(m.reduced)
    total = Fraction(1)
    for v, coef in lcm_terms(m.reduced, math.lcm).items():
        total += Fraction(coef, v)
    if cross_check and m.lcm <= ENUM_BUDGET:
        n = np.arange(1, m.lcm + 1, dtype=np.int64)
        keep = np.ones(n.shape, dtype=bool)
        for a in m.raw:
            keep &= n % a != 0
        counted = Fraction(int(keep.sum()), m.lcm)
        if counted != total:
            raise InvariantViolation(f"natural density mismatch for {m.raw}: {total} vs {counted}")
    return total


def full_verification(moduli, transport: bool = True) -> DensityReport:
    """Run every feasible exact path and cross-check them.

    Enumeration needs ``lcm(a) <= 10**7``, inclusion-exclusion needs at most 24
    reduced moduli. Raises :class:`BudgetExceeded` when neither applies.
    """
    m = ModuliList.of(moduli)
    l = m.lcm
    results: dict[str, Fraction] = {}
    s_count = None
    if l <= ENUM_BUDGET:
        s_count, _ = _relative_enum(m)
        results["enum"] = Fraction(s_count, euler_phi(l))
    if len(m.reduced) <= IE_BUDGET:
        results["ie"] = exact_relative_density_ie(m)
    if not results:
        raise BudgetExceeded(f"no exact path is feasible for {m.raw}")
    exact = next(iter(results.values()))
    phi_l = euler_phi(l)
    if s_count is None:
        s_count = exact * phi_l
        s_count = s_count.numerator if s_count.denominator == 1 else -1

    transport_agree = None
    if transport and 2 <= l <= ENUM_BUDGET:
        transport_agree = membership_transport(m.raw, l).agree

    return DensityReport(
        moduli=m.raw,
        exact=exact,
        bound=theorem2_bound(m),
        bound_reduced=theorem2_bound(m, reduced=True),
        l=l,
        phi_l=phi_l,
        s_count=s_count,
        methods_agree=len(set(results.values())) == 1 and s_count >= 0,
        transport_agree=transport_agree,
        methods_run=tuple(results),
    )


def exact_relative_density(moduli) -> Fraction:
    """Cheapest feasible exact path: inclusion-exclusion, else enumeration."""
    m = ModuliList.of(moduli)
    if len(m.reduced) <= IE_BUDGET:
        return exact_relative_density_ie(m)
    return exact_relative_density_enum(m).exact
