"""Exit criteria, one test each. A PASS/FAIL line per criterion is printed in the summary."""

import math
import random
import time
from fractions import Fraction

import numpy as np

from resavoid.arith import euler_phi
from resavoid.density import (
    ModuliList,
    exact_relative_density_enum,
    exact_relative_density_ie,
    full_verification,
    theorem2_bound,
)
from resavoid.errors import BudgetExceeded
from resavoid.lattice import (
    best_translate_block,
    chung_bound,
    count_avoiders_bruteforce,
    count_avoiders_ie,
    norm,
    random_instance,
    verify_lemma,
)
from resavoid.sieve import SieveConfig, convergence_report, count_matching, iter_segments, naive_sieve
from resavoid.unitgroup import build_basis, membership_transport, unit_residues

from oracles import residue_set_s

SEED = 20261015


def random_moduli(rng, n=500, max_k=5, max_a=60):
    return [[rng.randint(1, max_a) for _ in range(rng.randint(0, max_k))] for _ in range(n)]


def test_ac1_theorem2_inequality(acceptance):
    start = time.perf_counter()
    violations = 0
    for moduli in random_moduli(random.Random(SEED)):
        exact = exact_relative_density_ie(moduli)
        if not theorem2_bound(moduli) <= exact:
            violations += 1
    elapsed = time.perf_counter() - start
    acceptance(
        "AC1",
        violations == 0 and elapsed < 30,
        f"500 random lists, {violations} violations of exact >= prod(1 - 1/phi(a_i)), {elapsed:.2f}s (< 30s)",
    )


def test_ac2_witnesses(acceptance):
    cases = {(3, 4): (Fraction(1, 4), Fraction(1, 4)), (4, 8): (Fraction(1, 2), Fraction(3, 8)), (5, 8): (Fraction(9, 16), Fraction(9, 16))}
    ok = True
    for moduli, (exact, bound) in cases.items():
        l = math.lcm(*moduli)
        by_residues = Fraction(len(residue_set_s(moduli, l)), euler_phi(l))
        rep = full_verification(moduli)
        ok &= rep.exact == by_residues == exact and rep.bound == bound and rep.ok
    ok &= full_verification((4, 8)).exact > full_verification((4, 8)).bound
    acceptance("AC2", ok, "(3,4): 1/4 = 1/4; (4,8): 1/2 > 3/8; (5,8): 9/16 = 9/16")


def test_ac3_method_cross_check(acceptance):
    checked = mismatches = 0
    for moduli in random_moduli(random.Random(SEED)):
        if ModuliList(tuple(moduli)).lcm <= 10**5:
            checked += 1
            if exact_relative_density_enum(moduli).exact != exact_relative_density_ie(moduli):
                mismatches += 1
    acceptance("AC3", mismatches == 0 and checked > 100, f"enumeration == inclusion-exclusion on {checked} lists with l <= 1e5, {mismatches} mismatches")


def transport_instances(rng, n=200):
    out = []
    while len(out) < n:
        moduli = [rng.randint(1, 60) for _ in range(rng.randint(1, 4))]
        if len(out) % 3 == 0:
            moduli.append(8 * rng.randint(1, 7))
        l = math.lcm(*moduli)
        if 2 <= l <= 10**5:
            out.append(moduli)
    return out


def test_ac4_membership_transport(acceptance):
    instances = transport_instances(random.Random(SEED))
    two_adic = sum(1 for m in instances if math.lcm(*m) % 8 == 0)
    cyclic_even = sum(1 for m in instances if math.lcm(*m) % 8 and math.lcm(*m) % 2 == 0)
    bad = [m for m in instances if not membership_transport(m).agree]
    acceptance(
        "AC4",
        not bad and two_adic >= 50 and cyclic_even > 0,
        f"{len(instances)} instances ({two_adic} with 8 | l, {cyclic_even} even without), {len(bad)} disagreements",
    )


def test_ac5_lemma_suite(acceptance):
    rng = random.Random(SEED)
    instances = [random_instance(rng) for _ in range(500)]
    count_mismatch = lemma_fail = block_fail = feasible = 0
    for inst in instances:
        brute = count_avoiders_bruteforce(inst)
        if brute != count_avoiders_ie(inst):
            count_mismatch += 1
        if not (verify_lemma(inst).holds and brute >= norm(inst.box) * chung_bound(inst)):
            lemma_fail += 1
        try:
            blk = best_translate_block(inst)
        except BudgetExceeded:
            continue
        feasible += 1
        if blk.block_count < math.ceil(norm(inst.box) * chung_bound(inst)):
            block_fail += 1
    acceptance(
        "AC5",
        count_mismatch == lemma_fail == block_fail == 0 and feasible > 250,
        f"500 instances: {count_mismatch} count mismatches, {lemma_fail} bound failures, "
        f"{block_fail} pigeonhole failures over {feasible} feasible translate checks",
    )


def test_ac6_unit_group_roundtrip(acceptance):
    failures = []
    total = 0
    for l in range(3, 2001):
        basis = build_basis(l)
        units = unit_residues(l)
        total += len(units)
        xs = basis.dlog_many(units)
        in_range = bool(np.all((xs >= 1) & (xs <= np.array(basis.orders))))
        back = basis.from_dlog_many(xs)
        flat = np.ravel_multi_index(tuple((xs - 1).T), basis.orders)
        if not (
            in_range
            and np.array_equal(back, units % l)
            and len(np.unique(flat)) == len(units)
            and math.prod(basis.orders) == euler_phi(l) == len(units)
        ):
            failures.append(l)
    acceptance("AC6", not failures, f"dlog bijective on all {total} units for l in [3, 2000]; failures at {failures[:5]}")


def test_ac7_sieve_oracle(acceptance):
    ref = naive_sieve(10**6)
    rng = random.Random(SEED)
    # (limit, segment size) pairs: every limit up to 20000, limits straddling
    # segment edges and prime squares, and random limits up to 1e6
    runs = {(limit, 1024) for limit in range(0, 20001)}
    sizes = (1024, 4096, 2**16, 2**20)
    runs |= {(rng.randint(0, 10**6), rng.choice(sizes)) for _ in range(1500)}
    for seg in (1024, 4096):
        for boundary in range(3 + 2 * seg, 10**6, 2 * seg):
            if seg == 4096 or boundary < 2 * 10**5:
                runs |= {(boundary + d, seg) for d in range(-2, 3) if boundary + d <= 10**6}
    for p in ref[ref < 1000].tolist():
        runs |= {(p * p + d, 2**16) for d in range(-2, 3)}
    limits = {limit for limit, _ in runs}
    bad = []
    for limit, seg in sorted(runs):
        segs = list(iter_segments(SieveConfig(limit, seg)))
        out = np.concatenate(segs) if segs else np.array([], dtype=np.int64)
        if not np.array_equal(out, ref[ref <= limit]):
            bad.append((limit, seg))
    full = {seg: np.concatenate(list(iter_segments(SieveConfig(10**6, seg)))) for seg in (1024, 3000, 2**16, 2**20)}
    full_ok = all(np.array_equal(v, ref) for v in full.values()) and len(ref) == 78498
    acceptance(
        "AC7",
        not bad and full_ok,
        f"segmented == naive on {len(runs)} (limit, segment) runs over {len(limits)} limits <= 1e6 "
        f"and full list at 1e6 for 4 segment sizes; pi(1e6) = {len(ref)}",
    )


def test_ac8_empirical_dirichlet(acceptance):
    start = time.perf_counter()
    details = []
    ok = True
    for moduli in [(3,), (3, 4), (5, 8)]:
        rep = convergence_report(moduli, SieveConfig(10**7), tolerance=0.005)
        last = rep.rows[-1]
        dev = abs(last.match_count / last.pi_x - float(rep.exact))
        ok &= last.x == 10**7 and dev <= 0.005 and rep.status == "PASS"
        details.append(f"{moduli}: {dev:.2e}")
    elapsed = time.perf_counter() - start
    acceptance("AC8", ok and elapsed < 10, f"|ratio_pi - exact| at 1e7 <= 0.005: {', '.join(details)}; {elapsed:.2f}s (< 10s)")


def test_ac9_degenerate_inputs(acceptance):
    ok = True
    cases = [(1,), (2,), (1, 2), (1, 5, 9), (2, 3, 4), (2, 60), (1, 8)]
    for moduli in cases:
        rep = full_verification(moduli)
        s_count = rep.s_count
        if rep.l >= 2:
            s_count = membership_transport(moduli).s_count
        match = count_matching(moduli, SieveConfig(10**5))[-1].match_count
        ok &= rep.exact == 0 and rep.bound == 0 and rep.s_count == 0 and s_count == 0 and match <= 1 and rep.ok
    acceptance("AC9", ok, f"{len(cases)} lists containing 1 or 2: exact 0, bound 0, S empty, empirical matches <= 1")
