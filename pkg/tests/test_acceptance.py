"""Acceptance criteria 1-9.  Each test prints one PASS/FAIL line and then asserts."""

import time
from fractions import Fraction
from math import factorial, prod

import numpy as np
import pytest

from realflags.exact import ExactVector
from realflags.flags import (
    catalogue_entry,
    congruent_intersection,
    generic_regular_points,
    matsuki_doubling,
    noncongruent_intersection,
    orbit_equality_chain,
)
from realflags.oracle import build_pair
from realflags.oracle.extract import centralizer, extract_triad, graded_dimension
from realflags.oracle.verify import (
    verify_all_rotations,
    verify_commutative_lemma,
    verify_dimension_grid,
    verify_extraction,
    verify_lemma_regularity,
)
from realflags.rootsys import build_root_system
from realflags.triads import (
    PiPoint,
    SymmetricTriad,
    check_axioms,
    fundamental_cell,
    gamma_contains,
    is_regular,
    st_point,
)

F = Fraction


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def partitions(n, max_parts):
    def rec(rem, largest):
        if rem == 0:
            yield ()
            return
        for k in range(min(rem, largest), 0, -1):
            for rest in rec(rem - k, k):
                yield (k,) + rest
    return [p for p in rec(n, n) if len(p) <= max_parts]


def x0_for(parts):
    vals = []
    for k, mult in enumerate(parts):
        vals += [F(7 * (len(parts) - k))] * mult
    mean = sum(vals) / len(vals)
    return ExactVector([v - mean for v in vals])


def type_a_base_points(n):
    # a single block gives x0 = 0, which is excluded (x0 must be a nonzero trace-free vector)
    return [(p, x0_for(p)) for p in partitions(n, 4) if len(p) > 1]


def doubled_triads():
    return [
        matsuki_doubling(case, build_root_system(f, r))
        for case in (3, 4)
        for f, r in (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2))
    ]


def builtin_triads():
    out = [catalogue_entry("su2n-so-sp", n).triad for n in (2, 3, 4, 5)]
    out += [catalogue_entry("su-n-so-rank1", n).triad for n in (3, 4, 5, 6)]
    return out


def test_criterion_1_type_a_cardinality(report):
    start = time.perf_counter()
    checked, bad = 0, []
    for n in (2, 3, 4, 5):
        triad = catalogue_entry("su2n-so-sp", n).triad
        Hs = generic_regular_points(triad, 3)
        assert len(set(Hs)) == 3
        for parts, x0 in type_a_base_points(n):
            want = factorial(n) // prod(factorial(k) for k in parts)
            for H in Hs:
                res = noncongruent_intersection(triad, x0, H)
                checked += 1
                if not res.discrete or res.cardinality != want:
                    bad.append((n, parts, str(H), res.kind, res.cardinality, want))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 5.0
    report(1, ok, f"{checked} (n, partition, H) cases, {len(bad)} mismatches, {elapsed:.2f}s (limit 5s)")


def test_criterion_2_rank_one(report):
    start = time.perf_counter()
    disagreements = wrong_sets = regular = 0
    for size in (3, 4, 5):
        e = catalogue_entry("su-n-so-rank1", size)
        x0 = e.default_x0.vector
        for p in range(-120, 121):
            q = F(p, 60)
            H = PiPoint.of(q)
            rule = (4 * q).denominator != 1  # <a, H> not in (pi/4) Z
            reg = bool(is_regular(e.triad, H))
            disagreements += reg != rule
            if reg:
                regular += 1
                res = noncongruent_intersection(e.triad, x0, H)
                if not res.discrete or set(res.points) != {x0, -x0} or res.cardinality != 2:
                    wrong_sets += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and wrong_sets == 0 and elapsed < 1.0
    report(2, ok, f"{3 * 241} grid points, {disagreements} rule disagreements, {regular} regular with "
                  f"{wrong_sets} bad point sets, {elapsed:.2f}s (limit 1s)")


def test_criterion_3_extraction(report):
    start = time.perf_counter()
    failures, worst = [], 0.0
    for name, n in (("su2n-so-sp", 2), ("su2n-so-sp", 3), ("su-n-so-rank1", 2), ("su-n-so-rank1", 3), ("su-n-so-rank1", 4)):
        pair = build_pair(name, n)
        got = extract_triad(pair)
        ref = pair.triad
        same = (
            got.sigma_tilde == ref.sigma_tilde and got.sigma == ref.sigma and got.w == ref.w
            and dict(got.m) == dict(ref.m) and dict(got.n) == dict(ref.n)
        )
        totals = graded_dimension(got) == pair.algebra.dim - centralizer(pair).shape[1]
        rep = verify_extraction(pair)
        worst = max(worst, rep.worst())
        if not (same and totals and rep.passed):
            failures.append(f"{name}[{n}]")
    elapsed = time.perf_counter() - start
    ok = not failures and worst < 1e-8 and elapsed < 30.0
    report(3, ok, f"5 pairs, failures {failures or 'none'}, worst residual {worst:.1e}, {elapsed:.2f}s (limit 30s)")


def test_criterion_4_dimension_certificate(report):
    start = time.perf_counter()
    lines, ok = [], True
    for name, n in (("su2n-so-sp", 2), ("su2n-so-sp", 3), ("su2n-so-sp", 4),
                    ("su-n-so-rank1", 2), ("su-n-so-rank1", 3), ("su-n-so-rank1", 4)):
        rep = verify_dimension_grid(build_pair(name, n), count=200, seed=0)
        ok &= rep.passed
        lines.append(f"{name}[{n}] {rep.meta['singular points']} singular")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60.0
    report(4, ok, f"200 seeded points each ({'; '.join(lines)}), {elapsed:.2f}s (limit 60s)")


def test_criterion_5_antipodality(report):
    worst_pair = worst_against = 0.0
    sets = 0
    cases = []
    for n in (2, 3):
        pair = build_pair("su2n-so-sp", n)
        for _, x0 in type_a_base_points(n):
            cases.append((pair, x0))
    for n in (3, 4):
        pair = build_pair("su-n-so-rank1", n)
        cases.append((pair, pair.entry.default_x0.vector))
    ok = True
    for pair, x0 in cases:
        for H in generic_regular_points(pair.triad, 2):
            res = noncongruent_intersection(pair.triad, x0, H)
            rep = verify_commutative_lemma(pair, res.points, H, x0)
            ok &= rep.passed
            sets += 1
            worst_pair = max(worst_pair, rep.checks[1].residual)
            worst_against = max(worst_against, rep.checks[2].residual)
    cong = build_pair("su-n-so-congruent", 3)
    for x0 in (ExactVector([1, 1, -2]), ExactVector([2, 0, -2])):
        H = generic_regular_points(cong.restricted, 1)[0]
        res = congruent_intersection(cong.restricted, x0, H)
        rep = verify_commutative_lemma(cong, res.points, H, x0)
        ok &= rep.passed
        sets += 1
        worst_pair = max(worst_pair, rep.checks[1].residual)
        worst_against = max(worst_against, rep.checks[2].residual)
    ok &= worst_pair < 1e-9 and worst_against < 1e-9
    report(5, ok, f"{sets} discrete sets, max |[x,y]| = {worst_pair:.1e}, max |[x,v]| = {worst_against:.1e} (limit 1e-9)")


def _mutants(t):
    parts = {"sigma_tilde": t.sigma_tilde, "sigma": t.sigma, "w": t.w}
    for label, roots in parts.items():
        for r in roots:
            if not r.lex_positive():
                continue
            for new in (tuple(v for v in roots if v not in (r, -r)), tuple(v for v in roots if v != r)):
                kw = dict(parts)
                kw[label] = new
                yield SymmetricTriad(t.ambient_dim, kw["sigma_tilde"], kw["sigma"], kw["w"], space=t.space)


def test_criterion_6_axioms(report):
    triads = builtin_triads() + doubled_triads()
    passing = sum(check_axioms(t).passed for t in triads)
    mutants = caught = 0
    for t in triads:
        if t.dim_a > 3:
            continue
        for m in _mutants(t):
            mutants += 1
            rep = check_axioms(m)
            caught += (not rep.passed) and all(f.witness for f in rep.failed())
    ok = passing == len(triads) and caught == mutants and mutants > 0
    report(6, ok, f"{passing}/{len(triads)} builtin and doubled triads pass; {caught}/{mutants} mutants rejected with a witness")


def test_criterion_7_st_lemma(report):
    irreducible = builtin_triads() + doubled_triads()
    exact_cases = bad = 0
    for t in irreducible:
        total = fundamental_cell(t).total
        for n in range(total + 1, total + 21):
            h0 = st_point(t, n)
            exact_cases += 1
            bad += not (is_regular(t, h0) and gamma_contains(t, h0 * n))
    numeric, worst = True, 0.0
    for name, n in (("su2n-so-sp", 2), ("su2n-so-sp", 3), ("su-n-so-rank1", 3), ("su-n-so-rank1", 4)):
        pair = build_pair(name, n)
        total = fundamental_cell(pair.triad).total
        for order in (total + 1, total + 4):
            rep = verify_lemma_regularity(pair, order)
            numeric &= rep.passed
            worst = max(worst, rep.checks[0].residual)
    ok = bad == 0 and numeric and worst < 1e-8
    report(7, ok, f"{exact_cases} exact (triad, n) cases with {bad} failures; max |Ad(exp 4nH0) - id| = {worst:.1e} (limit 1e-8)")


def test_criterion_8_equality_chain(report):
    cases = bad = 0
    for n in (2, 3, 4, 5):
        e = catalogue_entry("su2n-so-sp", n)
        points = [e.default_x0.vector] + ([x0 for _, x0 in type_a_base_points(n)] if n <= 4 else [])
        for x0 in points:
            left, right = orbit_equality_chain(e, x0)
            cases += 1
            bad += set(left) != set(right)
    for n in (3, 4, 5, 6):
        e = catalogue_entry("su-n-so-rank1", n)
        for x0 in (ExactVector([1]), ExactVector([F(-3, 5)])):
            left, right = orbit_equality_chain(e, x0)
            cases += 1
            bad += set(left) != set(right)
    report(8, bad == 0, f"W(Sigma~)x0 = W(Delta)x0 n a on {cases - bad}/{cases} (pair, x0) cases")


def test_criterion_9_rotations(report):
    worst, classes, ok = 0.0, 0, True
    for name, n in (("su2n-so-sp", 2), ("su2n-so-sp", 3), ("su-n-so-rank1", 3), ("su-n-so-rank1", 4)):
        pair = build_pair(name, n)
        for H in generic_regular_points(pair.triad, 1) + [PiPoint(pair.triad.a_basis[0] * F(1, 4))]:
            rep = verify_all_rotations(pair, H)
            ok &= rep.passed
            worst = max(worst, rep.worst())
            classes += len(pair.triad.sigma_plus) + len(pair.triad.w_plus)
    ok &= worst < 1e-8 and not np.isnan(worst)
    report(9, ok, f"{classes} (pair, H, root class) cases, worst residual {worst:.1e} (limit 1e-8)")
