import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from realflags.errors import DomainError
from realflags.exact import ExactVector
from realflags.flags import catalogue_entry, matsuki_doubling
from realflags.rootsys import build_root_system
from realflags.triads import (
    PiPoint,
    SymmetricTriad,
    affine_generators,
    block,
    check_axioms,
    direct_sum,
    dumps_triad,
    fundamental_cell,
    gamma_contains,
    gamma_contains_reduced,
    is_regular,
    loads_triad,
    predicted_intersection_dimension,
    rational_grid,
    span_property,
    st_point,
    st_point_direct_sum,
)

F = Fraction


def su2n(n):
    return catalogue_entry("su2n-so-sp", n).triad


def rank1(n):
    return catalogue_entry("su-n-so-rank1", n).triad


BUILTINS = [su2n(2), su2n(3), su2n(4), su2n(5), rank1(3), rank1(4), rank1(5)]
DOUBLED = [
    matsuki_doubling(case, build_root_system(f, r))
    for case in (3, 4)
    for f, r in (("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("C", 3))
]
SMALL = [t for t in BUILTINS + DOUBLED if t.dim_a <= 3]


def ids(ts):
    return [f"{t.name}-{t.ambient_dim}" for t in ts]


# --------------------------------------------------------------------------
# axioms


@pytest.mark.parametrize("triad", BUILTINS + DOUBLED, ids=ids(BUILTINS + DOUBLED))
def test_builtins_pass_axioms(triad):
    report = check_axioms(triad)
    assert report.passed, report.to_dict()
    assert [r.number for r in report.results] == [1, 2, 3, 4, 5, 6]


def test_degenerate_rank_one_fails_condition_4():
    report = check_axioms(rank1(2))
    assert [r.number for r in report.failed()] == [4]
    assert "empty" in report.failed()[0].witness


def test_deleting_pair_from_w_is_detected():
    t = su2n(3)
    r = ExactVector([1, -1, 0])
    bad = SymmetricTriad(t.ambient_dim, t.sigma_tilde, t.sigma, [w for w in t.w if w not in (r, -r)], space=t.space)
    failed = {f.number for f in check_axioms(bad).failed()}
    assert failed & {3, 4}
    assert all(f.witness for f in check_axioms(bad).failed())


def _mutations(t):
    parts = {"sigma_tilde": t.sigma_tilde, "sigma": t.sigma, "w": t.w}
    for label, roots in parts.items():
        for r in roots:
            if not r.lex_positive():
                continue
            pair_del = tuple(v for v in roots if v not in (r, -r))
            one_del = tuple(v for v in roots if v != r)
            for kind, new in (("pair", pair_del), ("sign", one_del)):
                kw = dict(parts)
                kw[label] = new
                yield f"{label}:{kind}:{r}", SymmetricTriad(t.ambient_dim, kw["sigma_tilde"], kw["sigma"], kw["w"], space=t.space)


@pytest.mark.parametrize("triad", SMALL, ids=ids(SMALL))
def test_every_mutation_fails(triad):
    count = 0
    for label, mutant in _mutations(triad):
        report = check_axioms(mutant)
        assert not report.passed, label
        assert all(f.witness for f in report.failed()), label
        count += 1
    assert count >= 3


def test_reducible_sigma_tilde_fails_condition_1():
    a1 = matsuki_doubling(4, build_root_system("A", 1))
    s = direct_sum([a1, a1])
    flat = SymmetricTriad(s.ambient_dim, s.sigma_tilde, s.sigma, s.w, space=s.space)
    res = check_axioms(flat)
    assert [r.number for r in res.failed()] == [1]
    assert "reducible" in res.failed()[0].witness


def test_non_crystallographic_set_fails():
    a, b = ExactVector([1, 0]), ExactVector([F(1, 3), 1])
    t = SymmetricTriad.from_sets([a, -a, b, -b], [a, -a])
    assert not check_axioms(t).passed


def test_oracle_triads_pass_axioms():
    from realflags.oracle import build_pair, extract_triad

    for name, n in (("su2n-so-sp", 2), ("su-n-so-rank1", 3)):
        assert check_axioms(extract_triad(build_pair(name, n))).passed


# --------------------------------------------------------------------------
# regular points


def test_rank_one_regularity_examples():
    t = rank1(4)
    assert is_regular(t, PiPoint.of(F(1, 3)))
    res = is_regular(t, PiPoint.of(F(1, 4)))
    assert not res
    assert res.violations[0].root == ExactVector([2])
    assert res.violations[0].kind == "w"
    assert "pi/2 + pi*Z" in res.violations[0].describe()


def test_su2n_half_is_singular_via_w():
    t = su2n(2)
    res = is_regular(t, PiPoint.of(F(1, 4), F(-1, 4)))
    assert not res
    assert {v.kind for v in res.violations} == {"w"}
    assert res.violations[0].root == ExactVector([1, -1])


def test_origin_is_singular_via_sigma():
    res = is_regular(su2n(3), PiPoint.of(0, 0, 0))
    assert not res and all(v.kind == "sigma" for v in res.violations)
    assert res.violations[0].root.lex_positive()


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        is_regular(su2n(3), PiPoint.of(0, 0))


@pytest.mark.parametrize("p", range(-120, 121))
def test_rank_one_quarter_rule(p):
    q = F(p, 60)
    assert bool(is_regular(rank1(5), PiPoint.of(q))) == ((4 * q).denominator != 1)


def test_predicted_dimension_rank_one():
    t = rank1(5)
    assert predicted_intersection_dimension(t, PiPoint.of(F(1, 7))) == 1
    assert predicted_intersection_dimension(t, PiPoint.of(F(1, 2))) == 1 + 3
    assert predicted_intersection_dimension(t, PiPoint.of(F(1, 4))) == 1 + 1
    assert predicted_intersection_dimension(t, PiPoint.of(0)) == 1 + 3


def test_predicted_dimension_needs_multiplicities():
    t = matsuki_doubling(4, build_root_system("A", 1))
    with pytest.raises(DomainError):
        predicted_intersection_dimension(t, PiPoint.of(0, 0))


# --------------------------------------------------------------------------
# cells, lattice, st points


def test_cell_rank_one():
    cell = fundamental_cell(rank1(3))
    assert cell.alpha_tilde == ExactVector([2])
    assert cell.m_coeffs == (2,)
    assert cell.h_basis == (PiPoint.of(F(1, 4)),)
    assert cell.to_dict() == {"H": [["1/4"]], "alpha_tilde": ["2"], "m": [2], "simple_sigma": [["1"]]}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cell_type_a(n):
    t = su2n(n)
    cell = fundamental_cell(t)
    assert cell.alpha_tilde == ExactVector.unit(n, 0) - ExactVector.unit(n, n - 1)
    assert cell.m_coeffs == (1,) * (n - 1)
    assert is_regular(t, cell.interior_point())
    for h in cell.h_basis:
        assert not is_regular(t, h)


def test_cell_su2n_3_vertices():
    cell = fundamental_cell(su2n(3))
    assert {h.q for h in cell.h_basis} == {
        ExactVector([F(1, 3), F(-1, 6), F(-1, 6)]),
        ExactVector([F(1, 6), F(1, 6), F(-1, 3)]),
    }


def test_cell_errors():
    with pytest.raises(DomainError, match="reducible"):
        fundamental_cell(direct_sum([su2n(2), su2n(2)]))
    with pytest.raises(DomainError):
        fundamental_cell(rank1(2))


@given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=30), min_size=2, max_size=2))
def test_open_cell_is_regular(ts):
    t = su2n(3)
    cell = fundamental_cell(t)
    if min(ts) <= 0 or sum(ts) >= 1:
        return
    assert is_regular(t, cell.point(ts))


@given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=30), min_size=2, max_size=2), st.integers(0, 2))
def test_closure_facets_are_singular(ts, face):
    t = su2n(3)
    cell = fundamental_cell(t)
    if min(ts) < 0 or sum(ts) > 1:
        return
    pts = list(ts)
    if face < 2:
        pts[face] = F(0)
    else:
        pts[1] = 1 - pts[0]
    assert not is_regular(t, cell.point(pts))


def test_st_point_examples():
    assert st_point(rank1(3), 3) == PiPoint.of(F(1, 6))
    cell = fundamental_cell(su2n(3))
    assert st_point(su2n(3), 3) == (cell.h_basis[0] + cell.h_basis[1]) * F(1, 3)
    with pytest.raises(DomainError):
        st_point(su2n(3), 2)


@pytest.mark.parametrize("triad", [su2n(2), su2n(3), su2n(4), rank1(3), rank1(6)] + DOUBLED[:4], ids=ids([su2n(2), su2n(3), su2n(4), rank1(3), rank1(6)] + DOUBLED[:4]))
def test_st_point_range(triad):
    total = fundamental_cell(triad).total
    for n in range(total + 1, total + 21):
        h0 = st_point(triad, n)
        assert is_regular(triad, h0)
        assert gamma_contains(triad, h0 * n)


def test_st_point_direct_sum():
    s = direct_sum([su2n(3), rank1(4)])
    h, n = st_point_direct_sum(s, [4, 5])
    assert n == 20
    assert block(s, h, 0) == st_point(su2n(3), 4)
    assert block(s, h, 1) == st_point(rank1(4), 5)
    with pytest.raises(DomainError):
        st_point_direct_sum(s, [4])


@pytest.mark.parametrize("triad", BUILTINS + DOUBLED[:6], ids=ids(BUILTINS + DOUBLED[:6]))
def test_gamma_reduced_agrees(triad):
    rng = random.Random(20261019)
    basis = triad.a_basis
    for _ in range(10_000):
        q = ExactVector.zero(triad.ambient_dim)
        for b in basis:
            q = q + F(rng.randint(-24, 24), rng.choice((1, 2, 3, 4, 6, 8, 12))) * b
        H = PiPoint(q)
        assert gamma_contains(triad, H) == gamma_contains_reduced(triad, H)


def test_gamma_examples():
    t = rank1(3)
    assert gamma_contains(t, PiPoint.of(F(1, 2)))
    assert not gamma_contains(t, PiPoint.of(F(1, 4)))


# --------------------------------------------------------------------------
# affine Weyl group and span property


def test_affine_generators_are_involutions():
    gens = affine_generators(rank1(3), 2)
    assert all(g.is_involution() for g in gens)
    # sigma roots +-1 give translations 2k*(+-1), W roots give (2k+1)/|a|^2 * a
    assert len(gens) == len({(g.linear, g.translation) for g in gens})
    with pytest.raises(DomainError):
        affine_generators(rank1(3), -1)


@pytest.mark.parametrize("triad", [su2n(3), rank1(4), DOUBLED[1]], ids=ids([su2n(3), rank1(4), DOUBLED[1]]))
def test_affine_generators_preserve_regularity(triad):
    gens = affine_generators(triad, 1)
    for H in rational_grid(triad, [7, 9], span=1)[::3]:
        reg = bool(is_regular(triad, H))
        for g in gens:
            assert bool(is_regular(triad, g(H))) == reg


def test_span_property():
    assert span_property(su2n(4))
    assert span_property(rank1(4))
    with pytest.raises(DomainError):
        span_property(direct_sum([su2n(2), su2n(3)]))


# --------------------------------------------------------------------------
# direct sums and exchange format


def test_direct_sum_structure():
    s = direct_sum([su2n(2), direct_sum([rank1(3), su2n(3)])])
    assert len(s.components) == 3
    assert [o for o, _ in s.components] == [0, 2, 3]
    assert s.ambient_dim == 6 and s.dim_a == 1 + 1 + 2
    assert not check_axioms(SymmetricTriad(s.ambient_dim, s.sigma_tilde, s.sigma, s.w, space=s.space)).passed
    H = PiPoint.of(F(1, 7), F(-1, 7), F(1, 5), F(1, 9), F(1, 11), F(-20, 99))
    assert bool(is_regular(s, H)) == all(bool(is_regular(c, block(s, H, i))) for i, (_, c) in enumerate(s.components))


@pytest.mark.parametrize("triad", BUILTINS + DOUBLED[:3] + [direct_sum([su2n(2), rank1(3)])])
def test_exchange_round_trip(triad):
    text = dumps_triad(triad)
    back = loads_triad(text)
    assert back == triad
    assert dumps_triad(back) == text
    assert check_axioms(back).to_dict() == check_axioms(triad).to_dict()


@pytest.mark.parametrize("text", ["{", "[]", '{"ambient_dim": 1}', '{"ambient_dim": 1, "sigma_tilde": [["1/0"]], "sigma": [], "w": []}'])
def test_exchange_rejects(text):
    with pytest.raises(DomainError):
        loads_triad(text)


def test_fractions_written_exactly():
    t = SymmetricTriad.from_sets([ExactVector([F(1, 2)]), ExactVector([F(-1, 2)])], [ExactVector([F(1, 2)]), ExactVector([F(-1, 2)])])
    text = dumps_triad(t)
    assert '"1/2"' in text and '"-1/2"' in text
    assert loads_triad(text) == t
