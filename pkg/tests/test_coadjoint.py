from fractions import Fraction

import pytest
import sympy

from centinv.centralizer import BasisIndex, Centraliser, ZetaEtaBasis
from centinv.coadjoint import (
    FieldTooSmall, alpha_spec, beta_point, coad, coad_alpha_closed_form, coad_pairing,
    dominance_span_check, expansion, in_subdual, index_report, jacobian_probe, beta_differential_check,
    make_special_point, rho_action, rho_pullback, stabiliser, zeta_closed_form_diagonal,
)
from centinv.combinatorics import Case, Partition, is_valid, partitions
from centinv.fields import Field, QQ
from centinv.invariants import elementary_invariant
from centinv.polyring import jacobian_rank

SIX = [Partition(p) for N in range(1, 7) for p in partitions(N)]


def xi(i, j, s):
    return BasisIndex(i, j, s)


def valid(lams, cases=tuple(Case)):
    return [(lam, c) for lam in lams for c in cases if is_valid(lam, c)]


@pytest.mark.parametrize("lam", SIX, ids=str)
def test_coad_matches_pairing(lam):
    cent = Centraliser(lam)
    for x in cent.basis:
        for g in cent.basis:
            assert coad({x: 1}, {g: 1}, lam) == coad_pairing({x: 1}, {g: 1}, lam)


def test_coad_examples():
    lam = Partition((3,))
    assert coad({xi(1, 1, 1): 1}, {xi(1, 1, 2): 1}, lam) == {}
    lam = Partition((2, 1))
    spec = alpha_spec(lam, Case.GL)
    a1 = spec.a[1]
    alpha = spec.point(lam)
    assert alpha == {xi(1, 1, 1): 1, xi(2, 2, 0): 2}
    assert coad({xi(2, 1, 1): 1}, alpha, lam) == {xi(1, 2, 0): -a1}
    assert coad_alpha_closed_form(xi(2, 1, 1), spec, lam) == {xi(1, 2, 0): -a1}
    lam = Partition((1, 1))
    spec = alpha_spec(lam, Case.GL)
    assert coad_alpha_closed_form(xi(1, 2, 0), spec, lam) == {xi(2, 1, 0): spec.a[1] - spec.a[2]}


def test_coad_is_a_lie_action():
    F = Field(7)
    lam = Partition((2, 2, 1))
    cent = Centraliser(lam)
    gamma = {b: (k * 3 + 1) % 7 for k, b in enumerate(cent.basis)}
    for x in cent.basis[::2]:
        for y in cent.basis[1::2]:
            xy = cent.bracket_vectors({x: 1}, {y: 1}, F)
            lhs = coad(xy, gamma, lam, F)
            a = coad({x: 1}, coad({y: 1}, gamma, lam, F), lam, F)
            b = coad({y: 1}, coad({x: 1}, gamma, lam, F), lam, F)
            rhs = {k: (a.get(k, 0) - b.get(k, 0)) % 7 for k in set(a) | set(b)}
            assert lhs == {k: v for k, v in rhs.items() if v}


@pytest.mark.parametrize("lam", SIX, ids=str)
def test_formula_for_alpha(lam):
    spec = alpha_spec(lam, Case.GL)
    alpha = spec.point(lam)
    for b in Centraliser(lam).basis:
        assert coad_alpha_closed_form(b, spec, lam) == coad({b: 1}, alpha, lam)


def test_alpha_spec_rules():
    lam = Partition((3, 3, 2))
    spec = alpha_spec(lam, Case.SP)
    assert spec.a[1] == -spec.a[2]
    assert len({spec.a[i] * (1 if i == 3 else 2) for i in spec.a}) == 3
    with pytest.raises(FieldTooSmall):
        alpha_spec(Partition((1, 1, 1, 1)), Case.GL, Field(3))
    # 1, 2 and 3 = 0 mod 3 are still pairwise distinct
    assert alpha_spec(Partition((1, 1, 1)), Case.GL, Field(3)).a == {1: 1, 2: 2, 3: 0}


def test_special_points():
    lam = Partition((2, 1))
    assert make_special_point(lam, Case.GL, "beta").point == {xi(1, 2, 0): 1}
    lam = Partition((3, 3))
    bb = make_special_point(lam, Case.SP, "betabar_sp").point
    zb = ZetaEtaBasis(lam, Case.SP)
    # beta-bar is half of the (zeta_1^{2,0})* dual, which doubles on the self-paired entry
    assert zb.dual_vector("zeta", 1, 2, 0) == {xi(1, 2, 2): 2}
    assert bb == {xi(1, 2, 2): 1}
    lam = Partition((3, 1))
    alpha = make_special_point(lam, Case.SO, "alpha").point
    assert in_subdual(alpha, lam, Case.SO, "p")
    with pytest.raises(ValueError):
        make_special_point(lam, Case.SO, "betabar_sp")


@pytest.mark.parametrize("lam,case", valid(SIX, (Case.SP, Case.SO)), ids=str)
def test_special_point_membership(lam, case):
    target = "k" if case is Case.SP else "p"
    kind = "betabar_sp" if case is Case.SP else "betabar_so"
    for k in ("alpha", kind):
        pt = make_special_point(lam, case, k).point
        assert in_subdual(pt, lam, case, target)
    spec = alpha_spec(lam, case)
    assert expansion(lam, case, "alpha", spec) == spec.point(lam)


def test_rho_action():
    lam = Partition((3, 2, 1))
    F = Field(7)
    alpha = make_special_point(lam, Case.GL, "alpha", F).point
    beta = beta_point(lam, F)
    assert rho_action(3, alpha, F) == {k: v * 3 % 7 for k, v in alpha.items()}
    assert rho_action(3, beta, F) == beta
    assert rho_action(1, alpha, F) == alpha
    gamma = {b: 1 for b in Centraliser(lam).basis}
    assert rho_action(2, rho_action(3, gamma, F), F) == rho_action(6, gamma, F)
    with pytest.raises(ValueError):
        rho_action(0, gamma, F)


@pytest.mark.parametrize("lam", [Partition(p) for p in [(2, 1), (3, 2), (2, 2, 1), (3, 1, 1)]], ids=str)
def test_invariants_are_rho_homogeneous(lam):
    for r in range(1, lam.N + 1):
        inv = elementary_invariant(lam, r)
        for t in (2, Fraction(1, 3)):
            assert rho_pullback(inv.poly, t) == inv.poly * Fraction(t) ** inv.degree


def test_stabiliser_examples():
    lam = Partition((2, 1))
    rep = stabiliser({}, lam, Case.GL)
    assert rep.dim == Centraliser(lam).dim
    alpha = make_special_point(lam, Case.GL, "alpha").point
    rep = stabiliser(alpha, lam, Case.GL)
    assert rep.dim == 3
    for x in rep.kernel:
        assert all(b.i == b.j for b in x)
        assert coad(x, alpha, lam) == {}
    lam = Partition((3, 1))
    alpha = make_special_point(lam, Case.SO, "alpha").point
    assert stabiliser(alpha, lam, Case.SO).dim == 1


def test_index_examples():
    assert index_report(Partition((3, 2)), Case.GL) == 5
    assert index_report(Partition((2, 2)), Case.SP) == 2
    assert index_report(Partition((3, 1)), Case.SO) == 1


@pytest.mark.parametrize("lam", [Partition(p) for p in [(3, 1), (2, 2), (2, 2, 1), (3, 3, 1, 1)]], ids=str)
def test_so_stabiliser_kills_diagonal_p(lam):
    case = Case.SO
    zb = ZetaEtaBasis(lam, case)
    cent = Centraliser(lam)
    alpha = make_special_point(lam, case, "alpha").point
    for x in stabiliser(alpha, lam, case).kernel:
        xv = zb.k.to_vector(x)
        for lab in zb.p.labels:
            if lab.i == lab.j:
                assert cent.bracket_vectors(xv, zb.p.vectors[lab], QQ) == {}


def test_dominance_examples():
    assert dominance_span_check(Partition((1, 1)), Case.GL).passed
    rep = dominance_span_check(Partition((4,)), Case.GL)
    assert rep.passed and rep.checked == 0
    assert dominance_span_check(Partition((2, 2)), Case.SP).passed


@pytest.mark.parametrize("lam,case", valid(SIX, (Case.SP, Case.SO)), ids=str)
def test_displayed_zeta_formula_has_the_right_directions(lam, case):
    exact, scaled, support, total = zeta_closed_form_diagonal(lam, case)
    assert support == total


def test_displayed_zeta_formula_is_off_by_two_on_paired_blocks():
    # the unnormalised dual of a self-paired zeta doubles one coordinate
    exact, scaled, support, total = zeta_closed_form_diagonal(Partition((1, 1)), Case.SP)
    assert (exact, scaled, support, total) == (1, 3, 3, 3)


@pytest.mark.parametrize("lam", SIX, ids=str)
def test_beta_differential(lam):
    assert beta_differential_check(lam).passed


def test_beta_differential_example():
    lam = Partition((2, 1))
    d = elementary_invariant(lam, 3).poly.differential(beta_point(lam))
    assert {b: v for b, v in d.items() if b.j == 1} == {xi(2, 1, 1): -1}


def test_jacobian_examples():
    rep = jacobian_probe(Partition((2, 1)), Case.GL)
    assert rep.ranks == {"beta": 3, "alpha": 3, "alpha+beta": 3}
    rep = jacobian_probe(Partition((2,)), Case.SP)
    assert set(rep.ranks.values()) == {1}
    # at zero only the linear generators contribute
    fs = [elementary_invariant(Partition((2, 1)), r).poly for r in (1, 2, 3)]
    assert jacobian_rank(fs, {}) == 2


def test_jacobian_rank_against_sympy():
    lam = Partition((2, 1))
    fs = [elementary_invariant(lam, r).poly for r in (1, 2, 3)]
    alpha = make_special_point(lam, Case.GL, "alpha").point
    beta = beta_point(lam)
    pt = {k: alpha.get(k, 0) + beta.get(k, 0) for k in set(alpha) | set(beta)}
    variables = fs[0].ring.variables
    rows = [[f.diff(v).evaluate(pt) for v in variables] for f in fs]
    assert sympy.Matrix(rows).rank() == jacobian_rank(fs, pt) == 3


@pytest.mark.parametrize("lam,case", valid(SIX), ids=str)
def test_jacobian_probe_full_rank(lam, case):
    for F in (QQ, Field(5), Field(7)):
        try:
            rep = jacobian_probe(lam, case, F)
        except FieldTooSmall:
            continue
        assert rep.passed, rep.failures
