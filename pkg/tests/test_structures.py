from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from vaisman import linalg as la
from vaisman.catalog import (catalog_get, complex_kahler, heisenberg_sasaki, kodaira_primary, omega_psi,
                             sl2r_sasaki, su2_sasaki)
from vaisman.constructions import kahler_pair
from vaisman.errors import DimensionError, StructureError
from vaisman.forms import KForm
from vaisman.lie import Subspace
from vaisman.structures import (HermitianData, SasakiData, check_hermitian, check_kahler_algebra, check_lck,
                                check_sasaki, fundamental_form, koszul_form, lee_field, nijenhuis_defect,
                                ricci_form)
from samplers import small

T, X, Y, Z = range(4)


def e(n, *idx):
    return KForm.basis(n, *idx)


def matrix_a(a, b, c):
    return ((c, -b, a, 0), (-b, c, 0, a), (a, 0, c, b), (0, a, b, c))


@given(small, small, small)
def test_omega_psi_metric_is_matrix_a(a, b, c):
    assert omega_psi(a, b, c).metric == la.matrix(matrix_a(a, b, c))


def test_omega_psi_base_form():
    omega = fundamental_form(omega_psi(0, 0, 1))
    assert omega == (e(4, Z) ^ e(4, T)) + (e(4, X) ^ e(4, Y))


def test_kodaira_fundamental_form():
    assert fundamental_form(kodaira_primary()) == (e(4, 0) ^ e(4, 1)) + (e(4, 2) ^ e(4, 3))


@given(small, small, st.fractions(min_value=F(1, 4), max_value=5, max_denominator=4))
def test_omega_psi_lee_data(a, b, c):
    D = c * c - a * a - b * b
    assume(D > 0)
    rep = check_lck(omega_psi(a, b, c))
    assert rep.lck
    assert rep.theta == e(4, T)
    assert rep.xi == (c / D, b / D, -a / D, 0)
    assert rep.xi_norm == c / D
    kd = {tuple(w["pair"]): w["value"] for w in (rep["vaisman_killing"].witness or [])}
    assert kd.get(("Z", "Z"), F(0)) == -F(2) / D * (a * a + b * b)
    assert rep.vaisman == (a == 0 and b == 0)


def test_check_lck_flags_failures():
    h = HermitianData(kodaira_primary().algebra, la.identity(4),
                      la.transpose(((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))))
    rep = check_lck(h)
    assert not rep.J_integrable
    assert rep["J_integrable"].witness
    assert nijenhuis_defect(h.algebra, h.J)


def test_check_lck_rejects_odd_dimension():
    s = heisenberg_sasaki(1)
    with pytest.raises(DimensionError):
        check_lck(HermitianData(s.algebra, s.metric, s.Jtilde))


def test_hermitian_failures_are_itemized():
    g = kodaira_primary().algebra
    bad_j = HermitianData(g, la.identity(4), la.identity(4))
    rep = check_hermitian(bad_j)
    assert not rep["J_squared"].passed
    bad_g = HermitianData(g, ((1, 0, 0, 0), (0, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), kodaira_primary().J)
    assert not check_hermitian(bad_g)["J_compatible"].passed
    with pytest.raises(StructureError):
        fundamental_form(bad_g)


def test_indefinite_metric_fails_positivity():
    rep = check_lck(omega_psi(0, 0, -1))
    assert not rep.positive_definite and not rep.lck


def test_lee_field_norm():
    xi, norm = lee_field(kodaira_primary(), e(4, 3))
    assert xi == (0, 0, 0, 1) and norm == 1


SASAKI = [lambda: heisenberg_sasaki(1), lambda: heisenberg_sasaki(2), lambda: heisenberg_sasaki(3),
          su2_sasaki, sl2r_sasaki]


@pytest.mark.parametrize("make", SASAKI)
def test_catalog_sasaki_pass(make):
    rep = check_sasaki(make())
    assert rep.passed
    assert [c.id for c in rep.checks] == ["contact", "reeb", "tensor_law", "metric_law", "killing_cr"]


def scale_eta(s):
    # 2 eta with Jtilde + eta (x) phi keeps the tensor and metric laws and breaks only i(eta) phi = 1
    jt = la.madd(s.Jtilde, la.outer(s.eta, s.phi.covector()))
    return SasakiData(s.algebra, s.phi, la.vscale(2, s.eta), jt, s.metric)


def break_metric(s):
    return SasakiData(s.algebra, s.phi, s.eta, s.Jtilde, la.mscale(2, s.metric))


@pytest.mark.parametrize("make", SASAKI)
@pytest.mark.parametrize("perturb,target", [(scale_eta, "reeb"), (break_metric, "metric_law")])
def test_sasaki_single_axiom_perturbations(make, perturb, target):
    rep = check_sasaki(perturb(make()))
    assert [c.id for c in rep.failed] == [target]


def test_sasaki_rejects_even_dimension():
    h = kodaira_primary()
    with pytest.raises(DimensionError):
        check_sasaki(SasakiData(h.algebra, e(4, 0), (1, 0, 0, 0), h.J, h.metric))


def test_rotated_cr_structure_on_heisenberg():
    s = heisenberg_sasaki(2)
    # brackets of ker phi are multiples of eta, so any Jtilde is CR integrable; only the metric law breaks
    n = 5
    cols = [la.unit(n, 2), la.unit(n, 3), la.vscale(-1, la.unit(n, 0)), la.vscale(-1, la.unit(n, 1)), la.zeros(1, n)[0]]
    jt = la.transpose(tuple(cols))
    rep = check_sasaki(SasakiData(s.algebra, s.phi, s.eta, jt, s.metric))
    assert [c.id for c in rep.failed] == ["metric_law"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_complex_space_is_kahler(k):
    rep = check_kahler_algebra(complex_kahler(k))
    assert rep.passed
    assert rep["effective"].passed and not rep["j_algebra"].passed


def test_kahler_pairs_of_simple_sasaki_algebras():
    for s in (su2_sasaki(), sl2r_sasaki()):
        rep = check_kahler_algebra(kahler_pair(s))
        assert rep.passed and rep["effective"].passed and rep["j_algebra"].passed


def test_koszul_and_ricci_forms():
    # sl(2, R): kappa(Z) = -Tr(J ad_Z) on span{X, Y} = -2; su(2): kappa(e3) = 2
    sl = kahler_pair(sl2r_sasaki())
    assert koszul_form(sl) == KForm.from_covector((0, 0, -2))
    assert ricci_form(sl).coefficient((0, 1)) == -2
    su = kahler_pair(su2_sasaki())
    assert koszul_form(su) == KForm.from_covector((0, 0, 2))
    assert ricci_form(su).coefficient((0, 1)) == -2


def test_kahler_failure_witness():
    k = complex_kahler(1)
    bad = type(k)(k.algebra, Subspace.zero(2), la.identity(2), k.omega)
    rep = check_kahler_algebra(bad)
    assert not rep["i"].passed
    assert rep["i"].witness["J2_fails_on"] == ["X", "Y"]
