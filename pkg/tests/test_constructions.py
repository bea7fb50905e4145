from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from vaisman import linalg as la
from vaisman.catalog import (ad_s_derivation, catalog_get, complex_kahler, gl2r_mod, heisenberg_algebra,
                             heisenberg_sasaki, kodaira_primary, kodaira_secondary, omega_psi, sl2r_sasaki,
                             su2_sasaki)
from vaisman.constructions import (ModificationMap, canonical_vaisman, centralize, classify_vaisman,
                                   compatible_derivations, delta_sum, kahler_quotient, modify, modify_pair,
                                   quantize, validate_modification)
from vaisman.errors import ModificationError, NotCentral, NotVaisman, StructureError
from vaisman.forms import KForm, ce_d
from vaisman.lie import Subspace, abelian, center, direct_sum, is_derivation, is_unimodular, subalgebra
from vaisman.structures import KahlerAlgebraData, check_kahler_algebra, check_lck, check_sasaki
from samplers import MODIFIABLE, random_valid_map, rng_for
from test_lie import structure_from_matrices

AD_W = la.transpose(((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
ROT_W = ModificationMap.from_functionals([AD_W], [(0, 0, 0, 1)])


def test_rotation_map_is_valid():
    assert validate_modification(kodaira_primary(), ROT_W).passed


def test_rotation_modification_gives_secondary():
    out = modify(kodaira_primary(), ROT_W)
    assert out.algebra == kodaira_secondary().algebra
    assert out.metric == kodaira_primary().metric and out.J == kodaira_primary().J


def test_zero_map_is_identity():
    h = kodaira_secondary()
    assert modify(h, ModificationMap.zero(4)).algebra == h.algebra


def test_ad_s_valid_only_for_vaisman_metric():
    m = ModificationMap.from_functionals([ad_s_derivation()], [(1, 0, 0, 0)])
    assert validate_modification(omega_psi(0, 0, 1), m).passed
    rep = validate_modification(omega_psi(1, 2, 3), m)
    assert [c.id for c in rep.failed] == ["skew"]


@given(st.fractions(min_value=-3, max_value=3, max_denominator=4), st.fractions(min_value=-3, max_value=3, max_denominator=4), st.fractions(min_value=1, max_value=5, max_denominator=4))
def test_ad_s_skew_defect_value(a, b, c):
    # g([S, U], Z) + g(U, [S, Z]) at U = bX - aY, with ad_S = -ad_Z on sl(2)
    h = omega_psi(a, b, c)
    s = ad_s_derivation()
    U = (0, b, -a, 0)
    Zv = (0, 0, 0, 1)
    g = lambda u, v: la.dot(u, la.matvec(h.metric, v))
    assert g(la.matvec(s, U), Zv) + g(U, la.matvec(s, Zv)) == -(a * a + b * b)


def test_invalid_map_raises_with_report():
    bad = ModificationMap.from_functionals([AD_W], [(1, 0, 0, 0)])
    with pytest.raises(ModificationError) as exc:
        modify(kodaira_primary(), bad)
    assert not exc.value.report["kills_images"].passed


@pytest.mark.parametrize("name,params", MODIFIABLE)
def test_compatible_derivations_are_compatible(name, params):
    h = catalog_get(name, **params).hermitian
    for d in compatible_derivations(h):
        assert is_derivation(h.algebra, d)
        assert la.is_zero_matrix(la.madd(la.matmul(la.transpose(d), h.metric), la.matmul(h.metric, d)))
        assert la.matmul(h.J, d) == la.matmul(d, h.J)


@given(st.integers(0, 10_000), st.sampled_from(MODIFIABLE))
def test_modification_laws(seed, case):
    rng = rng_for(seed)
    h = catalog_get(case[0], **case[1]).hermitian
    m1, d = random_valid_map(h, rng)
    m2, _ = random_valid_map(h, rng, d)
    assert validate_modification(h, m1).passed
    once = modify(h, m1)
    assert modify(once, -m1).algebra == h.algebra
    assert modify(once, m2).algebra == modify(h, m1 + m2).algebra
    assert is_unimodular(once.algebra) == is_unimodular(h.algebra)


def test_modify_pair_trivial():
    h = kodaira_primary()
    pm = modify_pair(h.algebra, None, h.J, [])
    assert pm.algebra == h.algebra and pm.h.dim == 0


def test_modify_pair_lee_step_adds_one_dimension():
    h = kodaira_secondary()
    xi = check_lck(h).xi
    pm = modify_pair(h.algebra, None, h.J, [h.algebra.ad(xi)])
    assert pm.algebra.dim == 5 and pm.h.dim == 1


def test_modify_pair_condition_violation():
    h = kodaira_primary()
    not_commuting = la.transpose(((0, 0, 1, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
    with pytest.raises(ModificationError):
        modify_pair(h.algebra, None, h.J, [not_commuting])


def test_gl2_pair():
    pm = gl2r_mod()
    g = pm.algebra
    assert g.basis_names == ("T", "X", "Y", "Z", "S")
    assert pm.h == Subspace([g.e("S")], 5)
    assert center(g) == Subspace([g.e("T"), g.vec({"Z": 1, "S": 1})], 5)
    half = sympy.Rational(1, 2)
    mats = [half * sympy.Matrix(m) for m in ([[0, 1], [1, 0]], [[1, 0], [0, -1]], [[0, 1], [-1, 0]],
                                             [[1, -1], [1, 1]])]
    want = structure_from_matrices(mats)
    sub = subalgebra(g, Subspace([g.e(s) for s in "XYZS"], 5))
    for (i, j), c in want.items():
        assert sub.structure(i, j) == tuple(c)


@pytest.mark.parametrize("name,params", [("kodaira_primary", {}), ("kodaira_secondary", {}),
                                         ("r_times", {"base": "heisenberg", "k": 2}), ("r_times", {"base": "su2"}),
                                         ("r_times", {"base": "sl2r", "b": 2}), ("omega_psi", {})])
def test_centralize_reaches_two_dimensional_center(name, params):
    c = centralize(catalog_get(name, **params).hermitian)
    assert c.center_dim == 2


def test_centralize_secondary_returns_primary():
    c = centralize(kodaira_secondary())
    assert c.base.algebra == kodaira_primary().algebra
    assert c.algebra == kodaira_primary().algebra


def test_centralize_leaves_central_input_alone():
    c = centralize(kodaira_primary())
    assert c.algebra == kodaira_primary().algebra
    assert c.steps == ("xi already central", "eta already central")


def test_centralize_su2_uses_pair_step():
    c = centralize(catalog_get("r_times", base="su2").hermitian)
    assert c.algebra.dim == 5 and c.h.dim == 1
    assert "pair" in c.steps[-1]


def test_centralize_rejects_non_vaisman():
    with pytest.raises(NotVaisman):
        centralize(omega_psi(1, 0, 2))


@pytest.mark.parametrize("params,tag", [({"base": "heisenberg", "k": 1}, "HEISENBERG(1)"),
                                        ({"base": "heisenberg", "k": 2}, "HEISENBERG(2)"),
                                        ({"base": "heisenberg", "k": 3}, "HEISENBERG(3)"),
                                        ({"base": "su2"}, "SU2"), ({"base": "sl2r"}, "SL2R")])
def test_classifier(params, tag):
    v = classify_vaisman(catalog_get("r_times", **params).hermitian)
    assert str(v) == tag


def test_classifier_witness_data():
    v = classify_vaisman(omega_psi(0, 0, 1))
    assert str(v) == "SL2R" and v.center_dim == 0 and v.killing_signature == (2, 1, 0)
    assert classify_vaisman(kodaira_secondary()).k == 1


def test_classifier_rejects_non_vaisman():
    with pytest.raises(NotVaisman):
        classify_vaisman(omega_psi(1, 1, 3))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_quantize_complex_space(k):
    ext = quantize(complex_kahler(k), "Z")
    assert ext.total == heisenberg_algebra(k)
    assert ce_d(ext.total, ext.psi) == KForm(2, 2 * k + 1, dict(complex_kahler(k).omega.terms()))
    assert check_sasaki(ext.sasaki_data()).passed


def test_quantize_zero_form_is_direct_sum():
    g2 = heisenberg_algebra(1)
    k = KahlerAlgebraData(direct_sum(g2, abelian(1, ["W"])), Subspace.zero(4), la.identity(4), KForm.zero(2, 4))
    ext = quantize(k)
    assert ext.total == direct_sum(k.algebra, abelian(1, ["eta"]))


def test_quantize_rejects_non_cocycle():
    g = catalog_get("omega_psi").algebra
    k = KahlerAlgebraData(g, Subspace.zero(4), catalog_get("omega_psi").hermitian.J, KForm.basis(4, 0, 1))
    assert not check_kahler_algebra(k)["v"].passed
    with pytest.raises(StructureError):
        quantize(k)


def test_quantize_preserves_unimodularity_both_ways():
    for k in (complex_kahler(2), ):
        assert is_unimodular(quantize(k).total) == is_unimodular(k.algebra)
    ax_b = KahlerAlgebraData(direct_sum(abelian(1, ["A"]), abelian(1, ["B"])), Subspace.zero(2),
                             ((0, 1), (-1, 0)), KForm.basis(2, 0, 1))
    assert is_unimodular(quantize(ax_b).total)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_quotient_then_quantize_roundtrip(k):
    s = heisenberg_sasaki(k)
    kq = kahler_quotient(s)
    assert kq.algebra.dim == 2 * k and not kq.algebra.brackets
    assert kq.omega == complex_kahler(k).omega
    ext = quantize(kq, "Z")
    assert ext.total == s.algebra
    assert ext.sasaki_data().Jtilde == s.Jtilde


def test_quotient_requires_central_reeb():
    with pytest.raises(NotCentral, match="kahler_pair"):
        kahler_quotient(su2_sasaki())


def test_delta_sum_of_heisenbergs():
    h1 = quantize(complex_kahler(1), "Z")
    d = delta_sum(h1, h1)
    assert d.total.same_structure(heisenberg_algebra(2))
    assert d.base.algebra.same_structure(direct_sum(h1.base.algebra, h1.base.algebra))
    assert ce_d(d.total, d.psi) == KForm(2, 5, {(0, 1): 1, (2, 3): 1})


def test_delta_sum_with_trivial_extension():
    h = quantize(complex_kahler(2), "Z")
    trivial = quantize(KahlerAlgebraData(abelian(0), Subspace.zero(0), (), KForm.zero(2, 0)), "Z")
    assert delta_sum(h, trivial).total.same_structure(h.total)


def test_canonical_vaisman_on_heisenberg_is_primary_kodaira():
    h = canonical_vaisman(heisenberg_sasaki(1), 0)
    p = h.algebra.permuted(["X", "Y", "Z", "T"]).renamed(["X", "Y", "Z", "W"])
    assert p == kodaira_primary().algebra
    perm = (1, 2, 3, 0)
    J = tuple(tuple(h.J[perm[i]][perm[j]] for j in range(4)) for i in range(4))
    G = tuple(tuple(h.metric[perm[i]][perm[j]] for j in range(4)) for i in range(4))
    assert J == kodaira_primary().J and G == kodaira_primary().metric


def test_canonical_vaisman_on_sl2r_is_omega_psi():
    h = canonical_vaisman(sl2r_sasaki(), 0)
    ref = omega_psi(0, 0, 1)
    assert (h.algebra, h.metric, h.J) == (ref.algebra, ref.metric, ref.J)


@given(st.fractions(min_value=-4, max_value=4, max_denominator=6), st.sampled_from(["h1", "h2", "su2", "sl2r"]))
def test_canonical_vaisman_any_b(b, which):
    s = {"h1": lambda: heisenberg_sasaki(1), "h2": lambda: heisenberg_sasaki(2), "su2": su2_sasaki,
         "sl2r": sl2r_sasaki}[which]()
    h = canonical_vaisman(s, b)
    rep = check_lck(h)
    assert rep.vaisman
    assert rep.theta == KForm.basis(h.dim, 0)
    # the Lee field is T + b eta
    assert rep.xi == la.vadd(la.unit(h.dim, 0), la.vscale(b, (0,) + tuple(s.eta)))


def test_canonical_vaisman_rejects_broken_sasaki():
    s = heisenberg_sasaki(1)
    from vaisman.structures import SasakiData
    with pytest.raises(StructureError):
        canonical_vaisman(SasakiData(s.algebra, s.phi, s.eta, s.Jtilde, la.mscale(2, s.metric)))


@pytest.mark.parametrize("b", [F(-2), F(0), F(1, 2), F(3)])
@pytest.mark.parametrize("make,tag", [(lambda: heisenberg_sasaki(1), "HEISENBERG(1)"),
                                      (lambda: heisenberg_sasaki(2), "HEISENBERG(2)"),
                                      (su2_sasaki, "SU2"), (sl2r_sasaki, "SL2R")])
def test_classifier_sees_through_canonical_vaisman(make, tag, b):
    assert str(classify_vaisman(canonical_vaisman(make(), b))) == tag
