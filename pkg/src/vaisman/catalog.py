"""Named, exactly specified algebras and structures.

Every entry carries an ``expected`` map from predicate name to verdict;
:func:`verify` recomputes each verdict with the library itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import linalg as la
from .forms import KForm, ce_d
from .lie import (LieAlgebra, Subspace, abelian, center, is_nilpotent, is_semisimple, is_solvable,
                  is_unimodular, jacobi_defect, killing_form)
from .structures import (HermitianData, KahlerAlgebraData, SasakiData, check_hermitian, check_kahler_algebra,
                         check_lck, check_sasaki, metric_from_form, nijenhuis_defect)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict
    algebra: LieAlgebra
    hermitian: HermitianData | None = None
    sasaki: SasakiData | None = None
    kahler: KahlerAlgebraData | None = None
    vectors: dict = field(default_factory=dict)
    subalgebra: Subspace | None = None
    expected: dict = field(default_factory=dict)
    notes: str = ""

    @property
    def label(self) -> str:
        if not self.parameters:
            return self.name
        args = ",".join(f"{k}={la.fmt(v) if isinstance(v, Fraction) else v}"
                        for k, v in self.parameters.items())
        return f"{self.name}({args})"


# -- algebras ------------------------------------------------------------------

def _pair_names(k: int) -> list[str]:
    if k == 1:
        return ["X", "Y"]
    return [s for i in range(1, k + 1) for s in (f"X{i}", f"Y{i}")]


def heisenberg_algebra(k: int) -> LieAlgebra:
    """``[X_i, Y_i] = -Z``; basis ``X1, Y1, ..., Xk, Yk, Z`` (``X, Y, Z`` when k = 1)."""
    names = _pair_names(k) + ["Z"]
    return LieAlgebra.from_table(names, {(names[2 * i], names[2 * i + 1]): {"Z": -1} for i in range(k)})


def su2_algebra() -> LieAlgebra:
    return LieAlgebra.from_table(["e1", "e2", "e3"], {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1},
                                                      ("e3", "e1"): {"e2": 1}})


def sl2r_algebra() -> LieAlgebra:
    return LieAlgebra.from_table(["X", "Y", "Z"], {("X", "Y"): {"Z": -1}, ("Z", "X"): {"Y": 1},
                                                   ("Z", "Y"): {"X": -1}})


def r_times_algebra(g: LieAlgebra, name: str = "T") -> LieAlgebra:
    """``R name + g`` with the new generator first."""
    table = {(i + 1, j + 1): (Fraction(0),) + tuple(c) for (i, j), c in g.brackets.items()}
    return LieAlgebra([name] + list(g.basis_names), table, check=False)


def _matrix_from_images(names, images: dict) -> la.Matrix:
    """Matrix whose column for ``a`` is ``images[a]`` (a dict name -> coeff)."""
    n = len(names)
    idx = {s: i for i, s in enumerate(names)}
    cols = []
    for a in names:
        col = [Fraction(0)] * n
        for b, c in images.get(a, {}).items():
            col[idx[b]] += la.frac(c)
        cols.append(col)
    return la.transpose(tuple(map(tuple, cols)))


# -- Sasaki data -----------------------------------------------------------------

def _sasaki(g: LieAlgebra, phi_index: int, jt_images: dict, metric=None) -> SasakiData:
    n = g.dim
    jt = _matrix_from_images(g.basis_names, jt_images)
    return SasakiData(g, KForm.basis(n, phi_index), la.unit(n, phi_index), jt,
                      metric if metric is not None else la.identity(n))


def heisenberg_sasaki(k: int) -> SasakiData:
    g = heisenberg_algebra(k)
    names = g.basis_names
    images = {}
    for i in range(k):
        x, y = names[2 * i], names[2 * i + 1]
        images[x] = {y: 1}
        images[y] = {x: -1}
    return _sasaki(g, 2 * k, images)


def sl2r_sasaki() -> SasakiData:
    return _sasaki(sl2r_algebra(), 2, {"X": {"Y": 1}, "Y": {"X": -1}})


def su2_sasaki() -> SasakiData:
    # g = -1/2 Killing = identity; phi = e^3 with d e^3 = -e^1 ^ e^2
    return _sasaki(su2_algebra(), 2, {"e1": {"e2": -1}, "e2": {"e1": 1}})


def complex_kahler(k: int) -> KahlerAlgebraData:
    """``C^k`` as an abelian Kaehler algebra: ``J X_i = -Y_i``, ``omega = sum x_i ^ y_i``."""
    names = _pair_names(k)
    g = abelian(2 * k, names)
    images = {}
    for i in range(k):
        images[names[2 * i]] = {names[2 * i + 1]: -1}
        images[names[2 * i + 1]] = {names[2 * i]: 1}
    J = _matrix_from_images(names, images)
    omega = KForm(2, 2 * k, {(2 * i, 2 * i + 1): 1 for i in range(k)})
    return KahlerAlgebraData(g, Subspace.zero(2 * k), J, omega)


# -- Hermitian data ----------------------------------------------------------------

KODAIRA_J = {"X": {"Y": -1}, "Y": {"X": 1}, "Z": {"W": -1}, "W": {"Z": 1}}


def kodaira_primary() -> HermitianData:
    g = LieAlgebra.from_table(["X", "Y", "Z", "W"], {("X", "Y"): {"Z": -1}})
    return HermitianData(g, la.identity(4), _matrix_from_images(g.basis_names, KODAIRA_J))


def kodaira_secondary() -> HermitianData:
    g = LieAlgebra.from_table(["X", "Y", "Z", "W"],
                              {("X", "Y"): {"Z": -1}, ("W", "X"): {"Y": -1}, ("W", "Y"): {"X": 1}})
    return HermitianData(g, la.identity(4), _matrix_from_images(g.basis_names, KODAIRA_J))


OMEGA_PSI_J = {"Y": {"X": 1}, "X": {"Y": -1}, "T": {"Z": 1}, "Z": {"T": -1}}


def omega_psi(a=0, b=0, c=1) -> HermitianData:
    """``R T + sl(2, R)`` with ``Omega = psi ^ t + d psi``, ``psi = a x + b y + c z``."""
    g = r_times_algebra(sl2r_algebra())
    J = _matrix_from_images(g.basis_names, OMEGA_PSI_J)
    psi = KForm.from_covector((0, a, b, c))
    omega = (psi ^ KForm.basis(4, 0)) + ce_d(g, psi)
    return HermitianData(g, metric_from_form(omega, J), J)


def ad_s_derivation() -> la.Matrix:
    """``ad_S`` on ``R T + sl(2, R)``, where ``S = W - Z`` and ``W`` is central in gl(2, R)."""
    g = r_times_algebra(sl2r_algebra())
    return la.mscale(-1, g.ad(g.e("Z")))


def gl2r_mod():
    """``R x gl(2, R)`` on ``T, X, Y, Z, S`` with the subalgebra ``<S>``."""
    from .constructions import modify_pair

    h = omega_psi(0, 0, 1)
    return modify_pair(h.algebra, None, h.J, [ad_s_derivation()], names=["S"], metric=h.metric)


# -- registry -------------------------------------------------------------------

def _int_param(params, key, default, lo=1):
    v = params.get(key, default)
    if isinstance(v, str):
        v = la.frac(v)
    if int(v) != v or v < lo:
        raise ValueError(f"parameter {key} must be an integer >= {lo}, got {v}")
    return int(v)


def _rat_param(params, key, default):
    return la.frac(params.get(key, default))


def _abelian(params):
    n = _int_param(params, "n", 2, lo=0)
    g = abelian(n)
    return CatalogEntry("abelian", {"n": n}, g,
                        expected={"jacobi": True, "unimodular": True, "nilpotent": True, "center_dim": n})


def _complex(params):
    k = _int_param(params, "k", 1)
    kd = complex_kahler(k)
    metric = metric_from_form(kd.omega, kd.J)
    return CatalogEntry("complex", {"k": k}, kd.algebra, hermitian=HermitianData(kd.algebra, metric, kd.J),
                        kahler=kd, expected={"jacobi": True, "unimodular": True, "kahler": True,
                                             "j_algebra": False, "hermitian": True})


def _heisenberg(params):
    k = _int_param(params, "k", 1)
    s = heisenberg_sasaki(k)
    return CatalogEntry("heisenberg", {"k": k}, s.algebra, sasaki=s, vectors={"eta": s.eta},
                        expected={"jacobi": True, "unimodular": True, "nilpotent": True, "center_dim": 1,
                                  "sasaki": True})


def _su2(params):
    s = su2_sasaki()
    return CatalogEntry("su2", {}, s.algebra, sasaki=s, vectors={"eta": s.eta},
                        expected={"jacobi": True, "unimodular": True, "semisimple": True,
                                  "killing_signature": (0, 3, 0), "center_dim": 0, "sasaki": True},
                        notes="metric g = -1/2 Killing form = identity; i(eta) phi = 1")


def _sl2r(params):
    s = sl2r_sasaki()
    return CatalogEntry("sl2r", {}, s.algebra, sasaki=s, vectors={"eta": s.eta},
                        expected={"jacobi": True, "unimodular": True, "semisimple": True,
                                  "killing_signature": (2, 1, 0), "center_dim": 0, "sasaki": True},
                        notes="metric g = identity; i(eta) phi = 1")


_SASAKI = {"heisenberg": lambda p: heisenberg_sasaki(_int_param(p, "k", 1)),
           "su2": lambda p: su2_sasaki(), "sl2r": lambda p: sl2r_sasaki()}


def _r_times(params):
    from .constructions import canonical_vaisman

    base = str(params.get("base", "heisenberg"))
    if base not in _SASAKI:
        raise ValueError(f"r_times base must be one of {sorted(_SASAKI)}, got {base!r}")
    b = _rat_param(params, "b", 0)
    s = _SASAKI[base](params)
    h = canonical_vaisman(s, b)
    tag = {"su2": "SU2", "sl2r": "SL2R"}.get(base) or f"HEISENBERG({_int_param(params, 'k', 1)})"
    out = {"base": base, "b": b}
    if base == "heisenberg":
        out["k"] = _int_param(params, "k", 1)
    theta = (Fraction(1),) + (Fraction(0),) * s.dim
    return CatalogEntry("r_times", out, h.algebra, hermitian=h, vectors={"T": la.unit(h.dim, 0)},
                        expected={"jacobi": True, "unimodular": True, "lck": True, "vaisman": True,
                                  "nijenhuis_defect": [], "theta": theta, "classify": tag, "center_dim":
                                  1 + center(s.algebra).dim})


def _kodaira_primary(params):
    h = kodaira_primary()
    return CatalogEntry("kodaira_primary", {}, h.algebra, hermitian=h,
                        expected={"jacobi": True, "unimodular": True, "nilpotent": True, "lck": True,
                                  "vaisman": True, "nijenhuis_defect": [], "theta": (0, 0, 0, 1),
                                  "classify": "HEISENBERG(1)", "center_dim": 2})


def _kodaira_secondary(params):
    h = kodaira_secondary()
    return CatalogEntry("kodaira_secondary", {}, h.algebra, hermitian=h,
                        expected={"jacobi": True, "unimodular": True, "nilpotent": False, "solvable": True,
                                  "lck": True, "vaisman": True, "nijenhuis_defect": [], "theta": (0, 0, 0, 1),
                                  "classify": "HEISENBERG(1)", "center_dim": 1})


def omega_psi_expectation(a, b, c) -> dict:
    a, b, c = la.frac(a), la.frac(b), la.frac(c)
    D = c * c - a * a - b * b
    pd = c > 0 and D > 0
    out = {"jacobi": True, "unimodular": True, "positive_definite": pd, "nijenhuis_defect": [],
           "lck_identity": D != 0, "lck": pd, "vaisman": pd and a == 0 and b == 0}
    if D != 0:
        out["theta"] = (1, 0, 0, 0)
    if out["vaisman"]:
        out["classify"] = "SL2R"
    return out


def _omega_psi(params):
    a, b, c = (_rat_param(params, k, d) for k, d in (("a", 0), ("b", 0), ("c", 1)))
    h = omega_psi(a, b, c)
    return CatalogEntry("omega_psi", {"a": a, "b": b, "c": c}, h.algebra, hermitian=h,
                        vectors={"T": la.unit(4, 0)}, expected=omega_psi_expectation(a, b, c))


def _gl2r_mod(params):
    pm = gl2r_mod()
    g = pm.algebra
    return CatalogEntry("gl2r_mod", {}, g, vectors={"S": g.e("S"), "W": g.vec({"Z": 1, "S": 1})},
                        subalgebra=pm.h,
                        hermitian=None,
                        expected={"jacobi": True, "unimodular": True, "center_dim": 2},
                        notes="R x gl(2, R); W = Z + S is central; subalgebra <S>")


REGISTRY: dict[str, tuple[Callable[[dict], CatalogEntry], str]] = {
    "abelian": (_abelian, "abelian algebra R^n (n)"),
    "complex": (_complex, "C^k as a flat Kaehler algebra (k)"),
    "heisenberg": (_heisenberg, "Heisenberg algebra of dimension 2k+1 with Sasaki data (k)"),
    "su2": (_su2, "su(2) with Sasaki data"),
    "sl2r": (_sl2r, "sl(2, R) with Sasaki data"),
    "r_times": (_r_times, "R x (Sasaki algebra) with canonical Vaisman structure (base, k, b)"),
    "kodaira_primary": (_kodaira_primary, "R x heisenberg with Omega = x^y + z^w"),
    "kodaira_secondary": (_kodaira_secondary, "secondary Kodaira algebra with Omega = x^y + z^w"),
    "omega_psi": (_omega_psi, "R x sl(2, R) with Omega = psi^t + d psi (a, b, c)"),
    "gl2r_mod": (_gl2r_mod, "R x gl(2, R) with the subalgebra <S>"),
}


def catalog_names() -> list[str]:
    return list(REGISTRY)


def catalog_get(name: str, **params) -> CatalogEntry:
    try:
        builder = REGISTRY[name][0]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(REGISTRY)}") from None
    return builder(params)


def standard_entries() -> list[CatalogEntry]:
    """A representative instance of every registry entry (plus a few parameter values)."""
    out = [catalog_get("abelian", n=4), catalog_get("complex", k=1), catalog_get("complex", k=2)]
    out += [catalog_get("heisenberg", k=k) for k in (1, 2, 3)]
    out += [catalog_get("su2"), catalog_get("sl2r")]
    out += [catalog_get("r_times", base="heisenberg", k=1), catalog_get("r_times", base="heisenberg", k=2),
            catalog_get("r_times", base="su2"), catalog_get("r_times", base="sl2r")]
    out += [catalog_get("kodaira_primary"), catalog_get("kodaira_secondary")]
    out += [catalog_get("omega_psi", a=0, b=0, c=1), catalog_get("omega_psi", a=1, b=0, c=2),
            catalog_get("omega_psi", a=1, b=1, c=1)]
    out.append(catalog_get("gl2r_mod"))
    return out


# -- verification -------------------------------------------------------------------

def _lck(e):
    return check_lck(e.hermitian)


def _classify(e):
    from .constructions import classify_vaisman

    return str(classify_vaisman(e.hermitian))


PREDICATES: dict[str, Callable[[CatalogEntry], object]] = {
    "jacobi": lambda e: not jacobi_defect(e.algebra),
    "unimodular": lambda e: is_unimodular(e.algebra),
    "nilpotent": lambda e: is_nilpotent(e.algebra),
    "solvable": lambda e: is_solvable(e.algebra),
    "semisimple": lambda e: is_semisimple(e.algebra),
    "center_dim": lambda e: center(e.algebra).dim,
    "killing_signature": lambda e: la.inertia(killing_form(e.algebra)),
    "hermitian": lambda e: check_hermitian(e.hermitian).passed,
    "positive_definite": lambda e: _lck(e).positive_definite,
    "lck_identity": lambda e: _lck(e).lck_identity,
    "lck": lambda e: _lck(e).lck,
    "vaisman": lambda e: _lck(e).vaisman,
    "theta": lambda e: _lck(e).theta.covector() if _lck(e).theta is not None else None,
    "nijenhuis_defect": lambda e: [(i, j) for i, j, _ in nijenhuis_defect(e.algebra, e.hermitian.J)],
    "classify": _classify,
    "sasaki": lambda e: check_sasaki(e.sasaki).passed,
    "kahler": lambda e: check_kahler_algebra(e.kahler).passed,
    "j_algebra": lambda e: check_kahler_algebra(e.kahler)["j_algebra"].passed,
}


def _normalize(v):
    if isinstance(v, (list, tuple)):
        return tuple(_normalize(x) for x in v)
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    return v


def verify(entry: CatalogEntry) -> list[tuple[str, object, object]]:
    """Mismatches ``(predicate, expected, actual)``; empty when the entry is valid."""
    out = []
    for key, want in entry.expected.items():
        got = PREDICATES[key](entry)
        if _normalize(got) != _normalize(want):
            out.append((key, want, got))
    return out
