"""Hermitian, l.c.K., Vaisman, Sasaki and Kaehler-algebra structures on Lie algebras.

Conventions
-----------
Endomorphisms are matrices acting on column vectors: column ``j`` of ``J``
holds ``J e_j``.  The fundamental form of a Hermitian pair ``(g, J)`` is
``Omega(x, y) = g(x, J y)``, equivalently ``g(x, y) = Omega(J x, y)``; with
``J X = -Y, J Y = X`` and an orthonormal basis this gives ``Omega = x ^ y``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import linalg as la
from .errors import Degenerate, DimensionError, NoSolution, NotClosed, StructureError
from .forms import KForm, ce_d, interior, solve_lee_form, solve_primitive, wedge, wedge_power
from .lie import LieAlgebra, Subspace, is_subalgebra, largest_ideal_in
from .report import Check, StructureReport


def _square(m, n: int, what: str) -> la.Matrix:
    m = la.matrix(m)
    if la.shape(m) != (n, n):
        raise DimensionError(f"{what} must be {n}x{n}, got {la.shape(m)}")
    return m


def is_positive_definite(m) -> bool:
    """Exact Sylvester test; rejects non-symmetric input."""
    return la.is_positive_definite(m)


@dataclass(frozen=True)
class HermitianData:
    """Metric ``g`` and almost complex structure ``J`` on a Lie algebra."""

    algebra: LieAlgebra
    metric: la.Matrix
    J: la.Matrix

    def __post_init__(self):
        n = self.algebra.dim
        object.__setattr__(self, "metric", _square(self.metric, n, "metric"))
        object.__setattr__(self, "J", _square(self.J, n, "J"))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def symmetric(self) -> bool:
        return la.is_symmetric(self.metric)

    def j_squared_defect(self) -> la.Matrix:
        return la.madd(la.matmul(self.J, self.J), la.identity(self.dim))

    def compatibility_defect(self) -> la.Matrix:
        """Matrix of ``g(Jx, Jy) - g(x, y)``."""
        jt = la.transpose(self.J)
        return la.msub(la.matmul(la.matmul(jt, self.metric), self.J), self.metric)

    def with_algebra(self, g: LieAlgebra) -> "HermitianData":
        return HermitianData(g, self.metric, self.J)


def _nonzero_entries(m: la.Matrix, names: Sequence[str], upper: bool = False) -> list:
    out = []
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x and (not upper or i <= j):
                out.append({"pair": [names[i], names[j]], "value": x})
    return out


def fundamental_form(h: HermitianData) -> KForm:
    """``Omega(x, y) = g(x, J y)``."""
    m = la.matmul(h.metric, h.J)
    if not la.is_antisymmetric(m):
        raise StructureError("g(x, Jy) is not antisymmetric: J is not compatible with g")
    return KForm.from_matrix(m)


def metric_from_form(omega: KForm, J: la.Matrix) -> la.Matrix:
    """``g(x, y) = Omega(Jx, y)``."""
    return la.matmul(la.transpose(J), omega.matrix())


def nijenhuis_defect(g: LieAlgebra, J: la.Matrix, h: Subspace | None = None) -> list[tuple[int, int, tuple]]:
    """Basis pairs ``i < j`` with ``N(e_i, e_j)`` not in ``h`` (reduced mod ``h``).

    ``N(x, y) = [Jx, Jy] - [x, y] - J[Jx, y] - J[x, Jy]``.
    """
    n = g.dim
    J = _square(J, n, "J")
    h = h or Subspace.zero(n)
    if any(not h.contains(la.matvec(J, v)) for v in h.basis):
        raise StructureError("J does not preserve the subalgebra")
    cols = la.transpose(J)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            ei, ej = la.unit(n, i), la.unit(n, j)
            N = la.vsub(g.bracket(cols[i], cols[j]), g.structure(i, j))
            N = la.vsub(N, la.matvec(J, g.bracket(cols[i], ej)))
            N = la.vsub(N, la.matvec(J, g.bracket(ei, cols[j])))
            r = h.reduce(N)
            if any(r):
                out.append((i, j, r))
    return out


def killing_defect(g: LieAlgebra, metric: la.Matrix, v: Sequence) -> list[tuple[int, int, Fraction]]:
    """Pairs ``i <= j`` with ``g([v, e_i], e_j) + g(e_i, [v, e_j]) != 0``."""
    a = g.ad(v)
    s = la.madd(la.matmul(la.transpose(a), metric), la.matmul(metric, a))
    return [(i, j, s[i][j]) for i in range(g.dim) for j in range(i, g.dim) if s[i][j]]


def lee_field(h: HermitianData, theta: KForm) -> tuple[tuple, Fraction]:
    """Metric dual ``xi`` of ``theta`` and its squared length ``g(xi, xi)``."""
    if la.det(h.metric) == 0:
        raise Degenerate("metric is degenerate")
    xi = la.solve(h.metric, theta.covector())
    return xi, la.dot(xi, la.matvec(h.metric, xi))


@dataclass(frozen=True)
class LcKReport(StructureReport):
    theta: Any = None
    xi: Any = None
    xi_norm: Any = None

    def _flag(self, key):
        return key in self and self[key].passed

    @property
    def positive_definite(self) -> bool:
        return self._flag("positive_definite")

    @property
    def J_integrable(self) -> bool:
        return self._flag("J_integrable")

    @property
    def theta_closed(self) -> bool:
        return self._flag("theta_closed")

    @property
    def lck_identity(self) -> bool:
        return self._flag("lck_identity")

    @property
    def lck(self) -> bool:
        return self.passed

    @property
    def vaisman(self) -> bool:
        return self.passed and self._flag("vaisman_killing")

    def as_vaisman(self) -> StructureReport:
        """The same verdicts with the Killing condition promoted to an axiom."""
        return StructureReport("vaisman", self.checks + self.properties, (), self.data)


def check_lck(h: HermitianData) -> LcKReport:
    g, n = h.algebra, h.dim
    if n < 4 or n % 2:
        raise DimensionError(f"l.c.K. structures need even dimension >= 4 (got {n})")
    names = g.basis_names
    checks = []
    sym = h.symmetric()
    checks.append(Check("metric_symmetric", "g is symmetric", sym,
                        None if sym else _nonzero_entries(la.msub(h.metric, la.transpose(h.metric)), names, True)))
    pd = sym and la.is_positive_definite(h.metric)
    checks.append(Check("positive_definite", "g is positive definite (Sylvester minors)", pd,
                        None if pd or not sym else {"leading_minors": list(la.leading_minors(h.metric))}))
    jsq = h.j_squared_defect()
    checks.append(Check("J_squared", "J^2 = -I", la.is_zero_matrix(jsq),
                        _nonzero_entries(jsq, names) or None))
    comp = h.compatibility_defect()
    compatible = la.is_zero_matrix(comp)
    checks.append(Check("J_compatible", "g(Jx, Jy) = g(x, y)", compatible,
                        _nonzero_entries(comp, names, True) or None))
    nij = nijenhuis_defect(g, h.J)
    checks.append(Check("J_integrable", "Nijenhuis tensor of J vanishes", not nij,
                        [{"pair": [names[i], names[j]], "N": v} for i, j, v in nij] or None))

    theta = xi = norm = None
    data: dict = {}
    lee_msg = None
    closed = False
    try:
        omega = fundamental_form(h)
        data["Omega"] = omega
        theta = solve_lee_form(g, omega)
        closed = True
    except StructureError as exc:
        lee_msg = str(exc)
    except (Degenerate, NoSolution) as exc:
        lee_msg = f"{type(exc).__name__}: {exc}"
    except NotClosed as exc:
        theta = exc.theta
        lee_msg = None
    checks.append(Check("lck_identity", "dOmega = Omega ^ theta for some 1-form theta",
                        theta is not None, lee_msg))
    witness = None
    if theta is not None and not closed:
        witness = {"d_theta": ce_d(g, theta)}
    checks.append(Check("theta_closed", "d theta = 0", closed, witness))

    properties = []
    if theta is not None:
        data["theta"] = theta
        try:
            xi, norm = lee_field(h, theta)
            data["xi"] = xi
            data["g(xi,xi)"] = norm
        except Degenerate:
            pass
    if xi is not None:
        kd = killing_defect(g, h.metric, xi)
        properties.append(Check("vaisman_killing", "g([xi, x], y) + g(x, [xi, y]) = 0 (Lee field Killing)",
                                not kd,
                                [{"pair": [names[i], names[j]], "value": v} for i, j, v in kd] or None))
    else:
        properties.append(Check("vaisman_killing", "g([xi, x], y) + g(x, [xi, y]) = 0 (Lee field Killing)",
                                False, "no Lee field"))
    return LcKReport("lck", tuple(checks), tuple(properties), data, theta=theta, xi=xi, xi_norm=norm)


def check_hermitian(h: HermitianData) -> StructureReport:
    names = h.algebra.basis_names
    rep = check_lck(h) if h.dim >= 4 and h.dim % 2 == 0 else None
    if rep is not None:
        keep = {"metric_symmetric", "positive_definite", "J_squared", "J_compatible", "J_integrable"}
        return StructureReport("hermitian", tuple(c for c in rep.checks if c.id in keep))
    checks = [
        Check("metric_symmetric", "g is symmetric", h.symmetric()),
        Check("positive_definite", "g is positive definite (Sylvester minors)",
              h.symmetric() and la.is_positive_definite(h.metric)),
        Check("J_squared", "J^2 = -I", la.is_zero_matrix(h.j_squared_defect())),
        Check("J_compatible", "g(Jx, Jy) = g(x, y)", la.is_zero_matrix(h.compatibility_defect())),
    ]
    nij = nijenhuis_defect(h.algebra, h.J)
    checks.append(Check("J_integrable", "Nijenhuis tensor of J vanishes", not nij,
                        [{"pair": [names[i], names[j]], "N": v} for i, j, v in nij] or None))
    return StructureReport("hermitian", tuple(checks))


# -- Sasaki -------------------------------------------------------------------

@dataclass(frozen=True)
class SasakiData:
    """Contact metric data ``{phi, eta, Jtilde, g}`` on an odd-dimensional algebra."""

    algebra: LieAlgebra
    phi: KForm
    eta: tuple
    Jtilde: la.Matrix
    metric: la.Matrix

    def __post_init__(self):
        n = self.algebra.dim
        object.__setattr__(self, "eta", la.vector(self.eta))
        object.__setattr__(self, "Jtilde", _square(self.Jtilde, n, "Jtilde"))
        object.__setattr__(self, "metric", _square(self.metric, n, "metric"))
        if self.phi.degree != 1 or self.phi.dim != n or len(self.eta) != n:
            raise DimensionError("phi must be a 1-form and eta a vector on the algebra")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def contact_distribution(self) -> Subspace:
        return Subspace(la.nullspace((self.phi.covector(),), self.dim), self.dim)


def check_sasaki(s: SasakiData) -> StructureReport:
    g, n = s.algebra, s.dim
    if n % 2 == 0:
        raise DimensionError(f"Sasaki structures live in odd dimension (got {n})")
    names = g.basis_names
    k = (n - 1) // 2
    phi = s.phi
    dphi = ce_d(g, phi)
    checks = []

    top = wedge(phi, wedge_power(dphi, k))
    checks.append(Check("contact", f"phi ^ (d phi)^{k} != 0", not top.is_zero()))

    i_phi = phi(s.eta)
    i_dphi = interior(s.eta, dphi)
    reeb = i_phi == 1 and i_dphi.is_zero()
    checks.append(Check("reeb", "i(eta) phi = 1 and i(eta) d phi = 0", reeb,
                        None if reeb else {"i(eta)phi": i_phi, "i(eta)dphi": i_dphi}))

    lhs = la.matmul(s.Jtilde, s.Jtilde)
    rhs = la.madd(la.mscale(-1, la.identity(n)), la.outer(s.eta, phi.covector()))
    tdef = la.msub(lhs, rhs)
    checks.append(Check("tensor_law", "Jtilde^2 = -I + phi (x) eta", la.is_zero_matrix(tdef),
                        _nonzero_entries(tdef, names) or None))

    # g(X, Y) = phi(X) phi(Y) + dphi(X, Jtilde Y)
    p = phi.covector()
    law = la.madd(la.outer(p, p), la.matmul(dphi.matrix(), s.Jtilde))
    mdef = la.msub(s.metric, law)
    riemannian = la.is_symmetric(s.metric) and la.is_positive_definite(s.metric)
    witness = _nonzero_entries(mdef, names) or None
    if not riemannian:
        witness = {"law_defect": witness, "note": "g is not a symmetric positive definite matrix"}
    checks.append(Check("metric_law", "g = phi phi + dphi( . , Jtilde . ), g Riemannian",
                        la.is_zero_matrix(mdef) and riemannian, witness))

    kd = killing_defect(g, s.metric, s.eta)
    cr = cr_nijenhuis_defect(s)
    witness = {}
    if kd:
        witness["killing"] = [{"pair": [names[i], names[j]], "value": v} for i, j, v in kd]
    if cr:
        witness["cr_nijenhuis"] = [{"pair": [list(a), list(b)], "N": v} for a, b, v in cr]
    checks.append(Check("killing_cr", "eta is Killing and J = Jtilde|ker phi is integrable",
                        not kd and not cr, witness or None))
    return StructureReport("sasaki", tuple(checks))


def cr_nijenhuis_defect(s: SasakiData) -> list[tuple[tuple, tuple, tuple]]:
    """Nijenhuis defect of ``Jtilde`` on ``ker phi``; brackets projected along ``eta``."""
    g, n = s.algebra, s.dim
    p = s.phi.covector()
    c = la.dot(p, s.eta)
    if c == 0:
        # no projection along eta onto ker phi exists
        return [((), (), ("eta lies in ker phi",))]

    def proj(v):
        return la.vsub(v, la.vscale(la.dot(p, v) / c, s.eta))

    def J(v):
        return proj(la.matvec(s.Jtilde, proj(v)))

    basis = la.nullspace((p,), n)
    out = []
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            x, y = basis[a], basis[b]
            jx, jy = J(x), J(y)
            N = la.vsub(proj(g.bracket(jx, jy)), proj(g.bracket(x, y)))
            N = la.vsub(N, J(g.bracket(jx, y)))
            N = la.vsub(N, J(g.bracket(x, jy)))
            if any(N):
                out.append((x, y, N))
    return out


# -- Kaehler algebras ---------------------------------------------------------

@dataclass(frozen=True)
class KahlerAlgebraData:
    """A tuple ``(g, h, J, omega)``; ``J`` is read modulo the subalgebra ``h``."""

    algebra: LieAlgebra
    h: Subspace
    J: la.Matrix
    omega: KForm

    def __post_init__(self):
        n = self.algebra.dim
        object.__setattr__(self, "J", _square(self.J, n, "J"))
        if self.h.ambient_dim != n or self.omega.dim != n or self.omega.degree != 2:
            raise DimensionError("h, J and omega must live on the algebra")

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _quotient_trace(h: Subspace, a: la.Matrix) -> Fraction:
    n = len(a)
    comp = h.complement_indices
    cols = la.transpose(a)
    return sum((h.quotient_coords(cols[c])[pos] for pos, c in enumerate(comp)), Fraction(0)) if n else Fraction(0)


def koszul_form(k: KahlerAlgebraData) -> KForm:
    """``kappa(X) = Tr_{g/h}(ad JX - J ad X)``."""
    g, n = k.algebra, k.dim
    if any(not k.h.contains(la.matvec(k.J, v)) for v in k.h.basis):
        raise StructureError("J does not preserve h")
    cols = la.transpose(k.J)
    vals = []
    for i in range(n):
        a = la.msub(g.ad(cols[i]), la.matmul(k.J, g.ad_basis[i]))
        vals.append(_quotient_trace(k.h, a))
    return KForm.from_covector(vals)


def ricci_form(k: KahlerAlgebraData) -> KForm:
    """``r(X, Y) = -kappa([X, Y])``."""
    g, n = k.algebra, k.dim
    kappa = koszul_form(k).covector()
    return KForm(2, n, {(i, j): -la.dot(kappa, c) for (i, j), c in g.brackets.items()})


def check_kahler_algebra(k: KahlerAlgebraData) -> StructureReport:
    g, n, h, J, omega = k.algebra, k.dim, k.h, k.J, k.omega
    names = g.basis_names
    E = [la.unit(n, i) for i in range(n)]
    cols = la.transpose(J)
    checks = [Check("subalgebra", "h is a subalgebra", is_subalgebra(g, h))]

    jh = all(h.contains(la.matvec(J, v)) for v in h.basis)
    jsq = [names[i] for i in range(n) if not h.contains(la.vadd(la.matvec(J, cols[i]), E[i]))]
    checks.append(Check("i", "J h in h, J^2 = -I (mod h)", jh and not jsq,
                        None if jh and not jsq else {"J_preserves_h": jh, "J2_fails_on": jsq}))

    bad = []
    for v in h.basis:
        a = g.ad(v)
        comm = la.msub(la.matmul(a, J), la.matmul(J, a))
        bad += [(v, names[j]) for j, c in enumerate(la.transpose(comm)) if not h.contains(c)]
    checks.append(Check("ii", "ad_X J = J ad_X (mod h) for X in h", not bad,
                        [{"X": v, "on": e} for v, e in bad] or None))

    nij = nijenhuis_defect(g, J, h) if jh else [(-1, -1, ())]
    checks.append(Check("iii", "[JX, JY] = [X,Y] + J[JX,Y] + J[X,JY] (mod h)", not nij,
                        [{"pair": [names[i], names[j]] if i >= 0 else None, "N": v} for i, j, v in nij] or None))

    om = omega.matrix()
    kills_h = all(not any(la.matvec(la.transpose(om), v)) for v in h.basis)
    inv = la.msub(la.matmul(la.matmul(la.transpose(J), om), J), om)
    checks.append(Check("iv", "omega(h, g) = 0, omega(JX, JY) = omega(X, Y)",
                        kills_h and la.is_zero_matrix(inv),
                        None if kills_h and la.is_zero_matrix(inv)
                        else {"omega_kills_h": kills_h, "J_invariance": _nonzero_entries(inv, names, True)}))

    cyc = []
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                s = (omega(g.structure(a, b), E[c]) + omega(g.structure(b, c), E[a])
                     + omega(g.structure(c, a), E[b]))
                if s:
                    cyc.append({"triple": [names[a], names[b], names[c]], "value": s})
    checks.append(Check("v", "omega([X,Y],Z) + omega([Y,Z],X) + omega([Z,X],Y) = 0", not cyc, cyc or None))

    comp = h.complement_indices
    s_full = metric_from_form(omega, J)
    s_c = tuple(tuple(s_full[i][j] for j in comp) for i in comp)
    if not la.is_symmetric(s_c):
        ok, wit = False, "omega(J., .) is not symmetric on g/h"
    else:
        pos, neg, zero = la.inertia(s_c)
        ok = zero == 0 and (pos == 0 or neg == 0)
        wit = None if ok else {"inertia": [pos, neg, zero]}
    checks.append(Check("vi", "omega(JX, X) != 0 for X not in h", ok, wit))

    ideal = largest_ideal_in(g, h)
    props = [Check("effective", "h contains no nonzero ideal of g", ideal.dim == 0,
                   None if ideal.dim == 0 else {"ideal": list(ideal.basis)})]
    rho = solve_primitive(g, omega)
    props.append(Check("j_algebra", "some 1-form rho has d rho = omega", rho is not None,
                       {"rho": rho} if rho is not None else None))
    return StructureReport("kahler", tuple(checks), tuple(props))
