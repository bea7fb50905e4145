"""Modification, centralization, quantization and the Vaisman classifier."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .errors import (ModificationError, NotCentral, NotUnimodular, NotVaisman, StructureError,
                     UnrecognizedShape)
from .forms import KForm, ce_d
from .lie import (LieAlgebra, Subspace, _disjoint_names, center, derivation_defect, derived_algebra,
                  direct_sum, is_derivation, is_semisimple, is_unimodular, killing_form,
                  quotient, quotient_by_vector, subalgebra)
from .report import Check, StructureReport
from .structures import (HermitianData, KahlerAlgebraData, SasakiData, check_lck, check_sasaki,
                         killing_defect, metric_from_form)


# -- modification -------------------------------------------------------------

@dataclass(frozen=True)
class ModificationMap:
    """A linear map ``phi: g -> k`` into the span of commuting derivations.

    ``phi(e_i) = sum_a coefficients[i][a] * derivations[a]``.
    """

    derivations: tuple
    coefficients: tuple

    def __post_init__(self):
        ders = tuple(la.matrix(d) for d in self.derivations)
        coeffs = tuple(la.vector(r) for r in self.coefficients)
        if any(len(r) != len(ders) for r in coeffs):
            raise ValueError("each coefficient row needs one entry per derivation")
        n = len(coeffs)
        if any(la.shape(d) != (n, n) for d in ders):
            raise ValueError(f"derivations must be {n}x{n}")
        object.__setattr__(self, "derivations", ders)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_functionals(cls, derivations: Sequence, functionals: Sequence[Sequence]) -> "ModificationMap":
        """``phi(X) = sum_a functionals[a](X) * derivations[a]``."""
        functionals = [la.vector(f) for f in functionals]
        n = len(functionals[0]) if functionals else len(derivations[0])
        return cls(tuple(derivations), tuple(tuple(f[i] for f in functionals) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "ModificationMap":
        return cls((), tuple(() for _ in range(n)))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def image(self, v: Sequence) -> la.Matrix:
        out = la.zeros(self.dim)
        for i, x in enumerate(v):
            if x:
                for a, c in enumerate(self.coefficients[i]):
                    if c:
                        out = la.madd(out, la.mscale(x * c, self.derivations[a]))
        return out

    def __neg__(self) -> "ModificationMap":
        return self.scaled(-1)

    def scaled(self, c) -> "ModificationMap":
        c = la.frac(c)
        return ModificationMap(self.derivations, tuple(tuple(c * x for x in r) for r in self.coefficients))

    def __add__(self, other: "ModificationMap") -> "ModificationMap":
        if self.derivations != other.derivations:
            raise ValueError("maps into different derivation spans cannot be added")
        return ModificationMap(self.derivations,
                               tuple(la.vadd(a, b) for a, b in zip(self.coefficients, other.coefficients)))


def _skew_defect(metric: la.Matrix, d: la.Matrix) -> la.Matrix:
    return la.madd(la.matmul(la.transpose(d), metric), la.matmul(metric, d))


def validate_modification(h: HermitianData, m: ModificationMap) -> StructureReport:
    g, n = h.algebra, h.dim
    names = g.basis_names
    if m.dim != n:
        raise ValueError(f"map defined on dimension {m.dim}, algebra has {n}")
    checks = []
    bad = [(a, derivation_defect(g, d)) for a, d in enumerate(m.derivations)]
    bad = [{"sigma": a, "pairs": [[names[i], names[j]] for i, j, _ in dd]} for a, dd in bad if dd]
    checks.append(Check("derivation", "every sigma in k is a derivation of g", not bad, bad or None))

    bad = []
    for a, d in enumerate(m.derivations):
        s = _skew_defect(h.metric, d)
        bad += [{"sigma": a, "pair": [names[i], names[j]], "value": s[i][j]}
                for i in range(n) for j in range(i, n) if s[i][j]]
    checks.append(Check("skew", "g(sigma x, y) + g(x, sigma y) = 0", not bad, bad or None))

    bad = [a for a, d in enumerate(m.derivations)
           if not la.is_zero_matrix(la.msub(la.matmul(h.J, d), la.matmul(d, h.J)))]
    checks.append(Check("J_commute", "J sigma = sigma J", not bad, bad or None))

    bad = [(a, b) for a in range(len(m.derivations)) for b in range(a + 1, len(m.derivations))
           if la.matmul(m.derivations[a], m.derivations[b]) != la.matmul(m.derivations[b], m.derivations[a])]
    checks.append(Check("commuting", "the derivations commute pairwise", not bad, bad or None))

    bad = [[names[i], names[j]] for (i, j), c in g.brackets.items() if not la.is_zero_matrix(m.image(c))]
    checks.append(Check("kills_derived", "phi([g, g]) = 0", not bad, bad or None))

    bad = []
    for a, d in enumerate(m.derivations):
        for j, col in enumerate(la.transpose(d)):
            if not la.is_zero_matrix(m.image(col)):
                bad.append({"sigma": a, "x": names[j]})
    checks.append(Check("kills_images", "phi(sigma(x)) = 0", not bad, bad or None))
    return StructureReport("modification", tuple(checks))


def modified_algebra(g: LieAlgebra, m: ModificationMap, *, check: bool = True) -> LieAlgebra:
    """Bracket ``[X, Y] + phi(X) Y - phi(Y) X``."""
    n = g.dim
    images = [m.image(la.unit(n, i)) for i in range(n)]
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = la.vadd(g.structure(i, j), la.vsub(la.transpose(images[i])[j], la.transpose(images[j])[i]))
            if any(v):
                table[(i, j)] = v
    return LieAlgebra(g.basis_names, table, check=check)


def modify(h: HermitianData, m: ModificationMap, *, validate: bool = True) -> HermitianData:
    """Modification of ``h.algebra`` by ``m``; metric and ``J`` are carried over."""
    if validate:
        rep = validate_modification(h, m)
        if not rep.passed:
            raise ModificationError(f"invalid modification map: fails {[c.id for c in rep.failed]}", rep)
    return h.with_algebra(modified_algebra(h.algebra, m))


def compatible_derivations(h: HermitianData) -> tuple[la.Matrix, ...]:
    """Basis of the g-skew derivations of ``h.algebra`` commuting with ``J``."""
    g, n = h.algebra, h.dim
    N = n * n

    def var(r, c):
        return r * n + c

    rows = []
    # derivation: D[e_i, e_j] - [D e_i, e_j] - [e_i, D e_j] = 0, coordinate k
    for i in range(n):
        for j in range(i + 1, n):
            cij = g.structure(i, j)
            for k in range(n):
                row = [Fraction(0)] * N
                for m_, x in enumerate(cij):
                    if x:
                        row[var(k, m_)] += x
                for m_ in range(n):
                    row[var(m_, i)] -= g.structure(m_, j)[k]
                    row[var(m_, j)] -= g.structure(i, m_)[k]
                if any(row):
                    rows.append(row)
    G, J = h.metric, h.J
    for i in range(n):
        for j in range(n):
            # (D^T G + G D)_{ij} = sum_m D_{mi} G_{mj} + G_{im} D_{mj}
            row = [Fraction(0)] * N
            for m_ in range(n):
                row[var(m_, i)] += G[m_][j]
                row[var(m_, j)] += G[i][m_]
            if any(row):
                rows.append(row)
            # (J D - D J)_{ij}
            row = [Fraction(0)] * N
            for m_ in range(n):
                row[var(m_, j)] += J[i][m_]
                row[var(i, m_)] -= J[m_][j]
            if any(row):
                rows.append(row)
    basis = la.nullspace(tuple(rows), N) if rows else tuple(la.unit(N, k) for k in range(N))
    return tuple(tuple(tuple(v[var(r, c)] for c in range(n)) for r in range(n)) for v in basis)


def annihilator(vectors: Sequence[Sequence], n: int) -> tuple:
    """Basis of the covectors vanishing on ``vectors``."""
    vectors = [v for v in vectors if any(v)]
    return la.nullspace(tuple(la.vector(v) for v in vectors), n) if vectors else tuple(la.unit(n, i) for i in range(n))


@dataclass(frozen=True)
class PairModification:
    """``(g x| k, h x| k)`` with ``k`` appended after the basis of ``g``."""

    algebra: LieAlgebra
    h: Subspace
    J: la.Matrix
    metric: la.Matrix | None
    k_indices: tuple[int, ...]


def modify_pair(g: LieAlgebra, h: Subspace | None, J: la.Matrix, derivations: Sequence,
                names: Sequence[str] | None = None, metric: la.Matrix | None = None) -> PairModification:
    """Semidirect sum ``g x| k`` and ``h x| k``; ``J`` and ``metric`` vanish on ``k``."""
    n = g.dim
    h = h or Subspace.zero(n)
    ders = [la.matrix(d) for d in derivations]
    J = la.matrix(J)
    for a, d in enumerate(ders):
        if not is_derivation(g, d):
            raise ModificationError(f"sigma_{a} is not a derivation")
        if any(not h.contains(la.matvec(d, v)) for v in h.basis):
            raise ModificationError(f"sigma_{a} does not preserve h")
        comm = la.msub(la.matmul(J, d), la.matmul(d, J))
        if any(not h.contains(c) for c in la.transpose(comm)):
            raise ModificationError(f"J sigma_{a} != sigma_{a} J (mod h)")
    m = len(ders)
    flat = la.transpose(tuple(tuple(x for r in d for x in r) for d in ders)) if ders else ()
    k_struct = {}
    for a in range(m):
        for b in range(a + 1, m):
            c = la.msub(la.matmul(ders[a], ders[b]), la.matmul(ders[b], ders[a]))
            if la.is_zero_matrix(c):
                continue
            x = la.solve(flat, [v for r in c for v in r])
            if x is None:
                raise ModificationError("k is not closed under commutators")
            k_struct[(a, b)] = x
    names = list(names) if names else [f"sigma{a + 1}" for a in range(m)]
    all_names = list(g.basis_names) + _disjoint_names(g.basis_names, names)
    N = n + m
    table = {}
    for (i, j), c in g.brackets.items():
        table[(i, j)] = tuple(c) + (Fraction(0),) * m
    for a, d in enumerate(ders):
        cols = la.transpose(d)
        for i in range(n):
            # [e_i, sigma_a] = -sigma_a(e_i)
            v = tuple(-x for x in cols[i]) + (Fraction(0),) * m
            if any(v):
                table[(i, n + a)] = v
    for (a, b), x in k_struct.items():
        table[(n + a, n + b)] = (Fraction(0),) * n + tuple(x)
    alg = LieAlgebra(all_names, table)
    emb = [tuple(v) + (Fraction(0),) * m for v in h.basis]
    h2 = Subspace(emb + [la.unit(N, n + a) for a in range(m)], N)
    J2 = tuple(tuple(J[i]) + (Fraction(0),) * m for i in range(n)) + ((Fraction(0),) * N,) * m
    g2 = None
    if metric is not None:
        metric = la.matrix(metric)
        g2 = tuple(tuple(metric[i]) + (Fraction(0),) * m for i in range(n)) + ((Fraction(0),) * N,) * m
    return PairModification(alg, h2, J2, g2, tuple(range(n, N)))


# -- centralization ------------------------------------------------------------

@dataclass(frozen=True)
class CentralizedStructure:
    """Result of centralizing the Lee and Reeb fields.

    ``base`` is the Hermitian Lie algebra after the Lie-algebra modifications;
    if the Reeb field lies in ``[g, g]`` a final pair-level step produces
    ``algebra`` = ``base.algebra x| <ad_eta>`` with subalgebra ``h`` and the
    Reeb field replaced by ``eta - ad_eta``.
    """

    base: HermitianData
    algebra: LieAlgebra
    h: Subspace
    J: la.Matrix
    metric: la.Matrix
    theta: KForm
    xi: tuple
    eta: tuple
    steps: tuple[str, ...] = field(default_factory=tuple)

    @property
    def center_dim(self) -> int:
        return center(self.algebra).dim


def _central(g: LieAlgebra, v) -> bool:
    return not any(any(g.bracket(v, la.unit(g.dim, i))) for i in range(g.dim))


def centralize(h: HermitianData) -> CentralizedStructure:
    rep = check_lck(h)
    if not rep.vaisman:
        raise NotVaisman("centralize needs a Vaisman structure")
    steps = []
    theta, xi = rep.theta, rep.xi
    g = h.algebra
    t = theta.covector()
    if derived_algebra(g).contains(xi):
        raise StructureError("the Lee field lies in [g, g]")
    if _central(g, xi):
        steps.append("xi already central")
    else:
        lam = la.vscale(-1 / la.dot(t, xi), t)
        h = modify(h, ModificationMap.from_functionals([g.ad(xi)], [lam]))
        steps.append("xi: modification by -theta(.)/theta(xi) ad_xi")
        rep = check_lck(h)
        if not rep.vaisman:
            raise StructureError("modification by ad_xi lost the Vaisman property")
        theta, xi = rep.theta, rep.xi
        t = theta.covector()
    g = h.algebra
    eta = la.matvec(h.J, xi)
    base = h
    algebra, sub, J, metric = g, Subspace.zero(g.dim), h.J, h.metric
    if _central(g, eta):
        steps.append("eta already central")
    else:
        ad_eta = g.ad(eta)
        ann = annihilator(list(derived_algebra(g).basis) + list(la.transpose(ad_eta)) + [xi], g.dim)
        x = la.solve(tuple(la.transpose(ann)), [1]) if ann else None
        lam = la.lincomb(x, ann, g.dim) if ann and x is not None and len(ann) else None
        if lam is not None and la.dot(lam, eta) == 1:
            base = modify(h, ModificationMap.from_functionals([ad_eta], [la.vscale(-1, lam)]))
            steps.append("eta: modification by -lambda(.) ad_eta")
            algebra, J, metric = base.algebra, base.J, base.metric
            sub = Subspace.zero(g.dim)
        else:
            pm = modify_pair(g, None, h.J, [ad_eta], names=["sigma_eta"], metric=h.metric)
            steps.append("eta: pair modification by <ad_eta> (eta in [g, g])")
            algebra, sub, J, metric = pm.algebra, pm.h, pm.J, pm.metric
            N = algebra.dim
            xi = tuple(xi) + (Fraction(0),)
            eta = tuple(eta) + (Fraction(0),)
            eta = la.vsub(eta, la.unit(N, N - 1))
            t = tuple(t) + (Fraction(0),)
    theta = KForm.from_covector(t)
    out = CentralizedStructure(base, algebra, sub, J, metric, theta, tuple(xi), tuple(eta), tuple(steps))
    if not (_central(algebra, out.xi) and _central(algebra, out.eta)):
        raise StructureError("centralization did not make xi and eta central")
    return out


# -- classifier ----------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationVerdict:
    type_tag: str
    k: int | None = None
    center_dim: int | None = None
    killing_signature: tuple | None = None
    steps: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.type_tag}({self.k})" if self.type_tag == "HEISENBERG" else self.type_tag


def kernel_ideal(g: LieAlgebra, theta: KForm) -> LieAlgebra:
    t = theta.covector()
    return subalgebra(g, Subspace(la.nullspace((t,), g.dim), g.dim))


def classify_vaisman(h: HermitianData) -> ClassificationVerdict:
    rep = check_lck(h)
    if not rep.vaisman:
        raise NotVaisman("classify_vaisman needs a Vaisman structure")
    if not is_unimodular(h.algebra):
        raise NotUnimodular("classify_vaisman needs a unimodular algebra")
    c = centralize(h)
    base_rep = check_lck(c.base)
    g0 = kernel_ideal(c.base.algebra, base_rep.theta)
    z = center(g0).dim
    if z == 1:
        derived = derived_algebra(g0)
        if derived.dim == 1 and derived == center(g0) and (g0.dim - 1) % 2 == 0:
            return ClassificationVerdict("HEISENBERG", (g0.dim - 1) // 2, z, None, c.steps)
        raise UnrecognizedShape(f"ker theta has a 1-dimensional center but is not a Heisenberg algebra "
                                f"(dim {g0.dim}, derived dim {derived.dim})")
    if z == 0:
        if not is_semisimple(g0) or g0.dim != 3:
            raise UnrecognizedShape(f"ker theta has trivial center but is not a 3-dimensional semisimple algebra")
        sig = la.inertia(killing_form(g0))
        if sig == (0, 3, 0):
            return ClassificationVerdict("SU2", None, z, sig, c.steps)
        return ClassificationVerdict("SL2R", None, z, sig, c.steps)
    raise UnrecognizedShape(f"ker theta has a {z}-dimensional center")


# -- quantization --------------------------------------------------------------

@dataclass(frozen=True)
class CentralExtensionData:
    """``g1 = g2 + R eta`` with ``[X, Y]_1 = [X, Y]_2 - omega(X, Y) eta``.

    ``eta`` is the basis vector ``eta_index`` of ``total``; the other basis
    vectors of ``total`` are those of ``base.algebra``, in order.
    """

    base: KahlerAlgebraData
    total: LieAlgebra
    eta_index: int
    psi: KForm

    @property
    def eta(self) -> tuple:
        return la.unit(self.total.dim, self.eta_index)

    def lift(self, v: Sequence) -> tuple:
        v = list(v)
        return tuple(v[: self.eta_index] + [Fraction(0)] + v[self.eta_index:])

    def sasaki_data(self) -> SasakiData:
        """Contact metric data with ``phi = psi``, ``Jtilde = -J`` on the base."""
        if self.base.h.dim:
            raise StructureError("Sasaki data on the total algebra needs h = 0")
        n = self.total.dim
        base_cols = la.transpose(self.base.J)
        cols = []
        for i in range(n):
            if i == self.eta_index:
                cols.append((Fraction(0),) * n)
            else:
                b = i if i < self.eta_index else i - 1
                cols.append(la.vscale(-1, self.lift(base_cols[b])))
        jt = la.transpose(tuple(cols))
        p = self.psi.covector()
        metric = la.madd(la.outer(p, p), la.matmul(ce_d(self.total, self.psi).matrix(), jt))
        return SasakiData(self.total, self.psi, self.eta, jt, metric)


def quantize(k: KahlerAlgebraData, eta_name: str = "eta") -> CentralExtensionData:
    g2, n = k.algebra, k.dim
    om = k.omega
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                E = la.unit
                s = (om(g2.structure(a, b), E(n, c)) + om(g2.structure(b, c), E(n, a))
                     + om(g2.structure(c, a), E(n, b)))
                if s:
                    raise StructureError(f"omega fails the cocycle axiom (v) on basis triple ({a}, {b}, {c})")
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = tuple(g2.structure(i, j)) + (-om.coefficient((i, j)),)
            if any(v):
                table[(i, j)] = v
    names = list(g2.basis_names) + _disjoint_names(g2.basis_names, [eta_name])
    total = LieAlgebra(names, table)
    return CentralExtensionData(k, total, n, KForm.basis(n + 1, n))


def kahler_pair(s: SasakiData) -> KahlerAlgebraData:
    """Pair-level Kaehler algebra ``(g1, <eta>, -Jtilde, d phi)``."""
    return KahlerAlgebraData(s.algebra, Subspace([s.eta], s.dim), la.mscale(-1, s.Jtilde), ce_d(s.algebra, s.phi))


def kahler_quotient(s: SasakiData, *, check: bool = True) -> KahlerAlgebraData:
    """``g2 = g1 / R eta`` with ``omega`` induced by ``d phi`` and ``J`` by ``-Jtilde``."""
    if check:
        rep = check_sasaki(s)
        if not rep.passed:
            raise StructureError(f"not a Sasaki structure: fails {[c.id for c in rep.failed]}")
    g1, n = s.algebra, s.dim
    if not _central(g1, s.eta):
        raise NotCentral("the Reeb field is not central, so g1 / R eta is not a Lie algebra; "
                         "use kahler_pair(s) for the Kaehler algebra (g1, <eta>, J, d phi)")
    ideal = Subspace([s.eta], n)
    g2 = quotient(g1, ideal)
    comp = ideal.complement_indices
    dphi = ce_d(g1, s.phi)
    omega = KForm(2, len(comp), {(a, b): dphi.coefficient((comp[a], comp[b]))
                                 for a in range(len(comp)) for b in range(a + 1, len(comp))})
    cols = la.transpose(s.Jtilde)
    jq = la.transpose(tuple(ideal.quotient_coords(la.vscale(-1, cols[c])) for c in comp))
    return KahlerAlgebraData(g2, Subspace.zero(len(comp)), jq, omega)


def delta_sum(a: CentralExtensionData, b: CentralExtensionData) -> CentralExtensionData:
    """``(g1 x g1') / Delta`` with ``Delta = {(x eta, -x eta')}``; ``eta`` := class of ``(eta, 0)``."""
    total = direct_sum(a.total, b.total)
    na = a.total.dim
    ea, eb = a.eta_index, na + b.eta_index
    v = la.vsub(la.unit(total.dim, ea), la.unit(total.dim, eb))
    q = quotient_by_vector(total, v, eb)
    # move eta to the end
    order = [i for i in range(q.dim) if i != ea] + [ea]
    q = q.permuted(order)
    nb2 = b.base.dim
    na2 = a.base.dim
    N2 = na2 + nb2
    base_alg = direct_sum(a.base.algebra, b.base.algebra)
    J = tuple(tuple(r) + (Fraction(0),) * nb2 for r in a.base.J) + \
        tuple((Fraction(0),) * na2 + tuple(r) for r in b.base.J)
    om = KForm(2, N2, {**{k: c for k, c in a.base.omega.terms()},
                       **{(i + na2, j + na2): c for (i, j), c in b.base.omega.terms()}})
    hsub = Subspace([tuple(v) + (Fraction(0),) * nb2 for v in a.base.h.basis]
                    + [(Fraction(0),) * na2 + tuple(v) for v in b.base.h.basis], N2)
    base = KahlerAlgebraData(base_alg.renamed(q.basis_names[:N2]), hsub, J, om)
    return CentralExtensionData(base, q, N2, KForm.basis(N2 + 1, N2))


# -- canonical Vaisman structure -----------------------------------------------

def canonical_vaisman(s: SasakiData, b=0, *, check: bool = True, t_name: str = "T") -> HermitianData:
    """Vaisman structure on ``R T + g1`` with ``Omega = psi ^ t + d psi``.

    ``J T = b T + (1 + b^2) eta``, ``J eta = -T - b eta`` and ``J = -Jtilde``
    on ``ker phi``.  ``T`` is basis vector 0.
    """
    b = la.frac(b)
    if check:
        rep = check_sasaki(s)
        if not rep.passed:
            raise StructureError(f"not a Sasaki structure: fails {[c.id for c in rep.failed]}")
    g1, n = s.algebra, s.dim
    N = n + 1
    names = [t_name] + list(g1.basis_names)
    if t_name in g1.basis_names:
        names = [t_name + "0"] + list(g1.basis_names)
    table = {(i + 1, j + 1): (Fraction(0),) + tuple(c) for (i, j), c in g1.brackets.items()}
    alg = LieAlgebra(names, table, check=False)

    def lift(v):
        return (Fraction(0),) + tuple(v)

    T = la.unit(N, 0)
    eta = lift(s.eta)
    p = s.phi.covector()
    J_T = la.vadd(la.vscale(b, T), la.vscale(1 + b * b, eta))
    J_eta = la.vsub(la.vscale(-1, T), la.vscale(b, eta))
    cols = [J_T]
    for j in range(n):
        e = la.unit(n, j)
        horiz = la.vsub(e, la.vscale(p[j], s.eta))
        col = la.vsub(la.vscale(p[j], J_eta), lift(la.matvec(s.Jtilde, horiz)))
        cols.append(col)
    J = la.transpose(tuple(cols))
    psi = KForm.from_covector((Fraction(0),) + tuple(p))
    t = KForm.basis(N, 0)
    omega = (psi ^ t) + ce_d(alg, psi)
    metric = metric_from_form(omega, J)
    return HermitianData(alg, metric, J)
