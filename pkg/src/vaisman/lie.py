"""Finite-dimensional real Lie algebras with exact rational structure constants."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .errors import DimensionError, JacobiError, StructureError


class LieAlgebra:
    """A Lie algebra given by a named basis and structure constants.

    ``brackets`` maps index pairs ``(i, j)`` with ``i < j`` to the coordinate
    vector of ``[e_i, e_j]``.  ``[e_j, e_i]`` is obtained by antisymmetry and
    never stored.  The Jacobi identity is checked unless ``check=False``.
    """

    def __init__(self, basis_names: Sequence[str], brackets: Mapping | None = None, *, check: bool = True):
        names = tuple(str(s) for s in basis_names)
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate basis names in {names}")
        n = len(names)
        table = {}
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < j < n):
                raise StructureError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < {n}")
            v = la.vector(coeffs)
            if len(v) != n:
                raise DimensionError(f"bracket [{names[i]}, {names[j]}] has {len(v)} coordinates, expected {n}")
            if any(v):
                table[(i, j)] = v
        self.basis_names = names
        self._table = dict(sorted(table.items()))
        if check:
            defects = jacobi_defect(self)
            if defects:
                raise JacobiError(defects)

    @classmethod
    def from_table(cls, names: Sequence[str], table: Mapping, *, check: bool = True) -> "LieAlgebra":
        """Build from ``{("X", "Y"): {"Z": -1}}``; pairs may come in either order."""
        names = tuple(names)
        idx = {s: k for k, s in enumerate(names)}
        n = len(names)
        acc: dict[tuple[int, int], list[Fraction]] = {}
        for (a, b), terms in table.items():
            i, j = idx[a], idx[b]
            if i == j:
                raise StructureError(f"[{a}, {a}] is zero by antisymmetry and cannot be set")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            row = acc.setdefault((i, j), [Fraction(0)] * n)
            for c, coeff in terms.items():
                row[idx[c]] += sign * la.frac(coeff)
        return cls(names, acc, check=check)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def brackets(self) -> Mapping[tuple[int, int], tuple]:
        return MappingProxyType(self._table)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"no basis element named {name!r}") from None

    def e(self, name_or_index) -> tuple:
        k = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return la.unit(self.dim, k)

    def vec(self, terms: Mapping[str, object]) -> tuple:
        out = [Fraction(0)] * self.dim
        for name, c in terms.items():
            out[self.index(name)] += la.frac(c)
        return tuple(out)

    def structure(self, i: int, j: int) -> tuple:
        if i == j:
            return (Fraction(0),) * self.dim
        if i < j:
            return self._table.get((i, j), (Fraction(0),) * self.dim)
        return tuple(-x for x in self._table.get((j, i), (Fraction(0),) * self.dim))

    def bracket(self, v: Sequence, w: Sequence) -> tuple:
        n = self.dim
        if len(v) != n or len(w) != n:
            raise DimensionError(f"vectors of length {len(v)}, {len(w)} in an algebra of dimension {n}")
        out = [Fraction(0)] * n
        for (i, j), c in self._table.items():
            coef = v[i] * w[j] - v[j] * w[i]
            if coef:
                for k, x in enumerate(c):
                    if x:
                        out[k] += coef * x
        return tuple(out)

    def ad(self, v: Sequence) -> la.Matrix:
        """Matrix of ``ad_v``; column ``j`` holds ``[v, e_j]``."""
        cols = [self.bracket(v, la.unit(self.dim, j)) for j in range(self.dim)]
        return la.transpose(tuple(cols)) if cols else ()

    @cached_property
    def ad_basis(self) -> tuple[la.Matrix, ...]:
        return tuple(self.ad(la.unit(self.dim, i)) for i in range(self.dim))

    def same_structure(self, other: "LieAlgebra") -> bool:
        """Structure-constant equality, ignoring basis names."""
        return self.dim == other.dim and self._table == other._table

    def permuted(self, order: Sequence) -> "LieAlgebra":
        """Re-list the basis in ``order`` (names or indices of the old basis)."""
        perm = [o if isinstance(o, int) else self.index(o) for o in order]
        if sorted(perm) != list(range(self.dim)):
            raise ValueError("order must be a permutation of the basis")
        new_of_old = {old: new for new, old in enumerate(perm)}
        table = {}
        for (i, j), c in self._table.items():
            a, b = new_of_old[i], new_of_old[j]
            v = [Fraction(0)] * self.dim
            for k, x in enumerate(c):
                v[new_of_old[k]] = x
            if a > b:
                a, b, v = b, a, [-x for x in v]
            table[(a, b)] = v
        return LieAlgebra([self.basis_names[p] for p in perm], table, check=False)

    def renamed(self, names: Sequence[str]) -> "LieAlgebra":
        if len(names) != self.dim:
            raise DimensionError("wrong number of names")
        return LieAlgebra(names, self._table, check=False)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis_names == other.basis_names and self._table == other._table

    def __hash__(self):
        return hash((self.basis_names, tuple(self._table.items())))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"

    def describe(self) -> str:
        lines = []
        for (i, j), c in self._table.items():
            lines.append(f"[{self.basis_names[i]}, {self.basis_names[j]}] = {format_vector(self, c)}")
        return "\n".join(lines) if lines else "(abelian)"


def format_vector(g: LieAlgebra, v: Sequence) -> str:
    parts = []
    for name, x in zip(g.basis_names, v):
        if x == 0:
            continue
        if x == 1:
            s = name
        elif x == -1:
            s = f"-{name}"
        else:
            s = f"({la.fmt(x)}){name}"
        parts.append(s)
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def bracket(g: LieAlgebra, v: Sequence, w: Sequence) -> tuple:
    return g.bracket(v, w)


def jacobi_defect(g: LieAlgebra) -> list[tuple[int, int, int, tuple]]:
    """Basis triples ``i < j < k`` whose cyclic Jacobi sum is nonzero."""
    n = g.dim
    e = [la.unit(n, i) for i in range(n)]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            ij = g.structure(i, j)
            for k in range(j + 1, n):
                s = la.vadd(la.vadd(g.bracket(ij, e[k]), g.bracket(g.structure(j, k), e[i])),
                            g.bracket(g.structure(k, i), e[j]))
                if any(s):
                    out.append((i, j, k, s))
    return out


def is_unimodular(g: LieAlgebra) -> bool:
    return all(la.trace(a) == 0 for a in g.ad_basis)


class Subspace:
    """A linear subspace of ``Q^n``, kept in reduced row echelon form.

    Equality is equality of subspaces.
    """

    def __init__(self, vectors: Iterable[Sequence], ambient_dim: int):
        vectors = [la.vector(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        self.ambient_dim = ambient_dim
        self.basis, self.pivots = la.rref(vectors) if vectors else ((), ())

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls([], n)

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(la.identity(n), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> tuple:
        """Canonical representative of ``v`` modulo the subspace."""
        v = list(la.vector(v))
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    @property
    def complement_indices(self) -> tuple[int, ...]:
        """Coordinates whose unit vectors span a complement (the non-pivot ones)."""
        return tuple(i for i in range(self.ambient_dim) if i not in self.pivots)

    def quotient_coords(self, v: Sequence) -> tuple:
        r = self.reduce(v)
        return tuple(r[i] for i in self.complement_indices)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.basis + other.basis, self.ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def bracket_span(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace([g.bracket(u, v) for u in a.basis for v in b.basis], g.dim)


def derived_algebra(g: LieAlgebra) -> Subspace:
    return Subspace(list(g.brackets.values()), g.dim)


def is_subalgebra(g: LieAlgebra, h: Subspace) -> bool:
    return all(h.contains(g.bracket(u, v)) for u in h.basis for v in h.basis)


def is_ideal(g: LieAlgebra, h: Subspace) -> bool:
    return all(h.contains(g.bracket(la.unit(g.dim, i), v)) for i in range(g.dim) for v in h.basis)


def largest_ideal_in(g: LieAlgebra, h: Subspace) -> Subspace:
    """The largest ideal of ``g`` contained in ``h``."""
    s = h
    while True:
        if s.dim == 0:
            return s
        # v in s with [e_i, v] in s for all i: solve on coordinates of s
        rows = []
        for i in range(g.dim):
            imgs = [s.reduce(g.bracket(la.unit(g.dim, i), v)) for v in s.basis]
            rows.extend(la.transpose(tuple(imgs)))
        kernel = la.nullspace(tuple(rows), s.dim)
        t = Subspace([la.lincomb(c, s.basis, g.dim) for c in kernel], g.dim)
        if t == s:
            return s
        s = t


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    rows = []
    # v -> [v, e_j] is linear in v with matrix -ad(e_j)
    for a in g.ad_basis:
        rows.extend(la.mscale(-1, a))
    return Subspace(la.nullspace(tuple(rows), n) if rows else la.identity(n), n)


def series(g: LieAlgebra, kind: str = "derived") -> list[Subspace]:
    """Derived or lower central series, listed until it stabilizes."""
    if kind not in ("derived", "lower_central"):
        raise ValueError("kind must be 'derived' or 'lower_central'")
    whole = Subspace.whole(g.dim)
    out = [whole]
    while True:
        cur = out[-1]
        nxt = bracket_span(g, cur, cur) if kind == "derived" else bracket_span(g, whole, cur)
        if nxt == cur:
            return out
        out.append(nxt)


def is_nilpotent(g: LieAlgebra) -> bool:
    return series(g, "lower_central")[-1].dim == 0


def is_solvable(g: LieAlgebra) -> bool:
    return series(g, "derived")[-1].dim == 0


def killing_form(g: LieAlgebra) -> la.Matrix:
    ads = g.ad_basis
    n = g.dim
    return tuple(tuple(la.trace(la.matmul(ads[i], ads[j])) for j in range(n)) for i in range(n))


def is_semisimple(g: LieAlgebra) -> bool:
    return g.dim > 0 and la.det(killing_form(g)) != 0


def _disjoint_names(first: Sequence[str], second: Sequence[str]) -> list[str]:
    taken = set(first)
    out = []
    for s in second:
        t = s
        while t in taken:
            t += "'"
        taken.add(t)
        out.append(t)
    return out


def direct_sum(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    n1, n = g1.dim, g1.dim + g2.dim
    table = {}
    for (i, j), c in g1.brackets.items():
        table[(i, j)] = tuple(c) + (Fraction(0),) * g2.dim
    for (i, j), c in g2.brackets.items():
        table[(i + n1, j + n1)] = (Fraction(0),) * n1 + tuple(c)
    names = list(g1.basis_names) + _disjoint_names(g1.basis_names, g2.basis_names)
    return LieAlgebra(names, table, check=False)


def abelian(n: int, names: Sequence[str] | None = None) -> LieAlgebra:
    return LieAlgebra(names or [f"e{i + 1}" for i in range(n)], {})


def quotient(g: LieAlgebra, ideal: Subspace) -> LieAlgebra:
    """``g / ideal`` on the basis of the non-pivot coordinates of ``ideal``."""
    if not is_ideal(g, ideal):
        raise StructureError("quotient by a subspace that is not an ideal")
    keep = ideal.complement_indices
    table = {}
    for a, i in enumerate(keep):
        for b in range(a + 1, len(keep)):
            j = keep[b]
            c = ideal.quotient_coords(g.structure(i, j))
            if any(c):
                table[(a, b)] = c
    return LieAlgebra([g.basis_names[i] for i in keep], table, check=False)


def is_derivation(g: LieAlgebra, d: la.Matrix) -> bool:
    return not derivation_defect(g, d)


def derivation_defect(g: LieAlgebra, d: la.Matrix) -> list[tuple[int, int, tuple]]:
    """Basis pairs where ``D[x, y] - [Dx, y] - [x, Dy]`` is nonzero."""
    n = g.dim
    cols = la.transpose(d)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.matvec(d, g.structure(i, j))
            rhs = la.vadd(g.bracket(cols[i], la.unit(n, j)), g.bracket(la.unit(n, i), cols[j]))
            diff = la.vsub(lhs, rhs)
            if any(diff):
                out.append((i, j, diff))
    return out


def subalgebra(g: LieAlgebra, s: Subspace, names: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra ``s`` as a Lie algebra on the echelon basis of ``s``.

    Basis vectors that are coordinate vectors keep their names.
    """
    if not is_subalgebra(g, s):
        raise StructureError("subspace is not closed under the bracket")
    basis = s.basis
    if names is None:
        names = []
        for k, v in enumerate(basis):
            nz = [i for i, x in enumerate(v) if x]
            names.append(g.basis_names[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else f"u{k + 1}")
        names = _disjoint_names([], names)
    # coordinates in the echelon basis are read off at the pivot positions
    table = {}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            w = g.bracket(basis[a], basis[b])
            c = tuple(w[p] for p in s.pivots)
            if any(c):
                table[(a, b)] = c
    return LieAlgebra(names, table, check=False)


def quotient_by_vector(g: LieAlgebra, v: Sequence, drop: int) -> LieAlgebra:
    """``g / span{v}`` for central ``v``, keeping every basis vector except ``e_drop``."""
    v = la.vector(v)
    if v[drop] == 0:
        raise StructureError("the dropped coordinate must be nonzero in v")
    if any(any(g.bracket(v, la.unit(g.dim, i))) for i in range(g.dim)):
        raise StructureError("quotient by a non-central vector")
    keep = [i for i in range(g.dim) if i != drop]

    def reduce(w):
        c = w[drop] / v[drop]
        return tuple(w[i] - c * v[i] for i in keep)

    table = {}
    for a, i in enumerate(keep):
        for b in range(a + 1, len(keep)):
            c = reduce(g.structure(i, keep[b]))
            if any(c):
                table[(a, b)] = c
    return LieAlgebra([g.basis_names[i] for i in keep], table, check=False)
