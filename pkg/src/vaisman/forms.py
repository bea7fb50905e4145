"""Left-invariant exterior forms and the Chevalley-Eilenberg differential.

Sign conventions (the only source of sign truth in the package):

* ``e^I = e^{i1} ^ ... ^ e^{ik}`` evaluates to 1 on ``(e_{i1}, ..., e_{ik})``
  (determinant convention, no factorials).
* ``d alpha(X, Y) = -alpha([X, Y])`` for 1-forms, extended by
  ``d alpha(X_0..X_k) = sum_{i<j} (-1)^{i+j} alpha([X_i, X_j], X_0..^i..^j..X_k)``.
  On sl(2, R) with ``[X,Y]=-Z, [Z,X]=Y, [Z,Y]=-X`` this gives
  ``dx = z^y, dy = x^z, dz = x^y``.
* ``i(v) alpha`` contracts the first slot.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg as la
from .errors import Degenerate, DimensionError, NoSolution, NotClosed
from .lie import LieAlgebra


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


class KForm:
    """An alternating k-form on ``Q^n`` with sparse coefficients on increasing index tuples."""

    __slots__ = ("degree", "dim", "_coeffs")

    def __init__(self, degree: int, dim: int, coeffs: Mapping[Sequence[int], object] | None = None):
        if degree < 0:
            raise ValueError("negative degree")
        self.degree = degree
        self.dim = dim
        acc: dict[tuple[int, ...], Fraction] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise DimensionError(f"index tuple {idx} in a {degree}-form")
            if any(not 0 <= i < dim for i in idx):
                raise DimensionError(f"index tuple {idx} out of range for dimension {dim}")
            sign, key = _sort_sign(idx)
            if sign == 0:
                continue
            acc[key] = acc.get(key, Fraction(0)) + sign * la.frac(c)
        self._coeffs = {k: v for k, v in sorted(acc.items()) if v != 0}

    @classmethod
    def zero(cls, degree: int, dim: int) -> "KForm":
        return cls(degree, dim)

    @classmethod
    def scalar(cls, c, dim: int) -> "KForm":
        return cls(0, dim, {(): c})

    @classmethod
    def basis(cls, dim: int, *indices: int) -> "KForm":
        return cls(len(indices), dim, {tuple(indices): 1})

    @classmethod
    def from_covector(cls, v: Sequence) -> "KForm":
        return cls(1, len(v), {(i,): x for i, x in enumerate(v)})

    @classmethod
    def from_matrix(cls, m: la.Matrix) -> "KForm":
        """2-form with ``omega(e_i, e_j) = m[i][j]`` (m must be antisymmetric)."""
        if not la.is_antisymmetric(m):
            raise ValueError("2-form matrix must be antisymmetric")
        n = len(m)
        return cls(2, n, {(i, j): m[i][j] for i in range(n) for j in range(i + 1, n)})

    @property
    def coeffs(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._coeffs)

    def terms(self):
        return self._coeffs.items()

    def coefficient(self, idx: Sequence[int]) -> Fraction:
        sign, key = _sort_sign(idx)
        return sign * self._coeffs.get(key, Fraction(0)) if sign else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other: "KForm"):
        if self.dim != other.dim or self.degree != other.degree:
            raise DimensionError(f"cannot combine a {self.degree}-form on R^{self.dim} "
                                 f"with a {other.degree}-form on R^{other.dim}")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        acc = dict(self._coeffs)
        for k, v in other._coeffs.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return KForm(self.degree, self.dim, acc)

    def __neg__(self) -> "KForm":
        return KForm(self.degree, self.dim, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __mul__(self, c) -> "KForm":
        c = la.frac(c)
        return KForm(self.degree, self.dim, {k: c * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return (self.degree, self.dim, self._coeffs) == (other.degree, other.dim, other._coeffs)

    def __hash__(self):
        return hash((self.degree, self.dim, tuple(self._coeffs.items())))

    def __call__(self, *vectors: Sequence) -> Fraction:
        """Evaluate on ``degree`` vectors."""
        if len(vectors) != self.degree:
            raise DimensionError(f"{self.degree}-form evaluated on {len(vectors)} vectors")
        total = Fraction(0)
        for idx, c in self._coeffs.items():
            m = tuple(tuple(v[i] for i in idx) for v in vectors)
            total += c * la.det(m)
        return total

    def on_basis(self, idx: Sequence[int]) -> Fraction:
        return self.coefficient(idx)

    def matrix(self) -> la.Matrix:
        """Gram matrix ``omega(e_i, e_j)`` of a 2-form."""
        if self.degree != 2:
            raise ValueError("matrix() is defined for 2-forms")
        n = self.dim
        return tuple(tuple(self.coefficient((i, j)) for j in range(n)) for i in range(n))

    def covector(self) -> tuple:
        if self.degree != 1:
            raise ValueError("covector() is defined for 1-forms")
        return tuple(self._coeffs.get((i,), Fraction(0)) for i in range(self.dim))

    def __repr__(self):
        return f"KForm(degree={self.degree}, {format_form(self)})"


def format_form(alpha: KForm, names: Sequence[str] | None = None) -> str:
    names = names or [f"e{i + 1}" for i in range(alpha.dim)]
    duals = [s.lower() if s.upper() == s and len(s) == 1 else f"{s}*" for s in names]
    parts = []
    for idx, c in alpha.terms():
        mono = "^".join(duals[i] for i in idx) or "1"
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"({la.fmt(c)}){mono}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def wedge(alpha: KForm, beta: KForm) -> KForm:
    if alpha.dim != beta.dim:
        raise DimensionError("wedge of forms on different spaces")
    deg = alpha.degree + beta.degree
    if deg > alpha.dim:
        return _overflow(alpha.dim)
    acc: dict[tuple[int, ...], Fraction] = {}
    for i, a in alpha.terms():
        for j, b in beta.terms():
            sign, key = _sort_sign(i + j)
            if sign:
                acc[key] = acc.get(key, Fraction(0)) + sign * a * b
    return KForm(deg, alpha.dim, acc)


def _overflow(n: int) -> KForm:
    # Forms of degree > n vanish; represent them as the zero top form.
    return KForm.zero(n, n)


def wedge_power(alpha: KForm, k: int) -> KForm:
    out = KForm.scalar(1, alpha.dim)
    for _ in range(k):
        out = wedge(out, alpha)
    return out


def interior(v: Sequence, alpha: KForm) -> KForm:
    """Contraction ``i(v) alpha`` in the first slot."""
    if alpha.degree == 0:
        raise ValueError("cannot contract a scalar")
    if len(v) != alpha.dim:
        raise DimensionError("vector and form live on different spaces")
    acc: dict[tuple[int, ...], Fraction] = {}
    for idx, c in alpha.terms():
        for pos, m in enumerate(idx):
            if v[m]:
                key = idx[:pos] + idx[pos + 1:]
                acc[key] = acc.get(key, Fraction(0)) + (-1) ** pos * v[m] * c
    return KForm(alpha.degree - 1, alpha.dim, acc)


def ce_d(g: LieAlgebra, alpha: KForm) -> KForm:
    """Chevalley-Eilenberg differential of a left-invariant form."""
    n = g.dim
    if alpha.dim != n:
        raise DimensionError(f"form on R^{alpha.dim} differentiated on an algebra of dimension {n}")
    k = alpha.degree
    if k + 1 > n:
        return _overflow(n)
    if alpha.is_zero() or not g.brackets:
        return KForm.zero(k + 1, n)
    acc = {}
    for idx in combinations(range(n), k + 1):
        total = Fraction(0)
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                br = g.structure(idx[a], idx[b])
                if not any(br):
                    continue
                rest = idx[:a] + idx[a + 1:b] + idx[b + 1:]
                s = Fraction(0)
                for m, x in enumerate(br):
                    if x:
                        s += x * alpha.coefficient((m,) + rest)
                total += (-1) ** (a + b) * s
        if total:
            acc[idx] = total
    return KForm(k + 1, n, acc)


def all_basis_forms(n: int, degree: int):
    for idx in combinations(range(n), degree):
        yield KForm.basis(n, *idx)


def nondegenerate(omega: KForm) -> bool:
    if omega.degree != 2 or omega.dim % 2:
        return False
    return not wedge_power(omega, omega.dim // 2).is_zero()


def solve_lee_form(g: LieAlgebra, omega: KForm) -> KForm:
    """The closed 1-form ``theta`` with ``d omega = omega ^ theta``.

    Raises :class:`Degenerate`, :class:`NoSolution` or :class:`NotClosed`
    (the latter carries the non-closed ``theta``).
    """
    n = g.dim
    if omega.degree != 2:
        raise ValueError("the fundamental form must be a 2-form")
    if n < 4 or n % 2:
        raise DimensionError(f"the Lee form is determined only in even dimension >= 4 (got {n})")
    if not nondegenerate(omega):
        raise Degenerate(f"omega^{n // 2} vanishes")
    target = ce_d(g, omega)
    idx3 = list(combinations(range(n), 3))
    images = [wedge(omega, KForm.basis(n, i)) for i in range(n)]
    a = tuple(tuple(img.coefficient(t) for img in images) for t in idx3)
    b = [target.coefficient(t) for t in idx3]
    x = la.solve(a, b)
    if x is None:
        raise NoSolution("d(Omega) is not of the form Omega ^ theta")
    theta = KForm.from_covector(x)
    if not ce_d(g, theta).is_zero():
        raise NotClosed(theta)
    return theta


def solve_primitive(g: LieAlgebra, omega: KForm) -> KForm | None:
    """Some 1-form ``rho`` with ``d rho = omega``, or None."""
    n = g.dim
    idx2 = list(combinations(range(n), 2))
    if not idx2:
        return KForm.zero(1, n) if omega.is_zero() else None
    images = [ce_d(g, KForm.basis(n, i)) for i in range(n)]
    a = tuple(tuple(img.coefficient(t) for img in images) for t in idx2)
    x = la.solve(a, [omega.coefficient(t) for t in idx2])
    return None if x is None else KForm.from_covector(x)
