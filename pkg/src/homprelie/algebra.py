"""Hom-preLie algebras given by structure constants and a twist matrix."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import MalformedInput, PreconditionFailed
from .exactlin import (
    Matrix,
    Subspace,
    is_zero_vector,
    kernel_image,
    quotient_space,
    unit_vector,
    vadd,
    vsub,
)


@dataclass(frozen=True, eq=False)
class HomPreLieAlgebra:
    """Finite-dimensional algebra ``(L, mu, alpha)``.

    ``c[i][j][k]`` is the coefficient of ``e_k`` in ``e_i e_j``; ``alpha`` is
    the twist, acting on column coordinates.  Nothing about the Hom-preLie
    identity is enforced at construction; use :func:`check_axioms`.
    """

    field: object
    dim: int
    c: tuple
    alpha: Matrix
    names: tuple = dc_field(default=())

    def __post_init__(self):
        f = self.field
        n = self.dim
        c = tuple(tuple(tuple(f(x) for x in cij) for cij in ci) for ci in self.c)
        if len(c) != n or any(len(ci) != n or any(len(cij) != n for cij in ci) for ci in c):
            raise MalformedInput(f"structure constants must have shape {n}x{n}x{n}")
        if self.alpha.shape != (n, n):
            raise MalformedInput(f"twist must be {n}x{n}, got {self.alpha.shape}")
        if self.alpha.field != f:
            raise MalformedInput("twist and structure constants over different fields")
        names = tuple(self.names) if self.names else tuple(f"e{i + 1}" for i in range(n))
        if len(names) != n:
            raise MalformedInput("one name per basis vector required")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "names", names)

    # construction helpers ------------------------------------------------
    @classmethod
    def from_products(cls, field, dim, products, alpha=None, names=()):
        """Build from a sparse table ``{(i, j): {k: coeff}}``; missing products are zero."""
        c = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), result in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise MalformedInput(f"product index ({i}, {j}) out of range")
            for k, coeff in result.items():
                if not 0 <= k < dim:
                    raise MalformedInput(f"result index {k} out of range")
                c[i][j][k] = field(coeff)
        if alpha is None:
            alpha = Matrix.zeros(field, dim, dim)
        elif not isinstance(alpha, Matrix):
            alpha = Matrix(field, alpha, dim)
        return cls(field, dim, c, alpha, tuple(names))

    @classmethod
    def zero_algebra(cls, field, dim, alpha=None):
        return cls.from_products(field, dim, {}, alpha)

    def with_names(self, names) -> "HomPreLieAlgebra":
        return HomPreLieAlgebra(self.field, self.dim, self.c, self.alpha, tuple(names))

    # equality ignores labels
    def same_structure(self, other: "HomPreLieAlgebra") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and self.c == other.c and self.alpha == other.alpha)

    def __eq__(self, other):
        if not isinstance(other, HomPreLieAlgebra):
            return NotImplemented
        return self.same_structure(other) and self.names == other.names

    def __hash__(self):
        return hash((self.dim, self.c, self.alpha))

    # basic operations ----------------------------------------------------
    def basis(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    def product(self, i: int, j: int) -> tuple:
        return self.c[i][j]

    def twist(self, v) -> tuple:
        return self.alpha.apply(v)

    def mult_matrix(self) -> Matrix:
        """The ``dim x dim^2`` matrix of ``mu`` on ``L (x) L`` (left-major)."""
        cols = [self.c[i][j] for i in range(self.dim) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def __repr__(self):
        return f"HomPreLieAlgebra(dim={self.dim}, field={self.field!r}, names={self.names})"


def multiply(A: HomPreLieAlgebra, x: Sequence, y: Sequence) -> tuple:
    """Bilinear extension of the structure constants."""
    if len(x) != A.dim or len(y) != A.dim:
        raise MalformedInput(f"multiply expects vectors of length {A.dim}")
    out = [A.field.zero] * A.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            s = xi * yj
            for k, ck in enumerate(A.c[i][j]):
                if ck:
                    out[k] = out[k] + s * ck
    return tuple(out)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    hom_prelie: bool
    hom_novikov: bool
    prelie_witness: tuple | None = None
    novikov_witness: tuple | None = None


def prelie_residual(A: HomPreLieAlgebra, x, y, z) -> tuple:
    """``a(x)(yz) - (xy)a(z) - a(y)(xz) + (yx)a(z)`` as a vector."""
    ax, ay, az = A.twist(x), A.twist(y), A.twist(z)
    m = lambda u, v: multiply(A, u, v)  # noqa: E731
    lhs = vsub(m(ax, m(y, z)), m(m(x, y), az))
    rhs = vsub(m(ay, m(x, z)), m(m(y, x), az))
    return vsub(lhs, rhs)


def novikov_residual(A: HomPreLieAlgebra, x, y, z) -> tuple:
    """``(xy)a(z) - (xz)a(y)``."""
    return vsub(multiply(A, multiply(A, x, y), A.twist(z)),
                multiply(A, multiply(A, x, z), A.twist(y)))


def check_axioms(A: HomPreLieAlgebra) -> AxiomReport:
    """Check the Hom-preLie and Hom-Novikov identities on all basis triples.

    Trilinearity makes the basis check equivalent to the identity on all
    elements.  The first failing triple is returned as ``(i, j, k, residual)``.
    """
    prelie_w = novikov_w = None
    e = [A.basis(i) for i in range(A.dim)]
    for i, j, k in itertools.product(range(A.dim), repeat=3):
        if prelie_w is None:
            r = prelie_residual(A, e[i], e[j], e[k])
            if not is_zero_vector(r):
                prelie_w = (i, j, k, r)
        if novikov_w is None:
            r = novikov_residual(A, e[i], e[j], e[k])
            if not is_zero_vector(r):
                novikov_w = (i, j, k, r)
        if prelie_w is not None and novikov_w is not None:
            break
    prelie = prelie_w is None
    return AxiomReport(prelie, prelie and novikov_w is None, prelie_w, novikov_w)


def require_valid(A: HomPreLieAlgebra, what: str = "algebra") -> None:
    rep = check_axioms(A)
    if not rep.hom_prelie:
        raise PreconditionFailed(f"{what} is not Hom-preLie", witness=rep.prelie_witness)


# ---------------------------------------------------------------------------
# canonical subspaces
# ---------------------------------------------------------------------------


def annihilator(A: HomPreLieAlgebra) -> Subspace:
    """``Z(A) = {x : xy = 0 = yx for all y}``."""
    n = A.dim
    rows = []
    for j in range(n):
        # x -> x e_j and x -> e_j x, each as an n x n block
        right = Matrix.from_columns(A.field, [A.c[i][j] for i in range(n)], n)
        left = Matrix.from_columns(A.field, [A.c[j][i] for i in range(n)], n)
        rows.extend(right.rows)
        rows.extend(left.rows)
    if not rows:
        return Subspace.full(A.field, n)
    return kernel_image(Matrix(A.field, rows, n))[0]


@dataclass(frozen=True)
class DerivedSubspaces:
    LL: Subspace
    aLaL: Subspace
    perfect: bool
    alpha_perfect: bool
    alpha_surjective: bool


def derived_subspaces(A: HomPreLieAlgebra) -> DerivedSubspaces:
    n = A.dim
    ll = Subspace.span(A.field, n, [A.c[i][j] for i in range(n) for j in range(n)])
    images = [A.alpha.col(i) for i in range(n)]
    alal = Subspace.span(A.field, n, [multiply(A, a, b) for a in images for b in images])
    return DerivedSubspaces(
        LL=ll,
        aLaL=alal,
        perfect=ll.is_full(),
        alpha_perfect=alal.is_full(),
        alpha_surjective=A.alpha.rank() == n,
    )


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    source: HomPreLieAlgebra
    target: HomPreLieAlgebra
    f: Matrix

    def __post_init__(self):
        if self.f.shape != (self.target.dim, self.source.dim):
            raise MalformedInput(
                f"map matrix must be {self.target.dim}x{self.source.dim}, got {self.f.shape}")

    def __call__(self, v):
        return self.f.apply(v)

    def then(self, g: "Morphism") -> "Morphism":
        """``g o self``."""
        if not self.target.same_structure(g.source):
            raise MalformedInput("morphisms are not composable")
        return Morphism(self.source, g.target, g.f @ self.f)

    @classmethod
    def identity(cls, A: HomPreLieAlgebra) -> "Morphism":
        return cls(A, A, Matrix.identity(A.field, A.dim))


@dataclass(frozen=True)
class MorphismReport:
    is_morphism: bool
    witnesses: tuple = ()


def check_morphism(m: Morphism) -> MorphismReport:
    """Products and twists preserved on every basis pair / basis vector."""
    S, T, f = m.source, m.target, m.f
    if S.field != T.field or f.field != S.field:
        raise MalformedInput("morphism between algebras over different fields")
    witnesses = []
    images = f.columns()
    for i, j in itertools.product(range(S.dim), repeat=2):
        lhs = f.apply(S.c[i][j])
        rhs = multiply(T, images[i], images[j])
        if lhs != rhs:
            witnesses.append(("product", i, j, vsub(lhs, rhs)))
    fa = f @ S.alpha
    af = T.alpha @ f
    for i in range(S.dim):
        if fa.col(i) != af.col(i):
            witnesses.append(("twist", i, vsub(fa.col(i), af.col(i))))
    return MorphismReport(not witnesses, tuple(witnesses))


# ---------------------------------------------------------------------------
# ideals, subalgebras, quotients
# ---------------------------------------------------------------------------


def ideal_witness(A: HomPreLieAlgebra, H: Subspace):
    """First violation of the Hom-ideal conditions for ``H``, or None."""
    if H.ambient_dim != A.dim:
        raise MalformedInput("subspace lives in a different ambient space")
    for t, h in enumerate(H.basis):
        a = A.twist(h)
        if not H.contains(a):
            return ("twist", t, a)
        for j in range(A.dim):
            e = A.basis(j)
            hx = multiply(A, h, e)
            if not H.contains(hx):
                return ("right", t, j, hx)
            xh = multiply(A, e, h)
            if not H.contains(xh):
                return ("left", t, j, xh)
    return None


def is_hom_ideal(A: HomPreLieAlgebra, H: Subspace) -> bool:
    return ideal_witness(A, H) is None


@dataclass(frozen=True)
class QuotientAlgebra:
    algebra: HomPreLieAlgebra
    projection: Morphism
    space: object  # QuotientSpace


def quotient_algebra(A: HomPreLieAlgebra, H: Subspace) -> QuotientAlgebra:
    """``A / H`` with the induced product and twist, plus the projection."""
    w = ideal_witness(A, H)
    if w is not None:
        raise PreconditionFailed("subspace is not a Hom-ideal", witness=w)
    Q = quotient_space(A.dim, H)
    reps = Q.lift.columns()
    c = [[Q.project.apply(multiply(A, a, b)) for b in reps] for a in reps]
    alpha = Q.project @ A.alpha @ Q.lift
    names = tuple(A.names[r] for r in Q.representatives)
    B = HomPreLieAlgebra(A.field, Q.quotient_dim, c, alpha, names)
    return QuotientAlgebra(B, Morphism(A, B, Q.project), Q)


@dataclass(frozen=True)
class Subalgebra:
    algebra: HomPreLieAlgebra
    inclusion: Morphism
    subspace: Subspace


def subalgebra(A: HomPreLieAlgebra, H: Subspace, names=()) -> Subalgebra:
    """Restrict product and twist to ``H`` (in its echelon basis); closure is checked."""
    if H.ambient_dim != A.dim:
        raise MalformedInput("subspace lives in a different ambient space")
    basis = H.basis
    c = []
    for a in basis:
        row = []
        for b in basis:
            coords = H.coordinates(multiply(A, a, b))
            if coords is None:
                raise PreconditionFailed("subspace not closed under the product", witness=(a, b))
            row.append(coords)
        c.append(row)
    alpha_cols = []
    for a in basis:
        coords = H.coordinates(A.twist(a))
        if coords is None:
            raise PreconditionFailed("subspace not invariant under the twist", witness=a)
        alpha_cols.append(coords)
    alpha = Matrix.from_columns(A.field, alpha_cols, H.dim)
    if not names:
        names = tuple(format_vector(A, b) for b in basis)
    B = HomPreLieAlgebra(A.field, H.dim, c, alpha, tuple(names))
    return Subalgebra(B, Morphism(B, A, H.embedding()), H)


def direct_product(A: HomPreLieAlgebra, B: HomPreLieAlgebra) -> HomPreLieAlgebra:
    """``A x B`` with componentwise product and twist."""
    if A.field != B.field:
        raise MalformedInput("direct product over different fields")
    n = A.dim + B.dim
    f = A.field
    z = f.zero
    c = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i, j in itertools.product(range(A.dim), repeat=2):
        c[i][j][: A.dim] = A.c[i][j]
    for i, j in itertools.product(range(B.dim), repeat=2):
        c[A.dim + i][A.dim + j][A.dim:] = B.c[i][j]
    rows = [r + (z,) * B.dim for r in A.alpha.rows] + [(z,) * A.dim + r for r in B.alpha.rows]
    alpha = Matrix(f, rows, n)
    names = tuple(f"({x},0)" for x in A.names) + tuple(f"(0,{y})" for y in B.names)
    return HomPreLieAlgebra(f, n, c, alpha, names)


def reduce_mod_p(A: HomPreLieAlgebra, field) -> HomPreLieAlgebra:
    """Image of a rational algebra over a prime field (denominators must be units)."""
    alpha = Matrix(field, [[field(x) for x in r] for r in A.alpha.rows], A.dim)
    return HomPreLieAlgebra(field, A.dim, A.c, alpha, A.names)


def format_vector(A: HomPreLieAlgebra, v) -> str:
    """Linear combination of basis labels, e.g. ``a1 - 1/2*a3``; ``0`` for zero."""
    return format_combination(A.field, A.names, v)


def format_combination(field, names, v) -> str:
    terms = []
    for name, x in zip(names, v):
        if not x:
            continue
        s = field.format(x)
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        body = name if mag == "1" else f"{mag}*{name}"
        if not terms:
            terms.append(("-" if neg else "") + body)
        else:
            terms.append(("- " if neg else "+ ") + body)
    return " ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------


def _action_left(field, lam, x, m, m_dim):
    """``x . m`` with ``lam[i][a][b]`` the coefficient of f_b in e_i . f_a."""
    out = [field.zero] * m_dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for a, ma in enumerate(m):
            if not ma:
                continue
            s = xi * ma
            for b, coeff in enumerate(lam[i][a]):
                if coeff:
                    out[b] = out[b] + s * coeff
    return tuple(out)


def _action_right(field, rho, m, x, m_dim):
    """``m . x`` with ``rho[a][i][b]`` the coefficient of f_b in f_a . e_i."""
    out = [field.zero] * m_dim
    for a, ma in enumerate(m):
        if not ma:
            continue
        for i, xi in enumerate(x):
            if not xi:
                continue
            s = ma * xi
            for b, coeff in enumerate(rho[a][i]):
                if coeff:
                    out[b] = out[b] + s * coeff
    return tuple(out)


def coerce_tensor(field, t, shape, what="tensor") -> tuple:
    a, b, c = shape
    try:
        out = tuple(tuple(tuple(field(x) for x in t[i][j]) for j in range(b)) for i in range(a))
        ok = len(t) == a and all(len(t[i]) == b and all(len(t[i][j]) == c for j in range(b))
                                 for i in range(a))
    except (IndexError, TypeError):
        ok = False
    if not ok:
        raise MalformedInput(f"{what} must have shape {a}x{b}x{c}")
    return out


def derivation_space(A: HomPreLieAlgebra, m_dim: int, lam, rho, alpha_M: Matrix) -> Subspace:
    """All linear ``d : A -> M`` with ``d(xy) = a(x).d(y) + d(x).a(y)`` and ``d a = a_M d``.

    ``d`` is flattened row-major (``d[r][c]`` at ``r * A.dim + c``).
    """
    f = A.field
    n = A.dim
    lam = coerce_tensor(f, lam, (n, m_dim, m_dim), "left action")
    rho = coerce_tensor(f, rho, (m_dim, n, m_dim), "right action")
    if alpha_M.shape != (m_dim, m_dim):
        raise MalformedInput("alpha_M has the wrong shape")
    twists = [A.alpha.col(i) for i in range(n)]

    def conditions(d: Matrix) -> tuple:
        out = []
        cols = d.columns()
        for i, j in itertools.product(range(n), repeat=2):
            lhs = d.apply(A.c[i][j])
            r1 = _action_left(f, lam, twists[i], cols[j], m_dim)
            r2 = _action_right(f, rho, cols[i], twists[j], m_dim)
            out.extend(vsub(lhs, vadd(r1, r2)))
        out.extend(x for row in ((d @ A.alpha) - (alpha_M @ d)).rows for x in row)
        return tuple(out)

    columns = []
    for r in range(m_dim):
        for cidx in range(n):
            rows = [[f.zero] * n for _ in range(m_dim)]
            rows[r][cidx] = f.one
            columns.append(conditions(Matrix(f, rows, n)))
    if not columns:
        return Subspace.zero(f, 0)
    system = Matrix.from_columns(f, columns, len(columns[0]))
    return kernel_image(system)[0]


__all__ = [
    "AxiomReport",
    "DerivedSubspaces",
    "HomPreLieAlgebra",
    "Morphism",
    "MorphismReport",
    "QuotientAlgebra",
    "Subalgebra",
    "annihilator",
    "check_axioms",
    "check_morphism",
    "derivation_space",
    "derived_subspaces",
    "direct_product",
    "format_vector",
    "ideal_witness",
    "is_hom_ideal",
    "multiply",
    "quotient_algebra",
    "reduce_mod_p",
    "require_valid",
    "subalgebra",
]
