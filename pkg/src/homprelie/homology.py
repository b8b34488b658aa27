"""Hom-co-representations, the complex ``M (x) L^(x)n`` for n <= 3, and HL_0..HL_2."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import (
    HomPreLieAlgebra,
    _action_left,
    _action_right,
    coerce_tensor,
    derived_subspaces,
    multiply,
)
from .errors import InvariantViolation, MalformedInput, PreconditionFailed
from .exactlin import (
    Matrix,
    QuotientSpace,
    Subspace,
    is_zero_vector,
    kernel_image,
    kron,
    quotient_space,
    unit_vector,
    vadd,
    vsub,
)


@dataclass(frozen=True, eq=False)
class HomCoRepresentation:
    """Carrier ``M`` of dimension ``m_dim`` with actions of ``base``.

    ``lam[i][a][b]``: coefficient of f_b in ``e_i . f_a``;
    ``rho[a][i][b]``: coefficient of f_b in ``f_a . e_i``.
    """

    base: HomPreLieAlgebra
    m_dim: int
    lam: tuple
    rho: tuple
    alpha_M: Matrix
    kind: str = dc_field(default="custom")

    def __post_init__(self):
        n, f = self.base.dim, self.base.field
        object.__setattr__(self, "lam", coerce_tensor(f, self.lam, (n, self.m_dim, self.m_dim),
                                                      "left action"))
        object.__setattr__(self, "rho", coerce_tensor(f, self.rho, (self.m_dim, n, self.m_dim),
                                                      "right action"))
        if self.alpha_M.shape != (self.m_dim, self.m_dim):
            raise MalformedInput(f"alpha_M must be {self.m_dim}x{self.m_dim}")

    @property
    def field(self):
        return self.base.field

    def left(self, x, m) -> tuple:
        return _action_left(self.field, self.lam, x, m, self.m_dim)

    def right(self, m, x) -> tuple:
        return _action_right(self.field, self.rho, m, x, self.m_dim)

    def is_trivial(self) -> bool:
        return all(not v for t in (self.lam, self.rho) for a in t for b in a for v in b)


def trivial_corep(A: HomPreLieAlgebra, m_dim: int = 1) -> HomCoRepresentation:
    """Zero actions on K^m_dim with identity twist."""
    z = A.field.zero
    lam = [[[z] * m_dim for _ in range(m_dim)] for _ in range(A.dim)]
    rho = [[[z] * m_dim for _ in range(A.dim)] for _ in range(m_dim)]
    return HomCoRepresentation(A, m_dim, lam, rho, Matrix.identity(A.field, m_dim), "trivial")


def self_corep(A: HomPreLieAlgebra) -> HomCoRepresentation:
    """``x . m = m x`` and ``m . x = m x`` on the underlying space of ``A``."""
    n = A.dim
    lam = [[A.c[a][i] for a in range(n)] for i in range(n)]
    rho = [[A.c[a][i] for i in range(n)] for a in range(n)]
    return HomCoRepresentation(A, n, lam, rho, A.alpha, "self")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorepReport:
    valid: bool
    failed_axiom: str | None = None
    witness: dict | None = None


def check_corepresentation(c: HomCoRepresentation) -> CorepReport:
    """Check identities (a)-(e) on basis elements; report the first failure.

    (a) a_M(m).(xy) = (m.x).a(y)      (b) (xy).a_M(m) = a(x).(y.m)
    (c) a(x).(m.y) = (x.m).a(y)       (d) a_M(x.m) = a(x).a_M(m)
    (e) a_M(m.x) = a_M(m).a(x)
    """
    A = c.base
    f = A.field
    xs = [A.basis(i) for i in range(A.dim)]
    ms = [unit_vector(f, c.m_dim, a) for a in range(c.m_dim)]
    ax = [A.twist(x) for x in xs]
    am = [c.alpha_M.apply(m) for m in ms]

    def fail(axiom, residual, **idx):
        return CorepReport(False, axiom, {**idx, "residual": residual})

    for a, m in enumerate(ms):
        for i, j in itertools.product(range(A.dim), repeat=2):
            xy = multiply(A, xs[i], xs[j])
            r = vsub(c.right(am[a], xy), c.right(c.right(m, xs[i]), ax[j]))
            if not is_zero_vector(r):
                return fail("a", r, m=a, x=i, y=j)
            r = vsub(c.left(xy, am[a]), c.left(ax[i], c.left(xs[j], m)))
            if not is_zero_vector(r):
                return fail("b", r, x=i, y=j, m=a)
            r = vsub(c.left(ax[i], c.right(m, xs[j])), c.right(c.left(xs[i], m), ax[j]))
            if not is_zero_vector(r):
                return fail("c", r, x=i, m=a, y=j)
        for i in range(A.dim):
            r = vsub(c.alpha_M.apply(c.left(xs[i], m)), c.left(ax[i], am[a]))
            if not is_zero_vector(r):
                return fail("d", r, x=i, m=a)
            r = vsub(c.alpha_M.apply(c.right(m, xs[i])), c.right(am[a], ax[i]))
            if not is_zero_vector(r):
                return fail("e", r, m=a, x=i)
    return CorepReport(True)


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------


def chain_dim(c: HomCoRepresentation, n: int) -> int:
    """``dim CL_n = dim M * (dim L)^n``; ``CL_{-1} = 0``."""
    return 0 if n < 0 else c.m_dim * c.base.dim ** n


def _d1(c, m, x):
    return vsub(c.right(m, x), c.left(x, m))


def _d2(c, m, x1, x2):
    A = c.base
    t1 = kron(c.right(m, x1), A.twist(x2))
    t2 = kron(c.left(x2, m), A.twist(x1))
    t3 = kron(c.alpha_M.apply(m), multiply(A, x1, x2))
    return vsub(vadd(t1, t2), t3)


def _d3(c, m, x1, x2, x3):
    A = c.base
    a = A.twist
    mul = lambda u, v: multiply(A, u, v)  # noqa: E731
    am = c.alpha_M.apply(m)
    plus = [
        kron(am, a(x1), mul(x2, x3)),
        kron(am, mul(x2, x1), a(x3)),
        kron(c.right(m, x1), a(x2), a(x3)),
        kron(c.left(x3, m), a(x2), a(x1)),
    ]
    minus = [
        kron(am, mul(x1, x2), a(x3)),
        kron(am, a(x2), mul(x1, x3)),
        kron(c.left(x3, m), a(x1), a(x2)),
        kron(c.right(m, x2), a(x1), a(x3)),
    ]
    out = plus[0]
    for t in plus[1:]:
        out = vadd(out, t)
    for t in minus:
        out = vsub(out, t)
    return out


def differential(c: HomCoRepresentation, n: int) -> Matrix:
    """Matrix of ``d_n : M (x) L^(x)n -> M (x) L^(x)(n-1)`` in left-major tensor order."""
    if n not in (0, 1, 2, 3):
        raise MalformedInput(f"differentials exist only for n = 0..3, got {n}")
    A = c.base
    f = A.field
    rows = chain_dim(c, n - 1)
    if n == 0:
        return Matrix.zeros(f, 0, c.m_dim)
    fn = {1: _d1, 2: _d2, 3: _d3}[n]
    xs = [A.basis(i) for i in range(A.dim)]
    ms = [unit_vector(f, c.m_dim, a) for a in range(c.m_dim)]
    cols = [fn(c, ms[a], *(xs[i] for i in idx))
            for a in range(c.m_dim)
            for idx in itertools.product(range(A.dim), repeat=n)]
    return Matrix.from_columns(f, cols, rows)


@dataclass(frozen=True, eq=False)
class ChainComplex:
    corep: HomCoRepresentation
    d: tuple  # d[0] .. d[3]

    def dd_residuals(self) -> dict[int, Matrix]:
        """``d_{n-1} d_n`` for n = 2, 3."""
        return {n: self.d[n - 1] @ self.d[n] for n in (2, 3)}

    def is_complex(self) -> bool:
        return all(m.is_zero() for m in self.dd_residuals().values())


def chain_complex(c: HomCoRepresentation) -> ChainComplex:
    return ChainComplex(c, tuple(differential(c, n) for n in range(4)))


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyResult:
    """``ker d_n / im d_{n+1}``.

    ``quotient`` works in coordinates relative to the echelon basis of
    ``cycles``; ``representatives`` are ambient vectors in ``CL_n``.
    """

    degree: int
    dimension: int
    representatives: tuple
    cycles: Subspace
    boundaries: Subspace
    quotient: QuotientSpace


def subquotient(Z: Subspace, B: Subspace) -> tuple[QuotientSpace, tuple]:
    """``Z / B`` for ``B`` inside ``Z``; returns the quotient and ambient representatives."""
    coords = []
    for b in B.basis:
        cb = Z.coordinates(b)
        if cb is None:
            raise InvariantViolation("boundary not contained in cycles")
        coords.append(cb)
    Bz = Subspace.span(Z.field, Z.dim, coords)
    Q = quotient_space(Z.dim, Bz)
    embed = Z.embedding()
    reps = tuple(embed.apply(col) for col in Q.lift.columns())
    return Q, reps


def homology(c: HomCoRepresentation, n: int, *, validate: bool = True,
             complex_: ChainComplex | None = None) -> HomologyResult:
    if n not in (0, 1, 2):
        raise MalformedInput("homology is defined here for degrees 0, 1, 2 only")
    if validate:
        rep = check_corepresentation(c)
        if not rep.valid:
            raise PreconditionFailed(f"not a Hom-co-representation (axiom {rep.failed_axiom})",
                                     witness=rep.witness)
    cx = complex_ or chain_complex(c)
    if n >= 1 and not (cx.d[n] @ cx.d[n + 1]).is_zero():
        raise InvariantViolation(f"d_{n} d_{n + 1} != 0 for a validated co-representation")
    Z = kernel_image(cx.d[n])[0] if n else Subspace.full(c.field, c.m_dim)
    B = kernel_image(cx.d[n + 1])[1]
    Q, reps = subquotient(Z, B)
    return HomologyResult(n, Q.quotient_dim, reps, Z, B, Q)


def hl0_closed_form(c: HomCoRepresentation) -> int:
    """``dim M / M_L`` with ``M_L`` spanned by ``m.l - l.m``."""
    A = c.base
    f = A.field
    gens = [vsub(c.right(unit_vector(f, c.m_dim, a), A.basis(i)),
                 c.left(A.basis(i), unit_vector(f, c.m_dim, a)))
            for a in range(c.m_dim) for i in range(A.dim)]
    return c.m_dim - Subspace.span(f, c.m_dim, gens).dim


def hl1_closed_form_trivial(c: HomCoRepresentation) -> int:
    """``dim (M (x) L) / (a_M(M) (x) LL)`` for trivial actions."""
    if not c.is_trivial():
        raise PreconditionFailed("closed form for HL_1 requires trivial actions")
    ll = derived_subspaces(c.base).LL.dim
    return c.m_dim * c.base.dim - c.alpha_M.rank() * ll


# ---------------------------------------------------------------------------
# comparison of CL(L, L) shifted against CL(L, K)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainIsoReport:
    commutes: bool
    residuals: dict
    dims_LL: tuple
    dims_K: tuple
    dims_match: tuple
    self_valid: bool
    trivial_valid: bool


def chain_iso_check(A: HomPreLieAlgebra) -> ChainIsoReport:
    """Compare ``-Id : CL_n(L, L) -> CL_{n+1}(L, K)`` with the differentials.

    ``residuals[n]`` is ``d^K_{n+1} f_n - f_{n-1} d^L_n`` for n = 0, 1 with
    ``f = -Id`` under ``K (x) L^(x)(n+1) = L^(x)(n+1)``.  The report states
    what holds; it asserts nothing about the two homologies being equal.
    """
    S = self_corep(A)
    T = trivial_corep(A)
    sv = check_corepresentation(S)
    tv = check_corepresentation(T)
    if not sv.valid:
        raise PreconditionFailed(f"self co-representation fails axiom {sv.failed_axiom}",
                                 witness=sv.witness)
    if not tv.valid:
        raise PreconditionFailed("trivial co-representation fails", witness=tv.witness)
    cs, ct = chain_complex(S), chain_complex(T)
    f = A.field

    def minus_id(n):
        # CL_n(L, L) -> CL_{n+1}(L, K); CL_{-1} = 0 -> CL_0(L, K) = K
        if n < 0:
            return Matrix.zeros(f, chain_dim(T, n + 1), 0)
        return -Matrix.identity(f, chain_dim(S, n))

    residuals = {}
    for n in (0, 1):
        lhs = ct.d[n + 1] @ minus_id(n)
        rhs = minus_id(n - 1) @ cs.d[n]
        residuals[n] = lhs - rhs
    dims_LL = tuple(homology(S, n, validate=False, complex_=cs).dimension for n in (0, 1))
    dims_K = tuple(homology(T, n, validate=False, complex_=ct).dimension for n in (1, 2))
    return ChainIsoReport(
        commutes=all(r.is_zero() for r in residuals.values()),
        residuals=residuals,
        dims_LL=dims_LL,
        dims_K=dims_K,
        dims_match=tuple(a == b for a, b in zip(dims_LL, dims_K)),
        self_valid=sv.valid,
        trivial_valid=tv.valid,
    )


__all__ = [
    "ChainComplex",
    "ChainIsoReport",
    "CorepReport",
    "HomCoRepresentation",
    "HomologyResult",
    "chain_complex",
    "chain_dim",
    "chain_iso_check",
    "check_corepresentation",
    "differential",
    "hl0_closed_form",
    "hl1_closed_form_trivial",
    "homology",
    "self_corep",
    "subquotient",
    "trivial_corep",
]
