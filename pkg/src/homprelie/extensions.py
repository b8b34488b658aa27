"""Short exact sequences, centrality, and universal (alpha-)central extensions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field, replace

from .algebra import (
    HomPreLieAlgebra,
    Morphism,
    annihilator,
    check_axioms,
    check_morphism,
    derived_subspaces,
    direct_product,
    multiply,
    require_valid,
    subalgebra,
)
from .errors import InvariantViolation, MalformedInput, PreconditionFailed
from .exactlin import (
    Matrix,
    QuotientSpace,
    Subspace,
    inverse,
    is_zero_vector,
    kernel_image,
    kron,
    quotient_space,
    solve,
    unit_vector,
    vadd,
    vsub,
)
from .homology import homology, trivial_corep


@dataclass(frozen=True, eq=False)
class Extension:
    """``0 -> sub -> total -> quot -> 0``; flags are None until classified."""

    sub: HomPreLieAlgebra
    total: HomPreLieAlgebra
    quot: HomPreLieAlgebra
    inj: Morphism
    proj: Morphism
    exact: bool | None = None
    central: bool | None = None
    alpha_central: bool | None = None

    @property
    def classified(self) -> bool:
        return self.exact is not None


def extension_from_surjection(proj: Morphism) -> Extension:
    """Kernel of ``proj`` as a subalgebra, with its inclusion."""
    ker = kernel_image(proj.f)[0]
    sub = subalgebra(proj.source, ker)
    return Extension(sub.algebra, proj.source, proj.target, sub.inclusion, proj)


def classify_extension(e: Extension) -> Extension:
    for name, m in (("inj", e.inj), ("proj", e.proj)):
        rep = check_morphism(m)
        if not rep.is_morphism:
            raise PreconditionFailed(f"{name} is not a morphism", witness=rep.witnesses)
    if not (e.inj.source.same_structure(e.sub) and e.inj.target.same_structure(e.total)
            and e.proj.source.same_structure(e.total) and e.proj.target.same_structure(e.quot)):
        raise MalformedInput("maps do not connect sub -> total -> quot")
    f = e.total.field
    inj_ker, inj_im = kernel_image(e.inj.f)
    proj_ker, proj_im = kernel_image(e.proj.f)
    exact = inj_ker.dim == 0 and proj_im.is_full() and inj_im == proj_ker
    Z = annihilator(e.total)
    central = Z.contains_subspace(inj_im)
    alpha_sub_image = Subspace.span(f, e.total.dim,
                                    [e.inj.f.apply(e.sub.alpha.col(i)) for i in range(e.sub.dim)])
    alpha_central = Z.contains_subspace(alpha_sub_image)
    if central and not alpha_central:
        raise InvariantViolation("central extension that is not alpha-central")
    if proj_im.is_full() and derived_subspaces(e.total).perfect \
            and not derived_subspaces(e.quot).perfect:
        raise InvariantViolation("surjective image of a perfect algebra is not perfect")
    return replace(e, exact=exact, central=central, alpha_central=alpha_central)


def compose_extensions(outer: Extension, inner: Extension) -> Extension:
    """``0 -> ker(pi rho) -> F -> L -> 0`` from ``outer: K -> L`` and ``inner: F -> K``."""
    if not inner.quot.same_structure(outer.total):
        raise MalformedInput("inner extension does not end where the outer one starts")
    outer = outer if outer.classified else classify_extension(outer)
    inner = inner if inner.classified else classify_extension(inner)
    composed = Morphism(inner.total, outer.quot, outer.proj.f @ inner.proj.f)
    e = classify_extension(extension_from_surjection(composed))
    if outer.central and inner.central and derived_subspaces(outer.total).perfect \
            and not e.alpha_central:
        raise InvariantViolation("composite of central extensions over a perfect middle "
                                 "algebra is not alpha-central")
    return e


@dataclass(frozen=True)
class Pullback:
    P: HomPreLieAlgebra
    projA: Morphism
    projK: Morphism
    subspace: Subspace


def pullback(tau: Morphism, pi: Morphism) -> Pullback:
    """``{(a, k) : tau(a) = pi(k)}`` inside ``A x K``."""
    if not tau.target.same_structure(pi.target):
        raise MalformedInput("pullback needs a common codomain")
    A, K = tau.source, pi.source
    f = A.field
    AK = direct_product(A, K)
    constraint = tau.f.hstack(-pi.f)
    space = kernel_image(constraint)[0]
    sub = subalgebra(AK, space)
    P = sub.algebra
    emb = sub.inclusion.f
    sel_A = Matrix.identity(f, A.dim).hstack(Matrix.zeros(f, A.dim, K.dim))
    sel_K = Matrix.zeros(f, K.dim, A.dim).hstack(Matrix.identity(f, K.dim))
    projA = Morphism(P, A, sel_A @ emb)
    projK = Morphism(P, K, sel_K @ emb)
    if check_axioms(A).hom_prelie and check_axioms(K).hom_prelie:
        if not check_axioms(P).hom_prelie:
            raise InvariantViolation("pullback of Hom-preLie algebras fails the identity")
    if kernel_image(projK.f)[0].dim != kernel_image(tau.f)[0].dim:
        raise InvariantViolation("kernel of the pullback projection differs from ker tau")
    return Pullback(P, projA, projK, space)


def verify_splitting(e: Extension, sigma: Matrix) -> bool:
    if sigma.shape != (e.total.dim, e.quot.dim):
        raise MalformedInput(f"section must be {e.total.dim}x{e.quot.dim}")
    if e.proj.f @ sigma != Matrix.identity(e.total.field, e.quot.dim):
        return False
    return check_morphism(Morphism(e.quot, e.total, sigma)).is_morphism


def split_extension(M: HomPreLieAlgebra, L: HomPreLieAlgebra) -> tuple[Extension, Matrix]:
    """``0 -> M -> M x L -> L -> 0`` and its canonical section."""
    f = L.field
    T = direct_product(M, L)
    inj = Matrix.identity(f, M.dim).vstack(Matrix.zeros(f, L.dim, M.dim))
    proj = Matrix.zeros(f, L.dim, M.dim).hstack(Matrix.identity(f, L.dim))
    sigma = Matrix.zeros(f, M.dim, L.dim).vstack(Matrix.identity(f, L.dim))
    e = Extension(M, T, L, Morphism(M, T, inj), Morphism(T, L, proj))
    return e, sigma


# ---------------------------------------------------------------------------
# universal constructions
# ---------------------------------------------------------------------------


def _ideal_generator(L: HomPreLieAlgebra, x1, x2, x3) -> tuple:
    a = L.twist
    mul = lambda u, v: multiply(L, u, v)  # noqa: E731
    out = kron(a(x1), mul(x2, x3))
    out = vsub(out, kron(mul(x1, x2), a(x3)))
    out = vsub(out, kron(a(x2), mul(x1, x3)))
    return vadd(out, kron(mul(x2, x1), a(x3)))


def ideal_generators(L: HomPreLieAlgebra) -> list[tuple]:
    """Spanning set of I_L inside ``L (x) L``, one element per basis triple."""
    e = [L.basis(i) for i in range(L.dim)]
    return [_ideal_generator(L, e[i], e[j], e[k])
            for i, j, k in itertools.product(range(L.dim), repeat=3)]


def ideal_I(L: HomPreLieAlgebra) -> Subspace:
    return Subspace.span(L.field, L.dim ** 2, ideal_generators(L))


@dataclass(frozen=True, eq=False)
class UceResult:
    """Quotient ``C / I_L`` with ``C = L (x) L`` (plain) or ``a(L) (x) a(L)`` (alpha).

    Quotient coordinates are relative to the echelon basis of ``carrier``;
    ``embed`` maps them back to representatives in ``L (x) L``.
    """

    base: HomPreLieAlgebra
    algebra: HomPreLieAlgebra
    u: Morphism
    I_L: Subspace
    kernel: Subspace
    variant: str
    carrier: Subspace
    quotient: QuotientSpace
    embed: Matrix
    checks: dict = dc_field(default_factory=dict)

    def representative(self, t: int) -> tuple:
        return self.embed.col(t)

    def lift_tensor(self, v) -> tuple:
        """Quotient coordinates of the class of ``v`` (a vector of ``carrier``)."""
        coords = self.carrier.coordinates(v)
        if coords is None:
            raise MalformedInput("tensor outside the carrier")
        return self.quotient.project.apply(coords)


def _tensor_labels(L: HomPreLieAlgebra, Q: QuotientSpace, carrier: Subspace) -> tuple:
    from .algebra import format_combination
    names2 = [f"{{{a},{b}}}" for a in L.names for b in L.names]
    embed = carrier.embedding()
    return tuple(format_combination(L.field, names2, embed.apply(col)) for col in Q.lift.columns())


def _build_uce(L: HomPreLieAlgebra, carrier: Subspace, variant: str) -> UceResult:
    f = L.field
    n2 = L.dim ** 2
    checks: dict[str, bool] = {}
    mu = L.mult_matrix()
    gens = ideal_generators(L)
    I_L = Subspace.span(f, n2, gens)

    checks["mu_I_L_zero"] = all(is_zero_vector(mu.apply(b)) for b in I_L.basis)
    if not checks["mu_I_L_zero"]:
        raise InvariantViolation("mu does not vanish on I_L; the bracket is not well defined")
    if not carrier.contains_subspace(I_L):
        raise InvariantViolation("I_L is not contained in the carrier")
    aa = L.alpha.kron(L.alpha)
    checks["alpha_I_L_invariant"] = I_L.contains_subspace(I_L.image(aa))
    if not checks["alpha_I_L_invariant"]:
        raise InvariantViolation("(alpha (x) alpha)(I_L) is not inside I_L; induced twist undefined")
    if not carrier.contains_subspace(carrier.image(aa)):
        raise InvariantViolation("carrier not invariant under alpha (x) alpha")

    coord = carrier.coordinate_map()
    cembed = carrier.embedding()
    I_c = Subspace.span(f, carrier.dim, [carrier.coordinates(b) for b in I_L.basis])
    Q = quotient_space(carrier.dim, I_c)
    embed = cembed @ Q.lift  # quotient coords -> L (x) L
    reps = embed.columns()

    def cls(v):
        coords = carrier.coordinates(v)
        if coords is None:
            raise InvariantViolation("product representative fell outside the carrier")
        return Q.project.apply(coords)

    images = [mu.apply(r) for r in reps]
    c = [[cls(kron(x, y)) for y in images] for x in images]
    alpha = Q.project @ coord @ aa @ embed
    names = _tensor_labels(L, Q, carrier)
    U = HomPreLieAlgebra(f, Q.quotient_dim, c, alpha, names)
    u = Morphism(U, L, mu @ embed)

    checks["identity_1"] = all(is_zero_vector(cls(g)) for g in gens)
    if not checks["identity_1"]:
        raise InvariantViolation("a generator of I_L survives in the quotient")
    ker = kernel_image(u.f)[0]
    checks["u_surjective"] = u.f.rank() == L.dim
    if not checks["u_surjective"]:
        raise InvariantViolation("u is not surjective on a perfect input")
    Z = annihilator(U)
    checks["kernel_central"] = Z.contains_subspace(ker)
    if not checks["kernel_central"]:
        raise InvariantViolation("ker u is not central")
    checks["u_morphism"] = check_morphism(u).is_morphism
    checks["hom_prelie"] = check_axioms(U).hom_prelie
    ds = derived_subspaces(U)
    checks["perfect"] = ds.perfect
    checks["alpha_perfect"] = ds.alpha_perfect
    return UceResult(L, U, u, I_L, ker, variant, carrier, Q, embed, checks)


def uce(L: HomPreLieAlgebra) -> UceResult:
    """``uce(L) = L (x) L / I_L`` with bracket ``{x1,x2}{y1,y2} = {x1x2, y1y2}``."""
    require_valid(L)
    ds = derived_subspaces(L)
    if not ds.perfect:
        raise PreconditionFailed("algebra is not perfect; no universal central extension",
                                 witness={"LL": ds.LL})
    f = L.field
    U = _build_uce(L, Subspace.full(f, L.dim ** 2), "plain")
    if not U.checks["perfect"]:
        raise InvariantViolation("uce(L) is not perfect")
    hl2 = homology(trivial_corep(L), 2).dimension
    U.checks["kernel_matches_hl2"] = U.kernel.dim == hl2
    U.checks["hl2_dim"] = hl2
    if U.kernel.dim != hl2:
        raise InvariantViolation(f"dim ker u = {U.kernel.dim} but dim HL_2 = {hl2}")
    return U


def uce_alpha(L: HomPreLieAlgebra) -> UceResult:
    """``uce_a(L) = a(L) (x) a(L) / I_L``, for alpha-perfect ``L``."""
    require_valid(L)
    ds = derived_subspaces(L)
    if not ds.alpha_perfect:
        raise PreconditionFailed("algebra is not alpha-perfect",
                                 witness={"aLaL": ds.aLaL, "alpha_surjective": ds.alpha_surjective})
    f = L.field
    images = [L.alpha.col(i) for i in range(L.dim)]
    carrier = Subspace.span(f, L.dim ** 2, [kron(a, b) for a in images for b in images])
    U = _build_uce(L, carrier, "alpha")
    if not U.checks["alpha_perfect"]:
        raise InvariantViolation("uce_alpha(L) is not alpha-perfect")
    return U


# ---------------------------------------------------------------------------
# universal morphisms
# ---------------------------------------------------------------------------


def section(proj: Matrix) -> Matrix:
    """Linear right inverse of a surjection; free variables set to zero."""
    n = proj.nrows
    cols = []
    for j in range(n):
        s = solve(proj, unit_vector(proj.field, n, j))
        if s is None:
            raise PreconditionFailed("projection is not surjective", witness=j)
        cols.append(s)
    return Matrix.from_columns(proj.field, cols, proj.ncols)


def alternate_section(proj: Matrix, s: Matrix) -> Matrix:
    """``s`` shifted by the first kernel vector in every column (``s`` if the kernel is 0)."""
    ker = kernel_image(proj)[0]
    if not ker.dim:
        return s
    k = ker.basis[0]
    return Matrix.from_columns(proj.field, [vadd(col, k) for col in s.columns()], proj.ncols)


def _ensure(e: Extension, U: UceResult) -> Extension:
    e = e if e.classified else classify_extension(e)
    if not e.quot.same_structure(U.base):
        raise MalformedInput("extension is over a different base algebra")
    if not e.exact:
        raise PreconditionFailed("sequence is not exact")
    return e


def _bilinear_on_tensors(K: HomPreLieAlgebra, left: Matrix, right: Matrix, n: int) -> Matrix:
    """Matrix of ``x1 (x) x2 -> left(x1) right(x2)`` on ``L (x) L``."""
    lc, rc = left.columns(), right.columns()
    cols = [multiply(K, lc[i], rc[j]) for i in range(n) for j in range(n)]
    return Matrix.from_columns(K.field, cols, K.dim)


def universal_morphism(U: UceResult, e: Extension) -> Morphism:
    """``phi{x1, x2} = s(x1) s(x2)`` for a linear section ``s`` of ``e.proj``."""
    if U.variant != "plain":
        raise MalformedInput("universal_morphism expects the plain uce")
    e = _ensure(e, U)
    if not e.central:
        raise PreconditionFailed("target extension is not central")
    L, K = U.base, e.total
    s = section(e.proj.f)

    def build(sec):
        full = _bilinear_on_tensors(K, sec, sec, L.dim)
        if not all(is_zero_vector(full.apply(b)) for b in U.I_L.basis):
            raise InvariantViolation("phi does not vanish on I_L")
        return full @ U.embed

    phi = build(s)
    if build(alternate_section(e.proj.f, s)) != phi:
        raise InvariantViolation("phi depends on the chosen section")
    m = Morphism(U.algebra, K, phi)
    if e.proj.f @ phi != U.u.f:
        raise InvariantViolation("pi o phi != u")
    rep = check_morphism(m)
    if not rep.is_morphism:
        raise InvariantViolation(f"phi is not a morphism: {rep.witnesses[:1]}")
    return m


def universal_alpha_morphism(U: UceResult, e: Extension) -> Morphism:
    """``Phi{a(x1), a(x2)} = a_K(s(x1)) a_K(s(x2))``."""
    if U.variant != "alpha":
        raise MalformedInput("universal_alpha_morphism expects uce_alpha")
    e = _ensure(e, U)
    if not e.alpha_central:
        raise PreconditionFailed("target extension is not alpha-central")
    L, K = U.base, e.total
    a_inv = inverse(L.alpha)  # alpha-perfect => alpha bijective
    s = section(e.proj.f)

    def build(sec):
        g = K.alpha @ sec @ a_inv
        full = _bilinear_on_tensors(K, g, g, L.dim)
        if not all(is_zero_vector(full.apply(b)) for b in U.I_L.basis):
            raise InvariantViolation("Phi does not vanish on I_L")
        return full @ U.embed

    Phi = build(s)
    if build(alternate_section(e.proj.f, s)) != Phi:
        raise InvariantViolation("Phi depends on the chosen section")
    m = Morphism(U.algebra, K, Phi)
    rep = check_morphism(m)
    if any(w[0] == "product" for w in rep.witnesses):
        raise InvariantViolation("Phi does not preserve products")
    if K.alpha @ Phi != Phi @ U.algebra.alpha:
        raise InvariantViolation("alpha_K o Phi != Phi o alpha-bar")
    if e.proj.f @ Phi != U.u.f:
        raise InvariantViolation("pi o Phi != U_alpha")
    return m


__all__ = [
    "Extension",
    "Pullback",
    "UceResult",
    "alternate_section",
    "classify_extension",
    "compose_extensions",
    "extension_from_surjection",
    "ideal_I",
    "ideal_generators",
    "pullback",
    "section",
    "split_extension",
    "uce",
    "uce_alpha",
    "universal_alpha_morphism",
    "universal_morphism",
    "verify_splitting",
]
