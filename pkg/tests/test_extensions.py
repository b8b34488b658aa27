import pytest

from homprelie.algebra import (
    HomPreLieAlgebra,
    Morphism,
    annihilator,
    check_axioms,
    check_morphism,
    format_vector,
    quotient_algebra,
    reduce_mod_p,
)
from homprelie.errors import MalformedInput, PreconditionFailed
from homprelie.exactlin import GF, QQ, Matrix, Subspace, inverse, kernel_image
from homprelie.extensions import (
    Extension,
    alternate_section,
    classify_extension,
    compose_extensions,
    extension_from_surjection,
    ideal_I,
    pullback,
    section,
    split_extension,
    uce,
    uce_alpha,
    universal_alpha_morphism,
    universal_morphism,
    verify_splitting,
)
from homprelie.fixtures import ALGEBRAS, F4, K3, L2, P3, S2, U1, pi_map, rho_map
from homprelie.homology import homology, trivial_corep
from homprelie.search import SearchSpec, iter_algebras, search_splitting

from conftest import raw
from oracles import trivial_hl2_dim, uce_kernel_dim


def ext_pi():
    return classify_extension(extension_from_surjection(pi_map()))


def ext_rho():
    return classify_extension(extension_from_surjection(rho_map()))


def identity_extension(L):
    return classify_extension(extension_from_surjection(Morphism.identity(L)))


def labels(A, S):
    return [format_vector(A, v) for v in S.basis]


# ---------------------------------------------------------------- classification


def test_counterexample_extensions():
    e = ext_pi()
    assert e.exact and e.central and e.alpha_central
    assert labels(e.total, Subspace.span(QQ, 3, e.inj.f.columns())) == ["a1"]
    r = ext_rho()
    assert r.exact and r.central
    c = compose_extensions(e, r)
    assert c.exact and not c.central and c.alpha_central
    assert labels(c.total, Subspace.span(QQ, 4, c.inj.f.columns())) == ["e1", "e2"]
    assert labels(F4(), annihilator(F4())) == ["e1"]


def test_non_exact_sequence():
    K, L = K3(), L2()
    zero_sub = HomPreLieAlgebra.zero_algebra(QQ, 0)
    e = classify_extension(Extension(zero_sub, K, L, Morphism(zero_sub, K, Matrix.zeros(QQ, 3, 0)),
                                     pi_map()))
    assert not e.exact


def test_non_morphism_rejected():
    bad = Morphism(K3(), L2(), Matrix(QQ, [[1, 0, 0], [0, 1, 0]]))
    with pytest.raises(PreconditionFailed):
        classify_extension(extension_from_surjection(bad))


def test_central_implies_alpha_central_on_enumerated_quotients():
    seen = 0
    for A in iter_algebras(SearchSpec(dim=2, p=2, alpha="free")):
        Z = annihilator(A)
        try:
            q = quotient_algebra(A, Z)
        except PreconditionFailed:
            continue
        e = classify_extension(extension_from_surjection(q.projection))
        assert e.exact and e.central and e.alpha_central
        seen += 1
    assert seen > 100


def test_compose_with_identity_and_zero():
    e = ext_pi()
    c = compose_extensions(identity_extension(L2()), e)
    assert kernel_image(c.proj.f)[0] == kernel_image(e.proj.f)[0]
    assert c.central == e.central
    Z = HomPreLieAlgebra.zero_algebra(QQ, 0)
    z = compose_extensions(identity_extension(Z), identity_extension(Z))
    assert z.exact and z.central and z.alpha_central
    with pytest.raises(MalformedInput):
        compose_extensions(ext_rho(), e)


# ---------------------------------------------------------------- pullbacks and splittings


def test_pullback_along_identity_recovers_K3():
    pb = pullback(pi_map(), Morphism.identity(L2()))
    assert pb.P.dim == 3
    assert pb.projA.f.rank() == 3
    assert check_morphism(pb.projA).is_morphism and check_morphism(pb.projK).is_morphism
    # the inverse of projA is a morphism too, so P is isomorphic to K3
    assert check_morphism(Morphism(K3(), pb.P, inverse(pb.projA.f))).is_morphism


def test_pullback_trivial_cases():
    L = K3()
    pb = pullback(Morphism.identity(L), Morphism.identity(L))
    assert pb.P.dim == 3 and check_axioms(pb.P).hom_prelie
    Z = HomPreLieAlgebra.zero_algebra(QQ, 0)
    pb = pullback(Morphism(Z, L2(), Matrix.zeros(QQ, 2, 0)), pi_map())
    assert pb.P.dim == 1
    assert Subspace.span(QQ, 3, pb.projK.f.columns()) == kernel_image(pi_map().f)[0]
    with pytest.raises(MalformedInput):
        pullback(pi_map(), rho_map())


def test_split_extension_and_verification():
    e, sigma = split_extension(U1(), L2())
    e = classify_extension(e)
    assert e.exact and verify_splitting(e, sigma)
    assert not verify_splitting(e, Matrix.zeros(QQ, 3, 2))
    with pytest.raises(MalformedInput):
        verify_splitting(e, Matrix.zeros(QQ, 2, 2))


def test_splitting_search_over_F2():
    F = GF(2)
    e, sigma = split_extension(reduce_mod_p(U1(), F), reduce_mod_p(L2(), F))
    found, examined = search_splitting(classify_extension(e))
    assert found == sigma and examined == 10
    K, L = reduce_mod_p(K3(), F), reduce_mod_p(L2(), F)
    e = extension_from_surjection(Morphism(K, L, Matrix(F, [[0, 1, 0], [0, 0, 1]])))
    assert search_splitting(classify_extension(e)) == (None, 64)


def test_splitting_search_preconditions():
    with pytest.raises(PreconditionFailed):
        search_splitting(ext_pi())
    F = GF(2)
    K, L = reduce_mod_p(K3(), F), reduce_mod_p(L2(), F)
    e = Extension(K, K, L, Morphism.identity(K), Morphism(K, L, Matrix.zeros(F, 2, 3)))
    with pytest.raises(PreconditionFailed):
        search_splitting(e)


# ---------------------------------------------------------------- uce


@pytest.mark.parametrize("name", ["L2", "K3", "P3", "U1", "F4"])
def test_uce_kernel_matches_oracles(name):
    L = ALGEBRAS[name]()
    U = uce(L)
    c, a = raw(L)
    assert U.kernel.dim == uce_kernel_dim(c, a) == trivial_hl2_dim(c, a)
    assert all(v for k, v in U.checks.items() if k != "alpha_perfect" and isinstance(v, bool))


def test_uce_of_L2():
    U = uce(L2())
    assert U.algebra.dim == 4 and U.kernel.dim == 2 and U.I_L.dim == 0
    assert U.algebra.names == ("{b1,b1}", "{b1,b2}", "{b2,b1}", "{b2,b2}")
    assert check_morphism(U.u).is_morphism


def test_uce_of_U1_is_an_isomorphism():
    U = uce(U1())
    assert U.algebra.dim == 1 and U.kernel.dim == 0
    assert U.u.f.rank() == 1


def test_uce_of_uce():
    U = uce(L2())
    V = uce(U.algebra)
    hl2 = homology(trivial_corep(U.algebra), 2).dimension
    assert V.kernel.dim == hl2 == 12
    assert homology(trivial_corep(U.algebra), 1).dimension == 0


def test_uce_rejects_non_perfect():
    with pytest.raises(PreconditionFailed) as info:
        uce(S2())
    assert info.value.witness["LL"].dim == 1


def test_I_L_generators_live_in_ker_mu():
    for make in ALGEBRAS.values():
        L = make()
        mu = L.mult_matrix()
        assert all(not any(mu.apply(v)) for v in ideal_I(L).basis)


# ---------------------------------------------------------------- universal morphisms


def test_universal_morphism_to_K3():
    U = uce(L2())
    phi = universal_morphism(U, ext_pi())
    assert phi.f == Matrix(QQ, [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    assert pi_map().f @ phi.f == U.u.f
    assert check_morphism(phi).is_morphism


def test_sections_differ_but_morphism_does_not():
    p = pi_map().f
    s = section(p)
    s2 = alternate_section(p, s)
    assert s != s2
    assert p @ s == p @ s2 == Matrix.identity(QQ, 2)


def test_universal_morphism_to_identity_extension():
    U = uce(L2())
    assert universal_morphism(U, identity_extension(L2())).f == U.u.f


def test_universal_morphism_rejects_non_central():
    U = uce(L2())
    comp = compose_extensions(ext_pi(), ext_rho())
    with pytest.raises(PreconditionFailed):
        universal_morphism(U, comp)


def test_uce_alpha_of_U1():
    U = uce_alpha(U1())
    assert U.algebra.dim == 1 and U.kernel.dim == 0 and U.u.f.rank() == 1
    assert U.checks["alpha_perfect"]
    assert universal_alpha_morphism(U, identity_extension(U1())).f == U.u.f


def _two_dim_target(zx):
    """U1 plus a line <z> with alpha(z) = 0 (zx=False) or an action of a on z (zx=True)."""
    if zx:
        products = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
        alpha = [[1, 0], [0, 1]]
    else:
        products = {(0, 0): {0: 1}}
        alpha = [[1, 0], [0, 0]]
    K = HomPreLieAlgebra.from_products(QQ, 2, products, alpha=alpha, names=("a", "z"))
    assert check_axioms(K).hom_prelie
    return classify_extension(extension_from_surjection(Morphism(K, U1(), Matrix(QQ, [[1, 0]]))))


def test_universal_alpha_morphism_to_constructed_extension():
    U = uce_alpha(U1())
    e = _two_dim_target(False)
    assert e.alpha_central
    Phi = universal_alpha_morphism(U, e)
    assert e.proj.f @ Phi.f == U.u.f
    assert e.total.alpha @ Phi.f == Phi.f @ U.algebra.alpha
    with pytest.raises(PreconditionFailed):
        universal_alpha_morphism(U, _two_dim_target(True))


def test_uce_alpha_rejections():
    with pytest.raises(PreconditionFailed) as info:
        uce_alpha(P3())
    assert info.value.witness["aLaL"].dim == 0
    with pytest.raises(PreconditionFailed) as info:
        uce_alpha(S2())
    w = info.value.witness
    assert w["alpha_surjective"] and labels(S2(), w["aLaL"]) == ["a1"]


def test_variant_mismatch():
    with pytest.raises(MalformedInput):
        universal_morphism(uce_alpha(U1()), identity_extension(U1()))
    with pytest.raises(MalformedInput):
        universal_alpha_morphism(uce(U1()), identity_extension(U1()))
