"""The small algebras and maps used throughout the tests and the CLI.

Basis indices are 0-based; labels keep the conventional 1-based names.
All twists are given as matrices over Q.
"""

from __future__ import annotations

from .algebra import HomPreLieAlgebra, Morphism
from .exactlin import QQ, Matrix


def L2(field=QQ) -> HomPreLieAlgebra:
    """b2 b1 = b2, b2 b2 = b1, zero twist."""
    return HomPreLieAlgebra.from_products(
        field, 2, {(1, 0): {1: 1}, (1, 1): {0: 1}}, names=("b1", "b2"))


def K3(field=QQ) -> HomPreLieAlgebra:
    """a2 a2 = a1, a3 a2 = a3, a3 a3 = a2, zero twist."""
    return HomPreLieAlgebra.from_products(
        field, 3, {(1, 1): {0: 1}, (2, 1): {2: 1}, (2, 2): {1: 1}}, names=("a1", "a2", "a3"))


def F4(field=QQ) -> HomPreLieAlgebra:
    """e2 e3 = e1, e3 e3 = e2, e4 e3 = e4, e4 e4 = e3, zero twist."""
    return HomPreLieAlgebra.from_products(
        field, 4,
        {(1, 2): {0: 1}, (2, 2): {1: 1}, (3, 2): {3: 1}, (3, 3): {2: 1}},
        names=("e1", "e2", "e3", "e4"))


def P3(field=QQ) -> HomPreLieAlgebra:
    """Antisymmetric cross-product table, zero twist: perfect, not alpha-perfect."""
    return HomPreLieAlgebra.from_products(
        field, 3,
        {
            (0, 1): {2: 1}, (1, 0): {2: -1},
            (0, 2): {1: 1}, (2, 0): {1: -1},
            (1, 2): {0: 1}, (2, 1): {0: -1},
        },
        names=("a1", "a2", "a3"))


def S2(field=QQ) -> HomPreLieAlgebra:
    """a1 a1 = a1 with twist diag(1, 2): surjective twist, not alpha-perfect."""
    return HomPreLieAlgebra.from_products(
        field, 2, {(0, 0): {0: 1}}, alpha=[[1, 0], [0, 2]], names=("a1", "a2"))


def U1(field=QQ) -> HomPreLieAlgebra:
    """a a = a with identity twist; alpha-perfect."""
    return HomPreLieAlgebra.from_products(field, 1, {(0, 0): {0: 1}}, alpha=[[1]], names=("a",))


ALGEBRAS = {"L2": L2, "K3": K3, "F4": F4, "P3": P3, "S2": S2, "U1": U1}


def pi_map(field=QQ) -> Morphism:
    """K3 -> L2: a1 -> 0, a2 -> b1, a3 -> b2."""
    return Morphism(K3(field), L2(field), Matrix(field, [[0, 1, 0], [0, 0, 1]]))


def rho_map(field=QQ) -> Morphism:
    """F4 -> K3: e1 -> 0, e2 -> a1, e3 -> a2, e4 -> a3."""
    return Morphism(F4(field), K3(field),
                    Matrix(field, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
