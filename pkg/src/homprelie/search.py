"""Exhaustive and seeded-random generation of small algebras over F_p.

Candidates are screened with a vectorised numpy check of the identities
(residues as int64); survivors are turned into :class:`HomPreLieAlgebra`
objects.  Tests re-verify every emitted algebra with the exact checker.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .algebra import HomPreLieAlgebra, derived_subspaces
from .errors import MalformedInput, PreconditionFailed
from .exactlin import GF, Matrix, PrimeField
from .extensions import Extension, verify_splitting

DEFAULT_CEILING = 2 ** 24
_BATCH = 1 << 15


@dataclass(frozen=True)
class SearchSpec:
    dim: int
    p: int
    alpha: str = "free"          # zero | identity | free
    require: str = "prelie"      # prelie | novikov
    filter: str = "none"         # perfect | alpha_perfect | none
    mode: str = "exhaustive"     # exhaustive | random
    budget: int = 1000
    seed: int = 0
    mask: tuple | None = None    # allowed nonzero (i, j, k) positions
    ceiling: int = DEFAULT_CEILING

    def __post_init__(self):
        if self.alpha not in ("zero", "identity", "free"):
            raise MalformedInput(f"alpha must be zero|identity|free, got {self.alpha!r}")
        if self.require not in ("prelie", "novikov"):
            raise MalformedInput(f"require must be prelie|novikov, got {self.require!r}")
        if self.filter not in ("perfect", "alpha_perfect", "none"):
            raise MalformedInput(f"filter must be perfect|alpha_perfect|none, got {self.filter!r}")
        if self.mode not in ("exhaustive", "random"):
            raise MalformedInput(f"mode must be exhaustive|random, got {self.mode!r}")
        if self.dim < 0:
            raise MalformedInput("dimension must be non-negative")
        GF(self.p)  # validates primality
        if self.mask is not None:
            mask = tuple(sorted({tuple(m) for m in self.mask}))
            if any(not all(0 <= t < self.dim for t in m) or len(m) != 3 for m in mask):
                raise MalformedInput("mask entries must be (i, j, k) basis triples")
            object.__setattr__(self, "mask", mask)

    @property
    def product_positions(self) -> tuple:
        if self.mask is not None:
            return self.mask
        return tuple(itertools.product(range(self.dim), repeat=3))

    @property
    def n_free(self) -> int:
        return len(self.product_positions) + (self.dim ** 2 if self.alpha == "free" else 0)

    @property
    def space_size(self) -> int:
        return self.p ** self.n_free


@dataclass
class SearchSummary:
    candidates: int = 0
    valid: int = 0
    filtered: int = 0
    labeled_count: bool = True

    def as_dict(self) -> dict:
        return {
            "candidates": self.candidates,
            "valid": self.valid,
            "filtered": self.filtered,
            "labeled_count": self.labeled_count,
        }


def _index_digits(start: int, stop: int, n: int, p: int) -> np.ndarray:
    """Base-p digits (most significant first) of the integers in [start, stop)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n), dtype=np.int64)
    for pos in range(n - 1, -1, -1):
        out[:, pos] = idx % p
        idx //= p
    return out


def _decode(spec: SearchSpec, digits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Candidate rows to product tensors (B, d, d, d) and twists (B, d, d)."""
    d = spec.dim
    B = digits.shape[0]
    c = np.zeros((B, d, d, d), dtype=np.int64)
    pos = spec.product_positions
    for t, (i, j, k) in enumerate(pos):
        c[:, i, j, k] = digits[:, t]
    if spec.alpha == "free":
        alpha = digits[:, len(pos):].reshape(B, d, d)
    elif spec.alpha == "identity":
        alpha = np.broadcast_to(np.eye(d, dtype=np.int64), (B, d, d)).copy()
    else:
        alpha = np.zeros((B, d, d), dtype=np.int64)
    return c, alpha


def identity_mask(c: np.ndarray, alpha: np.ndarray, p: int, require: str) -> np.ndarray:
    """Boolean mask of candidates satisfying the identities modulo ``p``.

    ``alpha[n, a, i]`` is the coefficient of e_a in alpha(e_i).
    """
    # T1[p,q,r] = alpha(e_p)(e_q e_r);  T2[p,q,r] = (e_p e_q) alpha(e_r)
    qr = c
    t1 = np.einsum("nap,nqrb,nabk->npqrk", alpha, qr, c) % p
    t2 = np.einsum("npqb,nar,nbak->npqrk", c, alpha, c) % p
    prelie = (t1 - t2 - t1.transpose(0, 2, 1, 3, 4) + t2.transpose(0, 2, 1, 3, 4)) % p
    ok = ~prelie.reshape(len(c), -1).any(axis=1)
    if require == "novikov":
        nov = (t2 - t2.transpose(0, 1, 3, 2, 4)) % p
        ok &= ~nov.reshape(len(c), -1).any(axis=1)
    return ok


def _to_algebra(field: PrimeField, c_row: np.ndarray, a_row: np.ndarray) -> HomPreLieAlgebra:
    d = c_row.shape[0]
    c = [[[int(x) for x in c_row[i, j]] for j in range(d)] for i in range(d)]
    alpha = Matrix(field, [[int(x) for x in r] for r in a_row], d)
    return HomPreLieAlgebra(field, d, c, alpha)


def _passes_filter(A: HomPreLieAlgebra, which: str) -> bool:
    if which == "none":
        return True
    ds = derived_subspaces(A)
    return ds.perfect if which == "perfect" else ds.alpha_perfect


def iter_algebras(spec: SearchSpec, summary: SearchSummary | None = None
                  ) -> Iterator[HomPreLieAlgebra]:
    """Yield algebras passing the identities and the filter, in candidate order.

    Exhaustive order is lexicographic in (product entries, twist entries),
    first entry most significant.  Random mode draws ``budget`` candidates
    from a generator seeded with ``spec.seed``.
    """
    summary = summary if summary is not None else SearchSummary()
    field = GF(spec.p)
    n = spec.n_free
    if spec.mode == "exhaustive":
        if spec.space_size > spec.ceiling:
            raise PreconditionFailed(
                f"exhaustive space p^{n} = {spec.space_size} exceeds ceiling {spec.ceiling}; "
                "add a sparsity mask or use random mode",
                witness={"space_size": spec.space_size, "ceiling": spec.ceiling})
        batches = ((s, min(s + _BATCH, spec.space_size))
                   for s in range(0, spec.space_size, _BATCH))
        make = lambda s, t: _index_digits(s, t, n, spec.p)  # noqa: E731
    else:
        rng = np.random.default_rng(spec.seed)
        batches = ((s, min(s + _BATCH, spec.budget)) for s in range(0, spec.budget, _BATCH))
        make = lambda s, t: rng.integers(0, spec.p, size=(t - s, n), dtype=np.int64)  # noqa: E731
    for start, stop in batches:
        digits = make(start, stop)
        c, alpha = _decode(spec, digits)
        ok = identity_mask(c, alpha, spec.p, spec.require)
        summary.candidates += stop - start
        for b in np.flatnonzero(ok):
            summary.valid += 1
            A = _to_algebra(field, c[b], alpha[b])
            if _passes_filter(A, spec.filter):
                summary.filtered += 1
                yield A


def enumerate_algebras(spec: SearchSpec) -> tuple[list[HomPreLieAlgebra], SearchSummary]:
    summary = SearchSummary()
    algebras = list(iter_algebras(spec, summary))
    return algebras, summary


def search_splitting(e: Extension, ceiling: int = DEFAULT_CEILING):
    """First section (lexicographic in row-major entries) that is a morphism, else None.

    Returns ``(sigma or None, candidates_examined)``.
    """
    field = e.total.field
    if not isinstance(field, PrimeField):
        raise PreconditionFailed("splitting search runs over prime fields only")
    if e.proj.f.rank() != e.quot.dim:
        raise PreconditionFailed("projection is not surjective")
    rows, cols = e.total.dim, e.quot.dim
    size = field.p ** (rows * cols)
    if size > ceiling:
        raise PreconditionFailed(f"search space {size} exceeds ceiling {ceiling}",
                                 witness={"space_size": size})
    examined = 0
    for entries in itertools.product(range(field.p), repeat=rows * cols):
        examined += 1
        sigma = Matrix(field, [entries[r * cols:(r + 1) * cols] for r in range(rows)], cols)
        if verify_splitting(e, sigma):
            return sigma, examined
    return None, examined


__all__ = [
    "DEFAULT_CEILING",
    "SearchSpec",
    "SearchSummary",
    "enumerate_algebras",
    "identity_mask",
    "iter_algebras",
    "search_splitting",
]
