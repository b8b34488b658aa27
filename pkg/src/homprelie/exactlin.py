"""Exact dense linear algebra over Q and prime fields.

Matrices act on column coordinates: column ``j`` of a matrix is the image of
the ``j``-th basis vector.  Vectors are plain tuples of field elements.
Everything here is immutable once built.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MalformedInput

# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


class Rationals:
    """The field Q; elements are :class:`fractions.Fraction`."""

    name = "Q"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, Residue):
            raise MalformedInput("cannot coerce a prime-field residue into Q")
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, float):
            raise MalformedInput("floating point scalars are not accepted")
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def parse(self, text: str) -> Fraction:
        if not isinstance(text, str) or not _RATIONAL_RE.match(text):
            raise MalformedInput(f"not a rational literal: {text!r}")
        try:
            return Fraction(text.replace(" ", ""))
        except ZeroDivisionError:
            raise MalformedInput(f"zero denominator in {text!r}") from None

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def descriptor(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class Residue:
    """An element of the prime field F_p, stored as an integer in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise MalformedInput(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Residue(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(o, self.p) / self

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p for a prime ``p``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise MalformedInput(f"field characteristic must be prime, got {p!r}")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def __call__(self, value) -> Residue:
        if isinstance(value, Residue):
            if value.p != self.p:
                raise MalformedInput(f"residue mod {value.p} used in F_{self.p}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise MalformedInput(f"{value} has no image in F_{self.p}")
            return Residue(value.numerator, self.p) / value.denominator
        if isinstance(value, bool) or not isinstance(value, int):
            raise MalformedInput(f"cannot coerce {value!r} into F_{self.p}")
        return Residue(value, self.p)

    @property
    def zero(self) -> Residue:
        return Residue(0, self.p)

    @property
    def one(self) -> Residue:
        return Residue(1, self.p)

    def parse(self, text: str) -> Residue:
        if not isinstance(text, str) or not _RATIONAL_RE.match(text):
            raise MalformedInput(f"not a scalar literal: {text!r}")
        return self(Fraction(text.replace(" ", "")))

    def format(self, x) -> str:
        return str(self(x).value)

    def descriptor(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc):
    """``"Q"`` or ``{"Fp": p}`` to a field object."""
    if desc == "Q":
        return QQ
    if isinstance(desc, dict) and set(desc) == {"Fp"}:
        return GF(desc["Fp"])
    raise MalformedInput(f"unknown field descriptor {desc!r}")


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def zero_vector(field, n: int) -> tuple:
    z = field.zero
    return (z,) * n


def unit_vector(field, n: int, i: int) -> tuple:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vadd(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(s, v) -> tuple:
    return tuple(s * a for a in v)


def is_zero_vector(v) -> bool:
    return not any(v)


def kron(*vectors) -> tuple:
    """Tensor product of coordinate vectors in left-major order."""
    out = vectors[0]
    for v in vectors[1:]:
        out = tuple(a * b for a in out for b in v)
    return tuple(out)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Dense immutable matrix over a single field."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(field(x) if not _in_field(field, x) else x for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise MalformedInput("column count required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise MalformedInput("ragged matrix rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = rows

    # constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [(z,) * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls(field, [unit_vector(field, n, i) for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        columns = list(columns)
        return cls(field, [tuple(c[r] for c in columns) for r in range(nrows)], len(columns))

    # access --------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, idx):
        r, c = idx
        return self._rows[r][c]

    def row(self, r: int) -> tuple:
        return self._rows[r]

    def col(self, c: int) -> tuple:
        return tuple(row[c] for row in self._rows)

    def columns(self) -> list[tuple]:
        return [self.col(c) for c in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, [self.col(c) for c in range(self.ncols)], self.nrows)

    def is_zero(self) -> bool:
        return all(not x for r in self._rows for x in r)

    # arithmetic ----------------------------------------------------------
    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise MalformedInput(f"vector of length {len(v)} applied to {self.shape} matrix")
        z = self.field.zero
        out = []
        for row in self._rows:
            acc = z
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise MalformedInput(f"cannot multiply {self.shape} by {other.shape}")
            cols = [self.apply(c) for c in other.columns()]
            return Matrix.from_columns(self.field, cols, self.nrows)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, [vadd(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, [vsub(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [tuple(-x for x in r) for r in self._rows], self.ncols)

    def scale(self, s) -> "Matrix":
        s = self.field(s)
        return Matrix(self.field, [vscale(s, r) for r in self._rows], self.ncols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise MalformedInput(f"shape mismatch {self.shape} vs {other.shape}")

    def kron(self, other: "Matrix") -> "Matrix":
        rows = [kron(ra, rb) for ra in self._rows for rb in other._rows]
        return Matrix(self.field, rows, self.ncols * other.ncols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise MalformedInput("hstack row mismatch")
        return Matrix(self.field, [a + b for a, b in zip(self._rows, other._rows)],
                      self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise MalformedInput("vstack column mismatch")
        return Matrix(self.field, self._rows + other._rows, self.ncols)

    def rank(self) -> int:
        return len(rref(self)[1])

    # comparison ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(x) for x in r] for r in self._rows]


def _in_field(field, x) -> bool:
    if isinstance(field, Rationals):
        return type(x) is Fraction
    return isinstance(x, Residue) and x.p == field.p


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _rref_rows(rows: list[list], ncols: int, field) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        found = next((i for i in range(r, nrows) if rows[i][c]), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        inv = field.one / rows[r][c]
        if rows[r][c] != field.one:
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form of ``m`` and its pivot columns."""
    rows, pivots = _rref_rows(list(m.rows), m.ncols, m.field)
    return Matrix(m.field, rows, m.ncols), pivots


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution of ``m x = b`` with all free variables zero, or None."""
    field = m.field
    aug = [list(r) + [field(x)] for r, x in zip(m.rows, b)]
    rows, pivots = _rref_rows(aug, m.ncols + 1, field)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [field.zero] * m.ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][m.ncols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise MalformedInput("only square matrices are invertible")
    n = m.nrows
    aug = Matrix(m.field, [a + b for a, b in zip(m.rows, Matrix.identity(m.field, n).rows)], 2 * n)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise MalformedInput("matrix is singular")
    return Matrix(m.field, [r[n:] for r in red.rows], n)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^n stored by its canonical (reduced echelon) basis.

    Two subspaces are equal exactly when their ``basis`` tuples are equal.
    """

    field: object
    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise MalformedInput(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, pivots = _rref_rows(vecs, ambient_dim, field)
        basis = tuple(tuple(r) for r in rows[: len(pivots)])
        return cls(field, ambient_dim, basis, tuple(pivots))

    @classmethod
    def zero(cls, field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, field, ambient_dim: int) -> "Subspace":
        return cls.span(field, ambient_dim, Matrix.identity(field, ambient_dim).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coordinates of ``v`` in ``basis``, or None when ``v`` lies outside."""
        coords = tuple(v[p] for p in self.pivots)
        rebuilt = [self.field.zero] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            if c:
                rebuilt = [x + c * y for x, y in zip(rebuilt, b)]
        return coords if tuple(rebuilt) == tuple(v) else None

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span(self.field, m.nrows, [m.apply(b) for b in self.basis])

    def embedding(self) -> Matrix:
        """ambient_dim x dim matrix whose columns are the basis vectors."""
        return Matrix.from_columns(self.field, self.basis, self.ambient_dim)

    def coordinate_map(self) -> Matrix:
        """dim x ambient_dim matrix reading coordinates of vectors inside the subspace."""
        rows = [unit_vector(self.field, self.ambient_dim, p) for p in self.pivots]
        return Matrix(self.field, rows, self.ambient_dim)


def kernel_image(m: Matrix) -> tuple[Subspace, Subspace]:
    """Kernel (in domain coordinates) and image (in codomain coordinates)."""
    field = m.field
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    kernel_vecs = []
    for f in free:
        v = [field.zero] * m.ncols
        v[f] = field.one
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        kernel_vecs.append(tuple(v))
    kernel = Subspace.span(field, m.ncols, kernel_vecs)
    image = Subspace.span(field, m.nrows, m.columns())
    return kernel, image


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientSpace:
    """K^n / denominator, with explicit projection and representative lift.

    Quotient coordinates are indexed by the non-pivot columns of the
    denominator's echelon basis; ``lift`` sends the t-th quotient basis
    vector to the matching ambient unit vector.
    """

    ambient_dim: int
    denominator: Subspace
    quotient_dim: int
    project: Matrix
    lift: Matrix
    representatives: tuple

    def contains_zero_class(self, v) -> bool:
        return is_zero_vector(self.project.apply(v))


def quotient_space(ambient_dim: int, denom: Subspace) -> QuotientSpace:
    if denom.ambient_dim != ambient_dim:
        raise MalformedInput("denominator lives in a different ambient space")
    field = denom.field
    pivots = set(denom.pivots)
    reps = tuple(c for c in range(ambient_dim) if c not in pivots)
    position = {c: t for t, c in enumerate(reps)}
    q = len(reps)
    cols = []
    pivot_row = {p: r for r, p in enumerate(denom.pivots)}
    for j in range(ambient_dim):
        if j in position:
            cols.append(unit_vector(field, q, position[j]))
        else:
            row = denom.basis[pivot_row[j]]
            cols.append(tuple(-row[c] for c in reps))
    project = Matrix.from_columns(field, cols, q)
    lift = Matrix.from_columns(field, [unit_vector(field, ambient_dim, c) for c in reps], ambient_dim)
    return QuotientSpace(ambient_dim, denom, q, project, lift, reps)


# ---------------------------------------------------------------------------
# tensor indices
# ---------------------------------------------------------------------------


def tensor_index(i: int, j: int, dim_second: int, dim_first: int | None = None) -> int:
    """Flat index of e_i (x) e_j; left-major, ``i * dim_second + j``."""
    if not 0 <= j < dim_second or i < 0 or (dim_first is not None and i >= dim_first):
        raise MalformedInput(f"tensor index ({i}, {j}) out of range")
    return i * dim_second + j


def tensor_unindex(flat: int, dims: Sequence[int]) -> tuple[int, ...]:
    """Inverse of iterated :func:`tensor_index` for factor dimensions ``dims``."""
    total = 1
    for d in dims:
        total *= d
    if not 0 <= flat < total:
        raise MalformedInput(f"flat index {flat} out of range for dims {tuple(dims)}")
    out = []
    for d in reversed(dims):
        flat, r = divmod(flat, d)
        out.append(r)
    return tuple(reversed(out))


def flat_index(indices: Sequence[int], dims: Sequence[int]) -> int:
    flat = 0
    for i, d in zip(indices, dims):
        if not 0 <= i < d:
            raise MalformedInput(f"tensor index {tuple(indices)} out of range for {tuple(dims)}")
        flat = flat * d + i
    return flat
