"""JSON schemas for algebras, maps, extensions and co-representations.

Algebra file::

    {"field": "Q" | {"Fp": p}, "dim": n,
     "products": [{"i": 0, "j": 1, "result": [{"k": 2, "c": "-1/2"}]}, ...],
     "alpha": [["0", "1"], ...], "names": ["a1", ...]}

Indices are 0-based and absent products are zero.  Anywhere an algebra is
expected, either an inline object or a path (relative to the referencing
file) is accepted.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .algebra import HomPreLieAlgebra, Morphism
from .errors import MalformedInput
from .exactlin import Matrix, Subspace, field_from_descriptor
from .extensions import Extension, extension_from_surjection
from .homology import HomCoRepresentation, self_corep, trivial_corep


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def file_digest(path) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    return "sha256:" + hashlib.sha256(data).hexdigest()


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc})") from None


# ---------------------------------------------------------------------------
# scalars and matrices
# ---------------------------------------------------------------------------


def _scalar(field, x):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise MalformedInput(f"scalar literal must be a string or integer, got {x!r}")
    return field(x)


def matrix_from_json(field, rows, shape=None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise MalformedInput("matrix must be a list of rows")
    if shape is not None:
        r, c = shape
        if len(rows) != r or any(len(row) != c for row in rows):
            raise MalformedInput(f"matrix must be {r}x{c}")
        ncols = c
    else:
        ncols = len(rows[0]) if rows else 0
    return Matrix(field, [[_scalar(field, x) for x in row] for row in rows], ncols)


def matrix_to_json(m: Matrix) -> list:
    return m.to_strings()


def vector_to_json(field, v) -> list:
    return [field.format(x) for x in v]


def subspace_to_json(S: Subspace) -> list:
    return [vector_to_json(S.field, b) for b in S.basis]


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


def algebra_from_json(data) -> HomPreLieAlgebra:
    if not isinstance(data, dict):
        raise MalformedInput("algebra must be a JSON object")
    unknown = set(data) - {"field", "dim", "products", "alpha", "names"}
    if unknown:
        raise MalformedInput(f"unknown algebra keys: {sorted(unknown)}")
    field = field_from_descriptor(data.get("field", "Q"))
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise MalformedInput("dim must be a non-negative integer")
    table = {}
    for entry in data.get("products", []):
        try:
            i, j, result = entry["i"], entry["j"], entry["result"]
        except (KeyError, TypeError):
            raise MalformedInput(f"product entry needs i, j, result: {entry!r}") from None
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in (i, j)):
            raise MalformedInput("product indices must be integers")
        if (i, j) in table:
            raise MalformedInput(f"duplicate product entry ({i}, {j})")
        coeffs = {}
        for term in result:
            try:
                k, coeff = term["k"], term["c"]
            except (KeyError, TypeError):
                raise MalformedInput(f"result term needs k and c: {term!r}") from None
            if not isinstance(k, int) or isinstance(k, bool):
                raise MalformedInput("result index must be an integer")
            if k in coeffs:
                raise MalformedInput(f"duplicate result index {k} in product ({i}, {j})")
            coeffs[k] = _scalar(field, coeff)
        table[(i, j)] = coeffs
    alpha = data.get("alpha")
    alpha = Matrix.zeros(field, dim, dim) if alpha is None else \
        matrix_from_json(field, alpha, (dim, dim))
    names = data.get("names") or ()
    if names and (len(names) != dim or not all(isinstance(n, str) for n in names)):
        raise MalformedInput("names must be one string per basis vector")
    return HomPreLieAlgebra.from_products(field, dim, table, alpha, tuple(names))


def algebra_to_json(A: HomPreLieAlgebra) -> dict:
    products = []
    for i in range(A.dim):
        for j in range(A.dim):
            terms = [{"k": k, "c": A.field.format(x)} for k, x in enumerate(A.c[i][j]) if x]
            if terms:
                products.append({"i": i, "j": j, "result": terms})
    return {
        "field": A.field.descriptor(),
        "dim": A.dim,
        "products": products,
        "alpha": matrix_to_json(A.alpha),
        "names": list(A.names),
    }


def resolve_algebra(ref, base_dir: Path) -> HomPreLieAlgebra:
    if isinstance(ref, str):
        return algebra_from_json(read_json(base_dir / ref))
    return algebra_from_json(ref)


def load_algebra(path) -> HomPreLieAlgebra:
    return algebra_from_json(read_json(path))


# ---------------------------------------------------------------------------
# maps and extensions
# ---------------------------------------------------------------------------


def load_extension(path) -> Extension:
    """Extension file: ``{"sub", "total", "quot", "inj", "proj"}``.

    ``sub`` and ``inj`` may be omitted, in which case the kernel of ``proj``
    is used with its induced structure.
    """
    path = Path(path)
    data = read_json(path)
    if not isinstance(data, dict):
        raise MalformedInput("extension must be a JSON object")
    for key in ("total", "quot", "proj"):
        if key not in data:
            raise MalformedInput(f"extension file lacks {key!r}")
    total = resolve_algebra(data["total"], path.parent)
    quot = resolve_algebra(data["quot"], path.parent)
    if total.field != quot.field:
        raise MalformedInput("total and quotient algebras over different fields")
    proj = Morphism(total, quot, matrix_from_json(total.field, data["proj"], (quot.dim, total.dim)))
    if "sub" not in data and "inj" not in data:
        return extension_from_surjection(proj)
    if "sub" not in data or "inj" not in data:
        raise MalformedInput("give both sub and inj, or neither")
    sub = resolve_algebra(data["sub"], path.parent)
    inj = Morphism(sub, total, matrix_from_json(total.field, data["inj"], (total.dim, sub.dim)))
    return Extension(sub, total, quot, inj, proj)


def extension_to_json(e: Extension, sub_ref=None, total_ref=None, quot_ref=None) -> dict:
    return {
        "sub": sub_ref if sub_ref is not None else algebra_to_json(e.sub),
        "total": total_ref if total_ref is not None else algebra_to_json(e.total),
        "quot": quot_ref if quot_ref is not None else algebra_to_json(e.quot),
        "inj": matrix_to_json(e.inj.f),
        "proj": matrix_to_json(e.proj.f),
    }


def load_morphism(path) -> Morphism:
    """Morphism file ``{"source", "target", "matrix"}``; an extension file yields its projection."""
    path = Path(path)
    data = read_json(path)
    if isinstance(data, dict) and "proj" in data:
        return load_extension(path).proj
    if not isinstance(data, dict) or not {"source", "target", "matrix"} <= set(data):
        raise MalformedInput("morphism file needs source, target, matrix")
    S = resolve_algebra(data["source"], path.parent)
    T = resolve_algebra(data["target"], path.parent)
    return Morphism(S, T, matrix_from_json(S.field, data["matrix"], (T.dim, S.dim)))


# ---------------------------------------------------------------------------
# co-representations
# ---------------------------------------------------------------------------


def load_corep(spec: str, A: HomPreLieAlgebra) -> HomCoRepresentation:
    """``trivial``, ``self`` or a path to ``{"m_dim", "lambda", "rho", "alpha_M"}``."""
    if spec == "trivial":
        return trivial_corep(A)
    if spec == "self":
        return self_corep(A)
    path = Path(spec)
    data = read_json(path)
    if not isinstance(data, dict):
        raise MalformedInput("co-representation must be a JSON object")
    kind = data.get("kind")
    if kind in ("trivial", "self"):
        return trivial_corep(A, data.get("m_dim", 1)) if kind == "trivial" else self_corep(A)
    try:
        m_dim = data["m_dim"]
        lam, rho, alpha_M = data["lambda"], data["rho"], data["alpha_M"]
    except KeyError as exc:
        raise MalformedInput(f"co-representation lacks {exc.args[0]!r}") from None
    if "algebra" in data:
        declared = resolve_algebra(data["algebra"], path.parent)
        if not declared.same_structure(A):
            raise MalformedInput("co-representation refers to a different algebra")
    f = A.field
    conv = lambda t: [[[_scalar(f, x) for x in b] for b in a] for a in t]  # noqa: E731
    try:
        lam, rho = conv(lam), conv(rho)
    except TypeError:
        raise MalformedInput("action tensors must be nested lists") from None
    return HomCoRepresentation(A, m_dim, lam, rho, matrix_from_json(f, alpha_M, (m_dim, m_dim)))


def corep_to_json(c: HomCoRepresentation) -> dict:
    f = c.field
    return {
        "m_dim": c.m_dim,
        "lambda": [[[f.format(x) for x in b] for b in a] for a in c.lam],
        "rho": [[[f.format(x) for x in b] for b in a] for a in c.rho],
        "alpha_M": matrix_to_json(c.alpha_M),
    }
