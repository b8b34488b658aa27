"""Command-line front end.

Every command prints (or writes with ``--output``) one JSON report with keys
``command``, ``inputs``, ``results``, ``assertions`` and ``exit_status``.
Exit codes: 0 success, 1 a checked property fails, 2 malformed input,
3 internal invariant violated.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import fixtures as fx
from .algebra import (
    HomPreLieAlgebra,
    annihilator,
    check_axioms,
    derivation_space,
    derived_subspaces,
    format_vector,
)
from .errors import HomPreLieError, MalformedInput
from .exactlin import GF, QQ, Matrix, Residue, Subspace
from .extensions import (
    Extension,
    classify_extension,
    compose_extensions,
    pullback,
    uce,
    uce_alpha,
    universal_alpha_morphism,
    universal_morphism,
    verify_splitting,
)
from .homology import (
    chain_iso_check,
    check_corepresentation,
    hl0_closed_form,
    hl1_closed_form_trivial,
    homology,
    trivial_corep,
)
from .io import (
    algebra_to_json,
    corep_to_json,
    dumps,
    extension_to_json,
    file_digest,
    load_algebra,
    load_corep,
    load_extension,
    load_morphism,
    matrix_from_json,
    matrix_to_json,
    read_json,
    subspace_to_json,
)
from .search import SearchSpec, iter_algebras, SearchSummary, search_splitting


class Report:
    def __init__(self, argv):
        self.command = list(argv)
        self.inputs: dict[str, str] = {}
        self.results: dict = {}
        self.assertions: list[dict] = []
        self.exit_status = 0

    def add_input(self, path):
        self.inputs[str(path)] = file_digest(path)

    def check(self, name: str, passed: bool, fail_code: int = 1):
        self.assertions.append({"name": name, "passed": bool(passed)})
        if not passed:
            self.exit_status = max(self.exit_status, fail_code)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "assertions": self.assertions,
            "exit_status": self.exit_status,
        }


def jsonable(obj):
    """Scalars to canonical strings, containers to lists; no floats survive."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return QQ.format(obj)
    if isinstance(obj, Residue):
        return str(obj.value)
    if isinstance(obj, Matrix):
        return matrix_to_json(obj)
    if isinstance(obj, Subspace):
        return subspace_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return repr(obj)


def _labels(A: HomPreLieAlgebra, S: Subspace) -> list[str]:
    return [format_vector(A, b) for b in S.basis]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args, rep: Report):
    rep.add_input(args.algebra)
    A = load_algebra(args.algebra)
    ax = check_axioms(A)
    rep.results = {
        "dim": A.dim,
        "field": A.field.descriptor(),
        "hom_prelie": ax.hom_prelie,
        "hom_novikov": ax.hom_novikov,
        "prelie_witness": _witness(A, ax.prelie_witness),
        "novikov_witness": _witness(A, ax.novikov_witness),
    }
    rep.check("hom_prelie", ax.hom_prelie)


def _witness(A, w):
    if w is None:
        return None
    i, j, k, r = w
    return {"triple": [A.names[i], A.names[j], A.names[k]], "residual": jsonable(r)}


def cmd_analyze(args, rep: Report):
    rep.add_input(args.algebra)
    A = load_algebra(args.algebra)
    ax = check_axioms(A)
    Z = annihilator(A)
    ds = derived_subspaces(A)
    rep.results = {
        "dim": A.dim,
        "hom_prelie": ax.hom_prelie,
        "hom_novikov": ax.hom_novikov,
        "Z": _labels(A, Z),
        "Z_basis": jsonable(Z),
        "LL": _labels(A, ds.LL),
        "aLaL": _labels(A, ds.aLaL),
        "perfect": ds.perfect,
        "alpha_perfect": ds.alpha_perfect,
        "alpha_surjective": ds.alpha_surjective,
    }
    rep.check("alpha_perfect implies perfect", ds.perfect or not ds.alpha_perfect, 3)
    rep.check("alpha_perfect implies alpha surjective",
              ds.alpha_surjective or not ds.alpha_perfect, 3)


def cmd_homology(args, rep: Report):
    rep.add_input(args.algebra)
    A = load_algebra(args.algebra)
    if args.coeff not in ("trivial", "self"):
        rep.add_input(args.coeff)
    c = load_corep(args.coeff, A)
    cr = check_corepresentation(c)
    rep.results = {"coefficients": args.coeff, "corep_valid": cr.valid,
                   "failed_axiom": cr.failed_axiom, "witness": jsonable(cr.witness)}
    rep.check("co-representation axioms", cr.valid)
    if not cr.valid:
        return
    degrees = [args.n] if args.n is not None else [0, 1, 2]
    out = {}
    for n in degrees:
        h = homology(c, n)
        out[str(n)] = {"dim": h.dimension, "representatives": jsonable(h.representatives)}
    rep.results["homology"] = out
    closed = {"HL0": hl0_closed_form(c)}
    if c.is_trivial():
        closed["HL1"] = hl1_closed_form_trivial(c)
    rep.results["closed_forms"] = closed
    if "0" in out:
        rep.check("HL0 matches closed form", out["0"]["dim"] == closed["HL0"], 3)
    if "1" in out and "HL1" in closed:
        rep.check("HL1 matches closed form", out["1"]["dim"] == closed["HL1"], 3)


def cmd_chain_iso(args, rep: Report):
    rep.add_input(args.algebra)
    A = load_algebra(args.algebra)
    r = chain_iso_check(A)
    rep.results = {
        "commutes": r.commutes,
        "residuals": {str(n): jsonable(m) for n, m in r.residuals.items()},
        "residual_zero": {str(n): m.is_zero() for n, m in r.residuals.items()},
        "dims_LL": list(r.dims_LL),
        "dims_K": list(r.dims_K),
        "dims_match": list(r.dims_match),
        "isomorphism_claim": "verified" if all(r.dims_match) and r.commutes else "refuted",
    }


def _uce_report(U, rep: Report):
    A = U.algebra
    rep.results.update({
        "variant": U.variant,
        "dim": A.dim,
        "kernel_dim": U.kernel.dim,
        "I_L_dim": U.I_L.dim,
        "I_L": jsonable(U.I_L),
        "kernel": jsonable(U.kernel),
        "kernel_labels": _labels(A, U.kernel),
        "u": matrix_to_json(U.u.f),
        "algebra": algebra_to_json(A),
        "checks": jsonable(U.checks),
    })
    if U.variant == "plain":
        hl2 = U.checks["hl2_dim"]
        rep.results["hl2_dim"] = hl2
        rep.results["match"] = U.kernel.dim == hl2
    for name, val in U.checks.items():
        if name == "alpha_perfect" and U.variant == "plain":
            continue  # informative only for the plain construction
        if isinstance(val, bool):
            rep.check(name, val)
    # a universal central extension is perfect, so its HL_1 vanishes
    triv = trivial_corep(A)
    hl1, hl2 = homology(triv, 1).dimension, homology(triv, 2).dimension
    rep.results["total_homology"] = {"HL1": hl1, "HL2": hl2}
    rep.check("HL1 of the extension vanishes", hl1 == 0)


def cmd_uce(args, rep: Report):
    rep.add_input(args.algebra)
    L = load_algebra(args.algebra)
    U = uce_alpha(L) if args.alpha else uce(L)
    _uce_report(U, rep)
    if args.target:
        rep.add_input(args.target)
        e = classify_extension(load_extension(args.target))
        m = universal_alpha_morphism(U, e) if args.alpha else universal_morphism(U, e)
        rep.results["universal_morphism"] = matrix_to_json(m.f)


def _ext_summary(e: Extension) -> dict:
    return {
        "exact": e.exact,
        "central": e.central,
        "alpha_central": e.alpha_central,
        "kernel": [format_vector(e.total, v) for v in e.inj.f.columns()],
        "kernel_basis": jsonable(e.inj.f.columns()),
        "Z_total": _labels(e.total, annihilator(e.total)),
        "total_perfect": derived_subspaces(e.total).perfect,
    }


def cmd_ext_check(args, rep: Report):
    rep.add_input(args.extension)
    e = classify_extension(load_extension(args.extension))
    rep.results = _ext_summary(e)
    rep.check("exact", e.exact)
    rep.check("central", e.central)


def cmd_ext_compose(args, rep: Report):
    """Arguments in the order the maps are applied (inner first); either order is accepted."""
    rep.add_input(args.first)
    rep.add_input(args.second)
    a, b = load_extension(args.first), load_extension(args.second)
    if a.quot.same_structure(b.total):
        inner, outer = a, b
    elif b.quot.same_structure(a.total):
        inner, outer = b, a
    else:
        raise MalformedInput("extensions are not composable in either order")
    e = compose_extensions(classify_extension(outer), classify_extension(inner))
    rep.results = _ext_summary(e)
    rep.results["composite"] = matrix_to_json(e.proj.f)
    rep.results["sub"] = algebra_to_json(e.sub)
    rep.check("exact", e.exact)
    rep.check("alpha_central", e.alpha_central)
    rep.check("central", e.central)


def cmd_ext_pullback(args, rep: Report):
    rep.add_input(args.tau)
    rep.add_input(args.pi)
    tau, pi = load_morphism(args.tau), load_morphism(args.pi)
    pb = pullback(tau, pi)
    rep.results = {
        "dim": pb.P.dim,
        "algebra": algebra_to_json(pb.P),
        "projA": matrix_to_json(pb.projA.f),
        "projK": matrix_to_json(pb.projK.f),
        "hom_prelie": check_axioms(pb.P).hom_prelie,
    }
    rep.check("pullback is Hom-preLie", rep.results["hom_prelie"], 3)


def cmd_ext_split(args, rep: Report):
    rep.add_input(args.extension)
    e = classify_extension(load_extension(args.extension))
    if args.sigma:
        rep.add_input(args.sigma)
        sigma = matrix_from_json(e.total.field, read_json(args.sigma),
                                 (e.total.dim, e.quot.dim))
        ok = verify_splitting(e, sigma)
        rep.results = {"split": ok, "sigma": matrix_to_json(sigma)}
        rep.check("sigma splits", ok)
        return
    sigma, examined = search_splitting(e, args.ceiling)
    rep.results = {"split": sigma is not None, "examined": examined,
                   "sigma": matrix_to_json(sigma) if sigma is not None else None}


def cmd_enumerate(args, rep: Report):
    field = args.field
    p = int(field[1:]) if field.upper().startswith("F") else int(field)
    mask = None
    if args.mask:
        rep.add_input(args.mask)
        mask = [tuple(m) for m in read_json(args.mask)]
    spec = SearchSpec(
        dim=args.dim, p=p, alpha=args.alpha, require=args.require, filter=args.filter,
        mode=args.mode, budget=args.budget, seed=args.seed, mask=mask, ceiling=args.ceiling,
    )
    summary = SearchSummary()
    algebras = [algebra_to_json(A) for A in iter_algebras(spec, summary)]
    rep.results = {"parameters": {
        "dim": spec.dim, "p": spec.p, "alpha": spec.alpha, "require": spec.require,
        "filter": spec.filter, "mode": spec.mode,
        "budget": spec.budget if spec.mode == "random" else None,
        "seed": spec.seed if spec.mode == "random" else None,
    }, "summary": summary.as_dict()}
    if not args.summary_only:
        rep.results["algebras"] = algebras


def cmd_derivations(args, rep: Report):
    rep.add_input(args.algebra)
    A = load_algebra(args.algebra)
    if args.coeff not in ("trivial", "self"):
        rep.add_input(args.coeff)
    c = load_corep(args.coeff, A)
    D = derivation_space(A, c.m_dim, c.lam, c.rho, c.alpha_M)
    rep.results = {"dim": D.dim, "basis": jsonable(D), "layout": "row-major M_dim x dim"}


def cmd_fixtures(args, rep: Report):
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, make in fx.ALGEBRAS.items():
        (out / f"{name}.json").write_text(dumps(algebra_to_json(make())))
        written.append(f"{name}.json")
    ep = classify_extension(_from_proj(fx.pi_map()))
    er = classify_extension(_from_proj(fx.rho_map()))
    (out / "pi.json").write_text(dumps(extension_to_json(ep, total_ref="K3.json",
                                                         quot_ref="L2.json")))
    (out / "rho.json").write_text(dumps(extension_to_json(er, total_ref="F4.json",
                                                          quot_ref="K3.json")))
    written += ["pi.json", "rho.json"]
    rep.results = {"dir": str(out), "written": written}


def _from_proj(m):
    from .extensions import extension_from_surjection
    return extension_from_surjection(m)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    p = _Parser(prog="homprelie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check the Hom-preLie/Novikov identities")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", parents=[common], help="annihilator, LL, a(L)a(L), perfectness")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("homology", parents=[common], help="HL_0, HL_1, HL_2")
    s.add_argument("algebra")
    s.add_argument("--n", type=int, choices=(0, 1, 2))
    s.add_argument("--coeff", default="trivial", help="trivial | self | co-representation file")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("chain-iso", parents=[common],
                       help="compare CL(L,L) with CL(L,K) shifted by -Id")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_chain_iso)

    s = sub.add_parser("uce", parents=[common], help="universal (alpha-)central extension")
    s.add_argument("algebra")
    s.add_argument("--alpha", action="store_true")
    s.add_argument("--target", help="extension file; also build the universal morphism to it")
    s.set_defaults(func=cmd_uce)

    s = sub.add_parser("derivations", parents=[common], help="derivations into a module")
    s.add_argument("algebra")
    s.add_argument("--coeff", default="self")
    s.set_defaults(func=cmd_derivations)

    ext = sub.add_parser("ext", help="extension tools")
    esub = ext.add_subparsers(dest="ext_command", required=True, parser_class=_Parser)
    s = esub.add_parser("check", parents=[common])
    s.add_argument("extension")
    s.set_defaults(func=cmd_ext_check)
    s = esub.add_parser("compose", parents=[common])
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_ext_compose)
    s = esub.add_parser("pullback", parents=[common])
    s.add_argument("tau")
    s.add_argument("pi")
    s.set_defaults(func=cmd_ext_pullback)
    s = esub.add_parser("split", parents=[common])
    s.add_argument("extension")
    s.add_argument("--sigma", help="matrix file to verify instead of searching")
    s.add_argument("--ceiling", type=int, default=2 ** 24)
    s.set_defaults(func=cmd_ext_split)

    s = sub.add_parser("enumerate", parents=[common], help="small algebras over F_p")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--field", default="F2", help="F<p> or p")
    s.add_argument("--alpha", default="zero", choices=("zero", "identity", "free"))
    s.add_argument("--require", default="prelie", choices=("prelie", "novikov"))
    s.add_argument("--filter", default="none", choices=("none", "perfect", "alpha_perfect"))
    s.add_argument("--mode", default="exhaustive", choices=("exhaustive", "random"))
    s.add_argument("--budget", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mask", help="JSON list of allowed [i, j, k] product positions")
    s.add_argument("--ceiling", type=int, default=2 ** 24)
    s.add_argument("--summary-only", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("fixtures", parents=[common], help="write the bundled example algebras")
    s.add_argument("--dir", default="fixtures")
    s.set_defaults(func=cmd_fixtures)
    return p


def _echo(argv):
    """The command line minus the output destination, which does not affect results."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a in ("--output", "-o"):
            skip = True
        elif not a.startswith("--output="):
            out.append(a)
    return out


def run(argv=None) -> tuple[dict, int]:
    argv = list(sys.argv[1:] if argv is None else argv)
    rep = Report(_echo(argv))
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = getattr(args, "output", None)
        args.func(args, rep)
    except HomPreLieError as exc:
        rep.results["error"] = {
            "type": type(exc).__name__,
            "message": str(exc),
            "witness": jsonable(getattr(exc, "witness", None)),
        }
        rep.exit_status = exc.exit_code
    except Exception as exc:  # an unexpected failure is an internal error
        rep.results["error"] = {"type": type(exc).__name__, "message": str(exc), "witness": None}
        rep.exit_status = 3
    report = rep.as_dict()
    text = dumps(report)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    return report, rep.exit_status


def main(argv=None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
