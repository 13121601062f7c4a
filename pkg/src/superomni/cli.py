"""Command-line interface: ``superomni <group> <command> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2
for malformed input (bad JSON, unknown names, unsupported field, size
limits).  Check failures print the failing basis tuple and its residual.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dirac, documents, lie2, liesuper, omni
from .documents import DocumentError
from .liesuper import Verdict
from .scalars import QQ
from .superlinalg import SuperSpace

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# output helpers

def _emit(text: str, path: str | None = None):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report(args, verdict: Verdict, extra: dict | None = None) -> int:
    if args.json:
        out = dict(extra or {})
        out["ok"] = verdict.ok
        out["verdict"] = verdict.to_dict()
        print(json.dumps(out, indent=2))
    else:
        for key, val in (extra or {}).items():
            print(f"{key}: {val}")
        print("\n".join(verdict.lines()))
    return EXIT_OK if verdict.ok else EXIT_FAIL


def _write_doc(args, doc: dict) -> int:
    _emit(documents.dumps(doc), args.output)
    return EXIT_OK


def _load(path: str) -> dict:
    return documents.load(path)


def _field(args):
    return documents.parse_field(args.field) if args.field is not None else QQ


def _space(args) -> SuperSpace:
    m, n = args.dims
    if m < 0 or n < 0:
        raise InputError("dimensions must be non-negative")
    return SuperSpace(m, n, _field(args))


# check / build

def cmd_check_lie(args):
    return _report(args, liesuper.check_lie(documents.parse_algebra(_load(args.algebra))))


def cmd_check_leibniz(args):
    omega = documents.parse_algebra(_load(args.algebra))
    return _report(args, liesuper.check_leibniz_rule(omega))


def _algebra_and_action(args):
    omega = documents.parse_algebra(_load(args.algebra))
    module, rho = documents.parse_action(_load(args.action), omega)
    return omega, module, rho


def cmd_check_action(args):
    omega, module, rho = _algebra_and_action(args)
    return _report(args, liesuper.check_action(omega, rho, module))


def cmd_check_quadratic(args):
    doc = _load(args.algebra)
    omega = documents.parse_algebra(doc)
    form = _form(doc, omega, args.supertrace)
    return _report(args, liesuper.check_quadratic_compatible(
        omega, form, allow_degenerate=args.allow_degenerate))


def cmd_build_semidirect(args):
    omega, module, rho = _algebra_and_action(args)
    verdict = liesuper.check_action(omega, rho, module)
    if not verdict:
        return _report(args, verdict)
    return _write_doc(args, documents.algebra_doc(liesuper.semidirect_product(omega, rho, module)))


def cmd_build_gl(args):
    V = _space(args)
    omega = liesuper.gl_algebra(V)
    maps = list(zip(omega.space.names, liesuper.identity_representation(V)))
    return _write_doc(args, documents.algebra_doc(
        omega, realization=documents.realization_json(V, maps)))


# omni

def cmd_omni_check(args):
    V = _space(args)
    return _report(args, omni.check_omni(V), {"dims": f"{V.even_dim}|{V.odd_dim}"})


def cmd_omni_table(args):
    V = _space(args)
    V.field.require_invertible(2)
    omni._guard(V, None)
    E = omni.omni_space(V)
    circ, br, pr = omni.circ_table(V), omni.bracket_table(V), omni.pairing_table(V)
    rows = []
    for i in range(E.dim):
        for j in range(E.dim):
            vals = [liesuper.densify(t.target, t.sparse_entry(i, j)) for t in (circ, br, pr)]
            if any(not v.is_zero() for v in vals):
                rows.append((E.names[i], E.names[j], vals))
    if args.json:
        print(json.dumps({"dims": [V.even_dim, V.odd_dim],
                          "entries": [{"left": a, "right": b,
                                       "circ": documents.vector_json(v[0]),
                                       "bracket": documents.vector_json(v[1]),
                                       "pairing": documents.vector_json(v[2])}
                                      for a, b, v in rows]}, indent=2))
    else:
        print("left\tright\tcirc\tbracket\tpairing")
        for a, b, vals in rows:
            print("\t".join([a, b] + [repr(v) for v in vals]))
    return EXIT_OK


# dirac

def cmd_dirac_check(args):
    L = documents.parse_subspace(_load(args.subspace))
    if L.ambient.dim == 0 or not _is_omni(L):
        raise InputError("subspace must live in gl(V) + V (ambient part 'omni')")
    return _report(args, dirac.check_dirac(L))


def _is_omni(L) -> bool:
    try:
        dirac.base_space(L)
    except ValueError:
        return False
    return True


def _embedding_for(args, doc: dict, omega, V_default: SuperSpace):
    """Ambient space and images of the algebra basis for ``dirac from-lie``."""
    names = omega.space.names
    if args.embed:
        if len(args.embed) != len(names):
            raise InputError(f"--embed needs {len(names)} names, got {len(args.embed)}")
        try:
            return V_default, [V_default.basis_vector(n) for n in args.embed]
        except (KeyError, ValueError):
            raise InputError(f"--embed: names must be among {', '.join(V_default.names)}") from None
    if "embedding" in doc:
        emb = doc["embedding"]
        if not isinstance(emb, dict) or not isinstance(emb.get("vectors", {}), dict):
            raise InputError("embedding: expected an object with 'ambient' and 'vectors'")
        V = documents.parse_space(emb.get("ambient", {}), omega.space.field, "embedding.ambient")
        if (V.even_dim, V.odd_dim) != (V_default.even_dim, V_default.odd_dim):
            raise InputError("embedding.ambient does not match --ambient")
        vecs = emb.get("vectors", {})
        return V, [documents.parse_vector(V, vecs.get(n, {}), f"embedding.vectors.{n}")
                   for n in names]
    if all(n in V_default.names for n in names):
        return V_default, None
    sp = omega.space
    if (sp.even_dim, sp.odd_dim) == (V_default.even_dim, V_default.odd_dim):
        return sp, None
    evens = [n for n, p in zip(names, sp.parities) if p == 0]
    if sp.even_dim > V_default.even_dim or sp.odd_dim > V_default.odd_dim:
        raise InputError(f"algebra of dimension {sp.even_dim}|{sp.odd_dim} does not fit "
                         f"in {V_default.even_dim}|{V_default.odd_dim}")
    out, ke, ko = [], 0, V_default.even_dim
    for n in names:
        if n in evens:
            out.append(V_default.basis_vector(ke))
            ke += 1
        else:
            out.append(V_default.basis_vector(ko))
            ko += 1
    return V_default, out


def cmd_dirac_from_lie(args):
    doc = _load(args.algebra)
    omega = documents.parse_algebra(doc)
    m, n = args.ambient
    V, embedding = _embedding_for(args, doc, omega, SuperSpace(m, n, omega.space.field))
    verdict = liesuper.check_lie(omega)
    if not verdict:
        return _report(args, verdict)
    L = dirac.dirac_from_lie(V, omega, embedding)
    return _write_doc(args, documents.subspace_doc(L, V))


def cmd_dirac_to_lie(args):
    L = documents.parse_subspace(_load(args.subspace))
    if not _is_omni(L):
        raise InputError("subspace must live in gl(V) + V (ambient part 'omni')")
    verdict = dirac.check_dirac(L)
    if not verdict:
        return _report(args, verdict)
    sl = dirac.lie_from_dirac(L)
    extra = {}
    base = dirac.base_space(L)
    if any(n not in base.names for n in sl.bracket.space.names):
        extra["embedding"] = {
            "ambient": documents.space_json(base),
            "vectors": {n: documents.vector_json(v)
                        for n, v in zip(sl.bracket.space.names, sl.embedding)}}
    return _write_doc(args, documents.algebra_doc(sl.bracket, **extra))


def cmd_dirac_pair_check(args):
    doc = _load(args.document)
    if isinstance(doc, dict) and doc.get("kind") == "pair":
        pair = documents.parse_pair(doc)
    else:
        L = documents.parse_subspace(doc)
        if not _is_omni(L):
            raise InputError("subspace must live in gl(V) + V (ambient part 'omni')")
        verdict = dirac.check_maximal_isotropic(L)
        if not verdict:
            return _report(args, verdict)
        pair = dirac.extract_characteristic_pair(L)
    try:
        verdict = dirac.check_characteristic_pair(pair)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return _report(args, verdict)


def cmd_dirac_enumerate(args):
    if args.field is None:
        raise InputError("--field is required for enumeration")
    V = _space(args)
    census = dirac.enumerate_dirac(V)
    nd, nl = census.counts
    extra = {"field": V.field.characteristic, "dims": f"{V.even_dim}|{V.odd_dim}",
             "dirac structures": nd, "lie structures on subspaces": nl}
    if args.list:
        extra["structures"] = [documents.algebra_doc(sl.bracket) for sl in census.lie]
        if not args.json:
            extra["structures"] = len(extra["structures"])
            for sl in census.lie:
                print(json.dumps(documents.algebra_doc(sl.bracket)))
    return _report(args, census.verdict, extra)


# lie2

def cmd_lie2_from_omni(args):
    V = _space(args)
    omni._guard(V, None)
    T = lie2.lie2_from_omni(V)
    doc = documents.lie2_doc(T)
    if not args.check:
        return _write_doc(args, doc)
    if args.output:
        _emit(documents.dumps(doc), args.output)
    return _report(args, lie2.check_lie2_axioms(T), {"dims": f"{V.even_dim}|{V.odd_dim}"})


def cmd_lie2_check(args):
    return _report(args, lie2.check_lie2_axioms(documents.parse_lie2(_load(args.lie2))))


def cmd_lie2_to_crossed(args):
    T = documents.parse_lie2(_load(args.lie2))
    if not T.is_strict():
        raise InputError("l3 is not zero; only strict Lie 2-superalgebras give crossed modules")
    verdict = lie2.check_lie2_axioms(T)
    if not verdict:
        return _report(args, verdict)
    return _write_doc(args, documents.crossed_doc(lie2.crossed_module_from_strict(T)))


def cmd_lie2_from_crossed(args):
    C = documents.parse_crossed(_load(args.crossed))
    verdict = lie2.check_crossed_module(C)
    if not verdict:
        return _report(args, verdict)
    return _write_doc(args, documents.lie2_doc(lie2.strict_from_crossed_module(C)))


def _form(doc: dict, omega, supertrace: bool):
    if supertrace:
        return documents.supertrace_form_from(documents.parse_realization(doc, omega), omega.space)
    return documents.parse_form(doc, omega)


def cmd_lie2_skeletal(args):
    doc = _load(args.algebra)
    omega = documents.parse_algebra(doc)
    omega.space.field.require_invertible(2, 3)
    form = _form(doc, omega, args.supertrace)
    verdict = liesuper.check_lie(omega)
    if verdict and not form.is_nondegenerate():
        verdict = Verdict("nondegenerate form", False, checked=1, detail="form is degenerate")
    if verdict:
        verdict = liesuper.check_quadratic_compatible(omega, form)
    if not verdict:
        return _report(args, verdict)
    T = lie2.skeletal_from_quadratic(omega, form)
    doc_out = documents.lie2_doc(T)
    if not args.check:
        return _write_doc(args, doc_out)
    if args.output:
        _emit(documents.dumps(doc_out), args.output)
    return _report(args, lie2.check_lie2_axioms(T))


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-o", "--output", help="write the produced document here")
    dims = argparse.ArgumentParser(add_help=False)
    dims.add_argument("--dims", nargs=2, type=int, metavar=("M", "N"), required=True,
                      help="even and odd dimension of V")
    dims.add_argument("--field", help="'Q' (default) or a prime p > 3")

    parser = argparse.ArgumentParser(
        prog="superomni",
        description="Exact checks for Lie superalgebras, the omni-Lie superalgebra gl(V)+V, "
                    "Dirac structures and Lie 2-superalgebras.")
    groups = parser.add_subparsers(dest="group", required=True)

    def command(sub, name, fn, parents=(), help=None):
        p = sub.add_parser(name, parents=[common, *parents], help=help)
        p.set_defaults(fn=fn)
        return p

    check = groups.add_parser("check", help="check an algebra document").add_subparsers(
        dest="cmd", required=True)
    command(check, "lie", cmd_check_lie, help="super skew symmetry and super Jacobi").add_argument(
        "algebra")
    command(check, "leibniz", cmd_check_leibniz, help="super Leibniz rule").add_argument("algebra")
    p = command(check, "action", cmd_check_action, help="representation axiom")
    p.add_argument("algebra")
    p.add_argument("action")
    p = command(check, "quadratic", cmd_check_quadratic, help="invariance of a bilinear form")
    p.add_argument("algebra")
    p.add_argument("--supertrace", action="store_true",
                   help="use str(XY) on the document's realization instead of its 'form'")
    p.add_argument("--allow-degenerate", action="store_true")

    build = groups.add_parser("build", help="construct algebras").add_subparsers(
        dest="cmd", required=True)
    p = command(build, "semidirect", cmd_build_semidirect, help="semidirect product L + V")
    p.add_argument("algebra")
    p.add_argument("action")
    command(build, "gl", cmd_build_gl, [dims], help="gl(m|n) with its defining realization")

    om = groups.add_parser("omni", help="the omni-Lie superalgebra gl(V)+V").add_subparsers(
        dest="cmd", required=True)
    command(om, "check", cmd_omni_check, [dims], help="Leibniz rule and J1 = T")
    command(om, "table", cmd_omni_table, [dims], help="structure constants of the three products")

    di = groups.add_parser("dirac", help="Dirac structures").add_subparsers(
        dest="cmd", required=True)
    command(di, "check", cmd_dirac_check, help="isotropic, maximal, closed").add_argument("subspace")
    p = command(di, "from-lie", cmd_dirac_from_lie, help="Dirac structure of a Lie superalgebra")
    p.add_argument("algebra")
    p.add_argument("--ambient", nargs=2, type=int, metavar=("M", "N"), required=True)
    p.add_argument("--embed", nargs="+", metavar="NAME",
                   help="basis vectors of V receiving the algebra basis, in order")
    command(di, "to-lie", cmd_dirac_to_lie, help="Lie superalgebra of a Dirac structure").add_argument(
        "subspace")
    command(di, "pair-check", cmd_dirac_pair_check,
            help="characteristic pair (D, pi) of a subspace, or a pair document").add_argument(
        "document")
    p = command(di, "enumerate", cmd_dirac_enumerate, [dims],
                help="count both sides of the correspondence over F_p")
    p.add_argument("--list", action="store_true", help="also print every Lie structure")

    l2 = groups.add_parser("lie2", help="Lie 2-superalgebras").add_subparsers(
        dest="cmd", required=True)
    p = command(l2, "from-omni", cmd_lie2_from_omni, [dims], help="V -> gl(V)+V")
    p.add_argument("--check", action="store_true", help="verify the nine axioms")
    command(l2, "check", cmd_lie2_check, help="the nine axioms").add_argument("lie2")
    command(l2, "to-crossed", cmd_lie2_to_crossed, help="strict -> crossed module").add_argument("lie2")
    command(l2, "from-crossed", cmd_lie2_from_crossed, help="crossed module -> strict").add_argument(
        "crossed")
    p = command(l2, "skeletal", cmd_lie2_skeletal, help="K -0-> g with l3 = B([x,y],z)")
    p.add_argument("algebra")
    p.add_argument("--supertrace", action="store_true",
                   help="B(x,y) = str(xy) in the document's realization")
    p.add_argument("--check", action="store_true", help="verify the nine axioms")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "field"):
        args.field = None
    try:
        return args.fn(args)
    except (DocumentError, InputError, ValueError, ZeroDivisionError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"superomni: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
