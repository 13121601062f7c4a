"""JSON documents for algebras, subspaces, actions and Lie 2-superalgebras.

Scalars are written as strings (``"3/2"``, ``"-1"``) so no value ever
passes through floating point.  Parsing is strict: unknown names,
duplicate entries and malformed scalars raise :class:`DocumentError`.
See ``docs/formats.md`` for the schemas.
"""

from __future__ import annotations

import json
from pathlib import Path

from .liesuper import BracketTable, EvenBilinearForm, Table, densify
from .scalars import QQ, Field, PrimeField
from .superlinalg import (
    GradedSpace,
    GradedSubspace,
    SuperMap,
    SuperSpace,
    SuperVector,
    gl_space,
    subspace_from_vectors,
    supertrace,
)


class DocumentError(ValueError):
    """Malformed input document."""


def parse_field(desc) -> Field:
    if desc is None or desc in ("Q", "QQ"):
        return QQ
    try:
        if isinstance(desc, str) and desc.upper().startswith("F"):
            desc = desc[1:]
        return PrimeField(int(desc))
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"field: {exc}") from None


def field_json(field: Field):
    return "Q" if field.characteristic == 0 else field.characteristic


def parse_scalar(field: Field, value, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DocumentError(f"{where}: scalar must be an integer or a string like '3/2'")
    try:
        return field(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad scalar {value!r} ({exc})") from None


def format_scalar(c) -> str:
    return str(c)


def parse_space(desc: dict, field: Field, where: str = "space") -> GradedSpace:
    if not isinstance(desc, dict):
        raise DocumentError(f"{where}: expected an object")
    try:
        if "names" in desc:
            names, pars = desc["names"], desc.get("parities")
            if not isinstance(names, list) or not isinstance(pars, list):
                raise DocumentError(f"{where}: 'names' and 'parities' must be lists")
            m = pars.count(0)
            if pars == [0] * m + [1] * (len(pars) - m):
                return SuperSpace(m, len(pars) - m, field, names[:m], names[m:])
            return GradedSpace(names, pars, field)
        even, odd = desc.get("even", []), desc.get("odd", [])
        if not isinstance(even, list) or not isinstance(odd, list):
            raise DocumentError(f"{where}: 'even' and 'odd' must be lists of names")
        return SuperSpace(len(even), len(odd), field, even, odd)
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"{where}: {exc}") from None


def space_json(space: GradedSpace) -> dict:
    m = space.even_dim
    if space.parities == (0,) * m + (1,) * space.odd_dim:
        return {"even": list(space.names[:m]), "odd": list(space.names[m:])}
    return {"names": list(space.names), "parities": list(space.parities)}


def parse_vector(space: GradedSpace, coeffs, where: str) -> SuperVector:
    if not isinstance(coeffs, dict):
        raise DocumentError(f"{where}: expected an object of name -> coefficient")
    coords = [space.field.zero] * space.dim
    for name, c in coeffs.items():
        if name not in space.names:
            raise DocumentError(f"{where}: unknown basis name {name!r}")
        coords[space.index(name)] += parse_scalar(space.field, c, f"{where}.{name}")
    return SuperVector(space, tuple(coords))


def vector_json(v: SuperVector) -> dict:
    return {v.space.names[i]: format_scalar(v.coords[i]) for i in v.support()}


def parse_table(inputs, target, entries, where: str) -> Table:
    if entries is None:
        entries = []
    if not isinstance(entries, list):
        raise DocumentError(f"{where}: expected a list of entries")
    values = {}
    for n, ent in enumerate(entries):
        loc = f"{where}[{n}]"
        if not isinstance(ent, dict):
            raise DocumentError(f"{loc}: expected an object")
        if "args" in ent:
            args = ent["args"]
        else:
            args = [ent.get("left"), ent.get("right")]
        if not isinstance(args, list) or len(args) != len(inputs):
            raise DocumentError(f"{loc}: expected {len(inputs)} arguments")
        idx = []
        for space, a in zip(inputs, args):
            if a not in space.names:
                raise DocumentError(f"{loc}: unknown basis name {a!r}")
            idx.append(space.index(a))
        idx = tuple(idx)
        if idx in values:
            raise DocumentError(f"{loc}: duplicate entry for {tuple(args)}")
        values[idx] = parse_vector(target, ent.get("value", {}), f"{loc}.value")
    return Table(inputs, target, values)


def table_json(table: Table, pair_style: bool = False) -> list:
    out = []
    for idx, val in table.nonzero_items():
        args = [s.names[i] for s, i in zip(table.inputs, idx)]
        v = vector_json(densify(table.target, val))
        if pair_style:
            out.append({"left": args[0], "right": args[1], "value": v})
        else:
            out.append({"args": args, "value": v})
    return out


def _object(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise DocumentError(f"{where}: expected an object")
    return value


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"{where}: expected a list")
    return value


def _expect_kind(doc, kind: str):
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("kind", kind) != kind:
        raise DocumentError(f"expected a {kind!r} document, got {doc.get('kind')!r}")


# algebras

def parse_algebra(doc: dict, field: Field | None = None) -> BracketTable:
    _expect_kind(doc, "algebra")
    field = field or parse_field(doc.get("field"))
    space = parse_space(doc, field, "algebra")
    t = parse_table((space, space), space, doc.get("brackets"), "brackets")
    return BracketTable(space, dict(t.nonzero_items()))


def algebra_doc(omega: BracketTable, **extra) -> dict:
    doc = {"kind": "algebra", "field": field_json(omega.space.field)}
    doc.update(space_json(omega.space))
    doc["brackets"] = table_json(omega, pair_style=True)
    doc.update(extra)
    return doc


def parse_realization(doc: dict, omega: BracketTable) -> list[SuperMap]:
    """Matrix images of the basis from an algebra document's ``realization``."""
    real = doc.get("realization")
    if real is None:
        raise DocumentError("algebra has no 'realization' (needed for the supertrace form)")
    real = _object(real, "realization")
    module = parse_space(real.get("module", {}), omega.space.field, "realization.module")
    images = _object(real.get("images", {}), "realization.images")
    for name in images:
        if name not in omega.space.names:
            raise DocumentError(f"realization.images: unknown algebra element {name!r}")
    return [_parse_map(module, images.get(n, {}), f"realization.images.{n}")
            for n in omega.space.names]


def realization_json(module: GradedSpace, maps) -> dict:
    return {"module": space_json(module),
            "images": {n: vector_json(a.to_vector()) for n, a in maps}}


def supertrace_form_from(images: list[SuperMap], space: GradedSpace) -> EvenBilinearForm:
    gram = [[supertrace(a @ b) for b in images] for a in images]
    return EvenBilinearForm(space, gram)


def parse_form(doc: dict, omega: BracketTable) -> EvenBilinearForm:
    form = doc.get("form")
    if form is None:
        raise DocumentError("algebra has no 'form'")
    sp = omega.space
    gram = [[sp.field.zero] * sp.dim for _ in range(sp.dim)]
    for n, ent in enumerate(_list(form, "form")):
        args = _object(ent, f"form[{n}]").get("args", [])
        if not isinstance(args, list) or len(args) != 2 or any(a not in sp.names for a in args):
            raise DocumentError(f"form[{n}]: bad arguments {args!r}")
        gram[sp.index(args[0])][sp.index(args[1])] = parse_scalar(sp.field, ent.get("value"), f"form[{n}]")
    try:
        return EvenBilinearForm(sp, gram)
    except ValueError as exc:
        raise DocumentError(f"form: {exc}") from None


def form_json(form: EvenBilinearForm) -> list:
    sp = form.space
    return [{"args": [sp.names[i], sp.names[j]], "value": format_scalar(c)}
            for i, row in enumerate(form.gram) for j, c in enumerate(row) if c]


def _parse_map(space: GradedSpace, coeffs, where: str) -> SuperMap:
    v = parse_vector(gl_space(space), coeffs, where)
    return SuperMap.from_vector(v, space)


# actions

def parse_action(doc: dict, algebra: BracketTable) -> tuple[GradedSpace, list[SuperMap]]:
    _expect_kind(doc, "action")
    field = algebra.space.field
    if "field" in doc and parse_field(doc["field"]) != field:
        raise DocumentError("action and algebra use different fields")
    module = parse_space(doc.get("module", {}), field, "module")
    images = _object(doc.get("images", {}), "images")
    for name in images:
        if name not in algebra.space.names:
            raise DocumentError(f"images: unknown algebra element {name!r}")
    return module, [_parse_map(module, images.get(n, {}), f"images.{n}")
                    for n in algebra.space.names]


# subspaces

def parse_subspace(doc: dict) -> GradedSubspace:
    from .omni import omni_space

    _expect_kind(doc, "subspace")
    field = parse_field(doc.get("field"))
    amb = _object(doc.get("ambient", {}), "ambient")
    V = parse_space(amb, field, "ambient")
    part = amb.get("part", "omni")
    if part == "omni":
        ambient = omni_space(V)
    elif part == "V":
        ambient = V
    else:
        raise DocumentError(f"ambient.part must be 'omni' or 'V', got {part!r}")
    gens = _list(doc.get("generators", []), "generators")
    vecs = [parse_vector(ambient, g, f"generators[{n}]") for n, g in enumerate(gens)]
    return subspace_from_vectors(ambient, vecs)


def subspace_doc(L: GradedSubspace, V: GradedSpace, part: str = "omni") -> dict:
    amb = space_json(V)
    amb["part"] = part
    return {"kind": "subspace", "field": field_json(V.field), "ambient": amb,
            "generators": [vector_json(v) for v in L.basis()]}


def parse_pair(doc: dict):
    """A characteristic pair: ``D`` inside gl(V) and ``pi`` on chosen vectors of V."""
    from .dirac import CharacteristicPair, GlValuedMap

    _expect_kind(doc, "pair")
    field = parse_field(doc.get("field"))
    V = parse_space(doc.get("space", {}), field, "space")
    G = gl_space(V)
    D = subspace_from_vectors(G, [parse_vector(G, g, f"D[{n}]")
                                  for n, g in enumerate(_list(doc.get("D", []), "D"))])
    xs, imgs = [], []
    for n, ent in enumerate(_list(doc.get("pi", []), "pi")):
        if not isinstance(ent, dict):
            raise DocumentError(f"pi[{n}]: expected an object with 'at' and 'image'")
        xs.append(parse_vector(V, ent.get("at", {}), f"pi[{n}].at"))
        imgs.append(_parse_map(V, ent.get("image", {}), f"pi[{n}].image"))
    try:
        return CharacteristicPair(V, D, GlValuedMap(V, xs, imgs))
    except ValueError as exc:
        raise DocumentError(f"pi: {exc}") from None


# Lie 2-superalgebras and crossed modules

def parse_lie2(doc: dict):
    from .lie2 import Lie2Superalgebra

    _expect_kind(doc, "lie2")
    field = parse_field(doc.get("field"))
    v0 = parse_space(doc.get("v0", {}), field, "v0")
    v1 = parse_space(doc.get("v1", {}), field, "v1")
    d_cols = _object(doc.get("d", {}), "d")
    for name in d_cols:
        if name not in v1.names:
            raise DocumentError(f"d: unknown V1 element {name!r}")
    d = SuperMap.from_columns(v1, v0, [parse_vector(v0, d_cols.get(n, {}), f"d.{n}")
                                       for n in v1.names])
    tables = {
        "l2_00": parse_table((v0, v0), v0, doc.get("l2_00"), "l2_00"),
        "l2_01": parse_table((v0, v1), v1, doc.get("l2_01"), "l2_01"),
        "l2_11": parse_table((v1, v1), v1, doc.get("l2_11"), "l2_11"),
        "l3": parse_table((v0, v0, v0), v1, doc.get("l3"), "l3"),
    }
    l2_10 = None
    if "l2_10" in doc:
        l2_10 = dict(parse_table((v1, v0), v1, doc["l2_10"], "l2_10").nonzero_items())
    return Lie2Superalgebra.build(
        v0, v1, d, dict(tables["l2_00"].nonzero_items()), dict(tables["l2_01"].nonzero_items()),
        l2_10, dict(tables["l2_11"].nonzero_items()), dict(tables["l3"].nonzero_items()))


def lie2_doc(T) -> dict:
    d_cols = {}
    for a, name in enumerate(T.v1.names):
        col = SuperVector(T.v0, tuple(row[a] for row in T.d.rows))
        if not col.is_zero():
            d_cols[name] = vector_json(col)
    return {
        "kind": "lie2", "field": field_json(T.v0.field),
        "v0": space_json(T.v0), "v1": space_json(T.v1), "d": d_cols,
        "l2_00": table_json(T.l2_00), "l2_01": table_json(T.l2_01),
        "l2_10": table_json(T.l2_10), "l2_11": table_json(T.l2_11),
        "l3": table_json(T.l3),
    }


def parse_crossed(doc: dict):
    from .lie2 import CrossedModule

    _expect_kind(doc, "crossed")
    field = parse_field(doc.get("field"))
    g = parse_algebra(dict(_object(doc.get("g", {}), "g"), kind="algebra"), field)
    h = parse_algebra(dict(_object(doc.get("h", {}), "h"), kind="algebra"), field)
    action = parse_table((g.space, h.space), h.space, doc.get("action"), "action")
    phi_cols = _object(doc.get("phi", {}), "phi")
    for name in phi_cols:
        if name not in h.space.names:
            raise DocumentError(f"phi: unknown h element {name!r}")
    phi = SuperMap.from_columns(h.space, g.space,
                                [parse_vector(g.space, phi_cols.get(n, {}), f"phi.{n}")
                                 for n in h.space.names])
    return CrossedModule(g, h, action, phi)


def crossed_doc(C) -> dict:
    def sub(omega):
        d = space_json(omega.space)
        d["brackets"] = table_json(omega, pair_style=True)
        return d

    phi_cols = {}
    for a, name in enumerate(C.h.space.names):
        col = SuperVector(C.g.space, tuple(row[a] for row in C.phi.rows))
        if not col.is_zero():
            phi_cols[name] = vector_json(col)
    return {"kind": "crossed", "field": field_json(C.g.space.field),
            "g": sub(C.g), "h": sub(C.h), "action": table_json(C.action), "phi": phi_cols}


# files

def load(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
