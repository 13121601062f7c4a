"""Lie 2-superalgebras (2-term L-infinity superalgebras).

Data ``(V1 -d-> V0, l2, l3)``.  Elements of V1 carry only their Z2 parity;
the homological level is given by which table an index belongs to.
``l2`` is stored as four tables (V0V0, V0V1, V1V0, V1V1) so that the
skew-symmetry and vanishing axioms are genuine checks rather than
built-in conventions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .liesuper import (
    BracketTable,
    EvenBilinearForm,
    Table,
    Verdict,
    all_of,
    check_action,
    check_lie,
    check_quadratic_compatible,
    combine,
    densify,
    sign,
    sparse,
)
from .omni import OmniElement, bracket, embed, jacobiator_t, omni_space
from .superlinalg import GradedSpace, SuperMap, SuperSpace, SuperVector


@dataclass(frozen=True)
class Lie2Superalgebra:
    v0: GradedSpace
    v1: GradedSpace
    d: SuperMap            # V1 -> V0
    l2_00: Table           # V0 x V0 -> V0
    l2_01: Table           # V0 x V1 -> V1
    l2_10: Table           # V1 x V0 -> V1
    l2_11: Table           # V1 x V1 -> V1
    l3: Table              # V0 x V0 x V0 -> V1

    def __post_init__(self):
        v0, v1 = self.v0, self.v1
        expected = {
            "l2_00": ((v0, v0), v0), "l2_01": ((v0, v1), v1),
            "l2_10": ((v1, v0), v1), "l2_11": ((v1, v1), v1),
            "l3": ((v0, v0, v0), v1),
        }
        for name, (ins, out) in expected.items():
            t = getattr(self, name)
            if t.inputs != ins or t.target != out:
                raise ValueError(f"{name} has the wrong signature")
        if self.d.domain != v1 or self.d.codomain != v0:
            raise ValueError("d must map V1 to V0")

    @classmethod
    def build(cls, v0: GradedSpace, v1: GradedSpace, d: SuperMap | None = None,
              l2_00: dict | None = None, l2_01: dict | None = None,
              l2_10: dict | None = None, l2_11: dict | None = None,
              l3: dict | None = None) -> Lie2Superalgebra:
        """Assemble from entry dictionaries; a missing ``l2_10`` is the skew mirror of ``l2_01``."""
        t01 = Table((v0, v1), v1, l2_01 or {})
        if l2_10 is None:
            l2_10 = {}
            for (i, a), val in t01.nonzero_items():
                s = -sign(v0.parities[i] * v1.parities[a])
                l2_10[(a, i)] = {k: s * c for k, c in val.items()}
        return cls(v0, v1, d if d is not None else SuperMap.zero(v1, v0),
                   Table((v0, v0), v0, l2_00 or {}), t01,
                   Table((v1, v0), v1, l2_10), Table((v1, v1), v1, l2_11 or {}),
                   Table((v0, v0, v0), v1, l3 or {}))

    def replace(self, **changes) -> Lie2Superalgebra:
        fields = {k: getattr(self, k) for k in
                  ("v0", "v1", "d", "l2_00", "l2_01", "l2_10", "l2_11", "l3")}
        fields.update(changes)
        return Lie2Superalgebra(**fields)

    def is_strict(self) -> bool:
        return not self.l3.nonzero_items()

    def is_skeletal(self) -> bool:
        return self.d.is_zero()


class _Ops:
    """Sparse evaluation of the structure maps on tagged arguments."""

    def __init__(self, T: Lie2Superalgebra):
        self.T = T
        dcols = {}
        for a in range(T.v1.dim):
            col = {i: row[a] for i, row in enumerate(T.d.rows) if row[a]}
            dcols[a] = col
        self.dcols = dcols

    def d(self, h: dict) -> dict:
        acc: dict = {}
        for a, c in h.items():
            acc = combine((1, acc), (c, self.dcols[a]))
        return acc

    def b00(self, x, y):
        return self.T.l2_00.evaluate_sparse(x, y)

    def b01(self, x, h):
        return self.T.l2_01.evaluate_sparse(x, h)

    def b10(self, h, x):
        return self.T.l2_10.evaluate_sparse(h, x)

    def b11(self, h, k):
        return self.T.l2_11.evaluate_sparse(h, k)

    def l3(self, x, y, z):
        return self.T.l3.evaluate_sparse(x, y, z)


def _delta_terms(ops: _Ops, p0, i, j, k, m):
    """The ten terms of the coboundary of l3 in the order they are usually written."""
    x, y, z, w = p0[i], p0[j], p0[k], p0[m]
    X, Y, Z, W = {i: 1}, {j: 1}, {k: 1}, {m: 1}
    b00, b01, b10, l3 = ops.b00, ops.b01, ops.b10, ops.l3
    return [
        (1, b01(X, l3(Y, Z, W))),
        (-sign(x * y), b01(Y, l3(X, Z, W))),
        (sign((x + y) * z), b01(Z, l3(X, Y, W))),
        (1, b10(l3(X, Y, Z), W)),
        (-1, l3(b00(X, Y), Z, W)),
        (sign(y * z), l3(b00(X, Z), Y, W)),
        (-sign((y + z) * w), l3(b00(X, W), Y, Z)),
        (1, l3(X, b00(Y, Z), W)),
        (-sign(z * w), l3(X, b00(Y, W), Z)),
        (-1, l3(X, Y, b00(Z, W))),
    ]


def delta_l3(ops: _Ops, p0, i, j, k, m) -> dict:
    """Super Chevalley-Eilenberg coboundary of l3 on a basis quadruple.

    ``[l3(x,y,z), w]`` equals ``-(-1)^{(x+y+z)w} w.l3(x,y,z)``, and moving a
    bracket into the second slot of l3 costs one transposition.
    """
    return combine(*_delta_terms(ops, p0, i, j, k, m))


# terms 4, 8 and 9 with the opposite sign
_VARIANT_FLIPS = (3, 7, 8)


def delta_l3_variant(T: Lie2Superalgebra) -> Verdict:
    """Axiom (i) with the signs of terms 4, 8 and 9 reversed.

    This sign pattern is sometimes quoted for (i).  Kept as a diagnostic:
    it fails on genuine Lie 2-superalgebras such as the string example,
    which is why :func:`check_lie2_axioms` uses :func:`delta_l3`.
    """
    ops = _Ops(T)
    p0 = T.v0.parities

    def fn(i, j, k, m):
        terms = _delta_terms(ops, p0, i, j, k, m)
        return combine(*((-c if n in _VARIANT_FLIPS else c, v) for n, (c, v) in enumerate(terms)))

    return _run("(i) variant signs", (T.v0,) * 4, T.v1, fn)


def _witness(spaces, idx):
    return tuple(s.names[i] for s, i in zip(spaces, idx))


def _run(name, spaces, target, fn):
    """Evaluate ``fn`` on every basis tuple; first nonzero result fails."""
    n = 0
    for idx in itertools.product(*(range(s.dim) for s in spaces)):
        n += 1
        res = fn(*idx)
        if res:
            return Verdict(name, False, _witness(spaces, idx), densify(target, res), n)
    return Verdict(name, True, checked=n)


def check_lie2_axioms(T: Lie2Superalgebra) -> Verdict:
    """Axioms (a)-(i) on all homogeneous basis tuples, one verdict each."""
    ops = _Ops(T)
    v0, v1 = T.v0, T.v1
    p0, p1 = v0.parities, v1.parities
    u = lambda i: {i: 1}  # noqa: E731

    def a(i, j):
        return combine((1, ops.b00(u(i), u(j))), (sign(p0[i] * p0[j]), ops.b00(u(j), u(i))))

    def b(i, h):
        return combine((1, ops.b01(u(i), u(h))), (sign(p0[i] * p1[h]), ops.b10(u(h), u(i))))

    def c(h, k):
        return ops.b11(u(h), u(k))

    def d_(i, j, k):
        x, y, z = p0[i], p0[j], p0[k]
        l = ops.l3(u(i), u(j), u(k))
        r1 = combine((1, l), (sign(x * y), ops.l3(u(j), u(i), u(k))))
        if r1:
            return r1
        return combine((1, l), (sign(y * z), ops.l3(u(i), u(k), u(j))))

    def e(i, h):
        return combine((1, ops.d(ops.b01(u(i), u(h)))), (-1, ops.b00(u(i), ops.d(u(h)))))

    def f(h, k):
        return combine((1, ops.b01(ops.d(u(h)), u(k))), (-1, ops.b10(u(h), ops.d(u(k)))))

    def g(i, j, k):
        y, z = p0[j], p0[k]
        return combine((1, ops.d(ops.l3(u(i), u(j), u(k)))),
                       (1, ops.b00(ops.b00(u(i), u(j)), u(k))),
                       (-1, ops.b00(u(i), ops.b00(u(j), u(k)))),
                       (-sign(y * z), ops.b00(ops.b00(u(i), u(k)), u(j))))

    def h_(i, j, hh):
        y, hp = p0[j], p1[hh]
        return combine((1, ops.l3(u(i), u(j), ops.d(u(hh)))),
                       (1, ops.b01(ops.b00(u(i), u(j)), u(hh))),
                       (-1, ops.b01(u(i), ops.b01(u(j), u(hh)))),
                       (-sign(y * hp), ops.b10(ops.b01(u(i), u(hh)), u(j))))

    def i_(i, j, k, m):
        return delta_l3(ops, p0, i, j, k, m)

    verdicts = [
        _run("(a) [x,y] super skew", (v0, v0), v0, a),
        _run("(b) [x,h] super skew", (v0, v1), v1, b),
        _run("(c) [h,k] = 0", (v1, v1), v1, c),
        _run("(d) l3 totally super skew", (v0, v0, v0), v1, d_),
        _run("(e) d[x,h] = [x,dh]", (v0, v1), v0, e),
        _run("(f) [dh,k] = [h,dk]", (v1, v1), v1, f),
        _run("(g) d l3 = Jacobiator", (v0, v0, v0), v0, g),
        _run("(h) l3(x,y,dh) = Jacobiator", (v0, v0, v1), v1, h_),
        _run("(i) delta l3 = 0", (v0, v0, v0, v0), v1, i_),
    ]
    return all_of("Lie 2-superalgebra", verdicts)


def _require_char(space: GradedSpace):
    space.field.require_invertible(2, 3)


def lie2_from_omni(space: GradedSpace) -> Lie2Superalgebra:
    """``V --incl--> gl(V)+V`` with ``l2`` the skew bracket and ``l3 = -(-1)^{|z||x|} T``."""
    _require_char(space)
    E = omni_space(space)
    n2 = space.dim * space.dim
    basis = [OmniElement.from_vector(v, space) for v in E.basis()]
    vecs = space.basis()

    def v_part(e: OmniElement) -> dict:
        if not e.A.is_zero():
            raise AssertionError("mixed bracket has a gl-component")
        return sparse(e.x)

    l2_00 = {(i, j): sparse(bracket(a, b).to_vector())
             for i, a in enumerate(basis) for j, b in enumerate(basis)}
    l2_01 = {(i, h): v_part(bracket(a, embed(vh)))
             for i, a in enumerate(basis) for h, vh in enumerate(vecs)}
    l2_10 = {(h, i): v_part(bracket(embed(vh), a))
             for i, a in enumerate(basis) for h, vh in enumerate(vecs)}
    l2_11 = {(h, k): v_part(bracket(embed(vh), embed(vk)))
             for h, vh in enumerate(vecs) for k, vk in enumerate(vecs)}
    par = E.parities
    l3 = {}
    for i, j, k in itertools.product(range(E.dim), repeat=3):
        t = jacobiator_t(basis[i], basis[j], basis[k])
        s = -sign(par[k] * par[i])
        l3[(i, j, k)] = {a: s * c for a, c in sparse(t).items()}
    z, o = space.field.zero, space.field.one
    d = SuperMap(space, E, [[o if r == n2 + a else z for a in range(space.dim)]
                            for r in range(E.dim)])
    return Lie2Superalgebra(E, space, d,
                            Table((E, E), E, l2_00), Table((E, space), space, l2_01),
                            Table((space, E), space, l2_10), Table((space, space), space, l2_11),
                            Table((E, E, E), space, l3))


@dataclass(frozen=True)
class CrossedModule:
    """Lie superalgebras ``g``, ``h``, an action of g on h and ``phi: h -> g``."""

    g: BracketTable
    h: BracketTable
    action: Table          # g x h -> h
    phi: SuperMap          # h -> g

    def __post_init__(self):
        if self.action.inputs != (self.g.space, self.h.space) or self.action.target != self.h.space:
            raise ValueError("action must be a table g x h -> h")
        if self.phi.domain != self.h.space or self.phi.codomain != self.g.space:
            raise ValueError("phi must map h to g")

    def action_maps(self) -> list[SuperMap]:
        hs = self.h.space
        return [SuperMap.from_columns(hs, hs, [self.action.entry(i, a) for a in range(hs.dim)])
                for i in range(self.g.space.dim)]


def check_crossed_module(C: CrossedModule) -> Verdict:
    """Lie axioms on g and h, the action axiom, parity of phi and the two identities."""
    g, h = C.g.space, C.h.space
    parts = [check_lie(C.g), check_lie(C.h)]
    parts[0].name, parts[1].name = "g is a Lie superalgebra", "h is a Lie superalgebra"
    try:
        parts.append(check_action(C.g, C.action_maps(), h))
    except ValueError as exc:
        parts.append(Verdict("action axiom", False, detail=str(exc)))
    if C.phi.is_homogeneous(0):
        parts.append(Verdict("phi even", True, checked=1))
    else:
        parts.append(Verdict("phi even", False, detail="phi does not preserve parity", checked=1))
    phi_cols = {a: {i: row[a] for i, row in enumerate(C.phi.rows) if row[a]} for a in range(h.dim)}

    def phi(v: dict) -> dict:
        return combine(*((c, phi_cols[a]) for a, c in v.items()))

    def equivariance(i, a):
        return combine((1, phi(C.action.evaluate_sparse({i: 1}, {a: 1}))),
                       (-1, C.g.evaluate_sparse({i: 1}, phi_cols[a])))

    def peiffer(a, b):
        return combine((1, C.action.evaluate_sparse(phi_cols[a], {b: 1})),
                       (-1, C.h.evaluate_sparse({a: 1}, {b: 1})))

    parts.append(_run("phi(x.h) = [x, phi(h)]", (g, h), g, equivariance))
    parts.append(_run("phi(h).k = [h, k]", (h, h), h, peiffer))
    return all_of("crossed module", parts)


def strict_from_crossed_module(C: CrossedModule) -> Lie2Superalgebra:
    """``V0 = g``, ``V1 = h``, ``d = phi``, ``l2(x,h) = x.h``, ``l2(h,k) = 0``, ``l3 = 0``."""
    verdict = check_crossed_module(C)
    if not verdict:
        raise ValueError(f"invalid crossed module: {verdict.lines()[0]}")
    g, h = C.g.space, C.h.space
    l2_10 = {}
    for (i, a), val in C.action.nonzero_items():
        s = -sign(g.parities[i] * h.parities[a])
        l2_10[(a, i)] = {k: s * c for k, c in val.items()}
    return Lie2Superalgebra(g, h, C.phi, Table((g, g), g, dict(C.g.nonzero_items())),
                            Table((g, h), h, dict(C.action.nonzero_items())),
                            Table((h, g), h, l2_10), Table((h, h), h), Table((g, g, g), h))


def crossed_module_from_strict(T: Lie2Superalgebra) -> CrossedModule:
    """``g = V0``, ``[h,k]_h = l2(dh, k)``, ``x.h = l2(x, h)``, ``phi = d``."""
    if not T.is_strict():
        raise ValueError("l3 is not zero")
    verdict = check_lie2_axioms(T)
    if not verdict:
        raise ValueError(f"not a Lie 2-superalgebra: {verdict.lines()[0]}")
    ops = _Ops(T)
    v0, v1 = T.v0, T.v1
    h_entries = {(a, b): ops.b01(ops.d({a: 1}), {b: 1})
                 for a in range(v1.dim) for b in range(v1.dim)}
    return CrossedModule(BracketTable(v0, dict(T.l2_00.nonzero_items())),
                         BracketTable(v1, h_entries),
                         Table((v0, v1), v1, dict(T.l2_01.nonzero_items())), T.d)


def skeletal_from_quadratic(g: BracketTable, form: EvenBilinearForm) -> Lie2Superalgebra:
    """``K --0--> g`` with ``l2 = [.,.]``, ``l2(x,h) = 0``, ``l3(x,y,z) = B([x,y], z)``."""
    lie = check_lie(g)
    if not lie:
        raise ValueError(f"not a Lie superalgebra: {lie.lines()[0]}")
    if not form.is_nondegenerate():
        raise ValueError("bilinear form is degenerate")
    inv = check_quadratic_compatible(g, form)
    if not inv:
        raise ValueError(f"form is not invariant: {inv.lines()[0]}")
    sp = g.space
    K = SuperSpace(1, 0, sp.field, ["c"])
    l3 = {}
    for i, j, k in itertools.product(range(sp.dim), repeat=3):
        val = form.value_sparse(g.sparse_entry(i, j), {k: 1})
        if val:
            l3[(i, j, k)] = {0: val}
    return Lie2Superalgebra.build(sp, K, l2_00=dict(g.nonzero_items()), l3=l3)


def lie2_tables_equal(a: Lie2Superalgebra, b: Lie2Superalgebra) -> bool:
    return a == b


def jacobi_consistency(T: Lie2Superalgebra, space: GradedSpace) -> Verdict:
    """``d l3(x,y,z) + (-1)^{|z||x|} embed(T(x,y,z)) = 0`` for the omni construction."""
    E = T.v0
    basis = [OmniElement.from_vector(v, space) for v in E.basis()]
    ops = _Ops(T)
    par = E.parities

    def fn(i, j, k):
        t = sparse(embed(jacobiator_t(basis[i], basis[j], basis[k])).to_vector())
        return combine((1, ops.d(ops.l3({i: 1}, {j: 1}, {k: 1}))), (sign(par[k] * par[i]), t))

    return _run("d l3 + (-1)^{zx} T = 0", (E, E, E), E, fn)


def corrupt(T: Lie2Superalgebra, table: str, idx: Sequence[int], value: SuperVector) -> Lie2Superalgebra:
    """Copy of ``T`` with one structure constant replaced (negative-path testing)."""
    return T.replace(**{table: getattr(T, table).with_entry(tuple(idx), value)})
