"""Structure-constant tables on graded spaces and the Lie superalgebra laws.

A :class:`Table` stores a multilinear map by its values on basis tuples.
A :class:`BracketTable` is the binary case ``V x V -> V``; every check
below walks basis tuples in lexicographic order and reports the first
failure together with its exact residual.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import _linalg
from .superlinalg import (
    GradedSpace,
    SuperMap,
    SuperVector,
    direct_sum,
    gl_basis,
    gl_space,
    super_commutator,
    supertrace,
)


# sparse vectors: dict index -> nonzero scalar

def sparse(v: SuperVector) -> dict:
    return {i: c for i, c in enumerate(v.coords) if c}


def densify(space: GradedSpace, d: dict) -> SuperVector:
    z = space.field.zero
    coords = [z] * space.dim
    for i, c in d.items():
        coords[i] = coords[i] + c
    return SuperVector(space, tuple(coords))


def axpy(acc: dict, c, d: dict) -> dict:
    """``acc += c * d`` in place; returns ``acc``."""
    if not c:
        return acc
    for k, v in d.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def combine(*terms) -> dict:
    """Sum of ``(coefficient, sparse vector)`` pairs."""
    acc: dict = {}
    for c, d in terms:
        axpy(acc, c, d)
    return acc


def sign(*parity_products: int) -> int:
    return -1 if sum(parity_products) % 2 else 1


class Table:
    """Multilinear map ``inputs[0] x ... x inputs[k-1] -> target``."""

    def __init__(self, inputs: Sequence[GradedSpace], target: GradedSpace,
                 entries: dict | None = None):
        self.inputs = tuple(inputs)
        self.target = target
        self._e: dict[tuple, dict] = {}
        for idx, val in (entries or {}).items():
            idx = tuple(idx)
            if len(idx) != len(self.inputs):
                raise ValueError(f"index {idx} has the wrong arity")
            for space, i in zip(self.inputs, idx):
                if not 0 <= i < space.dim:
                    raise ValueError(f"index {idx} out of range")
            if isinstance(val, SuperVector):
                if val.space != target:
                    raise ValueError("table value outside the target space")
                val = sparse(val)
            else:
                val = {k: c for k, c in val.items() if c}
            if val:
                self._e[idx] = val

    @classmethod
    def from_function(cls, inputs: Sequence[GradedSpace], target: GradedSpace,
                      fn: Callable[..., SuperVector]):
        entries = {}
        for idx in itertools.product(*(range(s.dim) for s in inputs)):
            args = [s.basis_vector(i) for s, i in zip(inputs, idx)]
            entries[idx] = fn(*args).to_vector()
        return cls(inputs, target, entries)

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def sparse_entry(self, *idx) -> dict:
        return self._e.get(tuple(idx), {})

    def entry(self, *idx) -> SuperVector:
        return densify(self.target, self._e.get(tuple(idx), {}))

    def nonzero_items(self):
        return sorted(self._e.items())

    def evaluate_sparse(self, *args: dict) -> dict:
        acc: dict = {}
        for combo in itertools.product(*(a.items() for a in args)):
            ent = self._e.get(tuple(i for i, _ in combo))
            if ent:
                c = 1
                for _, a in combo:
                    c = c * a
                axpy(acc, c, ent)
        return acc

    def __call__(self, *args: SuperVector) -> SuperVector:
        for space, a in zip(self.inputs, args):
            if a.space != space:
                raise ValueError("argument is not in the input space")
        return densify(self.target, self.evaluate_sparse(*(sparse(a) for a in args)))

    def with_entry(self, idx: tuple, value: SuperVector) -> Table:
        entries = {k: dict(v) for k, v in self._e.items()}
        entries[tuple(idx)] = sparse(value)
        return self._rebuild(entries)

    def _rebuild(self, entries):
        return Table(self.inputs, self.target, entries)

    def __eq__(self, other):
        return (isinstance(other, Table) and self.inputs == other.inputs
                and self.target == other.target and self._e == other._e)

    def __hash__(self):
        return hash((self.inputs, self.target, len(self._e)))

    def __repr__(self):
        return f"Table(arity={self.arity}, nonzero={len(self._e)})"


class BracketTable(Table):
    """Bilinear operation ``V x V -> V`` given on ordered basis pairs."""

    def __init__(self, space: GradedSpace, entries: dict | None = None):
        super().__init__((space, space), space, entries)

    @property
    def space(self) -> GradedSpace:
        return self.target

    @classmethod
    def from_function(cls, space: GradedSpace, fn):
        t = Table.from_function((space, space), space, fn)
        return cls(space, dict(t._e))

    @classmethod
    def from_names(cls, space: GradedSpace, entries: dict[tuple[str, str], dict]):
        return cls(space, {(space.index(a), space.index(b)): space.from_dict(v)
                           for (a, b), v in entries.items()})

    def _rebuild(self, entries):
        return BracketTable(self.space, entries)

    def restrict_names(self):
        return {(self.space.names[i], self.space.names[j]): densify(self.space, v).as_dict()
                for (i, j), v in self.nonzero_items()}


def zero_bracket(space: GradedSpace) -> BracketTable:
    return BracketTable(space)


@dataclass
class Verdict:
    """Outcome of a check: first failing basis tuple and its exact residual."""

    name: str
    ok: bool
    witness: tuple | None = None
    residual: object = None
    checked: int = 0
    detail: str = ""
    children: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        out = {"check": self.name, "ok": self.ok, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.residual is not None:
            res = self.residual
            if isinstance(res, SuperVector):
                res = {k: str(v) for k, v in res.as_dict().items()}
            elif isinstance(res, dict):
                res = {k: str(v) for k, v in res.items()}
            else:
                res = str(res)
            out["residual"] = res
        if self.detail:
            out["detail"] = self.detail
        if self.children:
            out["parts"] = [c.to_dict() for c in self.children]
        return out

    def lines(self) -> list[str]:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name} ({self.checked} tuples)"
        if self.witness is not None:
            line += f" at ({', '.join(map(str, self.witness))})"
        if self.residual is not None:
            res = self.residual
            if isinstance(res, dict):
                res = " + ".join(f"{v}*{k}" for k, v in res.items())
            line += f": residual {res}"
        if self.detail:
            line += f" [{self.detail}]"
        out = [line]
        for c in self.children:
            out.extend("  " + s for s in c.lines())
        return out


def all_of(name: str, verdicts: Sequence[Verdict]) -> Verdict:
    return Verdict(name, all(verdicts), checked=sum(v.checked for v in verdicts),
                   children=list(verdicts))


def _fail(name, space, idx, residual: dict, checked, names=None):
    names = names or space.names
    return Verdict(name, False, tuple(names[i] for i in idx),
                   densify(space, residual), checked)


def check_graded(omega: Table) -> Verdict:
    """Every value ``omega(b_i, b_j, ...)`` is homogeneous of degree ``|i|+|j|+...``."""
    n = 0
    for idx in itertools.product(*(range(s.dim) for s in omega.inputs)):
        n += 1
        want = sum(s.parities[i] for s, i in zip(omega.inputs, idx)) % 2
        val = omega.sparse_entry(*idx)
        if any(omega.target.parities[k] != want for k in val):
            return Verdict("graded", False,
                           tuple(s.names[i] for s, i in zip(omega.inputs, idx)),
                           densify(omega.target, val), n,
                           detail=f"expected parity {want}")
    return Verdict("graded", True, checked=n)


def check_super_skew(omega: BracketTable) -> Verdict:
    """``[x,y] + (-1)^{|x||y|}[y,x] = 0`` on basis pairs."""
    par = omega.space.parities
    n = 0
    for i in range(omega.space.dim):
        for j in range(omega.space.dim):
            n += 1
            res = combine((1, omega.sparse_entry(i, j)),
                          (sign(par[i] * par[j]), omega.sparse_entry(j, i)))
            if res:
                return _fail("super skew-symmetry", omega.space, (i, j), res, n)
    return Verdict("super skew-symmetry", True, checked=n)


def jacobiator(omega: BracketTable, i: int, j: int, k: int) -> dict:
    """``(-1)^{zx}[[x,y],z] + (-1)^{xy}[[y,z],x] + (-1)^{yz}[[z,x],y]`` on basis vectors."""
    par = omega.space.parities
    x, y, z = par[i], par[j], par[k]

    def nested(a, b, c):
        return omega.evaluate_sparse(omega.sparse_entry(a, b), {c: 1})

    return combine((sign(z * x), nested(i, j, k)),
                   (sign(x * y), nested(j, k, i)),
                   (sign(y * z), nested(k, i, j)))


def check_super_jacobi(omega: BracketTable) -> Verdict:
    n = 0
    rng = range(omega.space.dim)
    for i, j, k in itertools.product(rng, rng, rng):
        n += 1
        res = jacobiator(omega, i, j, k)
        if res:
            return _fail("super Jacobi identity", omega.space, (i, j, k), res, n)
    return Verdict("super Jacobi identity", True, checked=n)


def check_lie(omega: BracketTable) -> Verdict:
    parts = [check_graded(omega)]
    if parts[0]:
        parts.append(check_super_skew(omega))
    if all(parts):
        parts.append(check_super_jacobi(omega))
    return all_of("Lie superalgebra", parts)


def is_lie(omega: BracketTable) -> bool:
    return bool(check_lie(omega))


def leibniz_defect(omega: BracketTable, i: int, j: int, k: int) -> dict:
    """``x o (y o z) - (x o y) o z - (-1)^{|x||y|} y o (x o z)``."""
    par = omega.space.parities
    ev = omega.evaluate_sparse
    return combine((1, ev({i: 1}, omega.sparse_entry(j, k))),
                   (-1, ev(omega.sparse_entry(i, j), {k: 1})),
                   (-sign(par[i] * par[j]), ev({j: 1}, omega.sparse_entry(i, k))))


def check_leibniz_rule(omega: BracketTable) -> Verdict:
    n = 0
    rng = range(omega.space.dim)
    for i, j, k in itertools.product(rng, rng, rng):
        n += 1
        res = leibniz_defect(omega, i, j, k)
        if res:
            return _fail("super Leibniz rule", omega.space, (i, j, k), res, n)
    return Verdict("super Leibniz rule", True, checked=n)


def _check_rho(algebra: BracketTable, rho: Sequence[SuperMap], module: GradedSpace):
    if len(rho) != algebra.space.dim:
        raise ValueError("need one image per basis vector of the algebra")
    for name, p, a in zip(algebra.space.names, algebra.space.parities, rho):
        if a.domain != module or a.codomain != module:
            raise ValueError(f"image of {name} does not act on the module")
        if not a.is_homogeneous(p):
            raise ValueError(f"image of {name} is not of parity {p}")


def check_action(algebra: BracketTable, rho: Sequence[SuperMap], module: GradedSpace) -> Verdict:
    """``rho([x,y])v = rho(x)rho(y)v - (-1)^{|x||y|} rho(y)rho(x)v`` on basis data."""
    _check_rho(algebra, rho, module)
    par = algebra.space.parities
    mats = [[{j: c for j, c in enumerate(r) if c} for r in a.rows] for a in rho]

    def act(a: int, v: dict) -> dict:
        out: dict = {}
        for i, row in enumerate(mats[a]):
            s = 0
            for j, c in row.items():
                if j in v:
                    s = s + c * v[j]
            if s:
                out[i] = s
        return out

    def act_combo(vec: dict, v: dict) -> dict:
        acc: dict = {}
        for a, c in vec.items():
            axpy(acc, c, act(a, v))
        return acc

    n = 0
    dim = algebra.space.dim
    for i in range(dim):
        for j in range(dim):
            for b in range(module.dim):
                n += 1
                v = {b: 1}
                res = combine((1, act_combo(algebra.sparse_entry(i, j), v)),
                              (-1, act(i, act(j, v))),
                              (sign(par[i] * par[j]), act(j, act(i, v))))
                if res:
                    return Verdict("action axiom", False,
                                   (algebra.space.names[i], algebra.space.names[j], module.names[b]),
                                   densify(module, res), n)
    return Verdict("action axiom", True, checked=n)


def semidirect_product(algebra: BracketTable, rho: Sequence[SuperMap],
                       module: GradedSpace) -> BracketTable:
    """Bracket on ``L + V``: ``[x+u, y+v] = [x,y] + x.v - (-1)^{|u||y|} y.u``."""
    verdict = check_action(algebra, rho, module)
    if not verdict:
        raise ValueError(f"not an action: {verdict.lines()[0]}")
    total = direct_sum(algebra.space, module)
    nl = algebra.space.dim
    entries = {}
    for (i, j), v in algebra.nonzero_items():
        entries[(i, j)] = v
    for i, a in enumerate(rho):
        pi = algebra.space.parities[i]
        for b in range(module.dim):
            col = {r: row[b] for r, row in enumerate(a.rows) if row[b]}
            if col:
                entries[(i, nl + b)] = {nl + r: c for r, c in col.items()}
                s = -sign(module.parities[b] * pi)
                entries[(nl + b, i)] = {nl + r: s * c for r, c in col.items()}
    return BracketTable(total, entries)


def gl_algebra(space: GradedSpace) -> BracketTable:
    """Structure constants of gl(V) on the elementary maps (row-major order)."""
    return BracketTable.from_function(
        gl_space(space),
        lambda a, b: super_commutator(SuperMap.from_vector(a, space),
                                      SuperMap.from_vector(b, space)).to_vector())


def identity_representation(space: GradedSpace) -> list[SuperMap]:
    """The tautological action of gl(V) on V, one image per elementary map."""
    return gl_basis(space)


def adjoint_representation(omega: BracketTable) -> list[SuperMap]:
    """``ad(b_i)`` as matrices: column ``j`` is ``[b_i, b_j]``."""
    sp = omega.space
    return [SuperMap.from_columns(sp, sp, [omega.entry(i, j) for j in range(sp.dim)])
            for i in range(sp.dim)]


def reorder_even_first(omega: BracketTable, space: GradedSpace) -> BracketTable:
    """Transport ``omega`` to ``space``, which must carry the same basis names."""
    if sorted(space.names) != sorted(omega.space.names):
        raise ValueError("spaces have different basis names")
    perm = [space.index(n) for n in omega.space.names]
    for old, new in enumerate(perm):
        if omega.space.parities[old] != space.parities[new]:
            raise ValueError("parities differ between the two bases")
    entries = {(perm[i], perm[j]): {perm[k]: c for k, c in v.items()}
               for (i, j), v in omega.nonzero_items()}
    return BracketTable(space, entries)


class EvenBilinearForm:
    """Scalar-valued even, super symmetric bilinear form given by its Gram matrix."""

    def __init__(self, space: GradedSpace, gram):
        gram = tuple(tuple(space.field(c) for c in r) for r in gram)
        n = space.dim
        if len(gram) != n or any(len(r) != n for r in gram):
            raise ValueError(f"expected a {n}x{n} Gram matrix")
        par = space.parities
        for i in range(n):
            for j in range(n):
                if par[i] != par[j] and gram[i][j]:
                    raise ValueError("form is not even: mixed-parity entry "
                                     f"({space.names[i]}, {space.names[j]})")
                if gram[i][j] != sign(par[i] * par[j]) * gram[j][i]:
                    raise ValueError("form is not super symmetric at "
                                     f"({space.names[i]}, {space.names[j]})")
        self.space = space
        self.gram = gram

    def __call__(self, x: SuperVector, y: SuperVector):
        total = self.space.field.zero
        for i, a in enumerate(x.coords):
            if a:
                for j, b in enumerate(y.coords):
                    if b and self.gram[i][j]:
                        total += a * b * self.gram[i][j]
        return total

    def value_sparse(self, x: dict, y: dict):
        total = 0
        for i, a in x.items():
            for j, b in y.items():
                g = self.gram[i][j]
                if g:
                    total = total + a * b * g
        return total

    def is_nondegenerate(self) -> bool:
        z = self.space.field.zero
        return _linalg.rank(self.gram, self.space.dim, z) == self.space.dim

    def __eq__(self, other):
        return isinstance(other, EvenBilinearForm) and self.space == other.space and self.gram == other.gram


def supertrace_form(space: GradedSpace) -> EvenBilinearForm:
    """``B(X, Y) = str(XY)`` on gl(V) in the elementary basis."""
    basis = gl_basis(space)
    gram = [[supertrace(a @ b) for b in basis] for a in basis]
    return EvenBilinearForm(gl_space(space), gram)


def check_quadratic_compatible(omega: BracketTable, form: EvenBilinearForm,
                               allow_degenerate: bool = False) -> Verdict:
    """``B(w(x,y), z) + (-1)^{|x||y|} B(y, w(x,z)) = 0`` on basis triples.

    This is ``ad x`` lying in the orthosymplectic algebra of ``B``.
    """
    if form.space != omega.space:
        raise ValueError("form and bracket live on different spaces")
    if not allow_degenerate and not form.is_nondegenerate():
        raise ValueError("bilinear form is degenerate")
    sp = omega.space
    par = sp.parities
    n = 0
    rng = range(sp.dim)
    for i, j, k in itertools.product(rng, rng, rng):
        n += 1
        val = (form.value_sparse(omega.sparse_entry(i, j), {k: 1})
               + sign(par[i] * par[j]) * form.value_sparse({j: 1}, omega.sparse_entry(i, k)))
        if val:
            return Verdict("invariance of B (ad x in o(V))", False,
                           (sp.names[i], sp.names[j], sp.names[k]), val, n)
    return Verdict("invariance of B (ad x in o(V))", True, checked=n)
