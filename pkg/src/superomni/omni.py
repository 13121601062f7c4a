"""The omni-Lie superalgebra ``E = gl(V) + V``.

Three products live on ``E``:

* the Leibniz product ``(A+x) o (B+y) = [A,B] + Ay``;
* its skew-symmetrisation ``[[A+x, B+y]] = [A,B] + (Ay - (-1)^{|x||y|} Bx)/2``;
* the V-valued pairing ``<A+x, B+y> = (Ay + (-1)^{|x||y|} Bx)/2``.

Formulas are written for homogeneous arguments and extended
multilinearly over the even/odd decomposition.
"""

from __future__ import annotations

import functools
import itertools
import os

from .liesuper import (
    BracketTable,
    Table,
    Verdict,
    all_of,
    check_leibniz_rule,
    combine,
    densify,
    sparse,
)
from .superlinalg import (
    GradedSpace,
    SuperMap,
    SuperVector,
    direct_sum,
    gl_basis,
    gl_space,
    super_commutator,
)

DEFAULT_MAX_DIM = 30


def max_dim(default: int = DEFAULT_MAX_DIM) -> int:
    env = os.environ.get("SUPEROMNI_MAX_DIM")
    return int(env) if env else default


def omni_space(space: GradedSpace) -> GradedSpace:
    """Coordinates of ``E``: all ``E[i,j]`` row-major, then the basis of V."""
    return direct_sum(gl_space(space), space)


class OmniElement:
    """A pair ``A + x`` with ``A`` in gl(V) and ``x`` in V."""

    __slots__ = ("A", "x")

    def __init__(self, A: SuperMap, x: SuperVector):
        if not A.is_endomorphism() or A.domain != x.space:
            raise ValueError("map and vector must live over the same space")
        self.A = A
        self.x = x

    @property
    def space(self) -> GradedSpace:
        return self.x.space

    @classmethod
    def zero(cls, space: GradedSpace) -> OmniElement:
        return cls(SuperMap.zero(space), space.zero())

    @classmethod
    def from_vector(cls, v: SuperVector, space: GradedSpace) -> OmniElement:
        n2 = space.dim * space.dim
        A = SuperMap.from_vector(SuperVector(gl_space(space), v.coords[:n2]), space)
        return cls(A, SuperVector(space, v.coords[n2:]))

    def to_vector(self) -> SuperVector:
        return SuperVector(omni_space(self.space), self.A.to_vector().coords + self.x.coords)

    def __add__(self, other: OmniElement) -> OmniElement:
        return OmniElement(self.A + other.A, self.x + other.x)

    def __sub__(self, other: OmniElement) -> OmniElement:
        return OmniElement(self.A - other.A, self.x - other.x)

    def __neg__(self) -> OmniElement:
        return OmniElement(-self.A, -self.x)

    def __mul__(self, c) -> OmniElement:
        return OmniElement(c * self.A, c * self.x)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, OmniElement) and self.A == other.A and self.x == other.x

    def __hash__(self):
        return hash((self.A, self.x))

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.x.is_zero()

    def parts(self) -> tuple[OmniElement, OmniElement]:
        (a0, a1), (x0, x1) = self.A.parts(), self.x.parts()
        return OmniElement(a0, x0), OmniElement(a1, x1)

    def homogeneous_parts(self) -> list[tuple[int, OmniElement]]:
        return [(p, e) for p, e in enumerate(self.parts()) if not e.is_zero()]

    def is_homogeneous(self, parity: int | None = None) -> bool:
        return self.to_vector().is_homogeneous(parity)

    @property
    def parity(self) -> int:
        return self.to_vector().parity

    def __repr__(self):
        return f"({self.A!r}) + ({self.x!r})"


def embed(x: SuperVector) -> OmniElement:
    """The inclusion ``V -> E``, ``x -> 0 + x``."""
    return OmniElement(SuperMap.zero(x.space), x)


def pure_map(A: SuperMap) -> OmniElement:
    return OmniElement(A, A.domain.zero())


def omni_basis(space: GradedSpace) -> list[OmniElement]:
    return [pure_map(a) for a in gl_basis(space)] + [embed(v) for v in space.basis()]


def _check_same(e1: OmniElement, e2: OmniElement):
    if e1.space != e2.space:
        raise ValueError("elements live over different spaces")


def circ(e1: OmniElement, e2: OmniElement) -> OmniElement:
    """``(A+x) o (B+y) = [A,B] + Ay``."""
    _check_same(e1, e2)
    return OmniElement(super_commutator(e1.A, e2.A), e1.A(e2.x))


def _half(space: GradedSpace):
    f = space.field
    f.require_invertible(2)
    return f.one / f(2)


def bracket(e1: OmniElement, e2: OmniElement) -> OmniElement:
    """``[[A+x, B+y]] = [A,B] + (Ay - (-1)^{|x||y|} Bx)/2``."""
    _check_same(e1, e2)
    half = _half(e1.space)
    x = e1.space.zero()
    for p, a in e1.homogeneous_parts():
        for q, b in e2.homogeneous_parts():
            term = a.A(b.x) + b.A(a.x) if p * q else a.A(b.x) - b.A(a.x)
            x = x + half * term
    return OmniElement(super_commutator(e1.A, e2.A), x)


def pairing(e1: OmniElement, e2: OmniElement) -> SuperVector:
    """``<A+x, B+y> = (Ay + (-1)^{|x||y|} Bx)/2``."""
    _check_same(e1, e2)
    half = _half(e1.space)
    x = e1.space.zero()
    for p, a in e1.homogeneous_parts():
        for q, b in e2.homogeneous_parts():
            term = a.A(b.x) - b.A(a.x) if p * q else a.A(b.x) + b.A(a.x)
            x = x + half * term
    return x


def _homogeneous_triples(e1, e2, e3):
    return itertools.product(e1.homogeneous_parts(), e2.homogeneous_parts(),
                             e3.homogeneous_parts())


def _cyclic_sign(x: int, y: int, z: int) -> tuple[int, int, int]:
    s = lambda a, b: -1 if a * b else 1  # noqa: E731
    return s(z, x), s(x, y), s(y, z)


def jacobiator_j1(e1: OmniElement, e2: OmniElement, e3: OmniElement) -> OmniElement:
    """Cyclic Jacobiator of the skew bracket with Koszul signs."""
    out = OmniElement.zero(e1.space)
    for (x, a), (y, b), (z, c) in _homogeneous_triples(e1, e2, e3):
        s1, s2, s3 = _cyclic_sign(x, y, z)
        out = (out + s1 * bracket(bracket(a, b), c) + s2 * bracket(bracket(b, c), a)
               + s3 * bracket(bracket(c, a), b))
    return out


def jacobiator_t(e1: OmniElement, e2: OmniElement, e3: OmniElement) -> SuperVector:
    """``T = 1/3 (sum of signed cyclic <[[e_i, e_j]], e_k>)``; needs 2 and 3 invertible."""
    f = e1.space.field
    f.require_invertible(2, 3)
    third = f.one / f(3)
    out = e1.space.zero()
    for (x, a), (y, b), (z, c) in _homogeneous_triples(e1, e2, e3):
        s1, s2, s3 = _cyclic_sign(x, y, z)
        out = out + third * (s1 * pairing(bracket(a, b), c) + s2 * pairing(bracket(b, c), a)
                             + s3 * pairing(bracket(c, a), b))
    return out


@functools.lru_cache(maxsize=32)
def circ_table(space: GradedSpace) -> BracketTable:
    """Structure constants of ``o`` on the basis of ``E``."""
    E = omni_space(space)
    return BracketTable.from_function(
        E, lambda u, v: circ(OmniElement.from_vector(u, space),
                             OmniElement.from_vector(v, space)).to_vector())


@functools.lru_cache(maxsize=32)
def bracket_table(space: GradedSpace) -> BracketTable:
    E = omni_space(space)
    return BracketTable.from_function(
        E, lambda u, v: bracket(OmniElement.from_vector(u, space),
                                OmniElement.from_vector(v, space)).to_vector())


@functools.lru_cache(maxsize=32)
def pairing_table(space: GradedSpace) -> Table:
    E = omni_space(space)
    return Table.from_function(
        (E, E), space, lambda u, v: pairing(OmniElement.from_vector(u, space),
                                            OmniElement.from_vector(v, space)))


def _guard(space: GradedSpace, limit: int | None):
    dim_e = space.dim * space.dim + space.dim
    limit = max_dim() if limit is None else limit
    if dim_e > limit:
        raise ValueError(f"dim E = {dim_e} exceeds the exhaustive-check limit {limit}")


def check_omni_leibniz(space: GradedSpace, limit: int | None = None) -> Verdict:
    """Super Leibniz rule for ``o`` on every basis triple of ``E``."""
    _guard(space, limit)
    v = check_leibniz_rule(circ_table(space))
    v.name = "omni Leibniz rule"
    return v


def check_prop_homotopy(space: GradedSpace, limit: int | None = None) -> Verdict:
    """``J1 = embed(T)`` on every basis triple of ``E``, with the gl-part of J1 zero.

    Both sides are expanded through the structure constants of the bracket
    and the pairing, computed once from :func:`bracket` and :func:`pairing`.
    """
    _guard(space, limit)
    space.field.require_invertible(2, 3)
    E = omni_space(space)
    par = E.parities
    n2 = space.dim * space.dim
    br = bracket_table(space)
    pr = pairing_table(space)
    third = space.field.one / space.field(3)
    checked = 0
    for i, j, k in itertools.product(range(E.dim), repeat=3):
        checked += 1
        s1, s2, s3 = _cyclic_sign(par[i], par[j], par[k])
        pij, pjk, pki = br.sparse_entry(i, j), br.sparse_entry(j, k), br.sparse_entry(k, i)
        j1 = combine((s1, br.evaluate_sparse(pij, {k: 1})),
                     (s2, br.evaluate_sparse(pjk, {i: 1})),
                     (s3, br.evaluate_sparse(pki, {j: 1})))
        t = combine((s1 * third, pr.evaluate_sparse(pij, {k: 1})),
                    (s2 * third, pr.evaluate_sparse(pjk, {i: 1})),
                    (s3 * third, pr.evaluate_sparse(pki, {j: 1})))
        witness = (E.names[i], E.names[j], E.names[k])
        if any(idx < n2 for idx in j1):
            return Verdict("J1 = T", False, witness, densify(E, j1), checked,
                           detail="gl-component of J1 nonzero")
        residual = combine((1, j1), (-1, {n2 + a: c for a, c in t.items()}))
        if residual:
            return Verdict("J1 = T", False, witness, densify(E, residual), checked)
    return Verdict("J1 = T", True, checked=checked)


def check_omni(space: GradedSpace, limit: int | None = None) -> Verdict:
    return all_of("omni-Lie superalgebra", [check_omni_leibniz(space, limit),
                                            check_prop_homotopy(space, limit)])


def decomposition_defect(space: GradedSpace) -> dict:
    """``o - [[.,.]] - embed(<.,.>)`` on basis pairs; empty when the identity holds."""
    basis = omni_basis(space)
    E = omni_space(space)
    out = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            diff = circ(a, b) - bracket(a, b) - embed(pairing(a, b))
            if not diff.is_zero():
                out[E.names[i], E.names[j]] = sparse(diff.to_vector())
    return out
