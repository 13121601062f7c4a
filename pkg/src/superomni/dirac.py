"""Dirac structures of the omni-Lie superalgebra.

A Dirac structure is a graded subspace ``L`` of ``E = gl(V) + V`` with
``L = L^perp`` for the V-valued pairing and closed under the skew bracket.
Every such ``L`` is ``D + graph(pi|D0)`` for a characteristic pair
``(D, pi)``, and the Dirac structures correspond one-to-one with Lie
superalgebra structures on graded subspaces of V.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import _linalg
from .liesuper import (
    BracketTable,
    Verdict,
    all_of,
    axpy,
    check_graded,
    check_lie,
    densify,
    sign,
    sparse,
)
from .omni import (
    OmniElement,
    bracket_table,
    embed,
    max_dim,
    omni_space,
    pairing_table,
    pure_map,
)
from .superlinalg import (
    GradedSpace,
    GradedSubspace,
    SuperMap,
    SuperSpace,
    SuperVector,
    annihilator,
    enumerate_subspaces,
    gl_space,
    kernel_of_maps,
    solve_kernel,
    subspace_from_vectors,
    super_commutator,
)

DEFAULT_ENUMERATION_DIM = 6


class GlValuedMap:
    """Linear map from a graded subspace of V into gl(V).

    Given by the images of independent homogeneous generators; stored
    internally against the echelon basis of its domain.
    """

    def __init__(self, space: GradedSpace, generators: Sequence[SuperVector],
                 images: Sequence[SuperMap]):
        if len(generators) != len(images):
            raise ValueError("need one image per generator")
        for g, a in zip(generators, images):
            if g.space != space or a.domain != space or not a.is_endomorphism():
                raise ValueError("generators and images must live over V")
            if not g.is_homogeneous() or not a.is_homogeneous(g.parity):
                raise ValueError(f"image of {g!r} does not preserve parity")
        self.space = space
        self.domain = subspace_from_vectors(space, generators)
        if self.domain.dim != len(generators):
            raise ValueError("generators are not linearly independent")
        f = space.field
        if generators:
            coords = [self.domain.coordinates(g) for g in generators]
            inv = _linalg.inverse(coords, f.zero, f.one)
            # echelon row r = sum_i inv[r][i] * generator_i
            self.images = tuple(
                _combine_maps(space, [(inv[r][i], images[i]) for i in range(len(images))])
                for r in range(len(images)))
        else:
            self.images = ()

    @classmethod
    def on_basis(cls, space: GradedSpace, images: Sequence[SuperMap]) -> GlValuedMap:
        return cls(space, space.basis(), images)

    def __call__(self, v: SuperVector) -> SuperMap:
        coords = self.domain.coordinates(v)
        return _combine_maps(self.space, list(zip(coords, self.images)))

    def value(self, x: SuperVector, y: SuperVector) -> SuperVector:
        """``pi(x, y) = pi(x)(y)``."""
        return self(x)(y)

    def defined_at(self, v: SuperVector) -> bool:
        return self.domain.contains(v)

    def check_super_skew(self) -> Verdict:
        basis = self.domain.basis()
        n = 0
        for x, y in itertools.product(basis, basis):
            n += 1
            res = self.value(x, y) + sign(x.parity * y.parity) * self.value(y, x)
            if not res.is_zero():
                return Verdict("pi super skew", False, (repr(x), repr(y)), res, n)
        return Verdict("pi super skew", True, checked=n)


def _combine_maps(space, terms) -> SuperMap:
    out = SuperMap.zero(space)
    for c, a in terms:
        if c:
            out = out + c * a
    return out


def adjoint_map(omega: BracketTable) -> GlValuedMap:
    """``ad(x)(y) = omega(x, y)`` for x in V."""
    sp = omega.space
    images = [SuperMap.from_columns(sp, sp, [omega.entry(i, j) for j in range(sp.dim)])
              for i in range(sp.dim)]
    if not check_graded(omega):
        raise ValueError("bracket is not graded")
    return GlValuedMap.on_basis(sp, images)


def graph(omega: BracketTable) -> GradedSubspace:
    """``F_omega = {ad(x) + x}`` inside ``E``."""
    sp = omega.space
    ad = adjoint_map(omega)
    E = omni_space(sp)
    return subspace_from_vectors(E, [OmniElement(ad(b), b) for b in sp.basis()])


def gl_part(space: GradedSpace) -> GradedSubspace:
    """gl(V) as the subspace ``{A + 0}`` of ``E``."""
    n2 = space.dim * space.dim
    E = omni_space(space)
    return subspace_from_vectors(E, [E.basis_vector(i) for i in range(n2)])


def vector_part(space: GradedSpace) -> GradedSubspace:
    """V as the subspace ``{0 + x}`` of ``E``."""
    n2 = space.dim * space.dim
    E = omni_space(space)
    return subspace_from_vectors(E, [E.basis_vector(n2 + i) for i in range(space.dim)])


def base_space(L: GradedSubspace) -> GradedSpace:
    """Recover V from the ambient ``E = gl(V) + V``."""
    E = L.ambient
    n = 0
    while n * n + n < E.dim:
        n += 1
    if n * n + n != E.dim:
        raise ValueError("ambient is not of the form gl(V) + V")
    names, pars = E.names[n * n:], E.parities[n * n:]
    m = pars.count(0)
    if pars == (0,) * m + (1,) * (n - m):
        V = SuperSpace(m, n - m, E.field, names[:m], names[m:])
    else:
        V = GradedSpace(names, pars, E.field)
    if omni_space(V) != E:
        raise ValueError("ambient is not of the form gl(V) + V")
    return V


def orthogonal_complement(L: GradedSubspace) -> GradedSubspace:
    """``L^perp = {e : <e, l> = 0 for all l in L}``."""
    V = base_space(L)
    E = L.ambient
    pt = pairing_table(V)
    eqs = []
    for row in L.rows:
        lvec = {r: c for r, c in enumerate(row) if c}
        cols = [pt.evaluate_sparse({k: 1}, lvec) for k in range(E.dim)]
        for a in range(V.dim):
            eqs.append([col.get(a, 0) for col in cols])
    return solve_kernel(E, eqs)


def check_isotropic(L: GradedSubspace) -> Verdict:
    V = base_space(L)
    pt = pairing_table(V)
    n = 0
    for r1, r2 in itertools.product(L.rows, L.rows):
        n += 1
        val = pt.evaluate_sparse(sparse(SuperVector(L.ambient, r1)),
                                 sparse(SuperVector(L.ambient, r2)))
        if val:
            return Verdict("isotropic", False, (_fmt(L.ambient, r1), _fmt(L.ambient, r2)),
                           densify(V, val), n)
    return Verdict("isotropic", True, checked=n)


def check_maximal_isotropic(L: GradedSubspace) -> Verdict:
    """``L = L^perp``."""
    perp = orthogonal_complement(L)
    if perp == L:
        return Verdict("maximal isotropic", True, checked=L.dim)
    iso = check_isotropic(L)
    if not iso:
        iso.name = "maximal isotropic"
        iso.detail = "not isotropic"
        return iso
    extra = next(v for v in perp.basis() if not L.contains(v))
    return Verdict("maximal isotropic", False, (_fmt(L.ambient, extra.coords),),
                   detail=f"dim L = {L.dim} < dim L^perp = {perp.dim}", checked=L.dim)


def check_closed(L: GradedSubspace) -> Verdict:
    """``[[l1, l2]]`` lies in ``L`` for all basis pairs of ``L``."""
    V = base_space(L)
    bt = bracket_table(V)
    n = 0
    for r1, r2 in itertools.product(L.rows, L.rows):
        n += 1
        val = densify(L.ambient, bt.evaluate_sparse(sparse(SuperVector(L.ambient, r1)),
                                                    sparse(SuperVector(L.ambient, r2))))
        if not L.contains(val):
            return Verdict("closed under bracket", False,
                           (_fmt(L.ambient, r1), _fmt(L.ambient, r2)), val, n)
    return Verdict("closed under bracket", True, checked=n)


def check_dirac(L: GradedSubspace) -> Verdict:
    return all_of("Dirac structure", [check_maximal_isotropic(L), check_closed(L)])


def is_dirac(L: GradedSubspace) -> bool:
    return bool(check_maximal_isotropic(L)) and bool(check_closed(L))


def graph_is_dirac_iff_lie(omega: BracketTable) -> tuple[Verdict, Verdict]:
    """Return ``(omega is a Lie superalgebra, graph(omega) is Dirac)``."""
    return check_lie(omega), check_dirac(graph(omega))


def _fmt(space: GradedSpace, coords) -> str:
    return repr(SuperVector(space, tuple(coords)))


@dataclass
class CharacteristicPair:
    """``(D, pi)`` with ``D`` in gl(V) and ``pi`` a super skew map into gl(V)."""

    space: GradedSpace
    D: GradedSubspace
    pi: GlValuedMap
    null_space: GradedSubspace = field(init=False)

    def __post_init__(self):
        if self.D.ambient != gl_space(self.space):
            raise ValueError("D must be a subspace of gl(V)")
        self.null_space = kernel_of_maps(self.space, self.D_maps())

    def D_maps(self) -> list[SuperMap]:
        return [SuperMap.from_vector(v, self.space) for v in self.D.basis()]


def extract_characteristic_pair(L: GradedSubspace) -> CharacteristicPair:
    """Read ``(D, pi|D0)`` off a maximal isotropic ``L``.

    ``D = L cap gl(V)``; ``D0`` is the projection of ``L`` to V and
    ``pi(x)`` is the gl-part of the echelon representative over ``x``
    (coordinates ordered V first).
    """
    verdict = check_maximal_isotropic(L)
    if not verdict:
        raise ValueError("subspace is not maximal isotropic")
    V = base_space(L)
    E = L.ambient
    n2 = V.dim * V.dim
    order = list(range(n2, E.dim)) + list(range(n2))
    permuted = [[row[k] for k in order] for row in L.rows]
    red, pivots = _linalg.rref(permuted, E.dim, E.field.zero)
    D_rows, xs, As = [], [], []
    for row, pc in zip(red, pivots):
        gl_coords, v_coords = row[V.dim:], row[:V.dim]
        if pc < V.dim:
            xs.append(SuperVector(V, tuple(v_coords)))
            As.append(SuperMap.from_vector(SuperVector(gl_space(V), tuple(gl_coords)), V))
        else:
            D_rows.append(SuperVector(gl_space(V), tuple(gl_coords)))
    D = subspace_from_vectors(gl_space(V), D_rows)
    pair = CharacteristicPair(V, D, GlValuedMap(V, xs, As))
    if pair.null_space != pair.pi.domain:
        raise AssertionError("projection of L differs from the null space of D")
    return pair


def check_characteristic_pair(pair: CharacteristicPair) -> Verdict:
    """The three conditions making ``D + graph(pi|D0)`` a Dirac structure.

    (1) D is a subalgebra of gl(V); (2) ``pi(pi(x,y)) - [pi(x), pi(y)]`` is
    in D; (3) ``pi(x,y)`` is in D0, for x, y in D0.
    """
    V, D, pi, D0 = pair.space, pair.D, pair.pi, pair.null_space
    if not all(pi.defined_at(x) for x in D0.basis()):
        raise ValueError("pi is not defined on the null space of D")
    skew = _skew_on(pi, D0)
    if not skew:
        raise ValueError("pi is not super skew on D0")
    maps = pair.D_maps()

    n = 0
    sub = Verdict("(1) D is a subalgebra", True)
    for X, Y in itertools.product(maps, maps):
        n += 1
        c = super_commutator(X, Y)
        if not D.contains(c.to_vector()):
            sub = Verdict("(1) D is a subalgebra", False, (repr(X), repr(Y)), c.to_vector(), n)
            break
    sub.checked = n

    basis = D0.basis()
    cond2 = Verdict("(2) pi(pi(x,y)) - [pi(x),pi(y)] in D", True)
    cond3 = Verdict("(3) pi(x,y) in D0", True)
    n = 0
    for x, y in itertools.product(basis, basis):
        n += 1
        v = pi.value(x, y)
        if cond3 and not D0.contains(v):
            cond3 = Verdict("(3) pi(x,y) in D0", False, (repr(x), repr(y)), v, n)
        if cond2:
            if not pi.defined_at(v):
                cond2 = Verdict("(2) pi(pi(x,y)) - [pi(x),pi(y)] in D", False,
                                (repr(x), repr(y)), v, n,
                                detail="pi(x,y) outside the domain of pi")
            else:
                diff = pi(v) - super_commutator(pi(x), pi(y))
                if not D.contains(diff.to_vector()):
                    cond2 = Verdict("(2) pi(pi(x,y)) - [pi(x),pi(y)] in D", False,
                                    (repr(x), repr(y)), diff.to_vector(), n)
    cond2.checked = cond3.checked = n
    return all_of("characteristic pair", [sub, cond2, cond3])


def _skew_on(pi: GlValuedMap, sub: GradedSubspace) -> bool:
    basis = sub.basis()
    return all((pi.value(x, y) + sign(x.parity * y.parity) * pi.value(y, x)).is_zero()
               for x in basis for y in basis)


def build_maximal_isotropic(pair: CharacteristicPair) -> GradedSubspace:
    """``L = {X + pi(x) + x : X in D, x in D0}``.

    Requires ``D`` to be the annihilator of its own null space and ``pi``
    super skew on ``D0``.
    """
    V, D, pi, D0 = pair.space, pair.D, pair.pi, pair.null_space
    if annihilator(V, D0) != D:
        raise ValueError("D is not the annihilator of its null space")
    if not all(pi.defined_at(x) for x in D0.basis()):
        raise ValueError("pi is not defined on the null space of D")
    if not _skew_on(pi, D0):
        raise ValueError("pi is not super skew on D0")
    E = omni_space(V)
    gens = [pure_map(X).to_vector() for X in pair.D_maps()]
    gens += [OmniElement(pi(x), x).to_vector() for x in D0.basis()]
    return subspace_from_vectors(E, gens)


@dataclass
class SubspaceLie:
    """A Lie superalgebra structure on a graded subspace ``W`` of V.

    ``bracket`` lives on a super space whose basis is the echelon basis of
    ``W`` (even vectors first); ``embedding`` lists those vectors in V.
    """

    W: GradedSubspace
    bracket: BracketTable

    @property
    def embedding(self) -> list[SuperVector]:
        return ordered_basis(self.W)

    def key(self):
        return (self.W.rows, tuple((idx, tuple(sorted(v.items())))
                                   for idx, v in self.bracket.nonzero_items()))

    def __eq__(self, other):
        return isinstance(other, SubspaceLie) and self.W == other.W and self.bracket == other.bracket

    def __hash__(self):
        return hash(self.key())


def ordered_basis(W: GradedSubspace) -> list[SuperVector]:
    """Echelon basis of ``W`` with even vectors first, pivot order within parity."""
    basis = W.basis()
    return [v for v in basis if v.parity == 0] + [v for v in basis if v.parity == 1]


def subspace_superspace(W: GradedSubspace) -> SuperSpace:
    """Super space on the ordered basis of ``W``, named after V's basis where possible."""
    V = W.ambient
    names = []
    for k, v in enumerate(ordered_basis(W)):
        sup = v.support()
        if len(sup) == 1 and v.coords[sup[0]] == 1:
            names.append(V.names[sup[0]])
        else:
            names.append(f"w{k + 1}")
    m = W.even_dim
    return SuperSpace(m, W.dim - m, V.field, names[:m], names[m:])


def lie_from_dirac(L: GradedSubspace) -> SubspaceLie:
    """``W = D0`` with ``[x, y] = pi(x)(y)``."""
    verdict = check_dirac(L)
    if not verdict:
        raise ValueError("subspace is not a Dirac structure")
    pair = extract_characteristic_pair(L)
    W = pair.null_space
    Wsp = subspace_superspace(W)
    basis = ordered_basis(W)
    pos = [W.pivots.index(next(i for i, c in enumerate(b.coords) if c)) for b in basis]
    entries = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            coords = W.coordinates(pair.pi.value(x, y))
            entries[(i, j)] = {pos.index(r): c for r, c in enumerate(coords) if c}
    return SubspaceLie(W, BracketTable(Wsp, entries))


def dirac_from_lie(space: GradedSpace, omega: BracketTable,
                   embedding: Sequence[SuperVector] | None = None) -> GradedSubspace:
    """Dirac structure ``W^0 + graph(pi|W)`` of a Lie superalgebra on ``W``.

    ``embedding`` gives the image in V of each basis vector of
    ``omega.space``; by default the names of ``omega.space`` are looked up
    in V.  ``pi`` extends ``ad`` by zero on the echelon complement of ``W``.
    """
    verdict = check_lie(omega)
    if not verdict:
        raise ValueError(f"not a Lie superalgebra: {verdict.lines()[0]}")
    if embedding is None:
        embedding = [space.basis_vector(n) for n in omega.space.names]
    embedding = list(embedding)
    if len(embedding) != omega.space.dim:
        raise ValueError("embedding needs one vector per basis element")
    for v, p in zip(embedding, omega.space.parities):
        if v.space != space or not v.is_homogeneous(p) or v.is_zero():
            raise ValueError("embedding must send basis vectors to nonzero vectors of equal parity")
    W = subspace_from_vectors(space, embedding)
    if W.dim != len(embedding):
        raise ValueError("embedding is not injective")

    complement = W.complement_basis()
    frame = embedding + complement
    f = space.field
    P = [[v.coords[i] for v in frame] for i in range(space.dim)]
    Pinv = _linalg.inverse(P, f.zero, f.one)
    images = []
    for i in range(omega.space.dim):
        cols = []
        for j in range(omega.space.dim):
            w = omega.sparse_entry(i, j)
            acc: dict = {}
            for k, c in w.items():
                axpy(acc, c, sparse(embedding[k]))
            cols.append([acc.get(r, f.zero) for r in range(space.dim)])
        cols += [[f.zero] * space.dim for _ in complement]
        img = [[cols[j][r] for j in range(len(frame))] for r in range(space.dim)]
        images.append(SuperMap(space, space, _linalg.matmul(img, Pinv, f.zero)))
    pi = GlValuedMap(space, embedding, images)
    D = annihilator(space, W)
    return build_maximal_isotropic(CharacteristicPair(space, D, pi))


def graded_brackets(space: GradedSpace):
    """Every graded bilinear operation on a space over a finite field."""
    f = space.field
    elems = f.elements()
    by_parity = [[i for i, p in enumerate(space.parities) if p == q] for q in (0, 1)]
    slots = []
    for i in range(space.dim):
        for j in range(space.dim):
            target = by_parity[(space.parities[i] + space.parities[j]) % 2]
            slots.extend(((i, j), k) for k in target)
    for values in itertools.product(elems, repeat=len(slots)):
        entries: dict = {}
        for (idx, k), c in zip(slots, values):
            if c:
                entries.setdefault(idx, {})[k] = c
        yield BracketTable(space, entries)


def lie_structures_on_subspaces(space: GradedSpace):
    """All pairs ``(W, Lie bracket on W)`` over a finite field."""
    for W in enumerate_subspaces(space):
        Wsp = subspace_superspace(W)
        for omega in graded_brackets(Wsp):
            if check_lie(omega):
                yield SubspaceLie(W, omega)


@dataclass
class Census:
    dirac: list
    lie: list
    verdict: Verdict

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.dirac), len(self.lie)


def _enumeration_guard(space: GradedSpace, limit: int | None):
    p = space.field.characteristic
    if p == 0:
        raise ValueError("enumeration needs a finite field")
    if p in (2, 3):
        raise ValueError("enumeration needs p not in {2, 3}")
    dim_e = space.dim * space.dim + space.dim
    limit = max_dim(DEFAULT_ENUMERATION_DIM) if limit is None else limit
    if dim_e > limit:
        raise ValueError(f"dim E = {dim_e} exceeds the enumeration limit {limit}")


def enumerate_dirac(space: GradedSpace, limit: int | None = None) -> Census:
    """Count Dirac structures and subspace Lie structures independently.

    Both sides are brute-force enumerations; the verdict also checks that
    :func:`lie_from_dirac` and :func:`dirac_from_lie` are mutually inverse
    on every element.
    """
    _enumeration_guard(space, limit)
    E = omni_space(space)
    dirac = [L for L in enumerate_subspaces(E) if is_dirac(L)]
    lie = list(lie_structures_on_subspaces(space))

    counts = Verdict("counts agree", len(dirac) == len(lie), checked=1,
                     detail=f"{len(dirac)} Dirac structures, {len(lie)} Lie structures")
    lie_set = set(lie)
    forward = Verdict("Dirac -> Lie -> Dirac", True)
    images = set()
    for n, L in enumerate(dirac, 1):
        sl = lie_from_dirac(L)
        images.add(sl)
        back = dirac_from_lie(space, sl.bracket, sl.embedding)
        if back != L or sl not in lie_set:
            forward = Verdict("Dirac -> Lie -> Dirac", False, (repr(L),), checked=n)
            break
        forward.checked = n
    backward = Verdict("Lie -> Dirac -> Lie", True)
    for n, sl in enumerate(lie, 1):
        L = dirac_from_lie(space, sl.bracket, sl.embedding)
        if lie_from_dirac(L) != sl:
            backward = Verdict("Lie -> Dirac -> Lie", False, (repr(sl.W), ), checked=n)
            break
        backward.checked = n
    onto = Verdict("bijection", images == lie_set and len(images) == len(dirac),
                   checked=len(images))
    return Census(dirac, lie, all_of("Dirac/Lie correspondence",
                                     [counts, forward, backward, onto]))
