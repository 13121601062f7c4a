"""Z2-graded linear algebra with exact scalars.

A graded space is a coordinate space whose basis vectors each carry a
parity (0 even, 1 odd).  :class:`SuperSpace` is the common case of an
``m|n`` space listing its even basis first; other graded spaces such as
``gl(V)`` or ``gl(V) + V`` use :class:`GradedSpace` with an arbitrary
parity pattern.

All values are immutable.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _linalg
from .scalars import QQ, Field


class GradedSpace:
    """Finite-dimensional coordinate space with a parity per basis vector."""

    def __init__(self, names: Sequence[str], parities: Sequence[int], field: Field = QQ):
        if len(names) != len(parities):
            raise ValueError("names and parities differ in length")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate basis names in {list(names)}")
        if any(p not in (0, 1) for p in parities):
            raise ValueError("parities must be 0 or 1")
        self.names = tuple(names)
        self.parities = tuple(parities)
        self.field = field
        self._index = {name: i for i, name in enumerate(self.names)}

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def even_dim(self) -> int:
        return self.parities.count(0)

    @property
    def odd_dim(self) -> int:
        return self.parities.count(1)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis name {name!r}") from None

    def zero(self) -> SuperVector:
        return SuperVector(self, (self.field.zero,) * self.dim)

    def basis_vector(self, i: int | str) -> SuperVector:
        if isinstance(i, str):
            i = self.index(i)
        z, o = self.field.zero, self.field.one
        return SuperVector(self, tuple(o if k == i else z for k in range(self.dim)))

    def basis(self) -> list[SuperVector]:
        return [self.basis_vector(i) for i in range(self.dim)]

    def vector(self, coords: Iterable) -> SuperVector:
        f = self.field
        return SuperVector(self, tuple(f(c) for c in coords))

    def from_dict(self, coeffs: dict[str, object]) -> SuperVector:
        coords = [self.field.zero] * self.dim
        for name, c in coeffs.items():
            coords[self.index(name)] += self.field(c)
        return SuperVector(self, tuple(coords))

    def __eq__(self, other):
        return (
            isinstance(other, GradedSpace)
            and self.names == other.names
            and self.parities == other.parities
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.parities, self.field))

    def __repr__(self):
        return f"GradedSpace({self.even_dim}|{self.odd_dim}, {list(self.names)})"


class SuperSpace(GradedSpace):
    """The super vector space of superdimension ``m|n``.

    Basis order is the even vectors ``e1..em`` followed by the odd vectors
    ``f1..fn`` unless other names are supplied.
    """

    def __init__(self, m: int, n: int, field: Field = QQ,
                 even_names: Sequence[str] | None = None,
                 odd_names: Sequence[str] | None = None):
        if m < 0 or n < 0:
            raise ValueError("dimensions must be non-negative")
        even_names = list(even_names) if even_names is not None else [f"e{i + 1}" for i in range(m)]
        odd_names = list(odd_names) if odd_names is not None else [f"f{i + 1}" for i in range(n)]
        if len(even_names) != m or len(odd_names) != n:
            raise ValueError("basis name count does not match dimensions")
        super().__init__(even_names + odd_names, [0] * m + [1] * n, field)
        self.m = m
        self.n = n

    def __repr__(self):
        return f"SuperSpace({self.m}|{self.n}, {self.field!r})"


def gl_space(space: GradedSpace) -> GradedSpace:
    """Coordinate space of gl(V): entries ``E[i,j]`` in row-major order."""
    names, parities = [], []
    for i, a in enumerate(space.names):
        for j, b in enumerate(space.names):
            names.append(f"E[{a},{b}]")
            parities.append((space.parities[i] + space.parities[j]) % 2)
    return GradedSpace(names, parities, space.field)


def direct_sum(left: GradedSpace, right: GradedSpace) -> GradedSpace:
    if left.field != right.field:
        raise ValueError("cannot sum spaces over different fields")
    return GradedSpace(left.names + right.names, left.parities + right.parities, left.field)


class SuperVector:
    """Element of a graded space, stored as a dense coordinate tuple."""

    __slots__ = ("space", "coords")

    def __init__(self, space: GradedSpace, coords: tuple):
        if len(coords) != space.dim:
            raise ValueError(f"expected {space.dim} coordinates, got {len(coords)}")
        self.space = space
        self.coords = coords

    def _check(self, other: SuperVector):
        if not isinstance(other, SuperVector) or other.space != self.space:
            raise ValueError("vectors live in different spaces")

    def __add__(self, other: SuperVector) -> SuperVector:
        self._check(other)
        return SuperVector(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: SuperVector) -> SuperVector:
        self._check(other)
        return SuperVector(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> SuperVector:
        return SuperVector(self.space, tuple(-a for a in self.coords))

    def __mul__(self, c) -> SuperVector:
        return SuperVector(self.space, tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SuperVector) and self.space == other.space and self.coords == other.coords

    def __hash__(self):
        return hash((self.space, self.coords))

    def __getitem__(self, i: int | str):
        if isinstance(i, str):
            i = self.space.index(i)
        return self.coords[i]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coords) if c]

    def is_homogeneous(self, parity: int | None = None) -> bool:
        """True if every nonzero coordinate has one parity (``parity`` if given)."""
        pars = {self.space.parities[i] for i in self.support()}
        if parity is None:
            return len(pars) <= 1
        return pars <= {parity}

    @property
    def parity(self) -> int:
        """Parity of a homogeneous vector; the zero vector reports 0."""
        pars = {self.space.parities[i] for i in self.support()}
        if len(pars) > 1:
            raise ValueError("vector is not homogeneous")
        return pars.pop() if pars else 0

    def parts(self) -> tuple[SuperVector, SuperVector]:
        """``(even part, odd part)``; they sum to ``self``."""
        z = self.space.field.zero
        pars = self.space.parities
        even = tuple(c if pars[i] == 0 else z for i, c in enumerate(self.coords))
        odd = tuple(c if pars[i] == 1 else z for i, c in enumerate(self.coords))
        return SuperVector(self.space, even), SuperVector(self.space, odd)

    def homogeneous_parts(self) -> list[tuple[int, SuperVector]]:
        """Nonzero homogeneous components as ``(parity, vector)`` pairs."""
        return [(p, v) for p, v in enumerate(self.parts()) if not v.is_zero()]

    def to_vector(self) -> SuperVector:
        return self

    def as_dict(self) -> dict[str, object]:
        return {self.space.names[i]: self.coords[i] for i in self.support()}

    def __repr__(self):
        terms = [f"{c}*{self.space.names[i]}" for i, c in enumerate(self.coords) if c]
        return " + ".join(terms) if terms else "0"


class SuperMap:
    """Linear map between graded spaces as a matrix; column index = input."""

    __slots__ = ("domain", "codomain", "rows")

    def __init__(self, domain: GradedSpace, codomain: GradedSpace, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != codomain.dim or any(len(r) != domain.dim for r in rows):
            raise ValueError(f"expected a {codomain.dim}x{domain.dim} matrix")
        self.domain = domain
        self.codomain = codomain
        self.rows = rows

    @classmethod
    def zero(cls, space: GradedSpace, codomain: GradedSpace | None = None) -> SuperMap:
        codomain = codomain or space
        z = space.field.zero
        return cls(space, codomain, [[z] * space.dim for _ in range(codomain.dim)])

    @classmethod
    def identity(cls, space: GradedSpace) -> SuperMap:
        z, o = space.field.zero, space.field.one
        return cls(space, space, [[o if i == j else z for j in range(space.dim)]
                                  for i in range(space.dim)])

    @classmethod
    def from_columns(cls, domain: GradedSpace, codomain: GradedSpace,
                     columns: Sequence[SuperVector]) -> SuperMap:
        return cls(domain, codomain,
                   [[columns[j].coords[i] for j in range(domain.dim)]
                    for i in range(codomain.dim)])

    @classmethod
    def from_vector(cls, v: SuperVector, space: GradedSpace) -> SuperMap:
        """Inverse of :meth:`to_vector` for endomorphisms of ``space``."""
        n = space.dim
        return cls(space, space, [v.coords[i * n:(i + 1) * n] for i in range(n)])

    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def _check(self, other: SuperMap):
        if not isinstance(other, SuperMap) or (other.domain, other.codomain) != (self.domain, self.codomain):
            raise ValueError("maps have different domains or codomains")

    def __add__(self, other: SuperMap) -> SuperMap:
        self._check(other)
        return SuperMap(self.domain, self.codomain,
                        [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: SuperMap) -> SuperMap:
        self._check(other)
        return SuperMap(self.domain, self.codomain,
                        [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> SuperMap:
        return SuperMap(self.domain, self.codomain, [[-a for a in r] for r in self.rows])

    def __mul__(self, c) -> SuperMap:
        return SuperMap(self.domain, self.codomain, [[c * a for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other: SuperMap) -> SuperMap:
        if other.codomain != self.domain:
            raise ValueError("cannot compose: codomain/domain mismatch")
        rows = _linalg.matmul(self.rows, other.rows, self.domain.field.zero)
        return SuperMap(other.domain, self.codomain, rows)

    def __call__(self, x: SuperVector) -> SuperVector:
        return apply(self, x)

    def __eq__(self, other):
        return (isinstance(other, SuperMap) and self.domain == other.domain
                and self.codomain == other.codomain and self.rows == other.rows)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.rows))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def _entry_parity(self, i: int, j: int) -> int:
        return (self.codomain.parities[i] + self.domain.parities[j]) % 2

    def parts(self) -> tuple[SuperMap, SuperMap]:
        """``(even part, odd part)``: parity-preserving and parity-swapping blocks."""
        z = self.domain.field.zero
        even = [[a if self._entry_parity(i, j) == 0 else z for j, a in enumerate(r)]
                for i, r in enumerate(self.rows)]
        odd = [[a if self._entry_parity(i, j) == 1 else z for j, a in enumerate(r)]
               for i, r in enumerate(self.rows)]
        return (SuperMap(self.domain, self.codomain, even),
                SuperMap(self.domain, self.codomain, odd))

    def homogeneous_parts(self) -> list[tuple[int, SuperMap]]:
        return [(p, a) for p, a in enumerate(self.parts()) if not a.is_zero()]

    def is_homogeneous(self, parity: int | None = None) -> bool:
        pars = {self._entry_parity(i, j)
                for i, r in enumerate(self.rows) for j, a in enumerate(r) if a}
        if parity is None:
            return len(pars) <= 1
        return pars <= {parity}

    @property
    def parity(self) -> int:
        pars = {self._entry_parity(i, j)
                for i, r in enumerate(self.rows) for j, a in enumerate(r) if a}
        if len(pars) > 1:
            raise ValueError("map is not homogeneous")
        return pars.pop() if pars else 0

    def to_vector(self) -> SuperVector:
        """Row-major coordinates in :func:`gl_space` of the domain."""
        if not self.is_endomorphism():
            raise ValueError("only endomorphisms are elements of gl(V)")
        return SuperVector(gl_space(self.domain), tuple(a for r in self.rows for a in r))

    def __repr__(self):
        names = self.domain.names
        terms = [f"{a}*E[{self.codomain.names[i]},{names[j]}]"
                 for i, r in enumerate(self.rows) for j, a in enumerate(r) if a]
        return " + ".join(terms) if terms else "0"


def elementary(space: GradedSpace, i: int | str, j: int | str) -> SuperMap:
    """``E[i,j]``: sends basis vector ``j`` to basis vector ``i``, the rest to 0."""
    if isinstance(i, str):
        i = space.index(i)
    if isinstance(j, str):
        j = space.index(j)
    z, o = space.field.zero, space.field.one
    rows = [[o if (r, c) == (i, j) else z for c in range(space.dim)] for r in range(space.dim)]
    return SuperMap(space, space, rows)


def gl_basis(space: GradedSpace) -> list[SuperMap]:
    """Elementary maps in the row-major order of :func:`gl_space`."""
    return [elementary(space, i, j) for i in range(space.dim) for j in range(space.dim)]


def apply(a: SuperMap, x: SuperVector) -> SuperVector:
    if x.space != a.domain:
        raise ValueError("vector is not in the domain of the map")
    z = a.domain.field.zero
    out = []
    for row in a.rows:
        acc = z
        for c, v in zip(row, x.coords):
            if c and v:
                acc += c * v
        out.append(acc)
    return SuperVector(a.codomain, tuple(out))


def super_commutator(a: SuperMap, b: SuperMap) -> SuperMap:
    """``[A,B] = AB - (-1)^{|A||B|} BA``, extended bilinearly."""
    if not (a.is_endomorphism() and b.is_endomorphism()) or a.domain != b.domain:
        raise ValueError("super commutator needs endomorphisms of one space")
    out = SuperMap.zero(a.domain)
    for pa, ah in a.homogeneous_parts():
        for pb, bh in b.homogeneous_parts():
            ab, ba = ah @ bh, bh @ ah
            out = out + (ab + ba if pa * pb else ab - ba)
    return out


def supertrace(a: SuperMap) -> object:
    """Trace of the even-even block minus trace of the odd-odd block."""
    if not a.is_endomorphism():
        raise ValueError("supertrace needs an endomorphism")
    total = a.domain.field.zero
    for i, p in enumerate(a.domain.parities):
        total += -a.rows[i][i] if p else a.rows[i][i]
    return total


class GradedSubspace:
    """Graded subspace stored by its reduced row-echelon basis.

    The echelon basis is canonical, so equality of subspaces is equality of
    bases.  Every basis row is homogeneous.
    """

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: GradedSpace, rows: Sequence[tuple]):
        # rows are assumed to be in reduced echelon form with homogeneous rows
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(next(i for i, c in enumerate(r) if c) for r in self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def even_dim(self) -> int:
        return sum(1 for p in self.pivots if self.ambient.parities[p] == 0)

    @property
    def odd_dim(self) -> int:
        return self.dim - self.even_dim

    def basis(self) -> list[SuperVector]:
        return [SuperVector(self.ambient, r) for r in self.rows]

    def coordinates(self, v) -> tuple:
        """Coefficients of ``v`` in the echelon basis; ValueError if ``v`` is outside."""
        v = v.to_vector()
        if v.space != self.ambient:
            raise ValueError("vector is not in the ambient space")
        coeffs = tuple(v.coords[p] for p in self.pivots)
        z = self.ambient.field.zero
        rebuilt = [z] * self.ambient.dim
        for c, row in zip(coeffs, self.rows):
            if c:
                for k, a in enumerate(row):
                    if a:
                        rebuilt[k] += c * a
        if tuple(rebuilt) != v.coords:
            raise ValueError("vector does not lie in the subspace")
        return coeffs

    def contains(self, v) -> bool:
        try:
            self.coordinates(v)
        except ValueError:
            return False
        return True

    __contains__ = contains

    def complement_basis(self) -> list[SuperVector]:
        """Standard basis vectors at the non-pivot positions (a graded complement)."""
        pivset = set(self.pivots)
        return [self.ambient.basis_vector(i) for i in range(self.ambient.dim) if i not in pivset]

    def intersect(self, other: GradedSubspace) -> GradedSubspace:
        return intersect(self, other)

    def __add__(self, other: GradedSubspace) -> GradedSubspace:
        return subspace_sum(self, other)

    def __eq__(self, other):
        return isinstance(other, GradedSubspace) and self.ambient == other.ambient and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __le__(self, other: GradedSubspace) -> bool:
        return all(other.contains(v) for v in self.basis())

    def __repr__(self):
        return f"GradedSubspace(dim={self.even_dim}|{self.odd_dim}, basis={self.basis()})"


def _echelon(ambient: GradedSpace, coord_rows) -> GradedSubspace:
    red, _ = _linalg.rref(coord_rows, ambient.dim, ambient.field.zero)
    return GradedSubspace(ambient, red)


def subspace_from_vectors(ambient: GradedSpace, vectors: Iterable) -> GradedSubspace:
    """Graded span of ``vectors``.

    Each generator is split into its homogeneous parts first, so the result
    is the smallest graded subspace containing the generators.
    """
    rows = []
    for v in vectors:
        v = v.to_vector()
        if v.space != ambient:
            raise ValueError("generator is not in the ambient space")
        for part in v.parts():
            if not part.is_zero():
                rows.append(part.coords)
    return _echelon(ambient, rows)


span = subspace_from_vectors


def zero_subspace(ambient: GradedSpace) -> GradedSubspace:
    return GradedSubspace(ambient, [])


def full_subspace(ambient: GradedSpace) -> GradedSubspace:
    return subspace_from_vectors(ambient, ambient.basis())


def contains(s: GradedSubspace, v) -> bool:
    return s.contains(v)


def equal(s: GradedSubspace, t: GradedSubspace) -> bool:
    if s.ambient != t.ambient:
        raise ValueError("ambient mismatch")
    return s.rows == t.rows


def subspace_sum(s: GradedSubspace, t: GradedSubspace) -> GradedSubspace:
    if s.ambient != t.ambient:
        raise ValueError("ambient mismatch")
    return _echelon(s.ambient, list(s.rows) + list(t.rows))


def intersect(s: GradedSubspace, t: GradedSubspace) -> GradedSubspace:
    if s.ambient != t.ambient:
        raise ValueError("ambient mismatch")
    f = s.ambient.field
    if not s.rows or not t.rows:
        return zero_subspace(s.ambient)
    # solve sum a_i s_i - sum b_j t_j = 0
    gens = list(s.rows) + [tuple(-c for c in r) for r in t.rows]
    system = [tuple(g[k] for g in gens) for k in range(s.ambient.dim)]
    sols = _linalg.nullspace(system, len(gens), f.zero, f.one)
    vecs = []
    for sol in sols:
        acc = [f.zero] * s.ambient.dim
        for a, row in zip(sol[:s.dim], s.rows):
            if a:
                for k, c in enumerate(row):
                    acc[k] += a * c
        vecs.append(tuple(acc))
    return _echelon(s.ambient, vecs)


def solve_kernel(ambient: GradedSpace, equations) -> GradedSubspace:
    """Subspace cut out by linear equations (rows of coefficients).

    Raises ValueError if the solution set is not graded, which happens only
    when the equations mix parities.
    """
    f = ambient.field
    sols = _linalg.nullspace(list(equations), ambient.dim, f.zero, f.one)
    raw = _echelon(ambient, sols)
    graded = subspace_from_vectors(ambient, raw.basis())
    if graded != raw:
        raise ValueError("solution space is not graded")
    return raw


def kernel_of_maps(space: GradedSpace, maps: Iterable[SuperMap]) -> GradedSubspace:
    """``{x : X(x) = 0 for every X in maps}``; the whole space for no maps."""
    eqs = []
    for a in maps:
        if a.domain != space:
            raise ValueError("map does not act on the given space")
        eqs.extend(a.rows)
    return solve_kernel(space, eqs)


def annihilator(space: GradedSpace, w: GradedSubspace) -> GradedSubspace:
    """``{X in gl(V) : X(w) = 0 for all w in W}`` inside :func:`gl_space`."""
    if w.ambient != space:
        raise ValueError("subspace does not live in the given space")
    n = space.dim
    z = space.field.zero
    eqs = []
    for row in w.rows:
        # (X w)_i = sum_j X[i][j] w_j
        for i in range(n):
            eq = [z] * (n * n)
            for j, c in enumerate(row):
                eq[i * n + j] = c
            eqs.append(eq)
    return solve_kernel(gl_space(space), eqs)


def enumerate_subspaces(ambient: GradedSpace):
    """Yield every graded subspace of a space over a finite field.

    Even and odd blocks are enumerated separately by echelon pivot pattern,
    so each subspace appears exactly once.
    """
    import itertools

    f = ambient.field
    elems = f.elements()
    blocks = [[i for i, p in enumerate(ambient.parities) if p == par] for par in (0, 1)]

    def block_subspaces(cols):
        k = len(cols)
        for r in range(k + 1):
            for piv in itertools.combinations(range(k), r):
                free = [(row, c) for row, pc in enumerate(piv)
                        for c in range(pc + 1, k) if c not in piv]
                for values in itertools.product(elems, repeat=len(free)):
                    rows = [[f.zero] * ambient.dim for _ in piv]
                    for row, pc in enumerate(piv):
                        rows[row][cols[pc]] = f.one
                    for (row, c), val in zip(free, values):
                        rows[row][cols[c]] = val
                    yield rows

    for even_rows in block_subspaces(blocks[0]):
        for odd_rows in block_subspaces(blocks[1]):
            yield _echelon(ambient, even_rows + odd_rows)
