from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superomni.dirac import (
    CharacteristicPair,
    GlValuedMap,
    adjoint_map,
    build_maximal_isotropic,
    check_characteristic_pair,
    check_closed,
    check_dirac,
    check_maximal_isotropic,
    dirac_from_lie,
    enumerate_dirac,
    extract_characteristic_pair,
    gl_part,
    graph,
    graph_is_dirac_iff_lie,
    is_dirac,
    lie_from_dirac,
    orthogonal_complement,
    vector_part,
)
from superomni.liesuper import (
    BracketTable,
    adjoint_representation,
    check_action,
    gl_algebra,
    zero_bracket,
)
from superomni.omni import OmniElement, bracket, circ, embed, jacobiator_j1, jacobiator_t, omni_space
from superomni.scalars import GF, QQ
from superomni.superlinalg import (
    SuperMap,
    SuperSpace,
    elementary,
    full_subspace,
    gl_space,
    subspace_from_vectors,
    zero_subspace,
)

V11 = SuperSpace(1, 1)
E11 = omni_space(V11)
HEIS = BracketTable.from_names(V11, {("f1", "f1"): {"e1": 1}})
e1, f1 = V11.basis()


def omni_vec(A=None, x=None, V=V11):
    return OmniElement(A if A is not None else SuperMap.zero(V),
                       x if x is not None else V.zero()).to_vector()


def span(*vecs, ambient=E11):
    return subspace_from_vectors(ambient, list(vecs))


def test_adjoint_map_examples():
    ad = adjoint_map(HEIS)
    assert ad(f1) == elementary(V11, "e1", "f1")
    assert ad(e1).is_zero()
    assert all(adjoint_map(zero_bracket(V11))(v).is_zero() for v in V11.basis())


def test_adjoint_of_gl_on_2_2_space_is_an_action():
    gl = gl_algebra(V11)
    ad = adjoint_map(gl)
    W = gl.space
    assert [ad(b) for b in W.basis()] == adjoint_representation(gl)
    assert check_action(gl, [ad(b) for b in W.basis()], W)


def test_graph_examples():
    assert graph(zero_bracket(V11)) == vector_part(V11)
    assert graph(HEIS) == span(omni_vec(x=e1), omni_vec(elementary(V11, "e1", "f1"), f1))
    V = SuperSpace(1, 0)
    assert graph(BracketTable.from_names(V, {("e1", "e1"): {"e1": 1}})).dim == 1


def test_orthogonal_complement_examples():
    assert orthogonal_complement(full_subspace(E11)) == zero_subspace(E11)
    assert vector_part(V11) <= orthogonal_complement(vector_part(V11))
    assert orthogonal_complement(gl_part(V11)) == gl_part(V11)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), max_size=3))
def test_double_complement_contains(rows):
    L = span(*(E11.vector(r) for r in rows))
    assert L <= orthogonal_complement(orthogonal_complement(L))


def test_maximal_isotropic_examples():
    assert check_maximal_isotropic(gl_part(V11))
    assert check_maximal_isotropic(vector_part(V11))
    v = check_maximal_isotropic(span(omni_vec(x=e1)))
    assert not v and "dim L = 1 < dim L^perp" in v.detail


def test_closed_examples():
    assert check_closed(gl_part(V11))
    assert check_closed(vector_part(V11))
    assert check_closed(graph(HEIS))
    assert check_dirac(graph(HEIS))


def test_graph_equivalence_examples():
    lie, dirac = graph_is_dirac_iff_lie(HEIS)
    assert lie and dirac
    V = SuperSpace(1, 0)
    lie, dirac = graph_is_dirac_iff_lie(BracketTable.from_names(V, {("e1", "e1"): {"e1": 1}}))
    assert not lie and not dirac
    assert not dirac.children[0]  # not isotropic
    lie, dirac = graph_is_dirac_iff_lie(zero_bracket(V11))
    assert lie and dirac


@pytest.mark.parametrize("dims", [(1, 0), (0, 1), (0, 2)])
def test_graph_equivalence_exhaustive_small(dims):
    """Every graded bracket over F_5 on a tiny space: Lie iff its graph is Dirac."""
    from superomni.dirac import graded_brackets
    from superomni.liesuper import check_lie

    V = SuperSpace(*dims, GF(5))
    for omega in graded_brackets(V):
        assert bool(check_lie(omega)) == is_dirac(graph(omega))


def test_extract_pair_examples():
    pair = extract_characteristic_pair(gl_part(V11))
    assert pair.D == full_subspace(gl_space(V11)) and pair.null_space.dim == 0
    pair = extract_characteristic_pair(vector_part(V11))
    assert pair.D.dim == 0 and pair.null_space == full_subspace(V11)
    assert all(pair.pi(v).is_zero() for v in V11.basis())
    pair = extract_characteristic_pair(graph(HEIS))
    assert pair.D.dim == 0
    assert pair.pi(f1) == elementary(V11, "e1", "f1")
    assert pair.pi(e1).is_zero()


def test_check_pair_examples():
    G = gl_space(V11)
    assert check_characteristic_pair(CharacteristicPair(V11, full_subspace(G), GlValuedMap(V11, [], [])))
    heis_pi = GlValuedMap.on_basis(V11, [adjoint_map(HEIS)(v) for v in V11.basis()])
    assert check_characteristic_pair(CharacteristicPair(V11, zero_subspace(G), heis_pi))
    D = span(G.basis_vector("E[e1,e1]"), ambient=G)
    pi = GlValuedMap(V11, [f1], [elementary(V11, "e1", "f1")])
    v = check_characteristic_pair(CharacteristicPair(V11, D, pi))
    assert not v
    cond3 = v.children[2]
    assert not cond3 and cond3.residual == e1
    # the reported value lies outside D0 = ker E[e1,e1]
    assert not pair_null(D).contains(cond3.residual)


def pair_null(D):
    return CharacteristicPair(V11, D, GlValuedMap(V11, [], [])).null_space


def test_check_pair_requires_pi_on_null_space():
    G = gl_space(V11)
    with pytest.raises(ValueError):
        check_characteristic_pair(CharacteristicPair(V11, zero_subspace(G), GlValuedMap(V11, [], [])))


def test_build_maximal_isotropic_examples():
    G = gl_space(V11)
    L = build_maximal_isotropic(CharacteristicPair(V11, full_subspace(G), GlValuedMap(V11, [], [])))
    assert L == gl_part(V11)
    heis_pi = GlValuedMap.on_basis(V11, [adjoint_map(HEIS)(v) for v in V11.basis()])
    assert build_maximal_isotropic(CharacteristicPair(V11, zero_subspace(G), heis_pi)) == graph(HEIS)


def test_build_rejects_d_not_annihilator_of_null_space():
    """D = span{E11, E22} has null space 0, so D + 0 is isotropic but not maximal."""
    G = gl_space(V11)
    D = span(G.basis_vector("E[e1,e1]"), G.basis_vector("E[f1,f1]"), ambient=G)
    pair = CharacteristicPair(V11, D, GlValuedMap(V11, [], []))
    assert pair.null_space.dim == 0
    with pytest.raises(ValueError):
        build_maximal_isotropic(pair)
    L = span(*(omni_vec(A) for A in pair.D_maps()))
    v = check_maximal_isotropic(L)
    assert not v and "dim L = 2 < dim L^perp = 4" in v.detail


def test_lie_from_dirac_examples():
    sl = lie_from_dirac(vector_part(V11))
    assert sl.W == full_subspace(V11) and not sl.bracket.nonzero_items()
    sl = lie_from_dirac(gl_part(V11))
    assert sl.W.dim == 0
    sl = lie_from_dirac(graph(HEIS))
    assert sl.bracket.restrict_names() == {("f1", "f1"): {"e1": 1}}
    with pytest.raises(ValueError):
        lie_from_dirac(span(omni_vec(x=e1)))


def test_dirac_from_lie_examples():
    W0 = SuperSpace(0, 0)
    assert dirac_from_lie(V11, zero_bracket(W0), []) == gl_part(V11)
    assert dirac_from_lie(V11, zero_bracket(V11)) == vector_part(V11)
    assert dirac_from_lie(V11, HEIS) == graph(HEIS)
    W = SuperSpace(1, 0)
    L = dirac_from_lie(V11, zero_bracket(W), [e1])
    G = gl_space(V11)
    expected = span(omni_vec(elementary(V11, "e1", "f1")), omni_vec(elementary(V11, "f1", "f1")),
                    omni_vec(x=e1))
    assert L == expected and is_dirac(L)
    assert extract_characteristic_pair(L).D == span(G.basis_vector("E[e1,f1]"),
                                                    G.basis_vector("E[f1,f1]"), ambient=G)


def test_dirac_from_lie_rejects_non_lie():
    V = SuperSpace(1, 0)
    with pytest.raises(ValueError):
        dirac_from_lie(V, BracketTable.from_names(V, {("e1", "e1"): {"e1": 1}}))


def test_round_trip_gl_on_2_2_space():
    gl = gl_algebra(V11)
    W = gl.space
    L = dirac_from_lie(W, gl)
    assert is_dirac(L)
    back = lie_from_dirac(L)
    assert back.bracket.restrict_names() == gl.restrict_names()
    assert dirac_from_lie(W, back.bracket, back.embedding) == L


def test_round_trip_skew_embedding():
    """W spanned by e1 + e2 inside Q^{2|1}, with a Heisenberg bracket through f1."""
    V = SuperSpace(2, 1)
    Wsp = SuperSpace(1, 1, even_names=["z"], odd_names=["q"])
    omega = BracketTable.from_names(Wsp, {("q", "q"): {"z": 1}})
    emb = [V.vector([1, 1, 0]), V.basis_vector("f1")]
    L = dirac_from_lie(V, omega, emb)
    assert is_dirac(L)
    sl = lie_from_dirac(L)
    assert sl.W == subspace_from_vectors(V, emb)
    assert dirac_from_lie(V, sl.bracket, sl.embedding) == L
    # the recovered bracket agrees after matching bases
    assert sl.bracket.restrict_names() == {("f1", "f1"): {"w1": 1}}


def _random_d_element(rng, D, parity):
    vecs = [v for v in D.basis() if v.parity == parity]
    out = D.ambient.zero()
    for v in vecs:
        out = out + rng.randint(-2, 2) * v
    return out


def test_section_independence_of_condition_two():
    """Changing the section by elements of D changes neither pi on D0 nor the verdict."""
    rng = random.Random(11)
    V = SuperSpace(2, 1)
    Wsp = SuperSpace(1, 1, even_names=["z"], odd_names=["q"])
    omega = BracketTable.from_names(Wsp, {("q", "q"): {"z": 1}})
    L = dirac_from_lie(V, omega, [V.basis_vector("e1"), V.basis_vector("f1")])
    pair = extract_characteristic_pair(L)
    D0 = pair.null_space
    for _ in range(5):
        xs = D0.basis()
        imgs = [pair.pi(x) + SuperMap.from_vector(_random_d_element(rng, pair.D, x.parity), V)
                for x in xs]
        other = CharacteristicPair(V, pair.D, GlValuedMap(V, xs, imgs))
        for x, y in itertools.product(xs, xs):
            assert other.pi.value(x, y) == pair.pi.value(x, y)
        assert check_characteristic_pair(other).ok == check_characteristic_pair(pair).ok
        assert build_maximal_isotropic(other) == L


def test_extension_independence():
    """Any extension of ad from W differing by elements of W^0 gives the same Dirac structure."""
    rng = random.Random(5)
    V = SuperSpace(2, 1)
    gl_like = BracketTable.from_names(SuperSpace(1, 0, even_names=["h"]), {})
    L = dirac_from_lie(V, gl_like, [V.basis_vector("e2")])
    pair = extract_characteristic_pair(L)
    for _ in range(5):
        xs = pair.null_space.basis()
        imgs = [pair.pi(x) + SuperMap.from_vector(_random_d_element(rng, pair.D, x.parity), V)
                for x in xs]
        assert build_maximal_isotropic(CharacteristicPair(V, pair.D, GlValuedMap(V, xs, imgs))) == L


def test_dirac_structures_are_lie_and_leibniz_subalgebras():
    V = SuperSpace(1, 1, GF(5))
    census = enumerate_dirac(V)
    for L in census.dirac:
        basis = [OmniElement.from_vector(v, V) for v in L.basis()]
        for a, b, c in itertools.product(basis, repeat=3):
            assert jacobiator_j1(a, b, c).is_zero()
            assert jacobiator_t(a, b, c).is_zero()
        for a, b in itertools.product(basis, repeat=2):
            assert L.contains(circ(a, b).to_vector())
            assert L.contains(bracket(a, b).to_vector())


@pytest.mark.parametrize("dims,count", [((1, 0), 2), ((0, 1), 2), ((1, 1), 12)])
def test_enumeration_counts(dims, count):
    census = enumerate_dirac(SuperSpace(*dims, GF(5)))
    assert census.verdict
    assert census.counts == (count, count)


def test_enumeration_count_1_1_by_hand():
    """W = 0, V: 1 each; W = span{e1}: 1; W = span{f1}: [f,f] lands in W only as 0: 1;
    W = V: brackets [f1,f1] = a e1 and [e1,f1] = b f1 with Jacobi forcing ab = 0: 9."""
    census = enumerate_dirac(SuperSpace(1, 1, GF(5)))
    by_dim = {}
    for sl in census.lie:
        by_dim[(sl.W.even_dim, sl.W.odd_dim)] = by_dim.get((sl.W.even_dim, sl.W.odd_dim), 0) + 1
    assert by_dim == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 9}


def test_enumeration_guards(monkeypatch):
    with pytest.raises(ValueError):
        enumerate_dirac(SuperSpace(1, 0, QQ))
    with pytest.raises(ValueError):
        enumerate_dirac(SuperSpace(1, 0, GF(3)))
    with pytest.raises(ValueError):
        enumerate_dirac(SuperSpace(2, 1, GF(5)))
    monkeypatch.setenv("SUPEROMNI_MAX_DIM", "1")
    with pytest.raises(ValueError):
        enumerate_dirac(SuperSpace(1, 0, GF(5)))


def test_embed_of_vector_part_is_isotropic():
    L = vector_part(V11)
    for a, b in itertools.product(L.basis(), repeat=2):
        x, y = OmniElement.from_vector(a, V11), OmniElement.from_vector(b, V11)
        assert bracket(x, y).is_zero()
        assert embed(x.x) == x
