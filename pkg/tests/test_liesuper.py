from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from superomni.liesuper import (
    BracketTable,
    EvenBilinearForm,
    adjoint_representation,
    check_action,
    check_graded,
    check_leibniz_rule,
    check_lie,
    check_quadratic_compatible,
    check_super_jacobi,
    check_super_skew,
    gl_algebra,
    identity_representation,
    semidirect_product,
    supertrace_form,
    zero_bracket,
)
from superomni.omni import circ_table
from superomni.scalars import GF
from superomni.superlinalg import SuperMap, SuperSpace, elementary, gl_space

V11 = SuperSpace(1, 1)
HEIS = BracketTable.from_names(V11, {("f1", "f1"): {"e1": 1}})


def _names(omega):
    return {(a, b): {k: oracles.Fraction(v) for k, v in val.items()}
            for (a, b), val in omega.restrict_names().items()}


def test_graded_examples():
    assert check_graded(zero_bracket(V11))
    assert check_graded(HEIS)
    bad = check_graded(BracketTable.from_names(V11, {("e1", "e1"): {"f1": 1}}))
    assert not bad and bad.witness == ("e1", "e1")


def test_super_skew_examples():
    assert check_super_skew(HEIS)
    V20 = SuperSpace(2, 0)
    bad = BracketTable.from_names(V20, {("e1", "e2"): {"e1": 1}, ("e2", "e1"): {"e1": 1}})
    assert not check_super_skew(bad)
    assert check_super_skew(zero_bracket(V20))


def test_jacobi_examples():
    assert check_lie(gl_algebra(V11))
    assert check_lie(HEIS)


def test_jacobi_failure_on_corrupted_gl():
    """Zeroing the single entry [E[e1,f1], E[f1,e1]] leaves a Jacobi defect of -(E11 + E22)."""
    gl = gl_algebra(V11)
    G = gl.space
    i, j = G.index("E[e1,f1]"), G.index("E[f1,e1]")
    bad = gl.with_entry((i, j), G.zero())
    v = check_super_jacobi(bad)
    assert not v
    alg = (list(G.names), dict(zip(G.names, G.parities)), _names(bad))
    assert oracles.jacobi_residual(alg, *v.witness) == {
        k: oracles.Fraction(c) for k, c in v.residual.as_dict().items()}
    assert v.residual.as_dict() == {"E[e1,e1]": -1, "E[f1,f1]": -1}
    assert not check_lie(bad)


def test_zeroing_both_orderings_gives_a_lie_superalgebra():
    """With [E12,E21] = [E21,E12] = 0 the even torus acts on an abelian odd part."""
    gl = gl_algebra(V11)
    G = gl.space
    i, j = G.index("E[e1,f1]"), G.index("E[f1,e1]")
    assert check_lie(gl.with_entry((i, j), G.zero()).with_entry((j, i), G.zero()))


def test_leibniz_examples():
    assert check_leibniz_rule(gl_algebra(V11))
    assert check_leibniz_rule(circ_table(V11))
    V20 = SuperSpace(2, 0)
    # symmetric product e1.e1 = e1, e1.e2 = e2.e1 = e2
    sym = BracketTable.from_names(V20, {("e1", "e1"): {"e1": 1}, ("e1", "e2"): {"e2": 1},
                                        ("e2", "e1"): {"e2": 1}, ("e2", "e2"): {"e1": 1}})
    v = check_leibniz_rule(sym)
    assert not v
    alg = (["e1", "e2"], {"e1": 0, "e2": 0}, _names(sym))
    assert oracles.leibniz_residual(alg, *v.witness)


def test_action_examples():
    gl = gl_algebra(V11)
    assert check_action(gl, identity_representation(V11), V11)
    assert check_action(gl, [SuperMap.zero(V11)] * 4, V11)
    L = SuperSpace(1, 0)
    E = elementary(V11, "e1", "e1")
    # abelian L with rho(x) = E: rho([x,x]) = 0 = EE - EE, so this is an action
    assert check_action(zero_bracket(L), [E], V11)
    # with [x,x] = x the left side is E but the right side is zero
    v = check_action(BracketTable.from_names(L, {("e1", "e1"): {"e1": 1}}), [E], V11)
    assert not v


def test_action_rejects_parity_violation():
    with pytest.raises(ValueError):
        check_action(zero_bracket(SuperSpace(1, 0)), [elementary(V11, "e1", "f1")], V11)


def test_adjoint_is_an_action():
    gl = gl_algebra(SuperSpace(2, 1))
    assert check_action(gl, adjoint_representation(gl), gl.space)


def test_semidirect_product():
    gl = gl_algebra(V11)
    total = semidirect_product(gl, identity_representation(V11), V11)
    assert check_lie(total)
    S = total.space
    x = S.basis_vector("E[e1,f1]")
    v = S.basis_vector("f1")
    assert total(x, v) == S.basis_vector("e1")
    # restriction to gl(V) is the commutator, V is an abelian ideal
    for a, b in itertools.product(gl.space.names, repeat=2):
        assert total(S.basis_vector(a), S.basis_vector(b)).as_dict() == \
            gl(gl.space.basis_vector(a), gl.space.basis_vector(b)).as_dict()
    for a, b in itertools.product(V11.names, repeat=2):
        assert total(S.basis_vector(a), S.basis_vector(b)).is_zero()


def test_semidirect_abelian_zero_action():
    L = SuperSpace(1, 1, odd_names=["g1"], even_names=["d1"])
    total = semidirect_product(zero_bracket(L), [SuperMap.zero(V11)] * 2, V11)
    assert not total.nonzero_items()


def test_supertrace_form_values():
    B = supertrace_form(V11)
    G = gl_space(V11)
    b = G.basis_vector
    assert B(b("E[e1,e1]"), b("E[e1,e1]")) == 1
    assert B(b("E[e1,f1]"), b("E[f1,e1]")) == 1
    assert B(b("E[f1,e1]"), b("E[e1,f1]")) == -1
    assert B.is_nondegenerate()


def test_form_validation():
    with pytest.raises(ValueError):
        EvenBilinearForm(V11, [[0, 1], [1, 0]])          # mixed parity entry
    with pytest.raises(ValueError):
        EvenBilinearForm(SuperSpace(0, 2), [[0, 1], [1, 0]])  # odd block must be skew


def test_quadratic_examples():
    gl = gl_algebra(V11)
    assert check_quadratic_compatible(gl, supertrace_form(V11))
    V20 = SuperSpace(2, 0)
    assert check_quadratic_compatible(zero_bracket(V20), EvenBilinearForm(V20, [[1, 0], [0, 1]]))
    B = EvenBilinearForm(V11, [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        check_quadratic_compatible(HEIS, B)
    v = check_quadratic_compatible(HEIS, B, allow_degenerate=True)
    assert not v
    assert oracles.invariance_residual(
        (["e1", "f1"], {"e1": 0, "f1": 1}, _names(HEIS)), {("e1", "e1"): 1}, *v.witness) != 0


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_gl_supertrace_invariant(m, n):
    V = SuperSpace(m, n)
    assert check_quadratic_compatible(gl_algebra(V), supertrace_form(V))


# property tests over F_5: every Lie table satisfies the Leibniz rule

def _random_table(space, values):
    entries, it = {}, iter(values)
    for i, j in itertools.product(range(space.dim), repeat=2):
        target = (space.parities[i] + space.parities[j]) % 2
        for k in range(space.dim):
            c = next(it)
            if space.parities[k] == target and c:
                entries.setdefault((i, j), {})[k] = c
    return BracketTable(space, entries)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=8, max_size=8))
def test_lie_implies_leibniz(values):
    V = SuperSpace(1, 1, GF(5))
    F = V.field
    omega = _random_table(V, [F(v) for v in values])
    assert check_graded(omega)
    if check_lie(omega):
        assert check_leibniz_rule(omega)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=27, max_size=27))
def test_jacobi_verdict_matches_oracle(values):
    V = SuperSpace(2, 1, GF(5))
    F = V.field
    omega = _random_table(V, [F(v) for v in values])
    v = check_lie(omega)
    names = list(V.names)
    par = dict(zip(names, V.parities))
    # brute force over the rationals reduced mod 5
    table = {k: {n: oracles.Fraction(int(str(c))) for n, c in val.items()}
             for k, val in omega.restrict_names().items()}
    alg = (names, par, table)

    def zero_mod5(d):
        return all((c.numerator * pow(c.denominator, -1, 5)) % 5 == 0 for c in d.values())

    skew_ok = all(zero_mod5(oracles.skew_residual(alg, a, b)) for a in names for b in names)
    jac_ok = all(zero_mod5(oracles.jacobi_residual(alg, a, b, c))
                 for a in names for b in names for c in names)
    assert bool(v) == (skew_ok and jac_ok)
