from __future__ import annotations

from fractions import Fraction as F
from itertools import permutations

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import E1_A, E1_ASTAR
from oracles import algebra_dimension, matrices, same_span, six_decompositions, sym, to_sym_basis
from tdpairs import FieldConfig, Matrix, ModuleSpec, Subspace, instance_from_spec, verify_tridiagonal_pair
from tdpairs.pair import (
    DECOMPOSITION_NAMES,
    OrderingError,
    ShapeVector,
    algebra_closure,
    check_a_action,
    check_decompositions,
    dual_pair_report,
    generated_algebra_dimension,
    inverted_q_report,
    irreducibility_verdict,
    is_invariant,
    shape,
    six_decompositions as package_six,
    standard_ordering_search,
)
from tdpairs.linalg import eigenspace, kernel


def block_diag(*ms: Matrix) -> Matrix:
    n = sum(m.nrows for m in ms)
    rows = [[F(0)] * n for _ in range(n)]
    off = 0
    for m in ms:
        for i in range(m.nrows):
            for j in range(m.ncols):
                rows[off + i][off + j] = m[i, j]
        off += m.nrows
    return Matrix(rows)


def test_e1_passes_all_axioms(cfg):
    rep = verify_tridiagonal_pair(E1_A, E1_ASTAR, cfg)
    assert rep.ok, rep.failures
    assert rep.d == 1
    assert rep.shape == (1, 1)
    assert rep.algebra_dim == 4
    assert rep.pair.theta == (F(1, 2), 2)
    assert rep.pair.theta_star == (2, F(1, 2))


def test_e1_decompositions_frozen(e1_pair):
    decs = e1_pair.decompositions
    # by hand: V_0 = <(1,-2/3)>, V_1 = <(0,1)>, V*_0 = <(1,0)>, V*_1 = <(1,-3/2)>
    assert e1_pair.V == (Subspace(2, [(1, F(-2, 3))]), Subspace(2, [(0, 1)]))
    assert e1_pair.Vstar == (Subspace(2, [(1, 0)]), Subspace(2, [(1, F(-3, 2))]))
    # [0*0]: U_0 = V*_0, U_1 = V_0;  [0*D]: U_0 = V*_0, U_1 = V_1
    assert decs["[0*0]"].subspaces == (Subspace(2, [(1, 0)]), Subspace(2, [(1, F(-2, 3))]))
    assert decs["[0*D]"].subspaces == (Subspace(2, [(1, 0)]), Subspace(2, [(0, 1)]))
    assert [dec.dims for dec in decs.values()] == [(1, 1)] * 6


@pytest.mark.parametrize("factors", [((1, 1),), ((2, 3),), ((1, 1), (1, 3))])
def test_decompositions_match_sympy_oracle(factors):
    inst, rep = instance_from_spec(ModuleSpec(factors, FieldConfig(2)))
    pair = rep.pair
    ref = six_decompositions(inst.A, inst.Astar, pair.theta, pair.theta_star)
    for name in DECOMPOSITION_NAMES:
        ours = pair.decompositions[name].subspaces
        assert len(ours) == len(ref[name])
        for u, r in zip(ours, ref[name]):
            assert same_span(to_sym_basis(u), r), (name, u)


def test_decomposition_and_action_checks_pass(e1_pair):
    assert all(c.passed for c in check_decompositions(e1_pair))
    assert all(c.passed for c in check_a_action(e1_pair))
    assert [d.name for d in package_six(e1_pair)] == list(DECOMPOSITION_NAMES)
    assert shape(e1_pair) == (1, 1)


def test_standard_ordering_by_exhaustion():
    # the oracle tries every ordering of the eigenspaces and keeps those where A* is tridiagonal
    a, s = sym(E1_A), sym(E1_ASTAR)
    eig = list(a.eigenvals())
    good = []
    for perm in permutations(eig):
        ok = True
        for i, lam in enumerate(perm):
            v = (a - lam * sp.eye(2)).nullspace()[0]
            near = [(a - perm[j] * sp.eye(2)).nullspace()[0] for j in range(max(i - 1, 0), min(i + 2, len(perm)))]
            if sp.Matrix.hstack(*near, s * v).rank() > sp.Matrix.hstack(*near).rank():
                ok = False
        if ok:
            good.append(tuple(perm))
    found = tuple(lam for lam, _ in standard_ordering_search(E1_A, E1_ASTAR))
    assert found == (F(1, 2), 2)
    assert tuple(sp.Rational(x.numerator, x.denominator) for x in found) in good


def test_standard_ordering_rejects_non_path():
    # A* couples all three eigenspaces of A to each other
    A = Matrix.diag([1, 2, 3])
    Astar = Matrix([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
    with pytest.raises(OrderingError):
        standard_ordering_search(A, Astar)


def test_wrong_eigenvalue_string(cfg):
    A = Matrix([[F(3, 2), 0], [1, 2]])
    rep = verify_tridiagonal_pair(A, E1_ASTAR, cfg)
    assert not rep.ok
    assert rep.failures[0].startswith("eigenvalue string")
    assert rep.pair is None


def test_reducible_pair_has_witness(cfg):
    A, As = block_diag(E1_A, E1_A), block_diag(E1_ASTAR, E1_ASTAR)
    rep = verify_tridiagonal_pair(A, As, cfg)
    assert rep.irreducibility == "reducible"
    assert rep.algebra_dim == 4 == algebra_dimension(A, As)
    verdict, dim, witness = irreducibility_verdict(A, As)
    assert 0 < witness.dim < 4 and is_invariant(witness, A, As)


def test_inconclusive_when_irreducible_only_over_rationals():
    # rotation by 90 degrees: no rational invariant line, but the algebra is C, not M_2
    J = Matrix([[0, -1], [1, 0]])
    verdict, dim, witness = irreducibility_verdict(J, J)
    assert (verdict, dim, witness) == ("inconclusive", 2, None)


def test_dimension_mismatch_raises(cfg):
    with pytest.raises(ValueError):
        verify_tridiagonal_pair(E1_A, Matrix.identity(3), cfg)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(matrices(n), matrices(n))))
def test_burnside_dimension_matches_sympy(ab):
    A, B = ab
    assert generated_algebra_dimension(A, B) == algebra_dimension(A, B)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(matrices(n), matrices(n))))
def test_full_algebra_means_no_invariant_kernel(ab):
    A, B = ab
    words = algebra_closure(A, B)
    n = A.nrows
    if len(words) != n * n:
        return
    for w in words[1:]:
        for W in [kernel(w)] + [eigenspace(w, lam) for lam in (0, 1, -1)]:
            if 0 < W.dim < n:
                assert not is_invariant(W, A, B)


def test_reported_witness_is_invariant():
    # upper triangular pair: the first coordinate line is invariant
    A = Matrix([[1, 2, 0], [0, 3, 1], [0, 0, 5]])
    B = Matrix([[2, 0, 1], [0, 1, 0], [0, 0, 1]])
    verdict, dim, W = irreducibility_verdict(A, B)
    assert verdict == "reducible" and is_invariant(W, A, B)


def test_shape_vector_laws():
    assert ShapeVector((1, 2, 2, 1)).is_symmetric() and ShapeVector((1, 2, 2, 1)).is_unimodal()
    assert not ShapeVector((2, 1, 2)).is_unimodal()
    assert not ShapeVector((1, 2)).is_symmetric()


def test_swap_and_inversion_preserve_e1(e1_pair):
    for rep in (dual_pair_report(e1_pair), inverted_q_report(e1_pair)):
        assert rep.ok and rep.shape == (1, 1)


@settings(max_examples=12, deadline=None)
@given(st.integers(1, 3), st.sampled_from([1, 3, F(-1, 2), F(7, 3)]), st.sampled_from([2, 3, F(1, 2), -2]),
       st.sampled_from([1, 2, F(-1, 3)]), st.sampled_from([1, F(5, 2), -1]), st.sampled_from(["minus", "plus"]))
def test_single_evaluation_modules_are_leonard_pairs(d, t, q, a, astar, variant):
    inst, rep = instance_from_spec(ModuleSpec(((d, t),), FieldConfig(q)), a, astar, variant)
    assert rep.ok, rep.failures
    assert rep.shape == (1,) * (d + 1)
    assert all(c.passed for c in check_decompositions(rep.pair))
    assert all(c.passed for c in check_a_action(rep.pair))
    dual = dual_pair_report(rep.pair)
    assert dual.ok and dual.shape == rep.shape
