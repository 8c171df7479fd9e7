from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cornering.exactla import (
    Echelon,
    Matrix,
    PrimeField,
    Subspace,
    Zp,
    block_diag,
    coset_reduce,
    free_columns,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    parse_field,
    rank,
    rref,
    scalar_str,
    solve_linear,
    spin_closure,
    use_field,
    vstack,
)

entries = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix(rows, c)


def _sympy(m: Matrix):
    return sympy.Matrix(m.nrows, m.ncols, [sympy.Rational(x.numerator, x.denominator) for r in m.rows for x in r])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    R, piv = rref(m)
    if m.nrows == 0:
        assert piv == ()
        return
    SR, spiv = _sympy(m).rref()
    assert piv == spiv
    assert _sympy(R) == SR


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent_and_rank_nullity(m):
    R, _ = rref(m)
    assert rref(R)[0] == R
    assert rank(m) + len(kernel_basis(m)) == m.ncols


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m):
        assert not any(m @ v)


def test_kernel_standard_form():
    m = Matrix([[1, 2, 0, 1], [0, 0, 1, 3]])
    ker = kernel_basis(m)
    assert free_columns(m) == [1, 3]
    # each kernel vector has a single 1 among the free coordinates
    assert [[v[1], v[3]] for v in ker] == [[1, 0], [0, 1]]


def test_scalar_strings():
    assert scalar_str(Fraction(-3, 4)) == "-3/4"
    assert scalar_str(Fraction(6, 3)) == "2"
    assert Matrix([[Fraction(1, 2), 0]]).to_strings() == [["1/2", "0"]]


def test_matrix_parses_string_entries():
    m = Matrix([["1/2", "3"], ["-1", "0"]])
    assert m[0, 0] == Fraction(1, 2)
    assert m @ (2, 0) == (Fraction(1), Fraction(-2))


def test_inverse_and_solve():
    m = Matrix([[2, 1], [1, 1]])
    assert inverse(m) @ m == Matrix.identity(2)
    assert solve_linear(m, [3, 2]) == (1, 1)
    assert solve_linear(Matrix([[1, 1], [1, 1]]), [1, 2]) is None
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_stacking():
    a, b = Matrix([[1, 2]]), Matrix([[3, 4]])
    assert vstack([a, b], 2) == Matrix([[1, 2], [3, 4]])
    assert hstack([a, b], 1) == Matrix([[1, 2, 3, 4]])
    assert block_diag([a, b]).shape == (2, 4)
    assert vstack([], 3).shape == (0, 3)


def test_shape_errors():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])


def test_subspace_operations():
    U = Subspace([(1, 1, 0), (2, 2, 0), (0, 0, 1)], 3)
    assert U.dim == 2
    assert (3, 3, 5) in U
    assert (1, 0, 0) not in U
    assert U == Subspace([(1, 1, 1), (0, 0, 1)], 3)
    assert len(U.complement_columns()) == 1


def test_coset_reduce_is_canonical():
    R, piv = rref(Matrix([[1, 1, 0]]))
    basis = [R.rows[0]]
    a = coset_reduce((1, 0, 0), basis, piv)
    b = coset_reduce((0, -1, 0), basis, piv)
    assert a == b


def test_echelon_matches_dense_rank():
    vecs = [{0: 1, 2: 1}, {1: 1}, {0: 2, 1: 3, 2: 2}, {2: 1}]
    e = Echelon()
    added = [e.add(v) is not None for v in vecs]
    assert added == [True, True, False, True]
    assert len(e.pivots) == rank(Matrix([[v.get(i, 0) for i in range(3)] for v in vecs]))


def test_spin_closure_is_invariant():
    shift = Matrix([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    basis = spin_closure([(1, 0, 0)], [shift], 3)
    assert len(basis) == 3
    basis = spin_closure([(0, 1, 0)], [shift], 3)
    space = Subspace(basis, 3)
    for v in basis:
        assert shift @ v in space
    assert space.dim == 2


def test_image_basis_spans_columns():
    m = Matrix([[1, 2, 3], [2, 4, 6]])
    assert len(image_basis(m)) == 1


def test_prime_field_mode():
    with use_field(PrimeField(5)):
        m = Matrix([[1, 2], [3, 1]])
        assert isinstance(m[0, 0], Zp)
        # determinant 1 - 6 = -5 vanishes mod 5
        assert rank(m) == 1
    assert rank(Matrix([[1, 2], [3, 1]])) == 2


def test_parse_field():
    assert parse_field("rational").name == "rational"
    assert parse_field("prime:7").p == 7
    with pytest.raises(ValueError):
        parse_field("prime:9")
    with pytest.raises(ValueError):
        parse_field("complex")
