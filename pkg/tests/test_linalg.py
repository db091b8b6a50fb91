from fractions import Fraction

import pytest

from weylkit.linalg import (
    SpanBasis,
    column_stack,
    fmat,
    fr,
    fvec,
    eye,
    is_zero,
    nullspace,
    rank,
    rref,
    solve,
    zeros,
)


def test_fr_rejects_floats():
    with pytest.raises(TypeError):
        fr(0.5)


def test_rref_identity():
    r, piv = rref(eye(3))
    assert piv == [0, 1, 2]
    assert all(r[i, j] == (1 if i == j else 0) for i in range(3) for j in range(3))


def test_rref_known():
    # [[1,2],[2,4]] has rank 1 with pivot in column 0
    a = fmat([[1, 2], [2, 4]])
    r, piv = rref(a)
    assert piv == [0]
    assert r[0, 0] == 1 and r[0, 1] == 2
    assert r[1, 0] == 0 and r[1, 1] == 0


def test_rank_exact_fractions():
    # would be numerically borderline in floats; exact here
    a = fmat([[Fraction(1, 3), Fraction(1, 6)], [Fraction(2, 3), Fraction(1, 3)]])
    assert rank(a) == 1


def test_nullspace_solves():
    a = fmat([[1, 2, 3], [4, 5, 6]])
    basis = nullspace(a)
    assert len(basis) == 1
    v = basis[0]
    assert is_zero(a @ v)


def test_solve_consistent_and_inconsistent():
    a = fmat([[1, 1], [1, -1]])
    b = fvec([3, 1])
    x = solve(a, b)
    assert x is not None and x[0] == 2 and x[1] == 1
    a2 = fmat([[1, 1], [2, 2]])
    assert solve(a2, fvec([1, 3])) is None


def test_span_basis_tracks_combos():
    sb = SpanBasis(3)
    v1 = fvec([1, 1, 0])
    v2 = fvec([0, 1, 1])
    v3 = fvec([1, 2, 1])  # v1 + v2
    assert sb.add(v1)
    assert sb.add(v2)
    assert not sb.add(v3)
    assert len(sb) == 2
    coords = sb.express(fvec([2, 3, 1]))  # 2*v1 + v2
    assert coords is not None
    got = zeros(3)
    for c, v in zip(coords, [v1, v2, v3]):
        got = got + c * v
    assert all(got[i] == fvec([2, 3, 1])[i] for i in range(3))
    assert sb.express(fvec([1, 0, 0])) is None


def test_span_basis_contains():
    sb = SpanBasis(2)
    sb.add(fvec([1, 2]))
    assert sb.contains(fvec([2, 4]))
    assert not sb.contains(fvec([1, 0]))


def test_column_stack_shape():
    m = column_stack([fvec([1, 0]), fvec([0, 1]), fvec([1, 1])])
    assert m.shape == (2, 3)
    assert rank(m) == 2
