import pytest

from qmink.coeff import I, param
from qmink.matalg import (
    Matrix, ProjectorError, SingularMatrixError, conj_transpose, diag, identity, inverse, kron,
    leg_embed, partial_trace2, partial_transpose, perm, projectors_from_minpoly, symbolic_rank,
)

q, h = param("q"), param("h")


def test_perm_convention():
    p = perm()
    assert p[1, 2] == 1 and p[2, 1] == 1 and p[0, 0] == 1 and p[3, 3] == 1
    assert p * p == identity(4)


def test_kron_convention():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    k = kron(a, b)
    # (A (x) B)[ij, kl] = A[i,k] B[j,l]
    assert k[2 * 1 + 0, 2 * 0 + 1] == a[1, 0] * b[0, 1]
    assert perm() * kron(a, b) * perm() == kron(b, a)


def test_leg_embed_identity_on_third_leg():
    m = kron(Matrix([[q, 1], [0, 2]]), Matrix([[1, h], [0, 1]]))
    e12 = leg_embed(m, "12")
    assert e12 == kron(m, identity(2))
    e23 = leg_embed(m, "23")
    assert e23 == kron(identity(2), m)


def test_leg13_swaps_through_23():
    m = kron(Matrix([[q, 1], [0, 2]]), Matrix([[1, h], [3, 1]]))
    p23 = leg_embed(perm(), "23")
    assert leg_embed(m, "13") == p23 * leg_embed(m, "12") * p23


def test_partial_transposes():
    a, b = Matrix([[1, q], [2, 3]]), Matrix([[h, 5], [7, 1]])
    m = kron(a, b)
    assert partial_transpose(m, 1) == kron(a.T, b)
    assert partial_transpose(m, 2) == kron(a, b.T)
    assert partial_trace2(m) == a * b.trace()


def test_inverse_and_pivot_log():
    m = Matrix([[q, 1], [0, h]])
    log = []
    assert inverse(m, log) * m == identity(2)
    assert log
    with pytest.raises(SingularMatrixError):
        inverse(Matrix([[q, q], [1, 1]]))


def test_rank_and_dagger():
    assert symbolic_rank(Matrix([[q, q], [1, 1]])) == 1
    assert symbolic_rank(diag(q, h, 1)) == 3
    m = Matrix([[I, q], [0, 1]])
    assert conj_transpose(m) == Matrix([[-I, 0], [q, 1]])


def test_projectors_from_minpoly():
    rh = perm()
    plus, minus = projectors_from_minpoly(rh, (1, -1))
    assert plus + minus == identity(4)
    assert symbolic_rank(plus) == 3 and symbolic_rank(minus) == 1
    with pytest.raises(ProjectorError):
        projectors_from_minpoly(rh, (1, 1))
    with pytest.raises(ProjectorError):
        projectors_from_minpoly(rh, (1, 2))


def test_blocks_and_scalar():
    m = Matrix([[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12], [13, 14, 15, 16]])
    assert m.block(1, 0) == Matrix([[9, 10], [13, 14]])
    assert diag(q, q).is_scalar() and not diag(q, 1).is_scalar()
