import numpy as np
import pytest

from ausrep import linalg as la


def test_rref_zero_matrix():
    r, piv = la.rref(la.zeros(3, 4), 7)
    assert r.tolist() == la.zeros(3, 4).tolist()
    assert piv == ()


def test_rref_identity():
    r, piv = la.rref(la.eye(3), 5)
    assert r.tolist() == la.eye(3).tolist()
    assert piv == (0, 1, 2)


def test_rref_hand_example_mod5():
    # [[2,4],[1,2]] over F_5: scale first row by 3, eliminate.
    r, piv = la.rref(np.array([[2, 4], [1, 2]]), 5)
    assert r.tolist() == [[1, 2], [0, 0]]
    assert piv == (0,)


def test_kernel_identity_and_zero():
    assert la.kernel(la.eye(4), 7).shape == (0, 4)
    k = la.kernel(la.zeros(2, 3), 7)
    assert k.tolist() == la.eye(3).tolist()


def test_kernel_hand_example_mod7():
    k = la.kernel(np.array([[1, 1]]), 7)
    assert k.tolist() == [[1, 6]]


def test_solve_identity_and_inconsistent():
    b = np.array([3, 1, 4])
    assert la.solve(la.eye(3), b, 5).tolist() == [3, 1, 4]
    assert la.solve(la.zeros(2, 2), np.array([1, 0]), 5) is None


def test_solve_free_variables_zeroed():
    x = la.solve(np.array([[1, 1]]), np.array([3]), 5)
    assert x.tolist() == [3, 0]


def test_solve_matrix_rhs():
    m = np.array([[2, 0], [0, 3]])
    x = la.solve(m, la.eye(2), 5)
    assert la.matmul(m, x, 5).tolist() == la.eye(2).tolist()


def test_quotient_by_zero_and_full():
    q0 = la.quotient(3, la.Subspace.zero(3, 5), 5)
    assert q0.projection.tolist() == la.eye(3).tolist()
    qf = la.quotient(3, la.Subspace.full(3, 5), 5)
    assert qf.dim == 0


def test_quotient_invariants_mod3():
    killed = la.Subspace.from_rows(np.array([[1, 1]]), 2, 3)
    q = la.quotient(2, killed, 3)
    assert q.dim == 1
    pi_sigma = la.matmul(q.projection, q.section, 3)
    assert pi_sigma.tolist() == [[1]]
    ker = la.Subspace.from_rows(la.kernel(q.projection, 3), 2, 3)
    assert ker == killed


def test_rank_nullity_and_canonicity_random():
    rng = np.random.default_rng(0)
    p = 101
    for _ in range(200):
        rows, cols = int(rng.integers(0, 8)), int(rng.integers(1, 8))
        m = la.random_matrix(rng, rows, cols, p)
        r = la.rank(m, p)
        assert r + la.kernel(m, p).shape[0] == cols
        # idempotence
        rr, piv = la.rref(m, p)
        assert la.rref(rr, p)[0].tolist() == rr.tolist()
        # invariance under row operations
        if rows:
            g = la.random_matrix(rng, rows, rows, p)
            while not la.is_invertible(g, p):
                g = la.random_matrix(rng, rows, rows, p)
            assert la.rref(la.matmul(g, m, p), p)[0].tolist() == rr.tolist()


def test_solve_agrees_with_image_membership():
    rng = np.random.default_rng(1)
    p = 13
    for _ in range(100):
        m = la.random_matrix(rng, 4, 3, p)
        b = la.random_matrix(rng, 4, 1, p)[:, 0]
        x = la.solve(m, b, p)
        member = la.Subspace.from_rows(la.image(m, p), 4, p).contains(b)
        assert (x is not None) == member
        if x is not None:
            assert la.matmul(m, x.reshape(-1, 1), p)[:, 0].tolist() == b.tolist()


def test_subspace_sum_intersect_modular_law():
    rng = np.random.default_rng(2)
    p = 7
    for _ in range(50):
        a = la.Subspace.from_rows(la.random_matrix(rng, 2, 5, p), 5, p)
        b = la.Subspace.from_rows(la.random_matrix(rng, 2, 5, p), 5, p)
        s = a.add(b)
        i = a.intersect(b)
        assert s.dim + i.dim == a.dim + b.dim
        for row in i.basis:
            assert a.contains(row) and b.contains(row)


def test_preimage():
    p = 5
    m = np.array([[1, 0], [0, 0]])
    target = la.Subspace.zero(2, p)
    pre = la.preimage(m, target, p)
    assert pre.basis.tolist() == [[0, 1]]


def test_size_cap():
    with pytest.raises(la.SizeCapError):
        la.zeros(10_001, 1)


def test_inv_scalar_rejects_zero():
    with pytest.raises(ZeroDivisionError):
        la.inv_scalar(0, 7)
