from hypothesis import given, strategies as st

from lambek_chase import intmat as im

small = st.integers(-6, 6)


def matrices(max_dim=4):
    return st.integers(0, max_dim).flatmap(
        lambda m: st.integers(0, max_dim).flatmap(
            lambda n: st.tuples(st.just(m), st.just(n),
                                st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))))


@given(matrices())
def test_smith_decomposition(mnA):
    m, n, A = mnA
    U, Ui, diag, V, Vi = im.smith(A, m, n)
    D = im.matmul(im.matmul(U, A, m), V, n) if m and n else [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            want = diag[i] if i == j and i < len(diag) else 0
            assert D[i][j] == want
    assert im.matmul(U, Ui, m) == im.identity(m)
    assert im.matmul(V, Vi, n) == im.identity(n)
    assert all(d > 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))


@given(matrices())
def test_unimodular_transforms(mnA):
    m, n, A = mnA
    U, _, _, V, _ = im.smith(A, m, n)
    assert abs(im.det(U)) == 1
    assert abs(im.det(V)) == 1


def test_invariant_factors_known():
    assert im.invariant_factors([[2, 0], [0, 3]], 2, 2) == [1, 6]
    assert im.invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3, 3) == [2, 6, 12]
    assert im.invariant_factors([[0, 0]], 1, 2) == []


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solver_finds_integer_solutions(mnA, x):
    m, n, A = mnA
    x = x[:n]
    b = im.matvec(A, x) if n else [0] * m
    sol = im.IntegerSolver(A, m, n).solve(b)
    assert sol is not None
    assert (im.matvec(A, sol) if n else [0] * m) == b


@given(matrices())
def test_nullspace_is_in_kernel(mnA):
    m, n, A = mnA
    for v in im.integer_nullspace(A, m, n):
        assert im.matvec(A, v) == [0] * m


def test_solver_refuses_non_integral():
    # 2x = 1 has no integer solution
    assert im.IntegerSolver([[2]], 1, 1).solve([1]) is None


@given(st.lists(st.lists(small, min_size=3, max_size=3), max_size=4), st.lists(small, min_size=3, max_size=3))
def test_lattice_membership(vectors, coeffs):
    basis = im.lattice_basis(vectors, 3)
    for v in vectors:
        assert im.in_lattice(v, basis)
    combo = [sum(c * v[i] for c, v in zip(coeffs, vectors)) for i in range(3)]
    assert im.in_lattice(combo, basis)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_ext_gcd(a, b):
    g, s, t = im.ext_gcd(a, b)
    assert g >= 0 and s * a + t * b == g
    if a or b:
        assert a % g == 0 and b % g == 0
