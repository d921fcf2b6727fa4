import random
from fractions import Fraction

from folform.linalg import Eliminator, mat_inverse, mat_mul, mat_rank, nullspace_sparse, solve_sparse


def dense_to_sparse(rows):
    return [{j: Fraction(v) for j, v in enumerate(row) if v} for row in rows]


def test_solve_unique():
    rows = dense_to_sparse([[2, 1], [1, -1]])
    sol = solve_sparse(rows, [Fraction(5), Fraction(1)], 2)
    assert sol == [Fraction(2), Fraction(1)]


def test_solve_inconsistent():
    rows = dense_to_sparse([[1, 1], [2, 2]])
    assert solve_sparse(rows, [Fraction(1), Fraction(3)], 2) is None


def test_solve_underdetermined_canonical():
    # x + y + z = 1: canonical solution pivots on the first column only.
    rows = dense_to_sparse([[1, 1, 1]])
    assert solve_sparse(rows, [Fraction(1)], 3) == [Fraction(1), Fraction(0), Fraction(0)]


def test_nullspace_canonical():
    rows = dense_to_sparse([[1, 2, 3]])
    basis = nullspace_sparse(rows, 3)
    assert basis == [[Fraction(-2), Fraction(1), Fraction(0)], [Fraction(-3), Fraction(0), Fraction(1)]]


def test_random_consistency():
    rng = random.Random(7)
    for _ in range(30):
        n, m = rng.randint(1, 5), rng.randint(1, 6)
        dense = [[Fraction(rng.randint(-4, 4)) for _ in range(m)] for _ in range(n)]
        target = [Fraction(rng.randint(-3, 3)) for _ in range(m)]
        rhs = [sum(row[j] * target[j] for j in range(m)) for row in dense]
        sol = solve_sparse(dense_to_sparse(dense), rhs, m)
        assert sol is not None
        for row, b in zip(dense, rhs):
            assert sum(row[j] * sol[j] for j in range(m)) == b
        # every nullspace vector really annihilates the rows
        for vec in nullspace_sparse(dense_to_sparse(dense), m):
            for row in dense:
                assert sum(row[j] * vec[j] for j in range(m)) == 0


def test_rank_and_inverse():
    a = [[Fraction(v) for v in row] for row in [[1, 2], [3, 4]]]
    assert mat_rank(a) == 2
    inv = mat_inverse(a)
    assert mat_mul(a, inv) == [[1, 0], [0, 1]]
    singular = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert mat_rank(singular) == 1
    assert mat_inverse(singular) is None


def test_pivot_order_independence():
    # Adding rows in any order yields the same canonical solution.
    dense = [[1, 1, 0], [0, 1, 1]]
    rhs = [Fraction(2), Fraction(1)]
    for order in ([0, 1], [1, 0]):
        elim = Eliminator(3)
        for i in order:
            elim.add_row({j: Fraction(v) for j, v in enumerate(dense[i]) if v}, rhs[i])
        assert elim.solve() == [Fraction(1), Fraction(1), Fraction(0)]
