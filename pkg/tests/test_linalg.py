import random

from ffsubspace.function_field import RationalFunction
from ffsubspace.linalg import Echelon, solve_combination
from helpers import rand_k

T = RationalFunction.t()


def row(*vals):
    return {i: RationalFunction(v) if not isinstance(v, RationalFunction) else v
            for i, v in enumerate(vals) if v}


def test_rank_and_pivots_constant():
    ech = Echelon(3)
    assert ech.add_row(row(1, 2, 3))
    assert ech.add_row(row(2, 4, 6)) is False  # dependent
    assert ech.add_row(row(0, 1, 1))
    assert ech.rank == 2
    assert ech.pivot_cols() == [0, 1]
    rref = ech.rref_rows()
    assert rref[0] == {0: RationalFunction(1), 2: RationalFunction(1)}
    assert rref[1] == {1: RationalFunction(1), 2: RationalFunction(1)}


def test_rref_is_canonical_under_row_order():
    rows = [row(1, 2, 3), row(0, 1, 1), row(1, 3, 4), row(2, 0, 1)]
    rng = random.Random(3)
    base = None
    for _ in range(6):
        shuffled = rows[:]
        rng.shuffle(shuffled)
        ech = Echelon(3)
        for r in shuffled:
            ech.add_row(dict(r))
        if base is None:
            base = ech.rref_rows()
        else:
            assert ech.rref_rows() == base


def test_polynomial_entries():
    ech = Echelon(2)
    ech.add_row(row(T, 1))
    ech.add_row(row(T * T, T))  # multiple of the first
    assert ech.rank == 1
    ech.add_row(row(0, T - 1))
    assert ech.rank == 2
    rref = ech.rref_rows()
    assert rref[0] == {0: RationalFunction(1)}
    assert rref[1] == {1: RationalFunction(1)}


def test_reduce_and_contains():
    ech = Echelon(3)
    ech.add_row(row(1, 0, -1))
    ech.add_row(row(0, 1, -1))
    assert ech.contains(row(1, 1, -2))
    residual = ech.reduce(row(1, 1, 0))
    assert residual == {2: RationalFunction(2)}


def test_solve_combination():
    rows = [row(1, 1, 0), row(0, 1, 1)]
    target = row(1, 2, 1)
    sol = solve_combination(rows, target, 3)
    assert sol == [RationalFunction(1), RationalFunction(1)]
    assert solve_combination(rows, row(0, 0, 1), 3) is None
    # dependent rows still produce some valid combination
    rows = [row(1, 1, 0), row(2, 2, 0), row(0, 0, 1)]
    sol = solve_combination(rows, row(3, 3, 1), 3)
    assert sol is not None
    total = {}
    for c, r in zip(sol, rows):
        for col, v in r.items():
            total[col] = total.get(col, RationalFunction(0)) + c * v
    assert {c: v for c, v in total.items() if not v.is_zero()} == row(3, 3, 1)


def test_random_rank_agrees_with_field_elimination():
    rng = random.Random(9)
    for _ in range(10):
        nrows, ncols = rng.randint(2, 5), rng.randint(2, 5)
        rows = [
            {j: rand_k(rng, 1) for j in range(ncols) if rng.random() < 0.7}
            for _ in range(nrows)
        ]
        ech = Echelon(ncols)
        for r in rows:
            ech.add_row(dict(r))
        # naive field-arithmetic elimination as the oracle
        dense = [[r.get(j, RationalFunction(0)) for j in range(ncols)] for r in rows]
        rank = 0
        for col in range(ncols):
            piv = next(
                (i for i in range(rank, len(dense)) if not dense[i][col].is_zero()),
                None,
            )
            if piv is None:
                continue
            dense[rank], dense[piv] = dense[piv], dense[rank]
            inv = RationalFunction(1) / dense[rank][col]
            dense[rank] = [v * inv for v in dense[rank]]
            for i in range(len(dense)):
                if i != rank and not dense[i][col].is_zero():
                    f = dense[i][col]
                    dense[i] = [a - f * b for a, b in zip(dense[i], dense[rank])]
            rank += 1
        assert ech.rank == rank
