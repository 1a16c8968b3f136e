from __future__ import annotations

import itertools
import random
from fractions import Fraction

from homind.linalg import F2Matrix, gf2_solve, solve_rational


def _brute_kernel(m: F2Matrix) -> set[int]:
    return {x for x in range(1 << m.ncols) if m.apply(x) == 0}


def test_nullspace_spans_the_kernel():
    rng = random.Random(1)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 6)
        m = F2Matrix.from_lists([[rng.randint(0, 1) for _ in range(c)] for _ in range(r)], c)
        basis = m.nullspace()
        span = set()
        for coeffs in itertools.product((0, 1), repeat=len(basis)):
            x = 0
            for b, v in zip(coeffs, basis):
                if b:
                    x ^= v
            span.add(x)
        assert span == _brute_kernel(m)
        assert m.rank() + len(basis) == c


def test_solve_matches_brute_force():
    rng = random.Random(2)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = F2Matrix.from_lists([[rng.randint(0, 1) for _ in range(c)] for _ in range(r)], c)
        rhs = rng.randrange(1 << r)
        sol = m.solve(rhs)
        exists = any(m.apply(x) == rhs for x in range(1 << c))
        assert (sol is not None) == exists
        if sol is not None:
            assert m.apply(sol) == rhs


def test_gf2_solve_small_system():
    # x0 + x1 = 1, x1 + x2 = 0, x0 = 1
    sol = gf2_solve([0b011, 0b110, 0b001], [1, 0, 1], 3)
    assert sol is not None and sol & 1 == 1 and (sol >> 1) & 1 == 0 and (sol >> 2) & 1 == 0
    assert gf2_solve([0b1, 0b1], [0, 1], 1) is None


def test_solve_rational_exact():
    assert solve_rational([[1, 2], [2, 4]], [3, 6]) == [Fraction(3), Fraction(0)]
    assert solve_rational([[1, 2], [2, 4]], [3, 7]) is None
    assert solve_rational([[2, 1], [1, 3]], [1, 0]) == [Fraction(3, 5), Fraction(-1, 5)]
