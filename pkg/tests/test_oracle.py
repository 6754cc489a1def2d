import pytest

from algroup import (EnumerationBudgetError, PrimeField, add_field_equations,
                     enumerate_variety, inversion_closed, is_group_bruteforce,
                     multiplication_closed, parse_problem)
from algroup.oracle import identity_matrix, mat_inv, mat_mul


def test_single_point_variety():
    spec = parse_problem("n 1\nfield F 5\nx1 - 1\n")
    vs = enumerate_variety(spec)
    assert vs.points == [(1,)]
    assert vs.invertible == [(1,)]


def test_field_equation_restriction_points():
    spec = parse_problem("n 1\nfield F 5\n(x1-1)*(x1^2-2)\n")
    vs = enumerate_variety(add_field_equations(spec, 5))
    assert vs.points == [(1,)]
    assert is_group_bruteforce(vs).group is True


def test_gl_counts():
    for n, p in ((2, 2), (2, 3), (3, 2)):
        spec = parse_problem(f"n {n}\nfield F {p}\n")
        vs = enumerate_variety(spec)
        assert len(vs.points) == p ** (n * n)
        expect = 1
        for k in range(n):
            expect *= p**n - p**k
        assert len(vs.invertible) == expect
    vs = enumerate_variety(parse_problem("n 2\nfield F 2\n"))
    assert len(vs.points) == 16 and len(vs.invertible) == 6


def test_torus_is_a_group_by_exhaustion():
    spec = parse_problem("n 2\nfield F 3\nx2\nx3\n")
    vs = enumerate_variety(spec)
    assert len(vs.invertible) == 4
    verdict = is_group_bruteforce(vs)
    assert verdict.group is True and verdict.witness is None


def test_diag_antidiag_closure_split(problem):
    vs = enumerate_variety(problem("diag-antidiag-f3.alg"))
    full, witness = multiplication_closed(vs.points, vs.n, vs.p)
    assert full is False and "escapes" in witness
    inv_part, _ = multiplication_closed(vs.invertible, vs.n, vs.p)
    assert inv_part is True


def test_empty_invertible_part():
    spec = parse_problem("n 1\nfield F 3\nx1\n")
    vs = enumerate_variety(spec)
    assert vs.points == [(0,)] and vs.invertible == []
    verdict = is_group_bruteforce(vs)
    assert verdict.group is False
    assert verdict.witness == "no identity"
    assert verdict.inversion is True and verdict.multiplication is True


def test_inversion_closure_witness():
    # 2 is in the variety over F_5 but its inverse 3 is not.
    spec = parse_problem("n 1\nfield F 5\n(x1-1)*(x1-2)\n")
    vs = enumerate_variety(spec)
    ok, witness = inversion_closed(vs)
    assert ok is False and "inverse of" in witness


def test_matrix_helpers():
    assert identity_matrix(2) == (1, 0, 0, 1)
    a = (1, 1, 0, 1)
    b = (1, 0, 1, 1)
    assert mat_mul(a, b, 2, 2) == (0, 1, 1, 1)
    assert mat_inv(a, 2, 5) == (1, 4, 0, 1)
    assert mat_inv((1, 2, 2, 4), 2, 5) is None  # singular
    inv = mat_inv((2, 1, 1, 1), 2, 3)
    assert mat_mul((2, 1, 1, 1), inv, 2, 3) == identity_matrix(2)


def test_enumeration_budget():
    spec = parse_problem("n 2\nfield F 5\n")
    with pytest.raises(EnumerationBudgetError):
        enumerate_variety(spec, limit=100)


def test_rational_field_is_rejected():
    spec = parse_problem("n 1\nfield Q\nx1 - 1\n")
    with pytest.raises(ValueError):
        enumerate_variety(spec)
