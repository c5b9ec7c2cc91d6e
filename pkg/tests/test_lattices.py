from fractions import Fraction

from alcovekit.lattices import (
    in_lattice,
    kernel_basis,
    quotient_invariants,
    smith_normal_form,
    solve_in_lattice,
)


def test_smith_diagonal():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]


def test_smith_zero_and_rectangular():
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([[3, 6, 9]]) == [3]


def test_quotient_invariants():
    # Z^3 / <e1-e2, e2-e3, 3e3-ish>: the PGL3-style index-3 sublattice
    free, tor = quotient_invariants(3, [[1, -1, 0], [0, 1, -1], [1, 1, 1]])
    assert (free, tor) == (0, [3])
    free, tor = quotient_invariants(2, [[2, 0]])
    assert free == 1 and tor == [2]
    assert quotient_invariants(2, []) == (2, [])


def test_solve_in_lattice():
    gens = [[1, -1, 0], [0, 1, -1]]
    assert solve_in_lattice(gens, (1, 0, -1)) == [1, 1]
    assert solve_in_lattice(gens, (1, 1, 1)) is None
    assert in_lattice(gens, (2, -1, -1))
    assert not in_lattice(gens, (Fraction(1, 2), Fraction(-1, 2), 0))


def test_kernel_basis():
    ker = kernel_basis([[1, 1, 1]])
    assert len(ker) == 2
    for v in ker:
        assert sum(v) == 0
    # fixed vectors of the unitary twist (a,b,c) -> (-c,-b,-a)
    delta = [[-1, 0, -1], [0, -2, 0], [-1, 0, -1]]  # J - 1
    ker = kernel_basis(delta)
    assert len(ker) == 1
    a, b, c = ker[0]
    assert b == 0 and a == -c
