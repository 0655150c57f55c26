"""Reference chains used by the test harnesses and shipped as JSON files."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .currents import Simplex, SimplicialCurrent
from .heis import HeisParams


def unit_segment_chain() -> SimplicialCurrent:
    """The oriented unit x-axis segment in H^1; mass 1."""
    zero, one = Fraction(0), Fraction(1)
    return SimplicialCurrent(
        HeisParams(1), 1,
        [Simplex(((zero, zero, zero), (one, zero, zero)), Fraction(1))],
    )


def unit_cube_chain() -> SimplicialCurrent:
    """The unit cube in H^1 as six positively oriented tetrahedra.

    Kuhn triangulation: one tetrahedron per coordinate order, walking
    from (0,0,0) to (1,1,1) one axis at a time.  Internal faces cancel
    combinatorially and the surface carries measure 6.
    """
    zero, one = Fraction(0), Fraction(1)
    simplices = []
    for order in permutations(range(3)):
        vertices = [(zero, zero, zero)]
        current = [zero, zero, zero]
        for axis in order:
            current[axis] = one
            vertices.append(tuple(current))
        sign = _permutation_parity(order)
        if sign < 0:
            vertices[1], vertices[2] = vertices[2], vertices[1]
        simplices.append(Simplex(tuple(vertices), Fraction(1)))
    return SimplicialCurrent(HeisParams(1), 3, simplices)


def horizontal_square_chain() -> SimplicialCurrent:
    """The unit square in the (x1, x2) plane of H^2; tangents X1 ^ X2.

    Lies in {y = 0, t = 0}, where the contact form vanishes on the
    tangent planes, so the chain is admissible in the Low regime.
    """
    zero, one = Fraction(0), Fraction(1)

    def corner(a, b):
        return (a, b, zero, zero, zero)

    lower = Simplex((corner(zero, zero), corner(one, zero), corner(one, one)), Fraction(1))
    upper = Simplex((corner(zero, zero), corner(one, one), corner(zero, one)), Fraction(1))
    return SimplicialCurrent(HeisParams(2), 2, [lower, upper])


def _permutation_parity(order) -> int:
    inversions = sum(
        1
        for i in range(len(order))
        for j in range(i + 1, len(order))
        if order[i] > order[j]
    )
    return -1 if inversions % 2 else 1
