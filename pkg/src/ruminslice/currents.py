"""Desk-scale currents: weighted oriented affine simplicial chains.

A degree-k current is a finite list of k-simplices in R^(2n+1) with
rational (or float) multiplicities.  Writing e_1..e_k for the edge
vectors of a simplex, the tangent k-vector at a point p is the wedge of
the frame images frame_change(p, e_i); the pairing with a polynomial
form and the induced measure are

    T(omega)  = sum_S mult(S) * int_S <omega(p) | V(p)> ds,
    mu_T(A)   = sum_S |mult(S)| * int_(S cap A) |V(p)| ds,

where ds is the parameter measure of the affine chart (so no square
roots enter the pairing, and polynomial integrands are integrated
exactly by the Grundmann-Moller rules).  |V(p)| is the frame l2 norm;
exact square roots are kept rational when possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Covector, MultiVector, all_blades, pair, wedge
from .clipping import HalfSpace, split_simplex
from .errors import (
    AdmissibilityError,
    DimensionMismatchError,
    GradeMismatchError,
    ParameterError,
)
from .forms import PolyForm
from .heis import HeisParams, Point, frame_change
from .quadrature import parameter_nodes, rule_for_degree
from .rumin import RuminClass, full_blades

DEFAULT_QUADRATURE_DEGREE = 5


def _is_degenerate(vertices, degree: int) -> bool:
    """True when the vertices do not span an affine ``degree``-plane.

    Decided by the Gram determinant of the edge vectors: exact integer
    arithmetic after clearing denominators, scale-aware tolerance for
    float vertices.
    """
    base = vertices[0]
    edges = [tuple(a - b for a, b in zip(v, base)) for v in vertices[1:]]
    if not edges:
        return False
    if any(isinstance(c, float) for e in edges for c in e):
        gram = [[sum(x * y for x, y in zip(u, w)) for w in edges] for u in edges]
        return _float_rank(gram) < degree
    denom = 1
    for e in edges:
        for c in e:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    scaled = [tuple(int(c * denom) for c in e) for e in edges]
    gram = [[sum(x * y for x, y in zip(u, w)) for w in scaled] for u in scaled]
    return _int_det(gram) == 0


def _int_det(matrix) -> int:
    """Fraction-free (Bareiss) determinant of a small integer matrix."""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    if size == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    if size == 3:
        a, b, c = matrix[0]
        d, e, f = matrix[1]
        g, h, i = matrix[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    work = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for col in range(size - 1):
        if work[col][col] == 0:
            swap = next((r for r in range(col + 1, size) if work[r][col] != 0), None)
            if swap is None:
                return 0
            work[col], work[swap] = work[swap], work[col]
            sign = -sign
        for r in range(col + 1, size):
            for c in range(col + 1, size):
                work[r][c] = (work[r][c] * work[col][col] - work[r][col] * work[col][c]) // prev
            work[r][col] = 0
        prev = work[col][col]
    return sign * work[size - 1][size - 1]


def _float_rank(gram) -> int:
    work = [[float(v) for v in row] for row in gram]
    m = len(work)
    scale = max((abs(v) for row in work for v in row), default=0.0)
    tol = 1e-12 * max(scale, 1.0)
    r = 0
    for c in range(m):
        pivot_row = max(range(r, m), key=lambda i: abs(work[i][c]), default=None)
        if pivot_row is None or abs(work[pivot_row][c]) <= tol:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        work[r] = [v / pv for v in work[r]]
        for i in range(m):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [v - factor * w for v, w in zip(work[i], work[r])]
        r += 1
        if r == m:
            break
    return r


@dataclass(frozen=True)
class Simplex:
    """Oriented affine simplex: ordered vertices and a multiplicity."""

    vertices: tuple
    multiplicity: object = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        if isinstance(self.multiplicity, int):
            object.__setattr__(self, "multiplicity", Fraction(self.multiplicity))
        lengths = {len(v) for v in self.vertices}
        if len(lengths) != 1:
            raise ParameterError("simplex vertices of unequal dimension")
        if self.multiplicity != 0 and self.degenerate():
            raise ParameterError("affinely dependent vertices with nonzero multiplicity")

    @property
    def degree(self) -> int:
        return len(self.vertices) - 1

    def degenerate(self) -> bool:
        return _is_degenerate(self.vertices, self.degree)

    def edges(self) -> tuple:
        base = self.vertices[0]
        return tuple(
            tuple(a - b for a, b in zip(v, base)) for v in self.vertices[1:]
        )


class SimplicialCurrent:
    """A finite chain of equal-degree simplices over H^n."""

    __slots__ = ("params", "degree", "simplices", "quadrature_degree")

    def __init__(self, params: HeisParams, degree: int, simplices,
                 quadrature_degree: int = DEFAULT_QUADRATURE_DEGREE):
        self.params = params
        self.degree = degree
        self.quadrature_degree = quadrature_degree
        cleaned = []
        for s in simplices:
            if not isinstance(s, Simplex):
                s = Simplex(*s)
            if s.degree != degree:
                raise ParameterError(f"simplex of degree {s.degree} in degree-{degree} chain")
            if len(s.vertices[0]) != params.dim:
                raise DimensionMismatchError("simplex vertices do not match the group dimension")
            if s.multiplicity == 0:
                continue
            cleaned.append(s)
        self.simplices = tuple(cleaned)

    def is_empty(self) -> bool:
        return not self.simplices

    def with_simplices(self, simplices) -> "SimplicialCurrent":
        return SimplicialCurrent(self.params, self.degree, simplices,
                                 self.quadrature_degree)

    def scaled(self, factor) -> "SimplicialCurrent":
        return self.with_simplices(
            Simplex(s.vertices, s.multiplicity * factor) for s in self.simplices
        )

    def __add__(self, other: "SimplicialCurrent") -> "SimplicialCurrent":
        if self.params != other.params or self.degree != other.degree:
            raise ParameterError("cannot add chains of different type")
        return self.with_simplices(self.simplices + other.simplices)

    def __neg__(self) -> "SimplicialCurrent":
        return self.scaled(-1)

    def __sub__(self, other: "SimplicialCurrent") -> "SimplicialCurrent":
        return self + (-other)

    def canonical(self) -> "SimplicialCurrent":
        """Merge simplices with equal vertex sets, folding orientation signs.

        The result lists each support simplex once, vertices sorted
        lexicographically, with the net multiplicity; zero multiplicities
        and degenerate slivers disappear.  Canonical chains compare
        meaningfully with ``==`` on their simplex tuples.
        """
        merged = {}
        for s in self.simplices:
            if s.degenerate():
                continue
            order = sorted(range(len(s.vertices)), key=lambda i: tuple(s.vertices[i]))
            sign = _permutation_sign(order)
            key = tuple(s.vertices[i] for i in order)
            merged[key] = merged.get(key, 0) + sign * s.multiplicity
        kept = [Simplex(v, m) for v, m in sorted(merged.items()) if m != 0]
        return self.with_simplices(kept)

    def vertices(self) -> set:
        out = set()
        for s in self.simplices:
            out.update(s.vertices)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialCurrent)
            and self.params == other.params
            and self.degree == other.degree
            and self.simplices == other.simplices
        )

    def __repr__(self):
        return f"SimplicialCurrent(n={self.params.n}, degree={self.degree}, size={len(self.simplices)})"


def _permutation_sign(order) -> int:
    seen = [False] * len(order)
    sign = 1
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = order[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- tangents ---------------------------------------------------------------


def tangent_at(params: HeisParams, simplex: Simplex, coords) -> MultiVector:
    """Wedge of frame images of the edge vectors at the given point."""
    point = Point.from_coords(coords)
    result = MultiVector.blade(params.dim, ())
    for edge in simplex.edges():
        framed = frame_change(point, edge)
        grade_one = MultiVector(params.dim, 1,
                                {(i,): c for i, c in enumerate(framed) if c != 0})
        result = wedge(result, grade_one)
    return result


def sqrt_exact_or_float(value):
    """Square root of a nonnegative rational, exact when possible."""
    if isinstance(value, int):
        value = Fraction(value)
    if isinstance(value, Fraction):
        num, den = value.numerator, value.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
    return math.sqrt(float(value))


def _nodes(simplex: Simplex, degree_hint: int):
    rule = rule_for_degree(simplex.degree, degree_hint)
    return parameter_nodes(simplex.vertices, rule)


def _constant_tangent(params: HeisParams, simplex: Simplex):
    """The tangent when it is position-independent, else None.

    Tangent blade coefficients are affine in the point, so agreeing on
    every vertex forces agreement everywhere.
    """
    values = [tangent_at(params, simplex, v) for v in simplex.vertices]
    first = values[0]
    if all(v == first for v in values[1:]):
        return first
    return None


def _parameter_volume(degree: int) -> Fraction:
    return Fraction(1, math.factorial(degree))


# -- pairing, mass, measure ---------------------------------------------------


def pair_form(T: SimplicialCurrent, omega: PolyForm):
    """Pairing against a raw polynomial form (no quotient bookkeeping)."""
    return pair_forms_batch(T, [omega])[0]


def pair_forms_batch(T: SimplicialCurrent, forms, degree_hint=None):
    """Pair several forms against one chain, sharing nodes and tangents.

    With the default hint the rule is exact for every polynomial
    integrand the forms produce; pass a smaller hint when only
    rule-for-rule comparisons are needed.
    """
    forms = list(forms)
    for omega in forms:
        if omega.grade != T.degree:
            raise GradeMismatchError(T.degree, omega.grade, "T(omega)")
    if degree_hint is None:
        degree_hint = T.quadrature_degree + max(
            (f.max_coeff_degree() for f in forms), default=0)
    totals = [0] * len(forms)
    for s in T.simplices:
        constant = _constant_tangent(T.params, s)
        node_data = []
        for coords, weight in _nodes(s, degree_hint):
            tangent = constant if constant is not None else tangent_at(T.params, s, coords)
            node_data.append((Point.from_coords(coords), weight, tangent))
        for index, omega in enumerate(forms):
            acc = 0
            for point, weight, tangent in node_data:
                acc = acc + weight * pair(omega.evaluate_at(point), tangent)
            totals[index] = totals[index] + s.multiplicity * acc
    return totals


def is_admissible(V: MultiVector, n: int) -> bool:
    """True iff V annihilates the contact ideal generators at its grade.

    Defined for grades k <= n; such tangents make the pairing with
    quotient classes independent of the representative.
    """
    k = V.grade
    if k > n:
        raise ParameterError(f"admissibility is defined for grades <= n, got {k}")
    if k == 0:
        return True
    dim = 2 * n + 1
    theta = Covector.blade(dim, (dim - 1,))
    dtheta = Covector(dim, 2, {(j, n + j): Fraction(-1) for j in range(n)})
    for blade in all_blades(dim, k - 1):
        phi = wedge(theta, Covector.blade(dim, blade))
        if phi.grade == k and pair(phi, V) != 0:
            return False
    if k >= 2:
        for blade in all_blades(dim, k - 2):
            phi = wedge(dtheta, Covector.blade(dim, blade))
            if phi.grade == k and pair(phi, V) != 0:
                return False
    return True


def pair_current(T: SimplicialCurrent, c: RuminClass):
    """T(c) for a class of matching degree.

    In the Low regime (degree <= n) every quadrature tangent must be
    admissible, otherwise the value would depend on the representative;
    inadmissible tangents raise :class:`AdmissibilityError`.
    """
    if c.degree != T.degree:
        raise GradeMismatchError(T.degree, c.degree, "T(class)")
    if c.params != T.params:
        raise DimensionMismatchError("chain and class over different groups")
    omega = c.payload
    n = T.params.n
    if c.degree <= n:
        degree_hint = T.quadrature_degree + omega.max_coeff_degree()
        for index, s in enumerate(T.simplices):
            for coords, _ in _nodes(s, degree_hint):
                if not is_admissible(tangent_at(T.params, s, coords), n):
                    raise AdmissibilityError(
                        f"simplex {index} has an inadmissible tangent; "
                        "pairing with a quotient class is undefined"
                    )
    return pair_form(T, omega)


def mass(T: SimplicialCurrent):
    """M(T): total measure; exact Fraction when every root closes in Q."""
    total = Fraction(0)
    for s in T.simplices:
        constant = _constant_tangent(T.params, s)
        if constant is not None:
            acc = sqrt_exact_or_float(constant.norm_sq()) * _parameter_volume(s.degree)
        else:
            acc = Fraction(0)
            for coords, weight in _nodes(s, T.quadrature_degree):
                tangent = tangent_at(T.params, s, coords)
                acc = acc + weight * sqrt_exact_or_float(tangent.norm_sq())
        total = total + abs(s.multiplicity) * acc
    return total


def restrict_to_set(T: SimplicialCurrent, halfspaces) -> SimplicialCurrent:
    """T restricted to an intersection of affine half-spaces, exactly.

    Each simplex is subdivided along the bounding hyperplanes; kept
    pieces inherit multiplicity and orientation.  Degenerate slivers are
    dropped (they carry no measure).
    """
    if isinstance(halfspaces, HalfSpace):
        halfspaces = [halfspaces]
    simplices = list(T.simplices)
    for hs in halfspaces:
        clipped = []
        for s in simplices:
            kept, _ = split_simplex(s.vertices, hs)
            for piece in kept:
                if not _is_degenerate(piece, T.degree):
                    clipped.append(Simplex(piece, s.multiplicity))
        simplices = clipped
    return T.with_simplices(simplices)


def measure_of(T: SimplicialCurrent, region):
    """mu_T(region): region is a half-space list (exact) or a predicate.

    Predicates are sampled at quadrature nodes, so they are only as good
    as the rule; half-space lists go through exact clipping.
    """
    if callable(region):
        total = Fraction(0)
        for s in T.simplices:
            constant = _constant_tangent(T.params, s)
            acc = Fraction(0)
            for coords, weight in _nodes(s, T.quadrature_degree):
                if region(Point.from_coords(coords)):
                    tangent = constant if constant is not None else tangent_at(T.params, s, coords)
                    acc = acc + weight * sqrt_exact_or_float(tangent.norm_sq())
            total = total + abs(s.multiplicity) * acc
        return total
    return mass(restrict_to_set(T, region))


def boundary(T: SimplicialCurrent) -> SimplicialCurrent:
    """Combinatorial boundary with alternating-sign faces, canonicalized.

    Internal faces of a closed mesh cancel exactly in the canonical form.
    """
    if T.degree < 1:
        raise ParameterError("boundary of a 0-chain is not defined")
    faces = []
    for s in T.simplices:
        for i in range(len(s.vertices)):
            face = s.vertices[:i] + s.vertices[i + 1:]
            mult = s.multiplicity if i % 2 == 0 else -s.multiplicity
            faces.append(Simplex(face, mult))
    out = SimplicialCurrent(T.params, T.degree - 1, faces, T.quadrature_degree)
    return out.canonical()


def restrict_by_fn(T: SimplicialCurrent, g) -> "WeightedCurrent":
    """T restricted by a scalar weight: (T|g)(omega) = int g <omega|V>."""
    return WeightedCurrent(T, g)


@dataclass(frozen=True)
class GammaWeight:
    """The clamped ramp gamma_h composed with an affine function.

    Piecewise affine with kinks on {f = t} and {f = t + h}; carrying the
    pieces explicitly lets the pairing pre-split simplices so the
    quadrature stays exact.
    """

    fcoeffs: tuple
    fconst: object
    t: object
    h: object

    def level_halfspaces(self):
        low = HalfSpace(self.fcoeffs, self.t - self.fconst, ">")
        high = HalfSpace(self.fcoeffs, self.t + self.h - self.fconst, ">")
        return low, high

    def __call__(self, point: Point):
        value = sum(a * b for a, b in zip(self.fcoeffs, point.coords())) + self.fconst
        if value <= self.t:
            return 0 * value
        if value >= self.t + self.h:
            return 1 + 0 * value
        return (value - self.t) / self.h


class WeightedCurrent:
    """The functional omega -> sum quadrature of g(p) <omega(p)|V(p)>."""

    __slots__ = ("chain", "weight")

    def __init__(self, chain: SimplicialCurrent, weight):
        if isinstance(weight, GammaWeight):
            low, high = weight.level_halfspaces()
            pieces = []
            for s in chain.simplices:
                below, rest = [], [s]
                for hs in (low, high):
                    next_rest = []
                    for piece in rest:
                        kept, dropped = split_simplex(piece.vertices, hs)
                        next_rest.extend(Simplex(p, piece.multiplicity) for p in kept
                                         if not _is_degenerate(p, chain.degree))
                        below.extend(Simplex(p, piece.multiplicity) for p in dropped
                                     if not _is_degenerate(p, chain.degree))
                    rest = next_rest
                pieces.extend(below + rest)
            chain = chain.with_simplices(pieces)
        self.chain = chain
        self.weight = weight

    def pair(self, omega):
        if isinstance(omega, RuminClass):
            omega = omega.payload
        if omega.grade != self.chain.degree:
            raise GradeMismatchError(self.chain.degree, omega.grade, "(T|g)(omega)")
        degree_hint = self.chain.quadrature_degree + omega.max_coeff_degree()
        total = 0
        for s in self.chain.simplices:
            acc = 0
            for coords, weight_q in _nodes(s, degree_hint):
                point = Point.from_coords(coords)
                g_val = self.weight(point)
                if g_val == 0:
                    continue
                tangent = tangent_at(self.chain.params, s, coords)
                value = pair(omega.evaluate_at(point), tangent)
                acc = acc + weight_q * g_val * value
            total = total + s.multiplicity * acc
        return total


def dual_boundary_functional(T: SimplicialCurrent):
    """The middle-degree dual boundary, exposed only weakly: c -> T(d_c c)."""
    from .rumin import d_c

    def functional(c: RuminClass):
        return pair_current(T, d_c(c))

    return functional


def constant_blade_forms(params: HeisParams, grade: int):
    """All coordinate-blade covectors of a grade, as constant forms."""
    from .polys import Poly

    one = Poly.const(params.dim, 1)
    return [PolyForm.single(params, blade, one) for blade in full_blades(params.n, grade)]
