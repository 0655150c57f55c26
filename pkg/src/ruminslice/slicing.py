"""Slicing of simplicial currents along level sets of affine functions.

The two slices of a chain T at level t of f are

    <T,f,t+> = (dT)|{f>t} - d(T|{f>t}),
    <T,f,t-> = d(T|{f<t}) - (dT)|{f<t},

computed by exact clipping and combinatorial boundary.  At a generic
level (one that misses every vertex value) the off-level faces cancel
combinatorially and the result is carried by {f = t}.  Levels hitting a
vertex raise :class:`DegenerateLevelError` rather than being perturbed
silently.

Mass bounds and the coarea sweep require the slice dimension k to differ
from n; requests at k = n raise :class:`MiddleDimensionError`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .clipping import HalfSpace
from .currents import (
    SimplicialCurrent,
    boundary,
    constant_blade_forms,
    mass,
    pair_forms_batch,
    restrict_to_set,
    sqrt_exact_or_float,
)
from .errors import (
    DegenerateLevelError,
    InternalInvariantError,
    MiddleDimensionError,
    ParameterError,
)
from .forms import random_form
from .heis import Point, koranyi_dist


@dataclass(frozen=True)
class AffineFunction:
    """f(p) = coeffs . (x, y, t) + const over H^n."""

    coeffs: tuple
    const: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs",
            tuple(Fraction(c) if isinstance(c, int) else c for c in self.coeffs),
        )
        if isinstance(self.const, int):
            object.__setattr__(self, "const", Fraction(self.const))
        if len(self.coeffs) % 2 != 1 or len(self.coeffs) < 3:
            raise ParameterError("coefficient length must be 2n+1")

    @property
    def n(self) -> int:
        return len(self.coeffs) // 2

    def __call__(self, p):
        coords = p.coords() if isinstance(p, Point) else tuple(p)
        return sum(a * b for a, b in zip(self.coeffs, coords)) + self.const

    def is_horizontal_affine(self) -> bool:
        """True when the vertical coefficient vanishes: f = <(a,b),(x,y)> + c."""
        return self.coeffs[-1] == 0

    def lipschitz_constant(self):
        """Closed-form Koranyi Lipschitz constant |(a, b)|, horizontal case.

        The horizontal displacement embeds isometrically into the Koranyi
        norm, so the Euclidean bound is attained along horizontal lines.
        """
        if not self.is_horizontal_affine():
            raise ParameterError("closed-form Lipschitz constant needs a horizontal-affine f")
        return sqrt_exact_or_float(sum(c * c for c in self.coeffs[:-1]))

    def halfspace(self, t, op: str) -> HalfSpace:
        return HalfSpace(self.coeffs, t - self.const, op)


def gamma_h_eval(s, t, h):
    """The clamped ramp (|s-t| - |s-(t+h)| + h) / (2h); h > 0.

    Equals 0 for s <= t, (s-t)/h on (t, t+h), and 1 for s >= t+h.
    """
    if not h > 0:
        raise ParameterError(f"band width must be positive, got {h}")
    return (abs(s - t) - abs(s - (t + h)) + h) / (2 * h)


def lipschitz_estimate(f, point_pairs):
    """Sampled lower bound of the Koranyi Lipschitz constant.

    Returns (sampled, closed_form); ``closed_form`` is None unless ``f``
    is a horizontal-affine :class:`AffineFunction`.  Coincident pairs are
    skipped.  A sampled value above the closed form would contradict the
    closed form, so that situation is treated as an internal error.
    """
    best = 0.0
    for p, q in point_pairs:
        dist = koranyi_dist(p, q)
        if dist == 0:
            continue
        best = max(best, abs(float(f(p)) - float(f(q))) / dist)
    closed = None
    if isinstance(f, AffineFunction) and f.is_horizontal_affine():
        closed = f.lipschitz_constant()
        if best > float(closed) + 1e-9:
            raise InternalInvariantError(
                f"sampled Lipschitz quotient {best} exceeds the closed form {closed}"
            )
    return best, closed


@dataclass(frozen=True)
class SliceResult:
    """A computed slice: the chain, its mass, and a cancellation residual.

    ``residual`` is the largest pairing discrepancy between the canonical
    slice chain and the uncancelled defining combination over a battery
    of random polynomial test forms.  ``middle_dimension`` flags slices
    of dimension k = n, which the mass-bound reports exclude.
    """

    chain: SimplicialCurrent
    mass: object
    residual: float
    level: object
    side: str
    middle_dimension: bool


def _check_generic_level(T: SimplicialCurrent, f: AffineFunction, t):
    for v in sorted(T.vertices()):
        if f(v) == t:
            shown = "(" + ", ".join(str(c) for c in v) + ")"
            raise DegenerateLevelError(
                f"level {t} hits the vertex {shown}; slice at a nearby generic level instead"
            )


def _residual_battery(params, grade, seed=20902):
    rng = random.Random(seed)
    forms = list(constant_blade_forms(params, grade))
    for _ in range(20 - len(forms)):
        forms.append(random_form(rng, params, grade, max_degree=2, terms=2))
    return forms


def _slice(T: SimplicialCurrent, f: AffineFunction, t, side: str,
           certify: bool = True) -> SliceResult:
    if T.degree < 1:
        raise ParameterError("cannot slice a 0-chain")
    _check_generic_level(T, f, t)
    plus = side == "+"
    hs = f.halfspace(t, ">" if plus else "<")
    bdry = boundary(T)
    restricted_boundary = restrict_to_set(bdry, [hs])
    boundary_of_restricted = boundary(restrict_to_set(T, [hs]))
    if plus:
        formal = restricted_boundary - boundary_of_restricted
    else:
        formal = boundary_of_restricted - restricted_boundary
    chain = formal.canonical()
    _check_on_level(chain, f, t)
    residual = 0.0
    if certify:
        battery = _residual_battery(T.params, chain.degree)
        # residual certifies chain-level cancellation, which any fixed
        # rule detects; a low-order rule keeps the battery cheap
        direct = pair_forms_batch(chain, battery, degree_hint=2)
        via_formula = pair_forms_batch(formal, battery, degree_hint=2)
        for left, right in zip(direct, via_formula):
            residual = max(residual, abs(float(left - right)))
    return SliceResult(chain=chain, mass=mass(chain), residual=residual,
                       level=t, side=side,
                       middle_dimension=(chain.degree == T.params.n))


def _check_on_level(chain: SimplicialCurrent, f: AffineFunction, t):
    for s in chain.simplices:
        for v in s.vertices:
            value = f(v) - t
            exact = not isinstance(value, float)
            if (exact and value != 0) or (not exact and abs(value) > 1e-9):
                raise InternalInvariantError(
                    f"off-level face survived cancellation at {v}"
                )


def slice_plus(T: SimplicialCurrent, f: AffineFunction, t,
               certify: bool = True) -> SliceResult:
    """<T,f,t+> at a generic level, with cancellation certificate."""
    return _slice(T, f, t, "+", certify=certify)


def slice_minus(T: SimplicialCurrent, f: AffineFunction, t,
                certify: bool = True) -> SliceResult:
    """<T,f,t-> at a generic level."""
    return _slice(T, f, t, "-", certify=certify)


def band_measure(T: SimplicialCurrent, f: AffineFunction, t, h):
    """mu_T({t < f < t + h}), by exact clipping."""
    return measure_between(T, f, t, t + h)


def measure_between(T: SimplicialCurrent, f: AffineFunction, lo, hi):
    return mass(restrict_to_set(T, [f.halfspace(lo, ">"), f.halfspace(hi, "<")]))


def band_bound(T: SimplicialCurrent, f: AffineFunction, t, h):
    """Lip(f) * mu_T({t < f < t+h}) / h, the mass bound for <T,f,t+>."""
    lip = f.lipschitz_constant()
    return lip * band_measure(T, f, t, h) / h


def band_trend(T: SimplicialCurrent, f: AffineFunction, t, h_values):
    """Slice mass against the shrinking band bound.

    Returns rows (h, slice_mass, bound, excess) with excess =
    max(0, mass - bound); requires slice dimension different from n.
    """
    k = T.degree - 1
    if k == T.params.n:
        raise MiddleDimensionError(
            "mass bounds for slices of the middle dimension k = n are an open case"
        )
    result = slice_plus(T, f, t)
    m_slice = result.mass
    rows = []
    for h in h_values:
        bound = band_bound(T, f, t, h)
        excess = max(0.0, float(m_slice) - float(bound))
        rows.append((h, m_slice, bound, excess))
    return rows


@dataclass(frozen=True)
class CoareaRow:
    t: object
    mass: object
    band_bound: object
    ratio: float


@dataclass(frozen=True)
class CoareaResult:
    rows: tuple
    integral: object
    lip: object
    band_measure: object
    ratio: float


def coarea_sweep(T: SimplicialCurrent, f: AffineFunction, a, b, grid: int) -> CoareaResult:
    """Slice-mass sweep over a uniform grid in (a, b) with the coarea ratio.

    The grid holds the midpoints of ``grid`` equal cells; the integral is
    the trapezoid rule over the grid extended by the two half-cell end
    slabs (on a uniform midpoint grid this is the midpoint rule).  Each
    row compares the slice mass with the band density of its own cell,
    Lip(f) * mu_T(cell) / width, so the row bounds sum to the global
    denominator.  The final ratio integral / (Lip(f) * mu_T({a < f < b}))
    is at most 1 up to grid error.
    """
    k = T.degree - 1
    if k == T.params.n:
        raise MiddleDimensionError(
            "coarea sweep at the middle dimension k = n is an open case"
        )
    if grid < 1:
        raise ParameterError("grid must have at least one point")
    if not a < b:
        raise ParameterError("need a < b")
    exact = not any(isinstance(v, float) for v in (a, b))
    width = (Fraction(b) - Fraction(a)) / grid if exact else (b - a) / grid
    lip = f.lipschitz_constant()
    rows = []
    masses = []
    for i in range(grid):
        if exact:
            t = Fraction(a) + width * Fraction(2 * i + 1, 2)
        else:
            t = a + width * (2 * i + 1) / 2.0
        m_slice = slice_plus(T, f, t, certify=False).mass
        lo = t - width / 2
        cell = measure_between(T, f, lo, lo + width)
        bound = lip * cell / width
        ratio = float(m_slice) / float(bound) if float(bound) != 0 else (
            0.0 if float(m_slice) == 0 else math.inf
        )
        rows.append(CoareaRow(t=t, mass=m_slice, band_bound=bound, ratio=ratio))
        masses.append(m_slice)
    # trapezoid over the grid points plus the two end slabs
    integral = 0
    for left, right in zip(masses, masses[1:]):
        integral = integral + (left + right) * width / 2
    integral = integral + masses[0] * width / 2 + masses[-1] * width / 2
    denominator = lip * measure_between(T, f, a, b)
    ratio = float(integral) / float(denominator) if float(denominator) != 0 else (
        0.0 if float(integral) == 0 else math.inf
    )
    return CoareaResult(rows=tuple(rows), integral=integral, lip=lip,
                        band_measure=denominator, ratio=ratio)


# -- the seven-property report ------------------------------------------------


@dataclass(frozen=True)
class PropertyEntry:
    key: str
    status: str  # PASS / FAIL / SKIP
    detail: str


@dataclass(frozen=True)
class PropertyReport:
    entries: tuple

    def passed(self) -> bool:
        return all(e.status != "FAIL" for e in self.entries)

    def lines(self):
        return [f"{e.key} {e.status} {e.detail}" for e in self.entries]


def _atom_levels(T: SimplicialCurrent, f: AffineFunction):
    """Levels where f is constant on a simplex of T or of dT."""
    atoms = set()
    chains = [T]
    if T.degree >= 1:
        chains.append(boundary(T))
    for chain in chains:
        for s in chain.simplices:
            values = {f(v) for v in s.vertices}
            if len(values) == 1:
                atoms.add(next(iter(values)))
    return sorted(atoms)


def _point_in_chain(T: SimplicialCurrent, coords) -> bool:
    for s in T.simplices:
        base = s.vertices[0]
        edges = s.edges()
        if not edges:
            if tuple(coords) == base:
                return True
            continue
        rows = [[e[axis] for e in edges] for axis in range(len(base))]
        rhs = [c - b for c, b in zip(coords, base)]
        solution = linalg.solve(rows, rhs)
        if solution is None:
            continue
        residue = [sum(r * s_ for r, s_ in zip(row, solution)) - b
                   for row, b in zip(rows, rhs)]
        if any(v != 0 for v in residue):
            continue
        if all(lam >= 0 for lam in solution) and sum(solution) <= 1:
            return True
    return False


def property_report(T: SimplicialCurrent, f: AffineFunction, t_samples,
                    h_values=(Fraction(1, 4), Fraction(1, 16), Fraction(1, 256)),
                    sweep=None, ratio_tolerance=1e-2,
                    properties=None) -> PropertyReport:
    """Check the seven slicing properties on a chain; one entry per key P0..P6.

    ``t_samples`` are the generic levels used for P1, P2, P3; ``sweep``
    is an (a, b, grid) triple for P5 (defaults to the span of f over the
    vertices).  P4/P5 are skipped with a scope note when the slice
    dimension equals n, and raise :class:`MiddleDimensionError` when
    explicitly requested via ``properties``.
    """
    k = T.degree - 1
    n = T.params.n
    middle = k == n
    wanted = set(properties) if properties is not None else None
    if middle and wanted and wanted & {4, 5}:
        raise MiddleDimensionError(
            "properties (4) and (5) at the middle dimension k = n are an open case"
        )

    def requested(index):
        return wanted is None or index in wanted

    entries = []

    if requested(0):
        atoms = _atom_levels(T, f)
        shown = "{" + ", ".join(str(a) for a in atoms) + "}"
        entries.append(PropertyEntry(
            "P0", "PASS",
            f"finite atom set of (mu_T + mu_dT) o f^-1: {len(atoms)} level(s) {shown}"))

    plus_results = {}
    if requested(1) or requested(2) or requested(3) or requested(6):
        for t in t_samples:
            plus_results[t] = slice_plus(T, f, t)

    if requested(1):
        bad = [t for t in t_samples
               if plus_results[t].chain != slice_minus(T, f, t).chain]
        entries.append(PropertyEntry(
            "P1", "FAIL" if bad else "PASS",
            f"plus/minus slices equal at {len(t_samples) - len(bad)}/{len(t_samples)} generic levels"
            + (f"; mismatches at {bad}" if bad else "")))

    if requested(2):
        bad = []
        for t, result in plus_results.items():
            for s in result.chain.simplices:
                for v in s.vertices:
                    delta = f(v) - t
                    off_level = abs(delta) > 1e-12 if isinstance(delta, float) else delta != 0
                    if off_level or not _point_in_chain(T, v):
                        bad.append((t, v))
        entries.append(PropertyEntry(
            "P2", "FAIL" if bad else "PASS",
            "slice support inside f^-1(t) and spt T at every vertex"
            + (f"; violations {bad[:3]}" if bad else "")))

    if requested(3):
        if T.degree < 2:
            entries.append(PropertyEntry(
                "P3", "SKIP", "slice is a 0-chain; boundary undefined"))
        else:
            bdry = boundary(T)
            bad = []
            for t, result in plus_results.items():
                left = boundary(result.chain).canonical()
                right = (-slice_plus(bdry, f, t).chain).canonical()
                if left != right:
                    bad.append(t)
            entries.append(PropertyEntry(
                "P3", "FAIL" if bad else "PASS",
                "boundary anticommutes with slicing, exactly"
                + (f"; failures at {bad}" if bad else "")))

    if requested(4):
        if middle:
            entries.append(PropertyEntry(
                "P4", "SKIP",
                "k = n: mass bound outside scope (open middle-dimension case)"))
        else:
            t = t_samples[len(t_samples) // 2]
            rows = band_trend(T, f, t, h_values)
            worst = max(row[3] for row in rows)
            final_excess = rows[-1][3]
            status = "PASS" if final_excess <= 1e-3 else "FAIL"
            trend = ", ".join(f"h={float(h):g}: excess={exc:.3e}" for h, _, _, exc in rows)
            entries.append(PropertyEntry(
                "P4", status,
                f"band mass bound at t={t}: {trend} (worst {worst:.3e})"))

    if requested(5):
        if middle:
            entries.append(PropertyEntry(
                "P5", "SKIP",
                "k = n: coarea sweep outside scope (open middle-dimension case)"))
        else:
            if sweep is None:
                values = sorted(f(v) for v in T.vertices())
                sweep = (values[0], values[-1], 50)
            a, b, grid = sweep
            result = coarea_sweep(T, f, a, b, grid)
            status = "PASS" if result.ratio <= 1 + ratio_tolerance else "FAIL"
            entries.append(PropertyEntry(
                "P5", status,
                f"coarea ratio {result.ratio:.6f} over ({float(a):g}, {float(b):g}), grid {grid}"))

    if requested(6):
        t = t_samples[len(t_samples) // 2]
        result = plus_results.get(t) or slice_plus(T, f, t)
        m_slice = float(result.mass)
        if result.chain.degree >= 1:
            m_bdry = float(mass(boundary(result.chain)))
        else:
            m_bdry = 0.0
        finite = math.isfinite(m_slice) and math.isfinite(m_bdry)
        entries.append(PropertyEntry(
            "P6", "PASS" if finite else "FAIL",
            f"M(slice)={m_slice:.6g}, M(boundary slice)={m_bdry:.6g}, both finite"))

    return PropertyReport(tuple(entries))


def functional_mass_lower(functional, params, grade, extra_forms=()):
    """Lower estimate of the mass of a functional on grade-k forms.

    Maximizes |functional| over the coordinate blade forms (comass
    exactly 1) and any supplied extra forms (assumed comass <= 1).
    """
    best = 0.0
    for omega in list(constant_blade_forms(params, grade)) + list(extra_forms):
        best = max(best, abs(float(functional(omega))))
    return best
