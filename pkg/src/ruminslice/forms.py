"""Differential forms with polynomial coefficients in the contact coframe.

A :class:`PolyForm` of grade k over H^n maps coframe blades to
polynomials in (x_1..x_n, y_1..y_n, t).  The coframe is
dx_1..dx_n, dy_1..dy_n, theta with

    theta = dt - (1/2) sum_j (x_j dy_j - y_j dx_j),
    d theta = - sum_j dx_j ^ dy_j.

The exterior derivative follows the Cartan rule in this coframe, with
df = sum_j (X_j f dx_j + Y_j f dy_j) + (T f) theta expanded through the
left-invariant derivations.  Everything is exact over the rationals.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Covector, all_blades, wedge_blades
from .errors import DimensionMismatchError, GradeMismatchError, ParameterError
from .heis import HeisParams, Point
from .polys import Poly


def derive_W(params: HeisParams, j: int, f: Poly) -> Poly:
    """Apply the frame derivation W_j (0-based index) to a polynomial.

    W_j = X_{j+1} for j < n, Y_{j-n+1} for n <= j < 2n, and T for j = 2n:

        X_j f = d f / d x_j - (1/2) y_j  d f / d t
        Y_j f = d f / d y_j + (1/2) x_j  d f / d t
        T f   = d f / d t
    """
    n = params.n
    nvars = params.dim
    t_index = 2 * n
    if not 0 <= j <= 2 * n:
        raise ParameterError(f"frame index {j} out of range for H^{n}")
    if f.nvars != nvars:
        raise DimensionMismatchError(f"polynomial in {f.nvars} variables over H^{n}")
    if j == t_index:
        return f.partial(t_index)
    ft = f.partial(t_index)
    if j < n:
        return f.partial(j) - Poly.var(nvars, n + j) * ft * Fraction(1, 2)
    return f.partial(j) + Poly.var(nvars, j - n) * ft * Fraction(1, 2)


class PolyForm:
    """Grade-k differential form with polynomial coefficients."""

    __slots__ = ("params", "grade", "coeffs")

    def __init__(self, params: HeisParams, grade: int, coeffs=None):
        if grade < 0:
            raise ParameterError(f"negative grade {grade}")
        self.params = params
        self.grade = grade
        clean = {}
        if coeffs:
            for blade, poly in coeffs.items():
                blade = tuple(blade)
                if not isinstance(poly, Poly):
                    poly = Poly.const(params.dim, poly)
                if poly.is_zero():
                    continue
                if len(blade) != grade or list(blade) != sorted(set(blade)):
                    raise ParameterError(f"bad blade {blade!r} for grade {grade}")
                if blade and (blade[0] < 0 or blade[-1] >= params.dim):
                    raise ParameterError(f"blade {blade!r} out of range")
                clean[blade] = poly
        self.coeffs = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, params: HeisParams, grade: int) -> "PolyForm":
        return cls(params, grade)

    @classmethod
    def from_poly(cls, params: HeisParams, poly: Poly) -> "PolyForm":
        return cls(params, 0, {(): poly})

    @classmethod
    def single(cls, params: HeisParams, blade, poly) -> "PolyForm":
        blade = tuple(blade)
        return cls(params, len(blade), {blade: poly})

    @classmethod
    def theta(cls, params: HeisParams) -> "PolyForm":
        return cls.single(params, (2 * params.n,), Poly.const(params.dim, 1))

    @classmethod
    def dtheta(cls, params: HeisParams) -> "PolyForm":
        """d theta = - sum_j dx_j ^ dy_j, a constant horizontal 2-form."""
        n = params.n
        coeffs = {(j, n + j): Poly.const(params.dim, -1) for j in range(n)}
        return cls(params, 2, coeffs)

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, blade) -> Poly:
        return self.coeffs.get(tuple(blade), Poly.zero(self.params.dim))

    def _compatible(self, other: "PolyForm", operation):
        if not isinstance(other, PolyForm):
            raise ParameterError(f"expected PolyForm, got {type(other).__name__}")
        if self.params != other.params:
            raise DimensionMismatchError("forms over different groups")
        if operation in ("+", "-") and self.grade != other.grade:
            raise GradeMismatchError(self.grade, other.grade, operation)

    def __add__(self, other):
        self._compatible(other, "+")
        coeffs = dict(self.coeffs)
        for blade, poly in other.coeffs.items():
            new = coeffs.get(blade)
            new = poly if new is None else new + poly
            if new.is_zero():
                coeffs.pop(blade, None)
            else:
                coeffs[blade] = new
        return PolyForm(self.params, self.grade, coeffs)

    def __neg__(self):
        return PolyForm(self.params, self.grade, {b: -p for b, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "PolyForm":
        """Multiply by a polynomial or rational scalar."""
        if not isinstance(factor, Poly):
            factor = Poly.const(self.params.dim, factor)
        return PolyForm(self.params, self.grade,
                        {b: p * factor for b, p in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, PolyForm)
            and self.params == other.params
            and self.grade == other.grade
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.params, self.grade, frozenset(self.coeffs.items())))

    def strip_theta(self) -> "PolyForm":
        """Drop every blade containing theta (the horizontal restriction)."""
        vertical = self.params.dim - 1
        return PolyForm(self.params, self.grade,
                        {b: p for b, p in self.coeffs.items() if vertical not in b})

    def theta_part(self) -> "PolyForm":
        vertical = self.params.dim - 1
        return PolyForm(self.params, self.grade,
                        {b: p for b, p in self.coeffs.items() if vertical in b})

    def is_horizontal(self) -> bool:
        vertical = self.params.dim - 1
        return all(vertical not in b for b in self.coeffs)

    def evaluate_at(self, p: Point) -> Covector:
        """Substitute a point into every coefficient; constant covector."""
        if p.n != self.params.n:
            raise DimensionMismatchError("point and form over different groups")
        coords = p.coords()
        out = {}
        for blade, poly in self.coeffs.items():
            value = poly.evaluate(coords)
            if value != 0:
                out[blade] = value
        return Covector(self.params.dim, self.grade, out)

    def max_coeff_degree(self) -> int:
        return max((p.total_degree() for p in self.coeffs.values()), default=0)

    def __repr__(self):
        if not self.coeffs:
            return f"PolyForm(0, grade={self.grade})"
        bits = [f"[{p!r}]*e{''.join(str(i + 1) for i in b)}" for b, p in sorted(self.coeffs.items())]
        return "PolyForm(" + " + ".join(bits) + ")"


def wedge_forms(a: PolyForm, b: PolyForm) -> PolyForm:
    """Wedge product, bilinear over the polynomial coefficients."""
    a._compatible(b, "^")
    grade = a.grade + b.grade
    if grade > a.params.dim:
        return PolyForm(a.params, grade)
    out = {}
    for left, pl in a.coeffs.items():
        for right, pr in b.coeffs.items():
            merged = wedge_blades(left, right)
            if merged is None:
                continue
            sign, blade = merged
            term = pl * pr
            if sign < 0:
                term = -term
            new = out.get(blade)
            new = term if new is None else new + term
            if new.is_zero():
                out.pop(blade, None)
            else:
                out[blade] = new
    return PolyForm(a.params, grade, out)


def d_poly(params: HeisParams, f: Poly) -> PolyForm:
    """df = sum_j (W_j f) dw_j in the contact coframe."""
    coeffs = {}
    for j in range(params.dim):
        deriv = derive_W(params, j, f)
        if not deriv.is_zero():
            coeffs[(j,)] = deriv
    return PolyForm(params, 1, coeffs)


def exterior_d(omega: PolyForm) -> PolyForm:
    """Cartan-rule exterior derivative in the contact coframe.

    d(f e_I) = df ^ e_I + f d(e_I) with d(dx_j) = d(dy_j) = 0 and
    d(theta) = -sum dx_j ^ dy_j; blades carry theta at most once, as
    their last index.
    """
    params = omega.params
    vertical = params.dim - 1
    result = PolyForm(params, omega.grade + 1)
    dtheta = PolyForm.dtheta(params)
    for blade, poly in omega.coeffs.items():
        base = PolyForm.single(params, blade, Poly.const(params.dim, 1))
        result = result + wedge_forms(d_poly(params, poly), base)
        if blade and blade[-1] == vertical:
            rest = PolyForm.single(params, blade[:-1], poly)
            sign_form = wedge_forms(rest, dtheta)
            if len(blade) % 2 == 0:
                # d crosses the length-(k-1) prefix: sign (-1)^(k-1)
                sign_form = -sign_form
            result = result + sign_form
    return result


def horizontal_gradient(params: HeisParams, f: Poly) -> tuple:
    """Coefficients (W_1 f, ..., W_2n f) of the horizontal gradient."""
    return tuple(derive_W(params, j, f) for j in range(2 * params.n))


def gradient_at(params: HeisParams, grad: tuple, p: Point):
    """Evaluate a horizontal gradient coefficient tuple at a point."""
    from .algebra import MultiVector

    coords = p.coords()
    out = {}
    for j, poly in enumerate(grad):
        value = poly.evaluate(coords)
        if value != 0:
            out[(j,)] = value
    return MultiVector(params.dim, 1, out)


def random_poly(rng, params: HeisParams, max_degree=3, terms=4, coeff_bound=9) -> Poly:
    """Seeded random polynomial: integer coefficients in [-bound, bound]."""
    nvars = params.dim
    out = Poly.zero(nvars)
    for _ in range(terms):
        expo = [0] * nvars
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            expo[rng.randrange(nvars)] += 1
        coef = 0
        while coef == 0:
            coef = rng.randint(-coeff_bound, coeff_bound)
        out = out + Poly(nvars, {tuple(expo): Fraction(coef)})
    return out


def random_form(rng, params: HeisParams, grade: int, max_degree=3, terms=2) -> PolyForm:
    """Seeded random form with a polynomial on every blade of the grade."""
    coeffs = {}
    for blade in all_blades(params.dim, grade):
        coeffs[blade] = random_poly(rng, params, max_degree=max_degree, terms=terms)
    return PolyForm(params, grade, coeffs)
