"""The local model t = x + (y u)^e + f(y) + p g of pi on one annulus."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import AnnulusViolation, DegenerateInput, DomainError, FieldMismatch, NotAUnit, PrecisionExhausted
from .halfring import HalfSeries, annulus_digits, check_congruences, compose, eval_at, hs_inverse, normalize
from .newton import hull_height, lower_hull, root_valuations
from .padic import FieldDesc, RamElem, p_over, vp


@dataclass(frozen=True)
class AnnulusPoint:
    """A point of the open annulus D_beta, given by x with 0 < val(x) < 1."""

    x: RamElem

    def __post_init__(self):
        annulus_digits(self.x)

    @property
    def field(self) -> FieldDesc:
        return self.x.field

    @property
    def digits(self) -> int:
        """nu_Y in pi-digits."""
        return self.x.val_digits()

    @property
    def nu(self) -> Fraction:
        return Fraction(self.digits, self.field.n)

    @property
    def y(self) -> RamElem:
        return p_over(self.x)


@dataclass(frozen=True)
class DiscPoint:
    """A point of the residue disc D_alpha, given by its parameter t.

    nu_X = val(t) is coordinate-independent only below 1; larger values are
    carried but ``well_defined`` is False.
    """

    t: RamElem

    @property
    def field(self) -> FieldDesc:
        return self.t.field

    @property
    def nu(self) -> Fraction | float:
        return self.t.valuation()

    @property
    def nu_lower(self) -> Fraction:
        """Certified lower bound for nu, valid even when nu is indeterminate."""
        return Fraction(self.t.lower_val(), self.field.n)

    @property
    def well_defined(self) -> bool:
        return self.nu < 1


@dataclass(frozen=True)
class LocalModel:
    e: int
    u: HalfSeries
    f: HalfSeries
    g: HalfSeries

    def __post_init__(self):
        if self.e < 1:
            raise DomainError(f"e must be positive, got {self.e}")
        if len({self.u.p, self.f.p, self.g.p}) != 1:
            raise FieldMismatch("u, f, g must share the base prime")

    @property
    def p(self) -> int:
        return self.u.p

    @property
    def D(self) -> int:
        return self.u.D

    @property
    def boundary(self) -> Fraction:
        """e/(e+1), the edge of the canonical region."""
        return Fraction(self.e, self.e + 1)

    def is_exact(self) -> bool:
        return all(s.is_exact() for s in (self.u, self.f, self.g))

    def proof_unit(self) -> HalfSeries:
        """u^e, the unit multiplying y^e when the map is written x + u' y^e + ..."""
        return self.u**self.e

    @classmethod
    def from_monomials(cls, e: int, u, f, g, p: int, prec: int, D: int) -> LocalModel:
        return cls(e, normalize(u, p, prec, D), normalize(f, p, prec, D), normalize(g, p, prec, D))

    @classmethod
    def toy(cls, p: int, e: int = 2, prec: int = 20, D: int = 8) -> LocalModel:
        """t = x + y^e."""
        return cls.from_monomials(e, [(0, 0, 1)], [], [], p, prec, D)


def validate(m: LocalModel) -> dict[str, bool]:
    """One pass/fail entry per normal-form side condition."""
    report = {"e>=2": m.e >= 2}
    for name, ok in check_congruences(m.u, unit=True, one_mod_p=True).items():
        report[f"u:{name}"] = ok
    for name, ok in check_congruences(m.f, y_only=True, vanish_below_y=m.e + 1).items():
        report[f"f:{name}"] = ok
    return report


def is_valid(m: LocalModel) -> bool:
    return all(validate(m).values())


def eval_pi(m: LocalModel, Q: AnnulusPoint | RamElem, precision: int | None = None) -> DiscPoint:
    """t(pi Q) = x + (y u(x, y))^e + f(y) + p g(x, y) with y = p/x."""
    x = Q.x if isinstance(Q, AnnulusPoint) else Q
    F = x.field
    if F.p != m.p:
        raise FieldMismatch(f"model over Z_{m.p}, point over Q_{F.p}")
    k = annulus_digits(x)
    y = p_over(x)
    t = x + _correction(m, x, y, k)
    if precision is not None and t.prec < precision:
        raise PrecisionExhausted(f"t certified to {t.prec} pi-digits, {precision} requested")
    return DiscPoint(t)


def _correction(m: LocalModel, x: RamElem, y: RamElem, k: int) -> RamElem:
    """(y u)^e + f(y) + p g, i.e. t - x."""
    u0 = eval_at(m.u, x, y, k)
    f0 = eval_at(m.f, x, y, k)
    g0 = eval_at(m.g, x, y, k)
    return (y * u0) ** m.e + f0 + g0.shift_up(x.field.n)


# fibers --------------------------------------------------------------------


def _laurent(h: HalfSeries, p: int) -> dict[int, int]:
    """h(x, p/x) as a Laurent polynomial in x with integer coefficients."""
    out = {i: c for i, c in enumerate(h.x) if c}
    for j, c in enumerate(h.y, start=1):
        if c:
            out[-j] = out.get(-j, 0) + c * p**j
    return out


def _lmul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, c in a.items():
        for j, d in b.items():
            out[i + j] = out.get(i + j, 0) + c * d
    return out


def _shift(a: dict[int, int], k: int, scale: int = 1) -> dict[int, int]:
    return {i + k: c * scale for i, c in a.items()}


def _accumulate(target: dict[int, int], src: dict[int, int]):
    for i, c in src.items():
        target[i] = target.get(i, 0) + c


def fiber_polynomial(m: LocalModel) -> dict[int, int]:
    """x^e (x + (yu)^e + f + p g) with y = p/x, as an integer Laurent polynomial.

    The fiber over t is the zero set of this minus t x^e.
    """
    if not m.is_exact():
        raise PrecisionExhausted("fiber analysis needs an untruncated model")
    p, e = m.p, m.e
    lu = _laurent(m.u, p)
    power = {0: 1}
    for _ in range(e):
        power = _lmul(power, lu)
    poly = {e + 1: 1}
    _accumulate(poly, _shift(power, 0, p**e))
    _accumulate(poly, _shift(_laurent(m.f, p), e))
    _accumulate(poly, _shift(_laurent(m.g, p), e, p))
    return poly


def _certified_digits(m: LocalModel, d: int) -> int:
    """p-adic digits to which the degree-d coefficient of fiber_polynomial is known.

    Coefficients of u, f, g are known mod p^prec, but a y^j term enters as
    p^j x^-j, so it is known mod p^(prec + j).  Taking the weakest piece:
    p^e u^e gives e + max(0, -d); f gives max(0, e - d), or nothing if f is a
    pure y-series and d >= e; p g gives 1 + max(0, e - d).
    """
    e = m.e
    extra = [e + max(0, -d), 1 + max(0, e - d)]
    if any(m.f.x) or d < e:
        extra.append(max(0, e - d))
    return min(s.prec for s in (m.u, m.f, m.g)) + min(extra)


def fiber_valuations(m: LocalModel, a: Fraction) -> list[Fraction]:
    """Valuations of the points of the open annulus over a point with nu_X = a.

    Read off the Newton polygon of ``fiber_polynomial(m) - t x^e`` where
    only val(t) = a is known; root valuations outside (0, 1) belong to the
    boundary circles and are discarded.  Every degree the model can reach
    is considered, including those whose stored coefficient is zero, since
    a coefficient is only known to finitely many digits.  Raises
    DegenerateInput when the polygon depends on more than val(t).
    """
    a = Fraction(a)
    if a <= 0:
        raise DegenerateInput(f"need nu_X > 0, got {a}")
    p, e, D = m.p, m.e, m.D
    poly = fiber_polynomial(m)
    low_deg = min(-e * D, e - D, min(poly))
    high_deg = max(e * D, e + D, e + 1, max(poly))
    certified: dict[int, Fraction] = {}
    bounds: dict[int, Fraction] = {}
    for d in range(low_deg, high_deg + 1):
        if d == e:
            continue
        c, cap = poly.get(d, 0), _certified_digits(m, d)
        if c and vp(c, p) < cap:
            certified[d] = Fraction(vp(c, p))
        else:
            bounds[d] = Fraction(cap)
    # the degree-e coefficient is c_e - t with val(t) = a exactly
    ce, cap = poly.get(e, 0), _certified_digits(m, e)
    ve = Fraction(vp(ce, p)) if ce and vp(ce, p) < cap else None
    if ve is not None and ve != a:
        certified[e] = min(a, ve)
    elif ve is None and a < cap:
        certified[e] = a
    else:
        bounds[e] = a if ve is None else min(a, ve)
    degrees = sorted(certified)
    hull = lower_hull([(d, certified[d]) for d in degrees])
    for d, low in bounds.items():
        if not _harmless(hull, d, low):
            raise DegenerateInput(
                f"coefficient of x^{d} known only to have valuation >= {low}; the polygon is undetermined"
            )
    roots = root_valuations([(d, certified[d]) for d in degrees])
    return [s for s in roots if 0 < s < 1]


def _harmless(hull, d: int, low: Fraction) -> bool:
    """Whether a point (d, h), h >= low, can change roots with valuation in (0, 1)."""
    lo, hi = hull[0][0], hull[-1][0]
    if lo <= d <= hi:
        return low >= hull_height(hull, d)
    if d < lo:
        # must lie above the slope -1 support line
        return low >= min(h + deg for deg, h in hull) - d
    return low >= min(h for _, h in hull)


def expected_fiber(a: Fraction, e: int) -> list[Fraction]:
    """The generic answer: {a} and e copies of 1 - a/e below e/(e+1), else e+1 copies of e/(e+1)."""
    a = Fraction(a)
    if a < Fraction(e, e + 1):
        return sorted([a] + [1 - a / e] * e)
    return [Fraction(e, e + 1)] * (e + 1)


# coordinate changes --------------------------------------------------------


def rescale(m: LocalModel, uhat: HalfSeries) -> LocalModel:
    """The same map in coordinates xhat = x uhat, yhat = y / uhat.

    uhat must be congruent to 1 mod p so that the result stays in normal
    form: the leftover x(uhat^-1 - 1) + f(y) - f(yhat) is then divisible by p
    and is absorbed into g.
    """
    if not uhat.is_unit():
        raise NotAUnit("rescaling series is not a unit")
    if not check_congruences(uhat, one_mod_p=True)["one_mod_p"]:
        raise DomainError("rescaling unit must be congruent to 1 mod p to keep the normal form")
    if uhat.is_exact() and uhat.x == (1,) and not uhat.y:
        return m
    p, D = m.p, m.D
    prec = min(s.prec for s in (m.u, m.f, m.g, uhat))
    xh = HalfSeries.gen_x(p, prec, D)
    yh = HalfSeries.gen_y(p, prec, D)
    # old coordinates in terms of new ones: X = xh / uhat(X, Y), Y = yh * uhat(X, Y)
    X, Y = xh, yh
    for _ in range(prec + D + 4):
        U = compose(uhat, X, Y)
        X_next, Y_next = xh * hs_inverse(U), yh * U
        if (X_next, Y_next) == (X, Y):
            break
        X, Y = X_next, Y_next
    else:
        raise PrecisionExhausted("coordinate change did not stabilize")
    U = compose(uhat, X, Y)
    u_new = U * compose(m.u, X, Y)
    leftover = xh * (hs_inverse(U) - 1) + compose(m.f, X, Y) - m.f
    g_new = leftover.divide_by_p() + compose(m.g, X, Y)
    return LocalModel(m.e, u_new, m.f, g_new)


def transform_point(uhat: HalfSeries, Q: AnnulusPoint) -> AnnulusPoint:
    """xhat(Q) = x(Q) uhat(Q)."""
    from .halfring import hs_eval

    return AnnulusPoint(Q.x * hs_eval(uhat, Q.x))


# random generation ---------------------------------------------------------


def random_series(rng: random.Random, p: int, prec: int, D: int, xdeg: int, ydeg: int,
                  ymin: int = 1, const: bool = True) -> HalfSeries:
    mod = p**prec
    xs = [rng.randrange(mod) for _ in range(xdeg + 1)]
    if not const:
        xs[0] = 0
    ys = [0] * (ymin - 1) + [rng.randrange(mod) for _ in range(max(0, ydeg - ymin + 1))]
    return HalfSeries(p, prec, D, tuple(xs), tuple(ys))


def random_model(rng: random.Random, p: int, e: int, prec: int = 12, degree: int = 3) -> LocalModel:
    """u = 1 + p(random), f = y^(e+1)(random y-series), g arbitrary."""
    D = e + 1 + degree
    u = 1 + random_series(rng, p, prec, D, degree, degree) * p
    f = random_series(rng, p, prec, D, 0, e + 1 + degree, ymin=e + 1, const=False)
    g = random_series(rng, p, prec, D, degree, degree)
    return LocalModel(e, u, f, g)


def random_annulus_point(rng: random.Random, F: FieldDesc, k: int) -> AnnulusPoint:
    if not 0 < k < F.n:
        raise AnnulusViolation(f"nu = {k}/{F.n} is not in (0, 1)")
    return AnnulusPoint(F.random_element(rng, k))
