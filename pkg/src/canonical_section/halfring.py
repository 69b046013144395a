"""Truncated elements of O[[x, y]]/(xy - p), O = Z_p, in normal form.

Every element is a pure x-part plus a pure y-part,

    a_0 + a_1 x + ... + a_D x^D + b_1 y + ... + b_D y^D,

since x^i y^j = p^min(i,j) x^(i-j) (or y^(j-i)).  Coefficients are p-adic
integers known modulo p^prec.

Truncation is tracked, not hidden: ``tail = T`` records that the true
series differs from the stored one by an element of the ideal (x^T, y^T).
At a point with val(x) = a that error has valuation >= T*min(a, 1 - a),
which is what ``hs_eval`` uses to certify its output.  ``tail = None``
means the stored terms are the whole series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AnnulusViolation, DegreeOverflow, FieldMismatch, NotAUnit, PrecisionExhausted
from .padic import RamElem, p_over


def _trim(seq: Sequence[int]) -> tuple[int, ...]:
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


@dataclass(frozen=True)
class HalfSeries:
    """x-part coefficients ``x[i]`` of x^i and y-part ``y[j-1]`` of y^j."""

    p: int
    prec: int
    D: int
    x: tuple[int, ...] = ()
    y: tuple[int, ...] = ()
    tail: int | None = None

    def __post_init__(self):
        if self.prec < 0:
            raise PrecisionExhausted("coefficient precision went negative")
        top = self.D if self.tail is None else min(self.D, self.tail - 1)
        mod = self.p**self.prec
        xs = [c % mod for c in self.x]
        ys = [c % mod for c in self.y]
        if any(xs[top + 1:]) or any(ys[top:]):
            if self.tail is None and top == self.D:
                raise DegreeOverflow(f"terms beyond degree {self.D}")
        object.__setattr__(self, "x", _trim(xs[: top + 1]))
        object.__setattr__(self, "y", _trim(ys[: max(top, 0)]))

    # constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, c: int, p: int, prec: int, D: int) -> HalfSeries:
        return cls(p, prec, D, (c,))

    @classmethod
    def gen_x(cls, p: int, prec: int, D: int) -> HalfSeries:
        return cls(p, prec, D, (0, 1))

    @classmethod
    def gen_y(cls, p: int, prec: int, D: int) -> HalfSeries:
        return cls(p, prec, D, (), (1,))

    def like(self, x=(), y=(), tail=None, prec=None) -> HalfSeries:
        return HalfSeries(self.p, self.prec if prec is None else prec, self.D, tuple(x), tuple(y), tail)

    # inspection -----------------------------------------------------------

    @property
    def const(self) -> int:
        return self.x[0] if self.x else 0

    def is_exact(self) -> bool:
        return self.tail is None

    def is_unit(self) -> bool:
        return self.prec > 0 and self.const % self.p != 0

    def monomials(self) -> list[tuple[int, int, int]]:
        """Nonzero terms as (i, j, c) triples, the config-file format."""
        out = [(i, 0, c) for i, c in enumerate(self.x) if c]
        out += [(0, j, c) for j, c in enumerate(self.y, start=1) if c]
        return out

    # ring operations ------------------------------------------------------

    def _check(self, other: HalfSeries):
        if other.p != self.p or other.D != self.D:
            raise FieldMismatch(f"series over (p={self.p}, D={self.D}) vs (p={other.p}, D={other.D})")

    def __add__(self, other):
        if isinstance(other, int):
            other = HalfSeries.constant(other, self.p, self.prec, self.D)
        if not isinstance(other, HalfSeries):
            return NotImplemented
        self._check(other)
        n = max(len(self.x), len(other.x))
        m = max(len(self.y), len(other.y))
        xs = [_at(self.x, i) + _at(other.x, i) for i in range(n)]
        ys = [_at(self.y, j) + _at(other.y, j) for j in range(m)]
        return HalfSeries(self.p, min(self.prec, other.prec), self.D, tuple(xs), tuple(ys),
                          _min_tail(self.tail, other.tail))

    __radd__ = __add__

    def __neg__(self):
        return self.like([-c for c in self.x], [-c for c in self.y], self.tail)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.like([other * c for c in self.x], [other * c for c in self.y], self.tail)
        if not isinstance(other, HalfSeries):
            return NotImplemented
        return hs_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = HalfSeries.constant(1, self.p, self.prec, self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divide_by_p(self) -> HalfSeries:
        """Exact division by p; loses one digit of precision and one degree of tail."""
        if any(c % self.p for c in self.x + self.y):
            raise ValueError("series is not divisible by p")
        tail = None if self.tail is None else self.tail - 1
        return HalfSeries(self.p, self.prec - 1, self.D,
                          tuple(c // self.p for c in self.x), tuple(c // self.p for c in self.y), tail)


def _at(seq, i):
    return seq[i] if i < len(seq) else 0


def _min_tail(*tails):
    finite = [t for t in tails if t is not None]
    return min(finite) if finite else None


def normalize(monomials: Iterable[Sequence[int]], p: int, prec: int, D: int) -> HalfSeries:
    """Rewrite x^i y^j via xy = p and merge like terms."""
    xs = [0] * (D + 1)
    ys = [0] * D
    for i, j, c in monomials:
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent in monomial ({i}, {j})")
        m = min(i, j)
        c *= p**m
        i, j = i - m, j - m
        if max(i, j) > D:
            raise DegreeOverflow(f"monomial of degree {max(i, j)} exceeds D = {D}")
        if j == 0:
            xs[i] += c
        else:
            ys[j - 1] += c
    return HalfSeries(p, prec, D, tuple(xs), tuple(ys))


def hs_mul(f: HalfSeries, g: HalfSeries, exact: bool = False) -> HalfSeries:
    """Product in normal form.

    Terms of degree > D are dropped and the tail set to D + 1, unless
    ``exact`` is set, in which case dropping a term raises DegreeOverflow.
    """
    f._check(g)
    p, D = f.p, f.D
    tail = _min_tail(f.tail, g.tail)
    top = D if tail is None else min(D, tail - 1)
    xs = [0] * (top + 1)
    ys = [0] * max(top, 0)
    dropped = False
    fy = list(enumerate(f.y, start=1))
    gy = list(enumerate(g.y, start=1))
    for i, a in enumerate(f.x):
        if not a:
            continue
        for k, b in enumerate(g.x):
            if b:
                if i + k <= top:
                    xs[i + k] += a * b
                else:
                    dropped = True
        for j, b in gy:
            if b:
                _mixed(xs, ys, i, j, a * b, p, top)
    for j, a in fy:
        if not a:
            continue
        for k, b in gy:
            if b:
                if j + k <= top:
                    ys[j + k - 1] += a * b
                else:
                    dropped = True
        for i, b in enumerate(g.x):
            if b:
                _mixed(xs, ys, i, j, a * b, p, top)
    if dropped and tail is None:
        if exact:
            raise DegreeOverflow(f"product has terms beyond degree {D}")
        tail = D + 1
    return HalfSeries(p, min(f.prec, g.prec), D, tuple(xs), tuple(ys), tail)


def _mixed(xs, ys, i, j, c, p, top):
    # x^i y^j with i, j >= 0, j >= 1: |i - j| <= max(i, j) <= top always fits
    if i >= j:
        xs[i - j] += c * p**j
    else:
        ys[j - i - 1] += c * p**i


def hs_inverse(u: HalfSeries) -> HalfSeries:
    """Inverse of a unit series by Newton iteration z <- z(2 - u z)."""
    if not u.is_unit():
        raise NotAUnit("constant term is not a p-adic unit")
    z = HalfSeries.constant(pow(u.const, -1, u.p**u.prec), u.p, u.prec, u.D)
    # error order in the (p, x, y)-adic filtration doubles every step
    for _ in range((u.D + u.prec + 2).bit_length() + 2):
        z_next = z * (2 - u * z)
        if z_next == z:
            break
        z = z_next
    return z


def compose(h: HalfSeries, X: HalfSeries, Y: HalfSeries) -> HalfSeries:
    """h(X, Y) for series X, Y with XY = p (the substitution is then a ring map)."""
    acc = HalfSeries(h.p, h.prec, h.D, (), (), h.tail)
    power = HalfSeries.constant(1, h.p, h.prec, h.D)
    for i, a in enumerate(h.x):
        if i:
            power = power * X
        if a:
            acc = acc + power * a
    power = HalfSeries.constant(1, h.p, h.prec, h.D)
    for b in h.y:
        power = power * Y
        if b:
            acc = acc + power * b
    return acc


def hs_eval(f: HalfSeries, x: RamElem, precision: int | None = None) -> RamElem:
    """Evaluate at the annulus point with coordinate x (and y = p/x).

    The result's precision accounts for coefficient precision, arithmetic
    loss and the truncation tail.  Raises PrecisionExhausted if that falls
    short of ``precision`` (pi-digits); the caller should raise D.
    """
    k = annulus_digits(x)
    result = eval_at(f, x, p_over(x), k)
    if precision is not None and result.prec < precision:
        raise PrecisionExhausted(
            f"evaluation certified to {result.prec} pi-digits, {precision} requested; raise D"
        )
    return result


def annulus_digits(x: RamElem) -> int:
    """val(x) in pi-digits, checked to lie strictly between 0 and n."""
    k = x.val_digits()
    if not 0 < k < x.field.n:
        raise AnnulusViolation(f"val(x) = {k}/{x.field.n} is not in the open interval (0, 1)")
    return k


def eval_at(f: HalfSeries, x: RamElem, y: RamElem, k: int) -> RamElem:
    """Evaluation given x, y = p/x and k = val(x) in pi-digits."""
    F = x.field
    if F.p != f.p:
        raise FieldMismatch(f"series over Z_{f.p} evaluated in a field over Q_{F.p}")
    coeff_prec = F.n * min(f.prec, F.A)

    def const(c):
        return F.from_int(c).with_prec(coeff_prec)

    acc = const(0)
    for c in reversed(f.x):
        acc = acc * x + const(c)
    ypart = const(0)
    for c in reversed(f.y):
        ypart = (ypart + const(c)) * y
    result = acc + ypart
    if f.tail is not None:
        result = result.with_prec(f.tail * min(k, F.n - k))
    return result


def check_congruences(
    f: HalfSeries,
    *,
    y_only: bool = False,
    vanish_below_y: int | None = None,
    unit: bool = False,
    one_mod_p: bool = False,
) -> dict[str, bool]:
    """Check the requested side conditions; returns one pass/fail entry per check."""
    report = {}
    if y_only:
        report["y_only"] = not any(f.x)
    if vanish_below_y is not None:
        report[f"zero_mod_y^{vanish_below_y}"] = not any(f.x) and not any(f.y[: vanish_below_y - 1])
    if unit:
        report["unit"] = f.is_unit()
    if one_mod_p:
        p = f.p
        report["one_mod_p"] = (f.const - 1) % p == 0 and not any(c % p for c in f.x[1:] + f.y)
    return report
