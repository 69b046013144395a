"""Arithmetic in O_L for L = Q_p(pi), pi^n = p, with capped absolute precision.

Elements are stored as coefficient vectors c_0..c_{n-1} (the element is
sum c_i pi^i) with each c_i an integer mod p^A, plus an absolute precision
``prec`` counted in pi-digits: the element is known modulo pi^prec, and
``prec <= M = n*A``.  Coefficients are kept reduced modulo exactly what the
precision allows, so two elements compare equal iff they agree as
elements of O_L / pi^prec.

Valuations are normalized so that val(p) = 1, hence val(pi) = 1/n.  They are
returned as ``Fraction`` values, or ``math.inf`` for an element that is zero
at full working precision.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    FieldMismatch,
    IndeterminateValuation,
    NonPrime,
    NotAUnit,
    PrecisionExhausted,
    ZeroDegree,
)

INFINITY = math.inf


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def vp(c: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


@dataclass(frozen=True)
class FieldDesc:
    """The totally ramified extension Q_p(pi), pi^n = p, at precision p^A."""

    p: int
    n: int
    A: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrime(f"{self.p} is not prime")
        if self.n < 1:
            raise ZeroDegree(f"ramification index must be >= 1, got {self.n}")
        if self.A < 1:
            raise ZeroDegree(f"coefficient precision must be >= 1, got {self.A}")
        object.__setattr__(self, "modulus", self.p**self.A)

    @property
    def M(self) -> int:
        """Working precision in pi-digits."""
        return self.n * self.A

    # constructors -------------------------------------------------------

    def element(self, coeffs: Sequence[int], prec: int | None = None) -> RamElem:
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise ValueError(f"at most {self.n} coefficients, got {len(coeffs)}")
        coeffs += [0] * (self.n - len(coeffs))
        return RamElem(self, coeffs, self.M if prec is None else prec)

    def from_int(self, c: int) -> RamElem:
        return RamElem(self, [c] + [0] * (self.n - 1), self.M)

    def zero(self) -> RamElem:
        return self.from_int(0)

    def one(self) -> RamElem:
        return self.from_int(1)

    def pi_power(self, k: int) -> RamElem:
        """pi^k for k >= 0, exact."""
        if k < 0:
            raise ValueError("negative powers of pi are not representable")
        q, r = divmod(k, self.n)
        coeffs = [0] * self.n
        coeffs[r] = self.p**q if q < self.A else 0
        return RamElem(self, coeffs, self.M)

    def from_pi_series(self, terms: Iterable[tuple[int, int]], prec: int | None = None) -> RamElem:
        """Sum of c * pi^k over (c, k) pairs."""
        acc = [0] * self.n
        for c, k in terms:
            if k < 0:
                raise ValueError("negative powers of pi are not representable")
            q, r = divmod(k, self.n)
            acc[r] += c * self.p**q
        return RamElem(self, acc, self.M if prec is None else prec)

    def from_pi_digits(self, digits: Sequence[int], prec: int | None = None) -> RamElem:
        return self.from_pi_series(((d, k) for k, d in enumerate(digits)), prec)

    def random_unit(self, rng: random.Random) -> RamElem:
        coeffs = [rng.randrange(self.modulus) for _ in range(self.n)]
        coeffs[0] = rng.randrange(1, self.p) + self.p * rng.randrange(self.modulus // self.p)
        return RamElem(self, coeffs, self.M)

    def random_element(self, rng: random.Random, k: int) -> RamElem:
        """pi^k times a random unit: an element of valuation exactly k/n."""
        return self.random_unit(rng).shift_up(k)


@lru_cache(maxsize=4096)
def _moduli(p: int, n: int, A: int, prec: int) -> tuple[int, ...]:
    # c_i pi^i is known mod pi^prec iff c_i is known mod p^ceil((prec - i)/n)
    return tuple(p ** min(A, max(0, -((i - prec) // n))) for i in range(n))


def _pack(coeffs: Sequence[int], width: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def _convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of two nonnegative integer polynomials by Kronecker substitution."""
    size = len(a) + len(b) - 1
    bound = max(a) * max(b) * min(len(a), len(b))
    if bound == 0:
        return [0] * size
    width = (bound.bit_length() + 8) // 8
    prod = _pack(a, width) * _pack(b, width)
    raw = prod.to_bytes(width * size, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(size)]


class RamElem:
    """An element of O_L known modulo pi^prec."""

    __slots__ = ("field", "coeffs", "prec", "_val")

    def __init__(self, field: FieldDesc, coeffs: Sequence[int], prec: int):
        prec = max(0, min(prec, field.M))
        mods = _moduli(field.p, field.n, field.A, prec)
        self.field = field
        self.coeffs = tuple(c % m for c, m in zip(coeffs, mods))
        self.prec = prec
        self._val = None

    # valuation ---------------------------------------------------------

    def _visible_val(self) -> int | None:
        """Valuation in pi-digits of the stored digits, None if they all vanish."""
        if self._val is None:
            p, n = self.field.p, self.field.n
            best = -1
            for i, c in enumerate(self.coeffs):
                if c:
                    v = n * vp(c, p) + i
                    if best < 0 or v < best:
                        best = v
            self._val = best
        return None if self._val < 0 else self._val

    def lower_val(self) -> int:
        """A certified lower bound for the valuation in pi-digits."""
        v = self._visible_val()
        return self.prec if v is None else v

    def val_digits(self) -> int:
        """Exact valuation in pi-digits; raises if it cannot be certified."""
        v = self._visible_val()
        if v is None:
            raise IndeterminateValuation(
                f"all digits vanish modulo pi^{self.prec}; valuation is >= {self.prec}/{self.field.n}"
            )
        return v

    def valuation(self) -> Fraction | float:
        v = self._visible_val()
        if v is None:
            if self.prec == self.field.M:
                return INFINITY
            raise IndeterminateValuation(
                f"all digits vanish modulo pi^{self.prec}; valuation is >= {self.prec}/{self.field.n}"
            )
        return Fraction(v, self.field.n)

    def is_zero(self) -> bool:
        """True if the element vanishes at its own precision."""
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return self.prec > 0 and self.coeffs[0] % self.field.p != 0

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> RamElem:
        if isinstance(other, RamElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RamElem(
            self.field,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            min(self.prec, other.prec),
        )

    __radd__ = __add__

    def __neg__(self):
        return RamElem(self.field, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec + other.lower_val(), other.prec + self.lower_val())
        return RamElem(self.field, _raw_mul(self.field, self.coeffs, other.coeffs), prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, RamElem):
            return NotImplemented
        return self.field == other.field and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.prec, self.coeffs))

    # shifts and precision ----------------------------------------------

    def shift_up(self, k: int) -> RamElem:
        """Multiply by pi^k (k >= 0); precision grows by k up to the cap."""
        if k == 0:
            return self
        q, r = divmod(k, self.field.n)
        n, p = self.field.n, self.field.p
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            j = i + r
            out[j % n] += c * p ** (q + j // n)
        return RamElem(self.field, out, self.prec + k)

    def shift_down(self, k: int) -> RamElem:
        """Divide by pi^k; requires valuation >= k.  Precision drops by k."""
        if k == 0:
            return self
        if self.lower_val() < k:
            raise ValueError(f"element of valuation {self.lower_val()} is not divisible by pi^{k}")
        n, p = self.field.n, self.field.p
        q, r = divmod(k, n)
        if r:
            # x / pi^k = x * pi^(n-r) / p^(q+1)
            lifted = [0] * n
            for i, c in enumerate(self.coeffs):
                j = i + n - r
                lifted[j % n] += c * p ** (j // n)
            div = p ** (q + 1)
        else:
            lifted, div = list(self.coeffs), p**q
        return RamElem(self.field, [c // div for c in lifted], self.prec - k)

    def unit_part(self) -> RamElem:
        return self.shift_down(self.val_digits())

    def with_prec(self, prec: int) -> RamElem:
        return RamElem(self.field, self.coeffs, min(prec, self.prec))

    def agrees_with(self, other: RamElem, digits: int) -> bool:
        """Certified congruence self == other modulo pi^digits."""
        diff = self - other
        return diff.prec >= digits and diff.lower_val() >= digits

    def pi_digits(self) -> list[int]:
        """Digits d_k in {0..p-1} with self = sum d_k pi^k mod pi^prec.

        Coefficient c_i contributes its base-p digits at positions i, i+n, ...
        """
        n, p = self.field.n, self.field.p
        out = [0] * self.prec
        for i, c in enumerate(self.coeffs):
            pos = i
            while c:
                c, out[pos] = divmod(c, p)[0], c % p
                pos += n
        while out and out[-1] == 0:
            out.pop()
        return out

    def digits(self) -> dict:
        """Serializable form: pi-adic digits and absolute precision."""
        return {"pi_digits": self.pi_digits(), "abs_prec": self.prec}

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*pi^{i}" if i else str(c))
        body = " + ".join(terms) if terms else "0"
        return f"RamElem({body} + O(pi^{self.prec}); p={self.field.p}, n={self.field.n})"


def _raw_mul(field: FieldDesc, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n, p = field.n, field.p
    conv = _convolve(a, b)
    out = conv[:n]
    for i in range(n, 2 * n - 1):
        out[i - n] += p * conv[i]
    mod = field.modulus
    return [c % mod for c in out]


# module-level operations ------------------------------------------------


def make_field(p: int, n: int, A: int) -> FieldDesc:
    return FieldDesc(p, n, A)


def add(a: RamElem, b: RamElem) -> RamElem:
    return a + b


def mul(a: RamElem, b: RamElem) -> RamElem:
    return a * b


def valuation(a: RamElem) -> Fraction | float:
    return a.valuation()


def invert(a: RamElem) -> RamElem:
    """Inverse of a unit, at the unit's precision.

    Non-units have no inverse in O_L; divide explicitly with ``exact_div``.
    """
    v = a.val_digits()
    if v > 0:
        raise NotAUnit(f"valuation {Fraction(v, a.field.n)} > 0: inverse is not integral")
    field = a.field
    mod = field.modulus
    z = [pow(a.coeffs[0], -1, mod)] + [0] * (field.n - 1)
    # Newton: z <- z(2 - a z) doubles the number of correct pi-digits
    for _ in range(field.M.bit_length() + 1):
        az = _raw_mul(field, a.coeffs, z)
        corr = [(-c) % mod for c in az]
        corr[0] = (corr[0] + 2) % mod
        z_next = _raw_mul(field, z, corr)
        if z_next == z:
            break
        z = z_next
    return RamElem(field, z, a.prec)


def exact_div(a: RamElem, b: RamElem) -> RamElem:
    """a / b when val(a) >= val(b); precision min(prec a, prec b + val a - val b) - val b."""
    vb = b.val_digits()
    if vb >= b.prec:
        raise PrecisionExhausted("divisor has no significant digits")
    ub = invert(b.shift_down(vb))
    return a.shift_down(vb) * ub


def p_over(x: RamElem) -> RamElem:
    """p / x for val(x) <= 1, written as pi^(n-k) / (x / pi^k) to keep p exact."""
    k = x.val_digits()
    n = x.field.n
    if k > n:
        raise ValueError(f"val(x) = {Fraction(k, n)} > 1: p/x is not integral")
    return x.field.pi_power(n - k) * invert(x.shift_down(k))
