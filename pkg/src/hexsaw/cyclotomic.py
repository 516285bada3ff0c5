"""
Exact arithmetic in the cyclotomic field Q(zeta_48).

An element is stored as ``sum(c[k] * zeta**k for k in range(16))`` with
``zeta = exp(i*pi/24)``, reduced modulo the 48th cyclotomic polynomial
``x^16 - x^8 + 1``. Coefficients are rationals kept as integer numerators
over one shared positive denominator, which keeps multiplication cheap.

Every constant needed by the walk observable lives here:

>>> c = constants()
>>> (1 + c.x_c * c.j * c.lam.conjugate() + c.x_c * c.j.conjugate() * c.lam).is_zero()
True
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

DEGREE = 16
ORDER = 48

_ROOTS = tuple(cmath.exp(1j * math.pi * k / 24) for k in range(DEGREE))


def _reduce(coeffs: list[int]) -> list[int]:
    """Reduce a coefficient list of any length modulo x^16 - x^8 + 1."""
    c = list(coeffs)
    for k in range(len(c) - 1, DEGREE - 1, -1):
        v = c[k]
        if v:
            # x^k = x^(k-8) - x^(k-16)
            c[k - 8] += v
            c[k - 16] -= v
    c = c[:DEGREE]
    c.extend([0] * (DEGREE - len(c)))
    return c


class CycloNum:
    """Element of Q(zeta_48). Immutable and hashable."""

    __slots__ = ("_nums", "_den", "_hash")

    def __init__(self, coeffs=(), _den: int = 1, _normalized: bool = False):
        if _normalized:
            self._nums = coeffs
            self._den = _den
        else:
            fr = [Fraction(c) for c in coeffs]
            if len(fr) > DEGREE:
                den = math.lcm(*(f.denominator for f in fr))
                fr = [Fraction(v, den) for v in _reduce([int(f * den) for f in fr])]
            fr.extend([Fraction(0)] * (DEGREE - len(fr)))
            den = math.lcm(*(f.denominator for f in fr))
            nums = [int(f * den) for f in fr]
            nums, den = _normalize(nums, den)
            self._nums = nums
            self._den = den
        self._hash = None

    @classmethod
    def _make(cls, nums, den) -> CycloNum:
        nums, den = _normalize(nums, den)
        return cls(nums, den, _normalized=True)

    @classmethod
    def from_rational(cls, r) -> CycloNum:
        r = Fraction(r)
        return cls._make([r.numerator] + [0] * (DEGREE - 1), r.denominator)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    # arithmetic

    def _coerce(self, other) -> CycloNum | None:
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Rational)):
            return CycloNum.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return CycloNum._make([a + b for a, b in zip(self._nums, o._nums)], self._den)
        return CycloNum._make(
            [a * o._den + b * self._den for a, b in zip(self._nums, o._nums)],
            self._den * o._den,
        )

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum(tuple(-a for a in self._nums), self._den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._nums, o._nums
        prod = [0] * (2 * DEGREE - 1)
        for i, ai in enumerate(a):
            if ai:
                for k, bk in enumerate(b):
                    if bk:
                        prod[i + k] += ai * bk
        return CycloNum._make(_reduce(prod), self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, n: int) -> CycloNum:
        if n < 0:
            return self.invert() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> CycloNum:
        """Complex conjugation, zeta^k -> zeta^(-k) = -zeta^(24-k)."""
        out = [0] * (2 * DEGREE)
        out[0] = self._nums[0]
        for k in range(1, DEGREE):
            out[24 - k] -= self._nums[k]
        return CycloNum._make(_reduce(out), self._den)

    def invert(self) -> CycloNum:
        """Multiplicative inverse via the extended Euclidean algorithm over Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("CycloNum inverse of zero")
        s = _poly_inverse_mod(list(self.coeffs), _PHI48)
        return CycloNum(s)

    def real_part(self) -> CycloNum:
        return (self + self.conjugate()) * Fraction(1, 2)

    # comparison / hashing

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._den == o._den and self._nums == o._nums

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nums, self._den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # conversion

    def to_complex(self) -> complex:
        """Double-precision value. Raises OverflowError for coefficients beyond double range."""
        total = 0j
        for n, root in zip(self._nums, _ROOTS):
            if n:
                total += (n / self._den) * root
        return total

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> CycloNum:
        return cls([Fraction(s) for s in data])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*z^{k}")
        return "CycloNum(" + (" + ".join(terms) or "0") + ")"


def _normalize(nums, den):
    if den < 0:
        nums, den = [-n for n in nums], -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums = [n // g for n in nums]
        den //= g
    return tuple(nums), den


# polynomial helpers over Q, lowest degree first

_PHI48 = [Fraction(0)] * 17
_PHI48[0] = Fraction(1)
_PHI48[8] = Fraction(-1)
_PHI48[16] = Fraction(1)


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, bi in enumerate(b):
            a[i + shift] -= f * bi
        _trim(a)
    return _trim(q), a


def _sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for k, bk in enumerate(b):
                out[i + k] += ai * bk
    return _trim(out)


def _poly_inverse_mod(a, m):
    # invariant: s_i * a == r_i (mod m)
    r0, r1 = _trim(list(m)), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv = [c / r0[0] for c in s0]
    _, rem = _divmod(inv, m)
    return rem


ZERO = CycloNum()
ONE = CycloNum.from_rational(1)


@lru_cache(maxsize=None)
def zeta_pow(k: int) -> CycloNum:
    """zeta_48 ** k for any integer k."""
    k %= ORDER
    sign = 1
    if k >= 24:
        k -= 24
        sign = -1
    if k < DEGREE:
        nums = [0] * DEGREE
        nums[k] = sign
        return CycloNum._make(nums, 1)
    coeffs = [0] * (k + 1)
    coeffs[k] = sign
    return CycloNum._make(_reduce(coeffs), 1)


@dataclass(frozen=True)
class Constants:
    lam: CycloNum
    j: CycloNum
    x_c: CycloNum
    c_alpha: CycloNum
    c_eps: CycloNum
    i_unit: CycloNum


@lru_cache(maxsize=None)
def constants() -> Constants:
    half = Fraction(1, 2)
    return Constants(
        lam=zeta_pow(-5),
        j=zeta_pow(16),
        x_c=(zeta_pow(3) + zeta_pow(-3)).invert(),
        c_alpha=(zeta_pow(9) + zeta_pow(-9)) * half,
        c_eps=(zeta_pow(6) + zeta_pow(-6)) * half,
        i_unit=zeta_pow(12),
    )
