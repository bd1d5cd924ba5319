"""Exact coefficient arithmetic: rationals, univariate polynomials in t,
reduced rational functions in t and cyclotomic field elements.

Rationals are ``gmpy2.mpq`` values; they are always stored in lowest terms
with a positive denominator, which is exactly the canonical form we need.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, lcm

from gmpy2 import mpq, mpz

Rational = type(mpq())

ZERO = mpq(0)
ONE = mpq(1)


def Q(value, den=1) -> Rational:
    """Coerce ints, strings ("a/b") and fractions to an exact rational."""
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            a, b = value.split("/")
            return mpq(int(a), int(b)) / den
        return mpq(int(value), den)
    if den == 1:
        return mpq(value)
    return mpq(value) / den


def qstr(q) -> str:
    """Canonical text form ``a/b``, with ``/b`` omitted when b is 1."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _trim(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Dense univariate polynomial over Q; ``coeffs[i]`` is the coefficient of t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(mpq(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs) -> "UniPoly":
        # coeffs are already mpq; only trimming needed
        p = object.__new__(cls)
        p.coeffs = _trim(coeffs)
        return p

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> "UniPoly":
        return cls((0, 1))

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, RatFunc):
            return other == self
        try:
            return self.coeffs == _trim((mpq(other),))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        return self.to_str("t")

    def to_str(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = qstr(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else qstr(a) + mono
            parts.append((sign, body))
        out = "".join(s + b for s, b in parts)
        return out[1:] if out.startswith("+") else out

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, RatFunc):
            return None
        try:
            return UniPoly((mpq(other),))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UniPoly._raw(())
        if len(b) == 1:
            c = b[0]
            return UniPoly._raw([x * c for x in a])
        if len(a) == 1:
            c = a[0]
            return UniPoly._raw([x * c for x in b])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "UniPoly":
        c = mpq(c)
        return UniPoly._raw([x * c for x in self.coeffs])

    def shift(self, k: int) -> "UniPoly":
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return UniPoly._raw([ZERO] * k + list(self.coeffs))

    def divmod(self, other: "UniPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lc_inv = 1 / other.lc
        bc = other.coeffs
        if len(r) - 1 < db:
            return UniPoly._raw(()), self
        q = [ZERO] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c * lc_inv
            q[k - db] = c
            off = k - db
            for j in range(db + 1):
                r[off + j] -= c * bc[j]
        return UniPoly._raw(q), UniPoly._raw(r[:db] if db > 0 else ())

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __truediv__(self, other):
        if isinstance(other, (UniPoly, RatFunc)):
            return RatFunc(self, other)
        c = mpq(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def __rtruediv__(self, other):
        return RatFunc(UniPoly.const(other), self)

    def derivative(self) -> "UniPoly":
        return UniPoly._raw([self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def __call__(self, x):
        acc = ZERO if not isinstance(x, (UniPoly, RatFunc)) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self.scale(1 / self.lc)

    def content(self):
        """Positive rational c with self / c primitive integral."""
        if not self.coeffs:
            return ZERO
        den = 1
        for c in self.coeffs:
            den = lcm(den, int(c.denominator))
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c.numerator * (den // c.denominator)))
        return mpq(g, den)

    def primitive(self) -> "UniPoly":
        """Content-free integer form with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return self.scale(1 / c)


def unipoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
        if b:
            b = b.monic()
    return a.monic() if a else a


def unipoly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if not a or not b:
        return UniPoly()
    return (a * b).exact_div(unipoly_gcd(a, b)).monic()


def unipoly_squarefree(p: UniPoly) -> UniPoly:
    """Monic squarefree part p / gcd(p, p')."""
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    g = unipoly_gcd(p, p.derivative())
    return p.exact_div(g).monic() if g else p.monic()


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> UniPoly:
    """Phi_N, by dividing t^N - 1 by Phi_d for every proper divisor d of N."""
    if N < 1:
        raise ValueError("cyclotomic order must be positive")
    p = UniPoly.monomial(N) - 1
    for k in range(1, N):
        if N % k == 0:
            p = p.exact_div(cyclotomic_polynomial(k))
    return p


class RatFunc:
    """Reduced fraction num/den of polynomials in t with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(num)
        if den is None:
            den = UniPoly.const(1)
        elif isinstance(den, RatFunc):
            # (num) / (a/b) = num*b / a
            num, den = num * den.den, den.num
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, UniPoly.const(1)
            return
        if den.degree > 0:
            g = unipoly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        c = den.lc
        if c != 1:
            num, den = num.scale(1 / c), den.scale(1 / c)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: UniPoly, den: UniPoly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls._raw(UniPoly.const(c), UniPoly.const(1))

    @classmethod
    def t(cls) -> "RatFunc":
        return cls._raw(UniPoly.t(), UniPoly.const(1))

    def __bool__(self):
        return bool(self.num)

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, UniPoly):
            return self.is_poly() and self.num == other
        try:
            return self.is_poly() and self.num == UniPoly.const(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc._raw(other, UniPoly.const(1))
        try:
            return RatFunc.const(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc.const(0)
        if self.is_poly() and o.is_poly():
            return RatFunc._raw(self.num * o.num, UniPoly.const(1))
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.const(1) / (self ** (-k))
        return RatFunc._raw(self.num ** k, self.den ** k)

    def derivative(self) -> "RatFunc":
        if self.is_poly():
            return RatFunc._raw(self.num.derivative(), self.den)
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        return self.num(x) / self.den(x)


def ratfunc_normalize(num: UniPoly, den: UniPoly) -> RatFunc:
    """Cancel the gcd and make the denominator monic."""
    return RatFunc(num, den)


def euler_phi(N: int) -> int:
    return sum(1 for k in range(1, N + 1) if gcd(k, N) == 1)


class CycloElem:
    """Element of Q(zeta_N) as coordinates on 1, zeta, ..., zeta^(phi(N)-1)."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords):
        phi = cyclotomic_polynomial(order).degree
        coords = [mpq(c) for c in coords]
        if len(coords) > phi:
            p = UniPoly(coords) % cyclotomic_polynomial(order)
            coords = list(p.coeffs)
        coords += [ZERO] * (phi - len(coords))
        self.order = order
        self.coords = tuple(coords)

    @classmethod
    def zeta_power(cls, N: int, k: int) -> "CycloElem":
        """zeta_N^k, reduced modulo Phi_N."""
        return cls(N, [0] * (k % N) + [1])

    @classmethod
    def from_rational(cls, N: int, c) -> "CycloElem":
        return cls(N, [c])

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.order == other.order and self.coords == other.coords
        try:
            return self == CycloElem.from_rational(self.order, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coords))

    def __repr__(self):
        return f"CycloElem({self.order}, {[qstr(c) for c in self.coords]})"

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.order != self.order:
                raise ValueError("mixing different cyclotomic fields")
            return other
        return CycloElem.from_rational(self.order, other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycloElem(self.order, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.order, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        prod = UniPoly(self.coords) * UniPoly(o.coords)
        return CycloElem(self.order, (prod % cyclotomic_polynomial(self.order)).coeffs)

    __rmul__ = __mul__

    def to_poly(self) -> UniPoly:
        return UniPoly(self.coords)


def as_int(q) -> int:
    q = mpq(q)
    if q.denominator != 1:
        raise ValueError(f"{q} is not an integer")
    return int(q.numerator)


__all__ = [
    "Q", "qstr", "Rational", "UniPoly", "RatFunc", "CycloElem", "mpz",
    "unipoly_gcd", "unipoly_lcm", "unipoly_squarefree", "cyclotomic_polynomial",
    "ratfunc_normalize", "euler_phi", "as_int",
]
