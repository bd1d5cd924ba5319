"""Sparse multivariate polynomials, weighted gradings and polynomial forms.

Three form shapes are used:

* :class:`FormTop` -- ``P dx`` with ``dx = dx_1 ^ ... ^ dx_{n+1}``;
* :class:`FormN` -- an n-form stored by *signed* components ``a_i`` so that
  it equals ``sum_i (-1)^(i-1) a_i dx^_i``.  With this convention
  ``df ^ psi = (sum_i a_i df/dx_i) dx`` and ``d psi = (sum_i da_i/dx_i) dx``;
* :class:`FormN1` -- an (n-1)-form, a table ``(i, j) -> c_ij`` (i < j) for
  ``sum c_ij dx^_ij`` where ``dx^_ij`` omits both dx_i and dx_j.

Indices are 0-based in code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from gmpy2 import mpq

from .numeric import qstr


class ArityError(ValueError):
    pass


@dataclass(frozen=True)
class Weights:
    """Weights alpha_1..alpha_{n+1} and weighted degree d, with w_i = alpha_i/d."""

    alphas: tuple
    degree_d: int

    def __post_init__(self):
        alphas = tuple(int(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if not alphas or any(a < 1 for a in alphas):
            raise ValueError("weights must be positive integers")
        g = 0
        for a in alphas:
            g = gcd(g, a)
        if g != 1:
            raise ValueError(f"weights {alphas} are not coprime")
        if self.degree_d < 2:
            raise ValueError("weighted degree must be at least 2")

    @property
    def nvars(self) -> int:
        return len(self.alphas)

    @property
    def w(self) -> tuple:
        return tuple(mpq(a, self.degree_d) for a in self.alphas)

    def degree(self, exp) -> int:
        return sum(a * e for a, e in zip(self.alphas, exp))

    def A(self, beta) -> mpq:
        """A_beta = sum (beta_i + 1) w_i."""
        return mpq(sum(a * (b + 1) for a, b in zip(self.alphas, beta)), self.degree_d)

    @property
    def sum_alpha(self) -> int:
        return sum(self.alphas)


def _coerce_coeff(c):
    if isinstance(c, (int, Fraction)):
        return mpq(c)
    return c


class MPoly:
    """Sparse polynomial: dict from exponent tuples to nonzero coefficients.

    Coefficients may be rationals (mpq), :class:`RatFunc` (for Q(t)) or any
    other field elements supporting ``+ - * /`` and truthiness.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            self.terms = {tuple(e): _coerce_coeff(c) for e, c in dict(terms).items() if c}

    @classmethod
    def _raw(cls, nvars, terms) -> "MPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        c = _coerce_coeff(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): _coerce_coeff(c)})

    @classmethod
    def monomial(cls, exp, c=1) -> "MPoly":
        c = _coerce_coeff(c)
        return cls._raw(len(exp), {tuple(exp): c} if c else {})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not other:
            return not self.terms
        return self == MPoly.const(self.nvars, other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        o = self._lift(other)
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = -c
            else:
                v = v - c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(self.nvars, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return MPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MPoly":
        c = _coerce_coeff(c)
        if not c:
            return MPoly(self.nvars)
        return MPoly._raw(self.nvars, {e: x * c for e, x in self.terms.items()})

    def mul_term(self, exp, c) -> "MPoly":
        """Multiply by the single term c * x^exp."""
        if not c:
            return MPoly(self.nvars)
        return MPoly._raw(
            self.nvars,
            {tuple(x + y for x, y in zip(e, exp)): v * c for e, v in self.terms.items()},
        )

    def __pow__(self, k: int) -> "MPoly":
        result = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def diff(self, i: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return MPoly._raw(self.nvars, out)

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def extend(self, extra: int = 1) -> "MPoly":
        """The same polynomial in ``extra`` more (trailing) variables."""
        z = (0,) * extra
        return MPoly._raw(self.nvars + extra, {e + z: c for e, c in self.terms.items()})

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def __call__(self, *values):
        acc = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            acc = acc + term
        return acc

    def to_str(self, names: Sequence[str] | None = None, order=None) -> str:
        """Canonical text: terms in decreasing monomial order, explicit ``*``."""
        if not self.terms:
            return "0"
        if names is None:
            names = default_names(self.nvars)
        if order is None:
            exps = sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in reversed(e))), reverse=True)
        else:
            exps = order.sorted_desc(self.terms)
        out = []
        for e in exps:
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs, neg = _coeff_text(c)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            out.append(("-" if neg else "+") + body)
        s = "".join(out)
        return s[1:] if s.startswith("+") else s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self})"


def _coeff_text(c):
    """(text, negative?) for a coefficient; compound ones are parenthesised."""
    if isinstance(c, type(mpq())) or isinstance(c, int):
        c = mpq(c)
        return qstr(-c if c < 0 else c), c < 0
    s = str(c)
    if hasattr(c, "is_poly") and c.is_poly() and len([x for x in c.num.coeffs if x]) == 1:
        if s.startswith("-"):
            return s[1:], True
        return s, False
    return f"({s})", False


def default_names(nvars: int) -> list:
    return [f"x{i + 1}" for i in range(nvars)]


def weighted_degree(p: MPoly, w: Weights):
    """max alpha.beta over the terms; ``float('-inf')`` for the zero polynomial."""
    if p.nvars != w.nvars:
        raise ArityError("polynomial and weights disagree on the number of variables")
    if not p:
        return float("-inf")
    return max(w.degree(e) for e in p.terms)


def homogeneous_parts(f: MPoly, w: Weights) -> list:
    """[f_0, ..., f_D] with f_j quasi-homogeneous of degree j and D = deg f."""
    if not f:
        raise ValueError("homogeneous decomposition of the zero polynomial")
    if f.nvars != w.nvars:
        raise ArityError("polynomial and weights disagree on the number of variables")
    top = weighted_degree(f, w)
    parts = [dict() for _ in range(top + 1)]
    for e, c in f.terms.items():
        parts[w.degree(e)][e] = c
    return [MPoly._raw(f.nvars, p) for p in parts]


def homogenize(f: MPoly, w: Weights) -> MPoly:
    """F = sum_j f_j x0^(d-j).  The new variable x0 is appended *last*."""
    d = w.degree_d
    parts = homogeneous_parts(f, w)
    out = {}
    for j, part in enumerate(parts):
        if j > d and part:
            raise ValueError("polynomial degree exceeds the declared weighted degree")
        for e, c in part.terms.items():
            out[e + (d - j,)] = c
    return MPoly._raw(f.nvars + 1, out)


@dataclass(frozen=True)
class FormTop:
    """coeff * dx_1 ^ ... ^ dx_{n+1}."""

    coeff: MPoly

    def __add__(self, other):
        return FormTop(self.coeff + other.coeff)

    def __sub__(self, other):
        return FormTop(self.coeff - other.coeff)

    def __bool__(self):
        return bool(self.coeff)


@dataclass(frozen=True)
class FormN:
    """sum_i (-1)^(i-1) comps[i] dx^_i (signs live in the convention, not the data)."""

    comps: tuple

    def __post_init__(self):
        object.__setattr__(self, "comps", tuple(self.comps))

    @classmethod
    def zero(cls, nvars: int) -> "FormN":
        return cls(tuple(MPoly(nvars) for _ in range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.comps)

    def __add__(self, other):
        return FormN(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        return FormN(tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return FormN(tuple(-a for a in self.comps))

    def mul(self, p) -> "FormN":
        """Multiply every component by a polynomial or scalar."""
        return FormN(tuple(a * p for a in self.comps))

    def __bool__(self):
        return any(self.comps)


def wedge_with_df(f: MPoly, psi: FormN) -> FormTop:
    """df ^ psi = (sum_i a_i df/dx_i) dx."""
    if psi.nvars != f.nvars:
        raise ArityError("form and polynomial disagree on the number of variables")
    acc = MPoly(f.nvars)
    for i, a in enumerate(psi.comps):
        if a:
            acc = acc + a * f.diff(i)
    return FormTop(acc)


def exterior_derivative(psi: FormN) -> FormTop:
    """d psi = (sum_i da_i/dx_i) dx."""
    n = psi.nvars
    acc = MPoly(n)
    for i, a in enumerate(psi.comps):
        if a:
            acc = acc + a.diff(i)
    return FormTop(acc)


def euler_contraction(omega: FormTop, w: Weights) -> FormN:
    """Contract Q dx with the Euler field sum alpha_i x_i d/dx_i."""
    Qp = omega.coeff
    n = Qp.nvars
    if n != w.nvars:
        raise ArityError("form and weights disagree on the number of variables")
    return FormN(tuple(Qp.mul_term(_unit(n, i), mpq(w.alphas[i])) for i in range(n)))


def eta_form(w: Weights, beta=None) -> FormN:
    """eta_beta = x^beta * sum (-1)^(i-1) w_i x_i dx^_i."""
    n = w.nvars
    beta = tuple(beta) if beta is not None else (0,) * n
    comps = []
    for i in range(n):
        e = list(beta)
        e[i] += 1
        comps.append(MPoly.monomial(e, w.w[i]))
    return FormN(tuple(comps))


def _unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


class FormN1:
    """(n-1)-form sum_{i<j} c_ij dx^_ij, used as the reduction certificate."""

    __slots__ = ("nvars", "comps")

    def __init__(self, nvars: int, comps=None):
        self.nvars = nvars
        self.comps = {k: v for k, v in (comps or {}).items() if v}

    def __bool__(self):
        return bool(self.comps)

    def __add__(self, other: "FormN1") -> "FormN1":
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out[k] + v if k in out else v
        return FormN1(self.nvars, out)

    def mul(self, p) -> "FormN1":
        if not p:
            return FormN1(self.nvars)
        return FormN1(self.nvars, {k: v * p for k, v in self.comps.items()})

    def d(self) -> FormN:
        """Exterior derivative, as a signed-component n-form."""
        n = self.nvars
        acc = [MPoly(n) for _ in range(n)]
        for (i, j), c in self.comps.items():
            s = 1 if (i + j) % 2 == 0 else -1
            ci, cj = c.diff(i), c.diff(j)
            if ci:
                acc[j] = acc[j] + ci.scale(s)
            if cj:
                acc[i] = acc[i] - cj.scale(s)
        return FormN(tuple(acc))

    def wedge_df(self, f: MPoly) -> FormN:
        """df ^ self."""
        n = self.nvars
        acc = [MPoly(n) for _ in range(n)]
        grads = [f.diff(k) for k in range(n)]
        for (i, j), c in self.comps.items():
            s = 1 if (i + j) % 2 == 0 else -1
            if grads[i]:
                acc[j] = acc[j] + (c * grads[i]).scale(s)
            if grads[j]:
                acc[i] = acc[i] - (c * grads[j]).scale(s)
        return FormN(tuple(acc))


def interior_euler(psi: FormN, w: Weights) -> FormN1:
    """i_E psi for E = sum alpha_k x_k d/dx_k."""
    n = psi.nvars
    comps = {}
    a = psi.comps
    for i in range(n):
        for j in range(i + 1, n):
            s = 1 if (i + j) % 2 == 0 else -1
            term = MPoly(n)
            if a[j]:
                term = term + a[j].mul_term(_unit(n, i), mpq(w.alphas[i]))
            if a[i]:
                term = term - a[i].mul_term(_unit(n, j), mpq(w.alphas[j]))
            if term:
                comps[(i, j)] = term.scale(s)
    return FormN1(n, comps)


__all__ = [
    "Weights", "MPoly", "FormTop", "FormN", "FormN1", "ArityError",
    "weighted_degree", "homogeneous_parts", "homogenize", "wedge_with_df",
    "exterior_derivative", "euler_contraction", "eta_form", "interior_euler",
    "default_names",
]
