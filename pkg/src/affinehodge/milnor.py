"""Strong tameness, the Milnor basis and the minimal polynomial S(t).

For a tame f with top quasi-homogeneous part g the staircase x^I of
Jacob(g) is also a basis of the Milnor algebra of f (the two initial ideals
agree under a degree-compatible order).  Multiplication by f on that
algebra has minimal polynomial S, and S(f) = sum p_i df/dx_i gives the form
eta_f with S(f) dx = df ^ eta_f.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import comb, prod

from gmpy2 import mpq

from .errors import InternalInconsistency, NonzeroRemainder, NotSeparable, NotTame
from .groebner import (
    GroebnerBasis, MonomialOrder, groebner_basis, normal_form, quotient_basis,
    _missing_pure_powers,
)
from .linalg import det_bareiss, minimal_polynomial
from .numeric import UniPoly, qstr, unipoly_squarefree
from .polyforms import (
    FormN, MPoly, Weights, homogeneous_parts, wedge_with_df, weighted_degree,
)


@dataclass(frozen=True)
class TameInput:
    f: MPoly
    weights: Weights

    def __post_init__(self):
        if not self.f:
            raise ValueError("f must be nonzero")
        if self.f.nvars != self.weights.nvars:
            raise ValueError("f and weights disagree on the number of variables")
        if weighted_degree(self.f, self.weights) != self.weights.degree_d:
            raise ValueError(
                f"weighted degree of f is {weighted_degree(self.f, self.weights)}, "
                f"expected {self.weights.degree_d}"
            )


@dataclass(frozen=True)
class MilnorData:
    f: MPoly
    weights: Weights
    parts: tuple                    # homogeneous parts f_0..f_d
    order: MonomialOrder
    gb_g: GroebnerBasis
    I: tuple                        # ordered exponent vectors
    A: tuple                        # A_beta aligned with I
    gb_f: GroebnerBasis | None = None
    mult_matrix: tuple | None = None
    S: UniPoly | None = None
    eta_f: FormN | None = None
    index: dict = field(default_factory=dict, compare=False)
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.index:
            object.__setattr__(self, "index", {b: i for i, b in enumerate(self.I)})

    @property
    def mu(self) -> int:
        return len(self.I)

    @property
    def g(self) -> MPoly:
        return self.parts[-1]

    @property
    def nvars(self) -> int:
        return self.f.nvars

    @property
    def n(self) -> int:
        """Fibre dimension: f lives in n+1 variables."""
        return self.f.nvars - 1

    @property
    def d(self) -> int:
        return self.weights.degree_d

    def is_quasi_homogeneous(self) -> bool:
        return not any(self.parts[:-1])


def jacobian(p: MPoly) -> list:
    return [p.diff(i) for i in range(p.nvars)]


def check_strong_tameness(inp: TameInput) -> MilnorData:
    """Verify Sing(g) = {0} through zero-dimensionality of Jacob(g).

    Returns MilnorData carrying I, A and the Groebner basis of Jacob(g); the
    remaining fields are filled by :func:`milnor_data`.
    """
    f, w = inp.f, inp.weights
    parts = tuple(homogeneous_parts(f, w))
    g = parts[-1]
    order = MonomialOrder(w.alphas)
    gens = jacobian(g)
    if not any(gens):
        raise NotTame("top homogeneous part is constant", range(f.nvars))
    gb = groebner_basis(gens, order)
    missing = _missing_pure_powers(gb)
    if missing:
        names = ", ".join(f"x{i + 1}" for i in missing)
        raise NotTame(f"Jacob(g) is not zero-dimensional: no pure power of {names}", missing)
    I = tuple(quotient_basis(gb))
    A = tuple(w.A(b) for b in I)
    n = f.nvars - 1
    for b, a in zip(I, A):
        if not 0 < a < n + 2:
            raise InternalInconsistency(f"A_beta={a} out of range for beta={b}")
    return MilnorData(f=f, weights=w, parts=parts, order=order, gb_g=gb, I=I, A=A)


def coordinates(p: MPoly, data: MilnorData, what: str = "normal form"):
    """Coordinates of a reduced polynomial in the x^I basis."""
    v = [mpq(0)] * data.mu
    for e, c in p.terms.items():
        i = data.index.get(e)
        if i is None:
            raise InternalInconsistency(f"{what} left the span of x^I at monomial {e}")
        v[i] = c
    return v


def multiplication_matrix(data: MilnorData, f: MPoly | None = None, gb_f=None):
    """mu x mu matrix of multiplication by f on V_f; column beta = NF(f x^beta)."""
    f = data.f if f is None else f
    gb_f = gb_f or data.gb_f or groebner_basis(jacobian(f), data.order)
    cols = []
    for b in data.I:
        r = normal_form(f.mul_term(b, 1), gb_f).remainder
        cols.append(coordinates(r, data))
    mu = data.mu
    return tuple(tuple(cols[j][i] for j in range(mu)) for i in range(mu))


def minimal_polynomial_S(m) -> UniPoly:
    """Minimal polynomial, content-free integral with positive leading coefficient."""
    return minimal_polynomial(m).primitive()


def poly_of_mpoly(S: UniPoly, f: MPoly) -> MPoly:
    """S(f) by Horner's rule."""
    acc = MPoly(f.nvars)
    for c in reversed(S.coeffs):
        acc = acc * f + c
    return acc


def eta_f_lift(f: MPoly, S: UniPoly, gb_f: GroebnerBasis | None = None,
               order: MonomialOrder | None = None) -> FormN:
    """p_i with S(f) = sum p_i df/dx_i, as the signed-component n-form eta_f."""
    if gb_f is None:
        gb_f = groebner_basis(jacobian(f), order or MonomialOrder((1,) * f.nvars))
    Sf = poly_of_mpoly(S, f)
    res = normal_form(Sf, gb_f)
    if res.remainder:
        raise NonzeroRemainder(f"S(f) has nonzero remainder {res.remainder}")
    eta = FormN(tuple(res.quotients))
    if wedge_with_df(f, eta).coeff != Sf:
        raise InternalInconsistency("S(f) dx != df ^ eta_f")
    return eta


def milnor_data(f: MPoly, weights: Weights) -> MilnorData:
    """Full Milnor data: tameness, basis, multiplication matrix, S and eta_f."""
    data = check_strong_tameness(TameInput(f, weights))
    gb_f = groebner_basis(jacobian(f), data.order)
    if tuple(quotient_basis(gb_f)) != data.I:
        raise InternalInconsistency("staircases of Jacob(f) and Jacob(g) differ")
    m = multiplication_matrix(data, f, gb_f)
    S = minimal_polynomial_S(m)
    eta = eta_f_lift(f, S, gb_f)
    return replace(data, gb_f=gb_f, mult_matrix=m, S=S, eta_f=eta)


# --------------------------------------------------------------------------
# separable polynomials f = sum f_i(x_i)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalValues:
    per_variable: tuple     # R_i(c) whose roots are the critical values of f_i
    combined: UniPoly       # degree mu, roots = all sums c_1 + ... + c_{n+1}
    squarefree: UniPoly     # its squarefree part, integral primitive
    mu: int


def split_separable(f: MPoly) -> list:
    """[f_1(x_1), ..., f_{n+1}(x_{n+1})] as UniPoly; the constant goes to f_1."""
    n = f.nvars
    parts = [dict() for _ in range(n)]
    const = mpq(0)
    for e, c in f.terms.items():
        nz = [i for i, k in enumerate(e) if k]
        if not nz:
            const += c
        elif len(nz) == 1:
            parts[nz[0]][e[nz[0]]] = c
        else:
            raise NotSeparable(f"mixed monomial {e} in f")
    out = []
    for i, p in enumerate(parts):
        deg = max(p, default=0)
        coeffs = [p.get(k, 0) for k in range(deg + 1)]
        if i == 0:
            coeffs[0] = coeffs[0] + const if coeffs else const
        out.append(UniPoly(coeffs))
    return out


def resultant(a, b) -> UniPoly:
    """Res_y(a, b) where a, b are lists (index = power of y) of UniPoly."""
    a = [x if isinstance(x, UniPoly) else UniPoly.const(x) for x in a]
    b = [x if isinstance(x, UniPoly) else UniPoly.const(x) for x in b]
    while a and not a[-1]:
        a.pop()
    while b and not b[-1]:
        b.pop()
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return UniPoly()
    size = m + n
    if size == 0:
        return UniPoly.const(1)
    rows = []
    for i in range(n):
        row = [UniPoly()] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [UniPoly()] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return det_bareiss(rows)


def separable_critical_values(f_parts) -> CriticalValues:
    """Critical values of f = sum f_i(x_i) as roots of exact polynomials.

    C_i is the root set of R_i(c) = Res_x(f_i(x) - c, f_i'(x)); the sum set
    comes from iterated resultants Res_c(P(c), R_i(t - c)).
    """
    if isinstance(f_parts, MPoly):
        f_parts = split_separable(f_parts)
    f_parts = list(f_parts)
    for p in f_parts:
        if p.degree < 2:
            raise NotSeparable("each univariate part needs degree >= 2")
    per = []
    for p in f_parts:
        # f_i(x) - c as a polynomial in x with coefficients in Q[c]
        a = [UniPoly.const(c) for c in p.coeffs]
        a[0] = a[0] - UniPoly.t()
        b = [UniPoly.const(c) for c in p.derivative().coeffs]
        per.append(resultant(a, b).primitive())
    combined = per[0]
    for R in per[1:]:
        # R(t - c) as a polynomial in c with coefficients in Q[t]
        shifted = [UniPoly() for _ in range(R.degree + 1)]
        for k, r in enumerate(R.coeffs):
            for j in range(k + 1):
                term = UniPoly.monomial(k - j, r * comb(k, j) * (-1) ** j)
                shifted[j] = shifted[j] + term
        P = [UniPoly.const(c) for c in combined.coeffs]
        combined = resultant(P, shifted).primitive()
    mu = prod(p.degree - 1 for p in f_parts)
    return CriticalValues(tuple(per), combined, unipoly_squarefree(combined).primitive(), mu)


def milnor_summary(data: MilnorData, names=None) -> dict:
    """Structured summary: I, A_beta, mu, S and the eta_f components."""
    out = {
        "mu": data.mu,
        "weights": list(data.weights.alphas),
        "degree": data.d,
        "basis": ["".join(str(e) for e in b) for b in data.I],
        "A": [qstr(a) for a in data.A],
    }
    if data.S is not None:
        out["S"] = str(data.S)
    if data.eta_f is not None:
        out["eta_f"] = [c.to_str(names, data.order) for c in data.eta_f.comps]
    return out


__all__ = [
    "TameInput", "MilnorData", "CriticalValues", "check_strong_tameness",
    "multiplication_matrix", "minimal_polynomial_S", "eta_f_lift", "milnor_data",
    "separable_critical_values", "split_separable", "resultant", "poly_of_mpoly",
    "jacobian", "coordinates", "milnor_summary",
]
