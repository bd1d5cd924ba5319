"""Reduction in the Brieskorn modules and the Gauss-Manin connection.

Top forms P dx are written in the Q[t]-basis omega_beta = x^beta dx of H''
(t acts as multiplication by f), with an exact certificate Xi satisfying

    P dx = sum_beta p_beta(f) omega_beta + df ^ dXi.

The quasi-homogeneous kernel reduces modulo Jacob(g) and rewrites the
Jacobian part through the Euler field E = sum alpha_i x_i d/dx_i:

    dg ^ psi = (1/s) dg ^ d(i_E psi) + (d/s) g div(psi) dx,

where s is the weighted degree of psi.  The outer loop replaces g by f and
recurses on the (strictly lower degree) defect.

n-forms in H' are handled through the embedding [psi] -> [df ^ psi] and the
change-of-basis matrix M(t) whose column beta is the omega-coordinates of
df ^ eta_beta.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import CertificateFailure, DenominatorSurvived, InternalInconsistency
from .groebner import normal_form
from .linalg import RatVec, solve_poly_system
from .milnor import MilnorData, poly_of_mpoly
from .numeric import RatFunc, UniPoly
from .polyforms import (
    FormN, FormN1, FormTop, MPoly, exterior_derivative, interior_euler, wedge_with_df,
)

OMEGA_BASIS = "omega-basis"
ETA_BASIS = "eta-basis"


@dataclass(frozen=True)
class ReductionCertificate:
    """Xi with omega - sum p_beta(f) omega_beta = df ^ dXi."""

    xi: FormN1

    def residual(self, omega: FormTop, coords, data: MilnorData) -> MPoly:
        red = _reducer(data)
        acc = omega.coeff - red.combination(coords)
        return acc - wedge_with_df(data.f, self.xi.d()).coeff

    def verify(self, omega: FormTop, coords, data: MilnorData) -> bool:
        return not self.residual(omega, coords, data)


@dataclass(frozen=True)
class BrieskornElement:
    """Coordinate vector over Q(t) tagged with the basis it refers to."""

    basis: str
    vec: RatVec

    def to_dict(self) -> dict:
        return {"basis": self.basis, "coords": [str(e) for e in self.vec.entries()]}


# --------------------------------------------------------------------------
# reduction engine
# --------------------------------------------------------------------------


class _Reducer:
    """Per-MilnorData caches for monomial reductions."""

    def __init__(self, data: MilnorData):
        self.data = data
        self.n = data.nvars
        self.w = data.weights
        self.d = data.d
        self.g = data.g
        self.f = data.f
        self.flo = data.f - data.g
        self.dflo = [self.flo.diff(i) for i in range(self.n)]
        self._g_memo = {}       # exponent -> (coeff dict, Xi)
        self._xd_memo = {}      # exponent -> terms of (dg - df) ^ dXi
        self._fpow = [MPoly.const(self.n, 1)]
        self._gpow = [MPoly.const(self.n, 1)]
        self._powdiff = []

    # powers -----------------------------------------------------------

    def fpow(self, k: int) -> MPoly:
        while len(self._fpow) <= k:
            self._fpow.append(self._fpow[-1] * self.f)
        return self._fpow[k]

    def gpow(self, k: int) -> MPoly:
        while len(self._gpow) <= k:
            self._gpow.append(self._gpow[-1] * self.g)
        return self._gpow[k]

    def powdiff(self, k: int) -> MPoly:
        """g^k - f^k, cached."""
        while len(self._powdiff) <= k:
            j = len(self._powdiff)
            self._powdiff.append(self.gpow(j) - self.fpow(j))
        return self._powdiff[k]

    def combination(self, coords) -> MPoly:
        """sum_beta p_beta(f) x^beta for a polynomial coordinate vector."""
        if isinstance(coords, RatVec):
            if not coords.is_polynomial():
                raise ValueError("coordinates must be polynomial in t")
            inv = 1 / coords.den.lc
            coords = [p.scale(inv) for p in coords.nums]
        acc = MPoly(self.n)
        for beta, p in zip(self.data.I, coords):
            for k, c in enumerate(p.coeffs):
                if c:
                    acc = acc + self.fpow(k).mul_term(beta, c)
        return acc

    # quasi-homogeneous kernel ------------------------------------------

    def g_mono(self, e):
        hit = self._g_memo.get(e)
        if hit is not None:
            return hit
        data = self.data
        res = normal_form(MPoly.monomial(e), data.gb_g)
        coeffs = {}
        for re, c in res.remainder.terms.items():
            idx = data.index.get(re)
            if idx is None:
                raise InternalInconsistency(f"remainder monomial {re} outside x^I")
            coeffs[idx] = UniPoly.const(c)
        xi = FormN1(self.n)
        if any(res.quotients):
            s = self.w.degree(e) - self.d + self.w.sum_alpha
            if s <= 0:
                raise InternalInconsistency(f"Euler weight s={s} is not positive")
            psi = FormN(tuple(res.quotients))
            xi = interior_euler(psi, self.w).mul(mpq(1, s))
            Q = exterior_derivative(psi).coeff
            if Q:
                sub, sub_xi = self.g_reduce(Q)
                fac = mpq(self.d, s)
                for idx, p in sub.items():
                    p = p.shift(1).scale(fac)
                    coeffs[idx] = coeffs[idx] + p if idx in coeffs else p
                if sub_xi:
                    xi = xi + sub_xi.mul(self.g.scale(fac))
        out = ({k: v for k, v in coeffs.items() if v}, xi)
        self._g_memo[e] = out
        return out

    def g_reduce(self, P: MPoly):
        acc, xi = {}, FormN1(self.n)
        for e, c in P.terms.items():
            sub, sub_xi = self.g_mono(e)
            for idx, p in sub.items():
                _axpy(acc, idx, p.coeffs, c)
            if sub_xi:
                xi = xi + sub_xi.mul(c)
        return _finish(acc), xi

    # outer loop -----------------------------------------------------------

    def _coeff_defect(self, coeffs) -> MPoly:
        """sum (p(g) - p(f)) x^beta."""
        D = MPoly(self.n)
        for idx, p in coeffs.items():
            beta = self.data.I[idx]
            for k, c in enumerate(p.coeffs):
                if k and c:
                    D = D + self.powdiff(k).mul_term(beta, c)
        return D

    def _xi_defect(self, xi) -> MPoly:
        """(dg - df) ^ dXi as a coefficient of dx."""
        D = MPoly(self.n)
        if xi:
            for a, h in zip(xi.d().comps, self.dflo):
                if a and h:
                    D = D - a * h
        return D

    def defect(self, coeffs, xi) -> MPoly:
        """sum (p(g) - p(f)) x^beta + (dg - df) ^ dXi, as a coefficient of dx."""
        if not self.flo:
            return MPoly(self.n)
        return self._coeff_defect(coeffs) + self._xi_defect(xi)

    def _xi_defect_mono(self, e) -> dict:
        hit = self._xd_memo.get(e)
        if hit is None:
            hit = self._xd_memo[e] = self._xi_defect(self.g_mono(e)[1]).terms
        return hit

    def f_reduce(self, P: MPoly) -> dict:
        """Coefficients p_beta(t) of [P dx], level by level.

        Reduction is linear, so the defect of the whole layer is taken at
        once; cancellations between monomials happen before recursing and
        the weighted degree drops at every level.
        """
        acc = {}
        while P:
            layer, xd = {}, {}
            for e, c in P.terms.items():
                for idx, p in self.g_mono(e)[0].items():
                    _axpy(layer, idx, p.coeffs, c)
                if self.flo:
                    for m, v in self._xi_defect_mono(e).items():
                        xd[m] = xd[m] + c * v if m in xd else c * v
            coeffs = _finish(layer)
            for idx, p in coeffs.items():
                _axpy(acc, idx, p.coeffs, 1)
            if not self.flo:
                break
            P = self._coeff_defect(coeffs) + MPoly(self.n, xd)
        return _finish(acc)

    def cert(self, P: MPoly) -> FormN1:
        """Xi with P dx - sum p_beta(f) omega_beta = df ^ dXi."""
        total = FormN1(self.n)
        while P:
            coeffs, xi = self.g_reduce(P)
            total = total + xi
            P = self.defect(coeffs, xi)
        return total

    def coords(self, P: MPoly) -> RatVec:
        acc = self.f_reduce(P)
        nums = [acc.get(i, UniPoly()) for i in range(self.data.mu)]
        return RatVec(nums, reduce=False)


def _axpy(acc: dict, idx: int, coeffs, c):
    """acc[idx] += c * coeffs on raw coefficient lists (avoids UniPoly churn)."""
    row = acc.get(idx)
    if row is None:
        acc[idx] = [c * x for x in coeffs]
        return
    if len(row) < len(coeffs):
        row.extend([0] * (len(coeffs) - len(row)))
    for k, x in enumerate(coeffs):
        if x:
            row[k] += c * x


def _finish(acc: dict) -> dict:
    out = {}
    for idx, row in acc.items():
        p = UniPoly(row)
        if p:
            out[idx] = p
    return out


def _reducer(data: MilnorData) -> _Reducer:
    red = data.cache.get("reducer")
    if red is None:
        red = data.cache["reducer"] = _Reducer(data)
    return red


def _deep_recursion():
    if sys.getrecursionlimit() < 20000:
        sys.setrecursionlimit(20000)


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------


def reduce_top_form(omega, data: MilnorData, certificate: bool = True, verify: bool = True):
    """OmegaCoords of omega (a FormTop or polynomial coefficient), plus certificate.

    Returns ``(coords, cert)`` where coords is a denominator-free RatVec.  With
    ``certificate=False`` the second entry is None (and nothing is verified).
    """
    _deep_recursion()
    if isinstance(omega, MPoly):
        omega = FormTop(omega)
    red = _reducer(data)
    v = red.coords(omega.coeff)
    if not certificate:
        return v, None
    cert = ReductionCertificate(red.cert(omega.coeff))
    if verify:
        r = cert.residual(omega, v, data)
        if r:
            raise CertificateFailure(f"reduction certificate residual {r}")
    return v, cert


def reduce_poly(P: MPoly, data: MilnorData) -> RatVec:
    """Coordinates of [P dx] without building the certificate."""
    _deep_recursion()
    return _reducer(data).coords(P)


def df_wedge_eta_beta(data: MilnorData, beta) -> MPoly:
    """x^beta sum_j (j/d) f_j, the coefficient of df ^ eta_beta."""
    key = "euler_f"
    ef = data.cache.get(key)
    if ef is None:
        ef = MPoly(data.nvars)
        for j, part in enumerate(data.parts):
            if part and j:
                ef = ef + part.scale(mpq(j, data.d))
        data.cache[key] = ef
    return ef.mul_term(tuple(beta), 1)


def basis_change_matrix(data: MilnorData):
    """M(t): column beta = omega-coordinates of df ^ eta_beta (rows of UniPoly)."""
    mu = data.mu
    cols = [reduce_poly(df_wedge_eta_beta(data, b), data) for b in data.I]
    return [[cols[j].nums[i] for j in range(mu)] for i in range(mu)]


def gauss_manin_numerators(data: MilnorData):
    """Columns S(t) * nabla(omega_beta) = [(Q_P - P S'(f)) dx] with P = x^beta."""
    eta_f = data.eta_f
    dS = poly_of_mpoly(data.S.derivative(), data.f)
    cols = []
    for b in data.I:
        P = MPoly.monomial(b)
        QP = exterior_derivative(eta_f.mul(P)).coeff
        cols.append(reduce_poly(QP - dS.mul_term(b, 1), data))
    return cols


def _matvec(cols, v: RatVec) -> RatVec:
    """sum_j v_j cols[j] for RatVec columns and a RatVec v."""
    out = RatVec.zero(len(cols[0]) if cols else len(v))
    for c, col in zip(v.nums, cols):
        if c:
            out = out + RatVec([x * c for x in col.nums], col.den)
    if v.den.degree > 0 or v.den.lc != 1:
        out = RatVec(out.nums, out.den * v.den)
    return out


@dataclass
class ConnectionData:
    """Change of basis H' -> H'' and the connection matrix on the eta side."""

    M: list                 # rows of UniPoly
    M_cols: list            # columns as RatVec (den 1)
    Minv_cols: list         # columns of M^{-1} as RatVec
    Gs_cols: list           # columns of S * nabla on omega_beta
    Nabla_eta_cols: list    # column beta = eta-coordinates of nabla eta_beta
    S: UniPoly

    @property
    def mu(self) -> int:
        return len(self.M)

    def Nabla_eta(self):
        """Matrix of RatFunc, rows indexed like the basis."""
        mu = self.mu
        ents = [c.entries() for c in self.Nabla_eta_cols]
        return [[ents[j][i] for j in range(mu)] for i in range(mu)]

    def to_dict(self) -> dict:
        return {
            "S": str(self.S),
            "M": [[str(e) for e in row] for row in self.M],
            "Nabla_eta": [[str(e) for e in row] for row in self.Nabla_eta()],
        }


def build_connection(data: MilnorData) -> ConnectionData:
    """M(t), its inverse, the omega-side connection and nabla on the eta basis.

    Uses df ^ nabla(eta_beta) = d(eta_beta) = A_beta omega_beta, so the
    eta-side matrix is M^{-1} diag(A).
    """
    mu = data.mu
    M = basis_change_matrix(data)
    M_cols = [RatVec([M[i][j] for i in range(mu)], reduce=False) for j in range(mu)]
    units = [[UniPoly.const(1) if i == j else UniPoly() for i in range(mu)] for j in range(mu)]
    Minv_cols = solve_poly_system(M, units)
    Gs_cols = gauss_manin_numerators(data)
    N_cols = [c.scale(a) for c, a in zip(Minv_cols, data.A)]
    return ConnectionData(M, M_cols, Minv_cols, Gs_cols, N_cols, data.S)


def connection(data: MilnorData) -> ConnectionData:
    conn = data.cache.get("connection")
    if conn is None:
        conn = data.cache["connection"] = build_connection(data)
    return conn


def nabla_top(omega: RatVec, data: MilnorData, conn: ConnectionData | None = None) -> RatVec:
    """nabla on omega-coordinates: v' + (Gs v)/S (Leibniz in t)."""
    Gs = conn.Gs_cols if conn is not None else _gs(data)
    S = data.S
    return omega.derivative() + _matvec(Gs, omega).scale(RatFunc(UniPoly.const(1), S))


def _gs(data: MilnorData):
    cols = data.cache.get("Gs")
    if cols is None:
        conn = data.cache.get("connection")
        cols = conn.Gs_cols if conn is not None else gauss_manin_numerators(data)
        data.cache["Gs"] = cols
    return cols


def nabla_k_op(omega: RatVec, k: int, data: MilnorData, conn: ConnectionData | None = None) -> RatVec:
    """nabla_k(omega) = S nabla(omega) - k S' omega (polynomial in, polynomial out)."""
    Gs = conn.Gs_cols if conn is not None else _gs(data)
    S = data.S
    dS = S.derivative()
    out = omega.derivative().scale(S) + _matvec(Gs, omega)
    if k:
        out = out - omega.scale(dS * k)
    return out


def pull_back(omega: RatVec, conn: ConnectionData) -> RatVec:
    """eta-coordinates of the H' element whose df-image is omega."""
    return _matvec(conn.Minv_cols, omega)


def push_forward(eta: RatVec, conn: ConnectionData) -> RatVec:
    return _matvec(conn.M_cols, eta)


def reduce_n_form(psi: FormN, data: MilnorData, conn: ConnectionData | None = None,
                  localized: bool = False) -> RatVec:
    """eta-coordinates of psi, via M(t)^{-1} applied to the reduction of df ^ psi."""
    conn = conn or connection(data)
    top = wedge_with_df(data.f, psi)
    v = pull_back(reduce_poly(top.coeff, data), conn)
    if not localized and not v.is_polynomial():
        raise DenominatorSurvived(f"denominator {v.den} survived for a polynomial form")
    return v


def nabla_eta(e: RatVec, conn: ConnectionData) -> RatVec:
    """nabla on eta-coordinates: e' + N e."""
    return e.derivative() + _matvec(conn.Nabla_eta_cols, e)


def nabla_power_eta(beta, k: int, data: MilnorData, conn: ConnectionData | None = None) -> RatVec:
    """eta-coordinates of nabla^k eta_beta (matrix-power path)."""
    conn = conn or connection(data)
    idx = beta if isinstance(beta, int) else data.index[tuple(beta)]
    e = RatVec.unit(data.mu, idx)
    for _ in range(k):
        e = nabla_eta(e, conn)
    return e


def nabla_power_eta_operator(beta, k: int, data: MilnorData,
                             conn: ConnectionData | None = None) -> RatVec:
    """Same quantity through (nabla_{k-1} o ... o nabla_0)(M e_beta) / S^k."""
    conn = conn or connection(data)
    idx = beta if isinstance(beta, int) else data.index[tuple(beta)]
    v = conn.M_cols[idx]
    for j in range(k):
        v = nabla_k_op(v, j, data, conn)
    v = RatVec(v.nums, v.den * data.S ** k)
    return pull_back(v, conn)


def omega_element(v: RatVec) -> BrieskornElement:
    return BrieskornElement(OMEGA_BASIS, v)


def eta_element(v: RatVec) -> BrieskornElement:
    return BrieskornElement(ETA_BASIS, v)


__all__ = [
    "ReductionCertificate", "BrieskornElement", "ConnectionData", "OMEGA_BASIS", "ETA_BASIS",
    "reduce_top_form", "reduce_poly", "basis_change_matrix", "gauss_manin_numerators",
    "build_connection", "connection", "nabla_top", "nabla_k_op", "reduce_n_form",
    "nabla_eta", "nabla_power_eta", "nabla_power_eta_operator", "pull_back",
    "push_forward", "df_wedge_eta_beta", "omega_element", "eta_element",
]
