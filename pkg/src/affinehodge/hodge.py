"""Hodge-theoretic reports built on the Brieskorn-module machinery.

* d_beta: a maximal monomial family x0^j x^beta (0 <= j < d_beta) that is
  linearly independent in V~ = Q[x, x0] / Jacob(F - b x0^d), found by
  round-robin extension over I.
* dimension tables and the basis of nabla-iterates of eta_beta sorted by
  weight (n or n+1) and Hodge index k.
* the Hodge-cycle criterion for even n, the Griffiths-Steenbrink labels of
  a quasi-homogeneous g, and the Fermat lattice over Q(zeta_N).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, lcm

from gmpy2 import mpq

from .brieskorn import ConnectionData, connection, nabla_power_eta
from .errors import (
    CriticalValue, DimensionMismatch, ExceptionalValue, OddDimension,
)
from .groebner import (
    GroebnerBasis, MonomialOrder, _missing_pure_powers, groebner_basis, normal_form,
    quotient_basis,
)
from .linalg import (
    PolyElimination, RationalEchelon, RatVec, integer_primitive, primitive_family,
    rational_nullspace,
)
from .milnor import MilnorData, check_strong_tameness, TameInput
from .numeric import CycloElem, RatFunc, UniPoly, euler_phi, qstr, unipoly_squarefree
from .polyforms import MPoly, Weights, homogenize


def _is_int(q) -> bool:
    return mpq(q).denominator == 1


def _ceil(q) -> int:
    return -floor(-Fraction(int(mpq(q).numerator), int(mpq(q).denominator)))


# --------------------------------------------------------------------------
# the ring V~ and the d_beta search
# --------------------------------------------------------------------------


def tilde_ideal(data: MilnorData, b):
    """Generators dF_b/dx_i (i = 1..n+1, then x0) with F_b = F - b x0^d.

    ``b`` may be rational or a RatFunc (use RatFunc.t() for the symbolic
    family); x0 is the last variable.
    """
    F = homogenize(data.f, data.weights)
    nv = F.nvars
    x0d = MPoly.monomial((0,) * (nv - 1) + (data.d,))
    if isinstance(b, RatFunc):
        F = F.map_coeffs(RatFunc.const)
        Fb = F - x0d.map_coeffs(RatFunc.const).scale(b)
    else:
        Fb = F - x0d.scale(mpq(b))
    return Fb, [Fb.diff(i) for i in range(nv)]


def tilde_order(data: MilnorData) -> MonomialOrder:
    return MonomialOrder(tuple(data.weights.alphas) + (1,))


def tilde_groebner(data: MilnorData, b) -> GroebnerBasis:
    _, gens = tilde_ideal(data, b)
    return groebner_basis(gens, tilde_order(data))


@dataclass
class DBetaMap:
    b: object
    d_beta: dict                    # beta -> d_beta
    witness: list                   # ordered exponent vectors (beta..., beta0)
    exceptional_poly: UniPoly | None = None
    tilde_dim: int = 0

    def total(self) -> int:
        return sum(self.d_beta.values())

    def to_dict(self) -> dict:
        out = {
            "b": str(self.b),
            "d_beta": {"".join(map(str, k)): v for k, v in self.d_beta.items()},
            "sum": self.total(),
        }
        if self.exceptional_poly is not None:
            out["exceptional_poly"] = str(self.exceptional_poly)
        return out


def _nf_vector(gb: GroebnerBasis, exp) -> dict:
    return dict(normal_form(MPoly.monomial(exp), gb).remainder.terms)


def _witness_exp(beta, j):
    return tuple(beta) + (j,)


def family_is_independent(data: MilnorData, d_map: dict, b=1, gb=None) -> bool:
    """Is {x0^j x^beta : j < d_beta} linearly independent in V~ at b?"""
    gb = gb or tilde_groebner(data, b)
    ech = RationalEchelon()
    for beta in data.I:
        for j in range(d_map.get(beta, 0)):
            if ech.add(_nf_vector(gb, _witness_exp(beta, j))) is not None:
                return False
    return True


def compute_d_beta(data: MilnorData, b=1, symbolic: bool = False) -> DBetaMap:
    """Greedy maximal family at the regular value b.

    Rounds run over I in canonical order; each round tries to extend every
    d_beta by one.  Raises CriticalValue when b is a root of S or V~ is not
    finite, ExceptionalValue when the final sum is not (d-1) mu.
    """
    b = mpq(b)
    if data.S(b) == 0:
        raise CriticalValue(f"b = {qstr(b)} is a critical value (S(b) = 0)")
    gb = tilde_groebner(data, b)
    if _missing_pure_powers(gb):
        raise CriticalValue(f"V~ is not finite-dimensional at b = {qstr(b)}")
    dim = len(quotient_basis(gb))
    ech = RationalEchelon()
    d_map = {beta: 0 for beta in data.I}
    witness = []
    grew = True
    while grew:
        grew = False
        for beta in data.I:
            exp = _witness_exp(beta, d_map[beta])
            if ech.add(_nf_vector(gb, exp)) is None:
                d_map[beta] += 1
                witness.append(exp)
                grew = True
    target = (data.d - 1) * data.mu
    total = sum(d_map.values())
    if total != target:
        raise ExceptionalValue(
            f"sum of d_beta is {total}, expected {target} (dim V~ = {dim}) at b = {qstr(b)}"
        )
    n = data.n
    for beta, a in zip(data.I, data.A):
        if not d_map[beta] < data.d * (n + 2 - a):
            raise ExceptionalValue(f"d_beta bound violated at beta = {beta}")
    out = DBetaMap(b, d_map, witness, tilde_dim=dim)
    if symbolic:
        out.exceptional_poly = exceptional_polynomial(data, d_map)
    return out


def compute_d_beta_with_retry(data: MilnorData, b=1, attempts: int = 3, symbolic=False) -> DBetaMap:
    """compute_d_beta at b, b+1, b+2, ... until a regular non-exceptional value."""
    b = mpq(b)
    last = None
    for k in range(attempts):
        try:
            return compute_d_beta(data, b + k, symbolic=symbolic)
        except (CriticalValue, ExceptionalValue) as exc:
            last = exc
    raise last


def family_determinant(data: MilnorData, d_map: dict, gb: GroebnerBasis | None = None) -> RatFunc:
    """det over Q(t) of the normal forms of the family in the staircase of Jacob(F_t)."""
    gb = gb or tilde_groebner(data, RatFunc.t())
    stair = quotient_basis(gb)
    pos = {e: i for i, e in enumerate(stair)}
    fam = [_witness_exp(beta, j) for beta in data.I for j in range(d_map.get(beta, 0))]
    if len(fam) != len(stair):
        return RatFunc.const(0)
    rows, den_prod = [], UniPoly.const(1)
    for exp in fam:
        r = normal_form(MPoly.monomial(exp), gb).remainder
        ents = [RatFunc.const(0)] * len(stair)
        for e, c in r.terms.items():
            ents[pos[e]] = c if isinstance(c, RatFunc) else RatFunc.const(c)
        vec = RatVec.from_ratfuncs(ents)
        rows.append({i: x for i, x in enumerate(vec.nums) if x})
        den_prod = den_prod * vec.den
    det = PolyElimination(rows, len(stair)).run().determinant()
    return det / RatFunc(den_prod)


def exceptional_polynomial(data: MilnorData, d_map: dict) -> UniPoly:
    """Squarefree integral polynomial whose roots are the values where the family degenerates."""
    det = family_determinant(data, d_map)
    if not det:
        return UniPoly.const(0)
    p = det.num * det.den
    return unipoly_squarefree(p).primitive() if p.degree > 0 else UniPoly.const(1)


# --------------------------------------------------------------------------
# dimensions and the basis of nabla iterates
# --------------------------------------------------------------------------


@dataclass
class HodgeDims:
    n: int
    top: dict       # weight n+1: k -> count
    low: dict       # weight n:   k -> count

    @property
    def total(self) -> int:
        return sum(self.top.values()) + sum(self.low.values())

    def table(self) -> dict:
        return {self.n + 1: dict(sorted(self.top.items())), self.n: dict(sorted(self.low.items()))}

    def to_dict(self) -> dict:
        return {str(m): {str(k): v for k, v in row.items()} for m, row in self.table().items()}


def hodge_dimensions(data: MilnorData) -> HodgeDims:
    top, low = Counter(), Counter()
    for a in data.A:
        if _is_int(a):
            top[int(a)] += 1
        else:
            low[_ceil(a)] += 1
    return HodgeDims(data.n, dict(top), dict(low))


@dataclass
class HodgeEntry:
    weight: int
    k: int
    beta: tuple
    coords: RatVec

    def label(self) -> str:
        return f"({''.join(map(str, self.beta))}, {self.k})"


@dataclass
class HodgeReport:
    entries: list
    dims: HodgeDims
    counts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        groups = {}
        for e in self.entries:
            groups.setdefault(str(e.weight), {}).setdefault(str(e.k), []).append({
                "beta": "".join(map(str, e.beta)),
                "coords": [str(x) for x in e.coords.entries()],
            })
        return {"dims": self.dims.to_dict(), "entries": groups}


def weight_n_window(a, d_b: int, d: int) -> list:
    """Integers k with A + 1/d <= k <= A + d_beta/d."""
    lo, hi = mpq(a) + mpq(1, d), mpq(a) + mpq(d_b, d)
    return list(range(_ceil(lo), floor(Fraction(int(hi.numerator), int(hi.denominator))) + 1))


def hodge_labels(data: MilnorData, dmap: DBetaMap) -> list:
    """(weight, k, beta) triples, weight n+1 first, each sorted by k then I order."""
    n, out_top, out_low = data.n, [], []
    for beta, a in zip(data.I, data.A):
        if _is_int(a):
            out_top.append((n + 1, int(a), beta))
        for k in weight_n_window(a, dmap.d_beta[beta], data.d):
            out_low.append((n, k, beta))
    key = {b: i for i, b in enumerate(data.I)}
    out_top.sort(key=lambda x: (x[1], key[x[2]]))
    out_low.sort(key=lambda x: (x[1], key[x[2]]))
    return out_top + out_low


def hodge_basis(data: MilnorData, conn: ConnectionData | None, dmap: DBetaMap,
                with_coords: bool = True) -> HodgeReport:
    conn = conn or (connection(data) if with_coords else None)
    dims = hodge_dimensions(data)
    labels = hodge_labels(data, dmap)
    counts = Counter((w, k) for w, k, _ in labels)
    expected = Counter()
    for k, v in dims.top.items():
        expected[(data.n + 1, k)] = v
    for k, v in dims.low.items():
        expected[(data.n, k)] = v
    if counts != expected:
        raise DimensionMismatch(
            f"basis counts {dict(counts)} differ from dimension table {dict(expected)}"
        )
    entries = []
    for w, k, beta in labels:
        coords = nabla_power_eta(beta, k, data, conn) if with_coords else None
        entries.append(HodgeEntry(w, k, beta, coords))
    return HodgeReport(entries, dims, dict(counts))


# --------------------------------------------------------------------------
# Hodge-cycle criterion
# --------------------------------------------------------------------------


@dataclass
class HodgeCriterion:
    I_h: list                   # (beta, k)
    functionals: list           # RatVec per pair (eta-coordinates of nabla^k eta_beta)

    def cleared(self) -> list:
        """Functionals with denominators cleared, integer content removed."""
        out = []
        for v in self.functionals:
            out.append(primitive_family(list(v.nums)))
        return out

    def to_dict(self, data: MilnorData) -> dict:
        items = []
        for (beta, k), v, clr in zip(self.I_h, self.functionals, self.cleared()):
            items.append({
                "beta": "".join(map(str, beta)),
                "k": k,
                "functional": [str(x) for x in v.entries()],
                "cleared": {"".join(map(str, data.I[i])): str(p) for i, p in enumerate(clr) if p},
            })
        return {"I_h": items}


def hodge_cycle_criterion(data: MilnorData, conn: ConnectionData | None, dmap: DBetaMap) -> HodgeCriterion:
    n = data.n
    if n % 2:
        raise OddDimension(f"fibre dimension n = {n} is odd")
    conn = conn or connection(data)
    pairs = []
    for beta, a in zip(data.I, data.A):
        if _is_int(a):
            continue
        for k in weight_n_window(a, dmap.d_beta[beta], data.d):
            if 2 * k <= n:
                pairs.append((beta, k))
    funcs = [nabla_power_eta(beta, k, data, conn) for beta, k in pairs]
    return HodgeCriterion(pairs, funcs)


# --------------------------------------------------------------------------
# Griffiths-Steenbrink labels and the Fermat lattice
# --------------------------------------------------------------------------


def _monomial_label(beta, prefix="X") -> str:
    parts = []
    for i, e in enumerate(beta):
        if e == 1:
            parts.append(f"{prefix}{i + 1}")
        elif e > 1:
            parts.append(f"{prefix}{i + 1}^{e}")
    return "".join(parts)


def gs_basis(g: MPoly, w: Weights) -> dict:
    """k -> labels X^beta eta_alpha / g^k for beta in I with A_beta = k."""
    data = check_strong_tameness(TameInput(g, w))
    if any(data.parts[:-1]):
        raise ValueError("g must be quasi-homogeneous")
    out = {}
    for beta, a in zip(data.I, data.A):
        if _is_int(a):
            k = int(a)
            mono = _monomial_label(beta)
            pole = "g" if k == 1 else f"g^{k}"
            out.setdefault(k, []).append(f"{mono}eta_alpha/{pole}" if mono else f"eta_alpha/{pole}")
    return dict(sorted(out.items()))


@dataclass
class FermatProblem:
    m: tuple
    N: int
    I: list
    I_h: list
    E: list                     # rows alpha in I, columns beta in I_h, CycloElem
    kernel: list                # integer-primitive vectors of length mu

    @property
    def mu(self) -> int:
        return len(self.I)

    def verify(self) -> bool:
        """B . E = 0 recomputed with cyclotomic multiplication."""
        for B in self.kernel:
            for j in range(len(self.I_h)):
                acc = CycloElem.from_rational(self.N, 0)
                for i, c in enumerate(B):
                    if c:
                        acc = acc + self.E[i][j] * CycloElem.from_rational(self.N, c)
                if acc:
                    return False
        return True

    def to_dict(self) -> dict:
        lab = lambda b: "".join(map(str, b))
        return {
            "m": list(self.m),
            "N": self.N,
            "mu": self.mu,
            "I_h": [lab(b) for b in self.I_h],
            "kernel_dimension": len(self.kernel),
            "kernel": [list(v) for v in self.kernel],
        }


def _fermat_I(m):
    out = [()]
    for mi in m:
        out = [b + (j,) for b in out for j in range(mi - 1)]
    return out


def fermat_hodge_lattice(m) -> FermatProblem:
    m = tuple(int(x) for x in m)
    if any(x < 2 for x in m):
        raise ValueError("each exponent must be at least 2")
    n = len(m) - 1
    if n % 2:
        raise OddDimension(f"fibre dimension n = {n} is odd")
    N = lcm(*m)
    I = sorted(_fermat_I(m), key=lambda b: (sum(mpq(bi + 1, mi) for bi, mi in zip(b, m)), b[::-1]))

    def A(b):
        return sum((mpq(bi + 1, mi) for bi, mi in zip(b, m)), mpq(0))

    I_h = [b for b in I if not _is_int(A(b)) and 2 * A(b) < n]
    E = []
    for a in I:
        row = []
        for b in I_h:
            k = sum((N // mi) * (ai + 1) * (bi + 1) for ai, bi, mi in zip(a, b, m)) % N
            row.append(CycloElem.zeta_power(N, k))
        E.append(row)
    phi = euler_phi(N)
    rows = []
    for j in range(len(I_h)):
        for c in range(phi):
            rows.append([E[i][j].coords[c] for i in range(len(I))])
    kernel = [integer_primitive(v) for v in rational_nullspace(rows, len(I))]
    return FermatProblem(m, N, I, I_h, E, kernel)


__all__ = [
    "DBetaMap", "HodgeDims", "HodgeEntry", "HodgeReport", "HodgeCriterion", "FermatProblem",
    "tilde_ideal", "tilde_groebner", "family_is_independent", "compute_d_beta",
    "compute_d_beta_with_retry", "family_determinant", "exceptional_polynomial",
    "hodge_dimensions", "hodge_labels", "hodge_basis", "hodge_cycle_criterion",
    "weight_n_window", "gs_basis", "fermat_hodge_lattice",
]
