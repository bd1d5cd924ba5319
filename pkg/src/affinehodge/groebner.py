"""Buchberger's algorithm with cofactor tracking, normal forms and staircases.

Every basis element carries its expression in terms of the *input*
generators, so a normal form can be reported as
``p = remainder + sum_j quotient_j * gens[j]`` with respect to the original
generators.  The monomial order is weighted-graded reverse lexicographic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .polyforms import MPoly


class GroebnerCancelled(RuntimeError):
    pass


class NotZeroDimensional(ValueError):
    """Raised when a staircase is requested for a positive-dimensional ideal."""

    def __init__(self, missing):
        self.missing = missing
        super().__init__(f"no pure power leading term for variables {missing}")


class MonomialOrder:
    """Weighted grevlex: compare weighted degree, then reverse lex."""

    def __init__(self, weights: Sequence[int]):
        self.weights = tuple(int(a) for a in weights)

    def degree(self, exp) -> int:
        return sum(a * e for a, e in zip(self.weights, exp))

    def heapkey(self, exp):
        """Smaller heapkey means larger monomial."""
        return (-self.degree(exp), exp[::-1])

    def ascending_key(self, exp):
        """Smaller key means smaller monomial."""
        return (self.degree(exp), tuple(-e for e in reversed(exp)))

    def greater(self, a, b) -> bool:
        return self.heapkey(a) < self.heapkey(b)

    def leading(self, p: MPoly):
        return min(p.terms, key=self.heapkey)

    def sorted_desc(self, exps):
        return sorted(exps, key=self.heapkey)

    def sorted_asc(self, exps):
        return sorted(exps, key=self.heapkey, reverse=True)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return f"MonomialOrder(wgrevlex, weights={self.weights})"


@dataclass
class GroebnerBasis:
    gens: list                  # original generators
    polys: list                 # reduced basis, monic
    cofactors: list | None      # cofactors[k][j]: polys[k] = sum_j cof * gens[j]
    order: MonomialOrder
    leads: list = field(default_factory=list)

    def __post_init__(self):
        self.leads = [self.order.leading(p) for p in self.polys]

    @property
    def nvars(self) -> int:
        return self.gens[0].nvars


@dataclass
class DivisionResult:
    remainder: MPoly
    quotients: list             # one per original generator


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _divide(p: MPoly, polys, leads, order: MonomialOrder):
    """Multivariate division; returns (remainder, per-divisor quotient term dicts)."""
    n = p.nvars
    work = dict(p.terms)
    heap = [(order.heapkey(e), e) for e in work]
    heapq.heapify(heap)
    rem = {}
    quots = [dict() for _ in polys]
    lcs = [q.terms[lt] for q, lt in zip(polys, leads)]
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, None)
        if c is None:
            continue
        for k, lt in enumerate(leads):
            if _divides(lt, e):
                break
        else:
            rem[e] = c
            continue
        coef = c / lcs[k] if lcs[k] != 1 else c
        shift = _sub(e, lt)
        qk = quots[k]
        qk[shift] = qk[shift] + coef if shift in qk else coef
        for ge, gc in polys[k].terms.items():
            if ge == lt:
                continue
            ne = tuple(x + y for x, y in zip(ge, shift))
            v = work.get(ne)
            if v is None:
                work[ne] = -coef * gc
                heapq.heappush(heap, (order.heapkey(ne), ne))
            else:
                v = v - coef * gc
                if v:
                    work[ne] = v
                else:
                    del work[ne]
    quotients = [MPoly(n, q) for q in quots]
    return MPoly(n, rem), quotients


def _combine_cofactors(base, quotients, cofs):
    """base - sum_k quotients[k] * cofs[k]  (lists over original generators)."""
    out = list(base)
    for q, cof in zip(quotients, cofs):
        if not q:
            continue
        for j, c in enumerate(cof):
            if c:
                out[j] = out[j] - q * c
    return out


def groebner_basis(
    gens: Sequence[MPoly],
    order: MonomialOrder,
    cancel: Callable[[], bool] | None = None,
    progress: Callable[[dict], None] | None = None,
    cofactors: bool = True,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``, with cofactors.

    Buchberger's algorithm with the product and chain criteria, pairs chosen
    by the normal (smallest lcm first) strategy.  ``cancel`` is polled between
    pair reductions; ``progress`` receives a small status dict.

    Cofactor tracking can blow up on general inhomogeneous ideals; pass
    ``cofactors=False`` when only the basis and remainders are needed.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    n = gens[0].nvars
    m = len(gens)
    zero = MPoly(n)

    basis, cofs, leads = [], [], []

    def unit(j):
        if not cofactors:
            return None
        v = [zero] * m
        v[j] = MPoly.const(n, 1)
        return v

    def make_monic(p, cof):
        lt = order.leading(p)
        lc = p.terms[lt]
        if lc == 1:
            return p, cof, lt
        inv = 1 / lc
        if cof is not None:
            cof = [c.scale(inv) if c else c for c in cof]
        return p.scale(inv), cof, lt

    for j, g in enumerate(gens):
        if g:
            p, c, lt = make_monic(g, unit(j))
            basis.append(p)
            cofs.append(c)
            leads.append(lt)
    if not basis:
        return GroebnerBasis(gens, [], [] if cofactors else None, order)

    pairs = []
    counter = 0

    def push_pairs(new):
        nonlocal counter
        for i in range(new):
            if basis[i] is None:
                continue
            l = _lcm(leads[i], leads[new])
            heapq.heappush(pairs, (order.ascending_key(l), counter, i, new))
            counter += 1

    for k in range(1, len(basis)):
        push_pairs(k)

    done = set()
    while pairs:
        if cancel is not None and cancel():
            raise GroebnerCancelled("groebner basis computation cancelled")
        _, _, i, j = heapq.heappop(pairs)
        done.add((i, j))
        li, lj = leads[i], leads[j]
        l = _lcm(li, lj)
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or basis[k] is None:
                continue
            if _divides(leads[k], l):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a in done and b in done:
                    skip = True
                    break
        if skip:
            continue
        si, sj = _sub(l, li), _sub(l, lj)
        spoly = basis[i].mul_term(si, 1) - basis[j].mul_term(sj, 1)
        live = [k for k in range(len(basis)) if basis[k] is not None]
        rem, quots = _divide(spoly, [basis[k] for k in live], [leads[k] for k in live], order)
        if not rem:
            continue
        rcof = None
        if cofactors:
            scof = [a.mul_term(si, 1) - b.mul_term(sj, 1) for a, b in zip(cofs[i], cofs[j])]
            rcof = _combine_cofactors(scof, quots, [cofs[k] for k in live])
        p, c, lt = make_monic(rem, rcof)
        basis.append(p)
        cofs.append(c)
        leads.append(lt)
        push_pairs(len(basis) - 1)
        if progress is not None:
            progress({"basis_size": len(basis), "pairs_left": len(pairs)})

    # minimise: drop elements whose leading term is divisible by another's
    keep = []
    for k in range(len(basis)):
        lt = leads[k]
        redundant = False
        for o in range(len(basis)):
            if o == k:
                continue
            if _divides(leads[o], lt) and (leads[o] != lt or o < k):
                redundant = True
                break
        if not redundant:
            keep.append(k)
    polys = [basis[k] for k in keep]
    pcofs = [cofs[k] for k in keep]
    plead = [leads[k] for k in keep]
    # interreduce tails
    for idx in range(len(polys)):
        others = [q for o, q in enumerate(polys) if o != idx]
        olead = [lt for o, lt in enumerate(plead) if o != idx]
        ocof = [c for o, c in enumerate(pcofs) if o != idx]
        rem, quots = _divide(polys[idx], others, olead, order)
        if any(quots):
            polys[idx] = rem
            if cofactors:
                pcofs[idx] = _combine_cofactors(pcofs[idx], quots, ocof)
    order_idx = sorted(range(len(polys)), key=lambda k: order.heapkey(plead[k]), reverse=True)
    out_cofs = [pcofs[k] for k in order_idx] if cofactors else None
    return GroebnerBasis(gens, [polys[k] for k in order_idx], out_cofs, order)


def normal_form(p: MPoly, gb: GroebnerBasis) -> DivisionResult:
    """Remainder of p modulo gb and quotients w.r.t. the *original* generators."""
    if gb.cofactors is None:
        raise ValueError("basis was computed without cofactors; use reduce_polynomial")
    rem, quots = _divide(p, gb.polys, gb.leads, gb.order)
    orig = [MPoly(p.nvars) for _ in gb.gens]
    for q, cof in zip(quots, gb.cofactors):
        if q:
            for j, c in enumerate(cof):
                if c:
                    orig[j] = orig[j] + q * c
    return DivisionResult(rem, orig)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    return not _missing_pure_powers(gb)


def _missing_pure_powers(gb: GroebnerBasis):
    n = gb.nvars
    have = set()
    for lt in gb.leads:
        nz = [i for i, e in enumerate(lt) if e]
        if len(nz) == 1:
            have.add(nz[0])
    return [i for i in range(n) if i not in have]


def quotient_basis(gb: GroebnerBasis) -> list:
    """Standard monomials (the staircase), sorted ascending in the order."""
    missing = _missing_pure_powers(gb)
    if missing:
        raise NotZeroDimensional(missing)
    n = gb.nvars
    if any(not any(lt) for lt in gb.leads):
        return []
    start = (0,) * n
    seen = {start}
    stack = [start]
    while stack:
        e = stack.pop()
        for i in range(n):
            ne = e[:i] + (e[i] + 1,) + e[i + 1:]
            if ne in seen:
                continue
            if any(_divides(lt, ne) for lt in gb.leads):
                continue
            seen.add(ne)
            stack.append(ne)
    return gb.order.sorted_asc(seen)


def reduce_polynomial(p: MPoly, gb: GroebnerBasis) -> MPoly:
    return _divide(p, gb.polys, gb.leads, gb.order)[0]


__all__ = [
    "MonomialOrder", "GroebnerBasis", "DivisionResult", "GroebnerCancelled",
    "NotZeroDimensional", "groebner_basis", "normal_form", "is_zero_dimensional",
    "quotient_basis", "reduce_polynomial",
]
