"""Minimal-order Picard-Fuchs operators of Brieskorn elements.

The iterates e, nabla e, nabla^2 e, ... are collected as Q(t)-vectors in the
eta basis until the first linear dependence; the dependence, with
denominators cleared, is the operator sum_i c_i(t) d^i/dt^i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .brieskorn import ConnectionData, connection, nabla_eta
from .linalg import RatVec, first_dependency, primitive_family
from .milnor import MilnorData
from .numeric import UniPoly, unipoly_gcd


@dataclass(frozen=True)
class PFEquation:
    coeffs: tuple           # c_0 .. c_m

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def to_text(self, var: str = "y") -> str:
        parts = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if not c:
                continue
            deriv = var + "'" * i if i <= 3 else f"{var}^({i})"
            parts.append(f"({c}){deriv}")
        return " + ".join(parts) + " = 0"

    def to_dict(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    def apply(self, iterates) -> RatVec:
        """sum_i c_i * iterates[i] for eta-coordinate vectors."""
        acc = RatVec.zero(len(iterates[0]))
        for c, v in zip(self.coeffs, iterates):
            if c:
                acc = acc + RatVec([x * c for x in v.nums], v.den)
        return acc


def normalize_operator(coeffs) -> tuple:
    """Divide out the polynomial gcd, then integer content; positive leading coefficient."""
    g = UniPoly()
    for c in coeffs:
        if c:
            g = unipoly_gcd(g, c) if g else c.monic()
    if g and g.degree > 0:
        coeffs = [c.exact_div(g) for c in coeffs]
    return tuple(primitive_family(list(coeffs)))


def iterates(e: RatVec, k: int, conn: ConnectionData) -> list:
    out = [e]
    for _ in range(k):
        out.append(nabla_eta(out[-1], conn))
    return out


def picard_fuchs(e: RatVec, data: MilnorData, conn: ConnectionData | None = None) -> PFEquation:
    """Annihilating operator of least order for the eta-coordinate vector e."""
    if not e:
        raise ValueError("the zero element has no Picard-Fuchs equation")
    conn = conn or connection(data)
    vecs = [e]
    for _ in range(data.mu + 1):
        polys = [v.nums for v in vecs]
        if len(vecs) > 1:
            rel = first_dependency(polys)
            if rel is not None:
                # sum a_i (D_i v_i) = 0 with D_i the denominators of v_i
                coeffs = [a * v.den for a, v in zip(rel, vecs)]
                return PFEquation(normalize_operator(coeffs))
        vecs.append(nabla_eta(vecs[-1], conn))
    raise RuntimeError("no dependency found within mu + 1 iterates")


__all__ = ["PFEquation", "picard_fuchs", "normalize_operator", "iterates"]
