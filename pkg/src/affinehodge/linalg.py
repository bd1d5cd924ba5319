"""Exact linear algebra over Q and over Q[t] / Q(t).

Rational work uses sparse dict vectors and an incremental echelon form.
Polynomial work is fraction-free: rows stay in Q[t] and are kept primitive
by dividing out the gcd of their entries after each elimination step.
"""

from __future__ import annotations

from math import gcd, lcm

from gmpy2 import mpq

from .numeric import RatFunc, UniPoly, unipoly_gcd

# --------------------------------------------------------------------------
# Rational vectors and echelon forms
# --------------------------------------------------------------------------


class RationalEchelon:
    """Incremental row echelon form over Q with optional provenance tracking.

    Vectors are sparse dicts ``index -> mpq``.  When ``track`` is true every
    stored row also remembers which combination of the inserted vectors it
    equals, so a dependency can be reported as a relation among inputs.
    """

    def __init__(self, track: bool = False):
        self.rows: dict = {}      # pivot index -> (row, provenance)
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict, prov: dict | None = None):
        v = dict(vec)
        p = dict(prov) if prov is not None else None
        # stored rows vanish on every other pivot, so one pass suffices
        for piv in [k for k in v if k in self.rows]:
            c = v.get(piv)
            if not c:
                continue
            row, rprov = self.rows[piv]
            for k, x in row.items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            if p is not None:
                for k, x in rprov.items():
                    nv = p.get(k, 0) - c * x
                    if nv:
                        p[k] = nv
                    else:
                        p.pop(k, None)
        return v, p

    def add(self, vec: dict):
        """Insert ``vec``.  Returns None if independent, else the relation.

        The relation (only with ``track``) is a dict ``input_id -> coeff`` with
        ``sum coeff * input == 0`` and coefficient 1 on the new input.
        """
        idx = self.count
        self.count += 1
        prov = {idx: mpq(1)} if self.track else None
        v, p = self.reduce(vec, prov)
        if not v:
            return p if self.track else {}
        piv = min(v)
        inv = 1 / v[piv]
        v = {k: x * inv for k, x in v.items()}
        if p is not None:
            p = {k: x * inv for k, x in p.items()}
        # keep other rows reduced on this pivot
        for opiv, (row, rprov) in list(self.rows.items()):
            c = row.get(piv)
            if c:
                for k, x in v.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                if p is not None:
                    for k, x in p.items():
                        nv = rprov.get(k, 0) - c * x
                        if nv:
                            rprov[k] = nv
                        else:
                            rprov.pop(k, None)
        self.rows[piv] = (v, p)
        return None

    def contains(self, vec: dict) -> bool:
        v, _ = self.reduce(vec)
        return not v


def rational_rank(rows) -> int:
    ech = RationalEchelon()
    for r in rows:
        ech.add({i: mpq(x) for i, x in enumerate(r) if x})
    return len(ech)


def rational_nullspace(rows, ncols: int) -> list:
    """Basis of {x in Q^ncols : rows . x = 0}, from the reduced row echelon form."""
    ech = RationalEchelon()
    for r in rows:
        ech.add({i: mpq(x) for i, x in enumerate(r) if x})
    pivots = set(ech.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        x = [mpq(0)] * ncols
        x[free] = mpq(1)
        for piv, (row, _) in ech.rows.items():
            x[piv] = -row.get(free, 0)
        basis.append(x)
    return basis


def integer_primitive(vec) -> list:
    """Scale a rational vector to coprime integers with a positive first nonzero entry."""
    den = 1
    for x in vec:
        den = lcm(den, int(mpq(x).denominator))
    ints = [int(mpq(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ints


def primitive_family(polys: list) -> list:
    """Scale a list of UniPoly by one rational so all coefficients are coprime integers.

    The sign makes the last nonzero polynomial's leading coefficient positive.
    """
    den, num = 1, 0
    for p in polys:
        for c in p.coeffs:
            if c:
                den = lcm(den, int(c.denominator))
    for p in polys:
        for c in p.coeffs:
            if c:
                num = gcd(num, int(c * den))
    if not num:
        return list(polys)
    scale = mpq(den, num)
    lead = next((p for p in reversed(polys) if p), None)
    if lead is not None and lead.lc < 0:
        scale = -scale
    return [p.scale(scale) for p in polys]


def rational_matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), mpq(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def minimal_polynomial(matrix) -> UniPoly:
    """Monic minimal polynomial of a square rational matrix via Krylov sequences.

    For each unit vector not already inside the invariant subspace spanned
    so far, the Krylov sequence is run until the first linear dependence;
    the result is the lcm of these local minimal polynomials.
    """
    n = len(matrix)
    if n == 0:
        return UniPoly.const(1)
    cols = [{i: mpq(matrix[i][j]) for i in range(n) if matrix[i][j]} for j in range(n)]

    def apply(v):
        out = {}
        for j, x in v.items():
            for i, a in cols[j].items():
                nv = out.get(i, 0) + a * x
                if nv:
                    out[i] = nv
                else:
                    out.pop(i, None)
        return out

    span = RationalEchelon()
    result = UniPoly.const(1)
    for j in range(n):
        e = {j: mpq(1)}
        if span.contains(e):
            continue
        krylov = RationalEchelon(track=True)
        v = e
        while True:
            rel = krylov.add(v)
            if rel is not None:
                k = krylov.count - 1
                local = UniPoly([rel.get(i, 0) for i in range(k + 1)]).monic()
                break
            span.add(v)
            v = apply(v)
        result = _lcm(result, local)
    return result


def _lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    g = unipoly_gcd(a, b)
    return (a * b).exact_div(g).monic()


# --------------------------------------------------------------------------
# Polynomial matrices (entries UniPoly), fraction-free elimination
# --------------------------------------------------------------------------

ONE_POLY = UniPoly.const(1)


def det_bareiss(M) -> UniPoly:
    """Determinant of a square matrix over Q[t] by Bareiss elimination."""
    n = len(M)
    if n == 0:
        return ONE_POLY
    A = [[e if isinstance(e, UniPoly) else UniPoly.const(e) for e in row] for row in M]
    sign = 1
    prev = ONE_POLY
    for k in range(n - 1):
        if not A[k][k]:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return UniPoly()
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = akk * A[i][j] - aik * A[k][j]
                A[i][j] = num.exact_div(prev) if prev != ONE_POLY else num
            A[i][k] = UniPoly()
        prev = akk
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def _row_content(row: dict) -> UniPoly:
    g = UniPoly()
    for e in row.values():
        g = unipoly_gcd(g, e) if g else e.monic()
        if g.degree == 0:
            return ONE_POLY
    return g if g else ONE_POLY


class PolyElimination:
    """Fraction-free Gauss-Jordan elimination of polynomial rows.

    ``rows`` are sparse dicts ``col -> UniPoly``.  Columns ``< nleft`` are
    eliminated; the remaining columns ride along (right-hand sides).  After
    ``run`` each pivot row has exactly one nonzero entry among the left
    columns.  ``det_factor`` is the product of the scalings applied, so the
    determinant of a square left block equals
    ``sign * prod(pivot entries) / det_factor``.
    """

    def __init__(self, rows, nleft: int):
        self.rows = [dict(r) for r in rows]
        self.nleft = nleft
        self.pivots: dict = {}      # col -> row index
        self.det_factor = RatFunc.const(1)
        self.sign = 1

    def _combine(self, target: dict, src: dict, col: int):
        a, b = src[col], target[col]
        g = unipoly_gcd(a, b)
        a, b = a.exact_div(g), b.exact_div(g)
        out = {}
        keys = set(target) | set(src)
        for k in keys:
            x = target.get(k)
            y = src.get(k)
            v = (x * a if x else UniPoly()) - (y * b if y else UniPoly())
            if v:
                out[k] = v
        self.det_factor = self.det_factor * a
        c = _row_content(out) if out else ONE_POLY
        if c.degree > 0:
            out = {k: v.exact_div(c) for k, v in out.items()}
            self.det_factor = self.det_factor / c
        return out

    def run(self):
        used = set()
        n = len(self.rows)
        for col in range(self.nleft):
            best = None
            for r in range(n):
                if r in used:
                    continue
                e = self.rows[r].get(col)
                if e:
                    key = (e.degree, len(self.rows[r]))
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                continue
            p = best[1]
            used.add(p)
            self.pivots[col] = p
            prow = self.rows[p]
            for r in range(n):
                if r != p and self.rows[r].get(col):
                    self.rows[r] = self._combine(self.rows[r], prow, col)
        return self

    def rank(self) -> int:
        return len(self.pivots)

    def determinant(self) -> RatFunc:
        """Determinant of the (square) left block."""
        if len(self.pivots) < self.nleft:
            return RatFunc.const(0)
        # the pivot placement defines a permutation of rows
        perm = [self.pivots[c] for c in range(self.nleft)]
        sign = _perm_sign(perm)
        prod = RatFunc.const(sign)
        for c in range(self.nleft):
            prod = prod * self.rows[self.pivots[c]][c]
        return prod / self.det_factor


def _perm_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class RatVec:
    """Vector over Q(t) stored as polynomial numerators over one monic denominator."""

    __slots__ = ("nums", "den")

    def __init__(self, nums, den=None, reduce: bool = True):
        nums = [e if isinstance(e, UniPoly) else UniPoly.const(e) for e in nums]
        den = ONE_POLY if den is None else (den if isinstance(den, UniPoly) else UniPoly.const(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.nums, self.den = nums, den
        if reduce:
            self._normalize()

    def _normalize(self):
        g = self.den
        for e in self.nums:
            if g.degree <= 0:
                break
            if e:
                g = unipoly_gcd(g, e)
        if g.degree > 0:
            self.nums = [e.exact_div(g) for e in self.nums]
            self.den = self.den.exact_div(g)
        c = self.den.lc
        if c != 1:
            inv = 1 / c
            self.nums = [e.scale(inv) for e in self.nums]
            self.den = self.den.scale(inv)

    @classmethod
    def from_ratfuncs(cls, entries) -> "RatVec":
        den = ONE_POLY
        for e in entries:
            if isinstance(e, RatFunc) and e.den.degree > 0:
                g = unipoly_gcd(den, e.den)
                den = (den * e.den).exact_div(g)
        nums = []
        for e in entries:
            if isinstance(e, RatFunc):
                nums.append(e.num * den.exact_div(e.den))
            else:
                nums.append((e if isinstance(e, UniPoly) else UniPoly.const(e)) * den)
        return cls(nums, den)

    @classmethod
    def unit(cls, n: int, i: int, c=1) -> "RatVec":
        nums = [UniPoly()] * n
        nums[i] = UniPoly.const(c)
        return cls(nums, reduce=False)

    @classmethod
    def zero(cls, n: int) -> "RatVec":
        return cls([UniPoly()] * n, reduce=False)

    def __len__(self):
        return len(self.nums)

    def __bool__(self):
        return any(self.nums)

    def __eq__(self, other):
        if not isinstance(other, RatVec):
            return NotImplemented
        return self.den == other.den and self.nums == other.nums

    def entries(self) -> list:
        return [RatFunc(e, self.den) for e in self.nums]

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other: "RatVec") -> "RatVec":
        if self.den == other.den:
            return RatVec([a + b for a, b in zip(self.nums, other.nums)], self.den)
        g = unipoly_gcd(self.den, other.den)
        fa, fb = other.den.exact_div(g), self.den.exact_div(g)
        return RatVec([a * fa + b * fb for a, b in zip(self.nums, other.nums)], self.den * fa)

    def __neg__(self):
        return RatVec([-a for a in self.nums], self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RatVec":
        if isinstance(c, RatFunc):
            return RatVec([a * c.num for a in self.nums], self.den * c.den)
        return RatVec([a * c for a in self.nums], self.den)

    def derivative(self) -> "RatVec":
        """Entrywise d/dt, by the quotient rule on the shared denominator."""
        dd = self.den.derivative()
        if not dd:
            return RatVec([a.derivative() for a in self.nums], self.den)
        return RatVec([a.derivative() * self.den - a * dd for a in self.nums], self.den * self.den)

    def __str__(self):
        return "[" + ", ".join(str(e) for e in self.entries()) + "]"

    __repr__ = __str__


def poly_matvec(M, v):
    """M (list of rows of UniPoly) times a list of UniPoly."""
    out = []
    for row in M:
        acc = UniPoly()
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def solve_poly_system(M, rhs_list) -> list:
    """Solve ``M x = b`` over Q(t) for every b in ``rhs_list``.

    ``M`` is square with UniPoly entries and must be nonsingular; each b is a
    list of UniPoly.  Returns RatVec solutions.
    """
    n = len(M)
    k = len(rhs_list)
    rows = []
    for i in range(n):
        r = {j: M[i][j] for j in range(n) if M[i][j]}
        for c, b in enumerate(rhs_list):
            if b[i]:
                r[n + c] = b[i]
        rows.append(r)
    el = PolyElimination(rows, n).run()
    if el.rank() < n:
        raise ZeroDivisionError("singular polynomial matrix")
    sols = []
    for c in range(k):
        entries = []
        for j in range(n):
            row = el.rows[el.pivots[j]]
            num = row.get(n + c, UniPoly())
            entries.append(RatFunc(num, row[j]))
        sols.append(RatVec.from_ratfuncs(entries))
    return sols


def first_dependency(vectors):
    """Coefficients c (over Q[t]) with sum c_i v_i = 0 and c_last != 0, or None.

    ``vectors`` are lists of UniPoly with a common length; the earlier ones are
    assumed linearly independent.  The relation is returned content-free.
    """
    m = len(vectors) - 1
    n = len(vectors[0])
    rows = []
    for i in range(n):
        r = {j: vectors[j][i] for j in range(m) if vectors[j][i]}
        if vectors[m][i]:
            r[m] = vectors[m][i]
        if r:
            rows.append(r)
    el = PolyElimination(rows, m).run()
    if el.rank() < m:
        raise ValueError("leading vectors are already dependent")
    used = set(el.pivots.values())
    for r, row in enumerate(el.rows):
        if r not in used and row.get(m):
            return None
    # pivot row j: p_j x_j + b_j = 0 on the last column, i.e. x_j = -b_j / p_j
    entries = []
    for j in range(m):
        row = el.rows[el.pivots[j]]
        entries.append(RatFunc(-row.get(m, UniPoly()), row[j]))
    entries.append(RatFunc.const(1))
    sol = RatVec.from_ratfuncs(entries)
    # sum (num_i / den) v_i = 0, so the numerators already form a relation
    coeffs = list(sol.nums)
    g = UniPoly()
    for e in coeffs:
        if e:
            g = unipoly_gcd(g, e) if g else e.monic()
    if g and g.degree > 0:
        coeffs = [e.exact_div(g) for e in coeffs]
    return coeffs


__all__ = [
    "RationalEchelon", "rational_rank", "rational_nullspace", "integer_primitive",
    "minimal_polynomial", "det_bareiss", "PolyElimination", "RatVec",
    "poly_matvec", "solve_poly_system", "first_dependency", "rational_matmul",
    "primitive_family",
]
