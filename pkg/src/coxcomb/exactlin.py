"""Exact linear algebra and linear programming.

Matrices are plain lists of rows.  Entries may be :class:`fractions.Fraction`,
:class:`~coxcomb.scalar.Scalar` or (for the purely algebraic routines)
:class:`~coxcomb.scalar.ComplexScalar`; nothing here ever rounds.

Integer routines (:func:`hermite_normal_form`, :func:`smith_normal_form`)
work on Python ints.  The polyhedral routines use Fourier-Motzkin
elimination with redundancy pruning, which is exact over any ordered field.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyRegion, Infeasible
from .scalar import Scalar

__all__ = [
    "rref", "rank", "kernel", "solve", "mat_mul", "mat_vec", "transpose", "identity",
    "Subspace", "rational_closure", "clear_denominators",
    "hermite_normal_form", "smith_normal_form", "SmithDecomposition",
    "Constraint", "lp_feasible", "lp_extremum", "is_feasible", "integer_points",
    "UNBOUNDED",
]


# ---------------------------------------------------------------------------
# dense matrix helpers

def identity(n: int, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(rows, ncols: int | None = None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def mat_mul(A, B, inner: int | None = None):
    if not A:
        return []
    ncols = len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), 0) for j in range(ncols)] for i in range(len(A))]


def mat_vec(A, v):
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def _exact(x):
    return Fraction(x) if isinstance(x, int) else x


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    M = [[_exact(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    for r in M:
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)} in a matrix with {ncols} columns")
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def kernel(A, ncols: int) -> "Subspace":
    """Right kernel ``{x : A x = 0}`` as a :class:`Subspace` of dimension ``ncols``."""
    R, pivots = rref(A, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return Subspace.from_vectors(basis, ncols)


def solve(A, b, ncols: int | None = None):
    """One solution of ``A x = b`` (free variables set to zero), or ``None``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored by the RREF of a spanning set."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        R, pivots = rref([list(v) for v in vectors], ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in R), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(identity(ambient_dim), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector and subspace live in different dimensions")
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            if w[p]:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces live in different dimensions")
        return Subspace.from_vectors(list(self.basis) + list(other.basis), self.ambient_dim)

    def is_rational(self) -> bool:
        return all(not isinstance(x, Scalar) or x.is_rational for row in self.basis for x in row)

    def complement_coordinates(self) -> tuple:
        """Coordinates not used as pivots; they parametrize the quotient."""
        return tuple(c for c in range(self.ambient_dim) if c not in self.pivots)

    def quotient_map(self):
        """Matrix of the projection ``R^n -> R^n / W`` onto the complement coordinates.

        A vector is first reduced against the echelon basis, then restricted to
        the non-pivot columns, so ``W`` is exactly the kernel.
        """
        comp = self.complement_coordinates()
        rows = []
        for c in comp:
            row = [0] * self.ambient_dim
            row[c] = 1
            for brow, p in zip(self.basis, self.pivots):
                row[p] = -brow[c]
            rows.append(row)
        return rows


def rational_closure(W: Subspace) -> Subspace:
    """Smallest subspace defined over Q containing ``W``.

    Every vector ``u + v*sqrt(d)`` of the basis contributes both ``u`` and
    ``v``; a rational subspace containing ``W`` must contain them because it is
    stable under the Galois conjugation.
    """
    vectors = []
    for row in W.basis:
        vectors.append([x.a if isinstance(x, Scalar) else Fraction(x) for x in row])
        vectors.append([x.b if isinstance(x, Scalar) else Fraction(0) for x in row])
    return Subspace.from_vectors(vectors, W.ambient_dim)


def clear_denominators(rows) -> tuple[list[list[int]], int]:
    """Scale a rational matrix to integers.  Returns ``(int_rows, denominator)``."""
    den = 1
    for row in rows:
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in row] for row in rows], den


# ---------------------------------------------------------------------------
# integer normal forms

def hermite_normal_form(A) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``A``.

    Zero rows are dropped, pivots are positive and entries above a pivot are
    reduced into ``[0, pivot)``.  Two matrices span the same lattice iff their
    outputs agree.
    """
    M = [[int(x) for x in row] for row in A if any(row)]
    if not M:
        return []
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[p] = M[p], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < len(M) and M[r][c]:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    return [row for row in M[:r]]


@dataclass(frozen=True)
class SmithDecomposition:
    """``A = U * D * W`` with ``U``, ``W`` unimodular and ``D`` diagonal.

    The diagonal entries are non-negative and each divides the next.
    """

    U: tuple
    D: tuple
    W: tuple
    U_inv: tuple
    W_inv: tuple

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(n) if self.D[i][i])

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(A, ncols: int | None = None) -> SmithDecomposition:
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    # L M R = D is maintained alongside L^-1 and R^-1, so A = L^-1 D R^-1.
    L, Linv = identity(m), identity(m)
    R, Rinv = identity(n), identity(n)

    def row_add(i, j, c):  # row_i += c row_j
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        L[i] = [a + c * b for a, b in zip(L[i], L[j])]
        for row in Linv:
            row[j] -= c * row[i]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        L[i], L[j] = L[j], L[i]
        for row in Linv:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        M[i] = [-x for x in M[i]]
        L[i] = [-x for x in L[i]]
        for row in Linv:
            row[i] = -row[i]

    def col_add(j, i, c):  # col_j += c col_i
        for row in M:
            row[j] += c * row[i]
        for row in R:
            row[j] += c * row[i]
        Rinv[i] = [a - c * b for a, b in zip(Rinv[i], Rinv[j])]

    def col_swap(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]
        Rinv[i], Rinv[j] = Rinv[j], Rinv[i]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            if i != t:
                row_swap(t, i)
            if j != t:
                col_swap(t, j)
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    row_add(i, t, -(M[i][t] // M[t][t]))
                    clean = clean and not M[i][t]
            for j in range(t + 1, n):
                if M[t][j]:
                    col_add(j, t, -(M[t][j] // M[t][t]))
                    clean = clean and not M[t][j]
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % M[t][t]), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if t < m and M[t][t] < 0:
            row_neg(t)
    as_t = lambda X: tuple(tuple(r) for r in X)
    return SmithDecomposition(U=as_t(Linv), D=as_t(M), W=as_t(Rinv), U_inv=as_t(L), W_inv=as_t(R))


# ---------------------------------------------------------------------------
# linear programming by Fourier-Motzkin elimination

_REL = {"<=": "<=", "≤": "<=", ">=": ">=", "≥": ">=", "=": "=", "==": "="}


@dataclass(frozen=True)
class Constraint:
    """``coeffs . x  rel  rhs`` with ``rel`` one of ``<=``, ``>=``, ``=``."""

    coeffs: tuple
    rel: str
    rhs: object

    def __post_init__(self):
        if self.rel not in _REL:
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "rel", _REL[self.rel])
        object.__setattr__(self, "coeffs", tuple(_exact(a) for a in self.coeffs))
        object.__setattr__(self, "rhs", _exact(self.rhs))

    def holds(self, x) -> bool:
        v = _dot(self.coeffs, x)
        if self.rel == "<=":
            return v <= self.rhs
        if self.rel == ">=":
            return v >= self.rhs
        return v == self.rhs


class _Unbounded:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNBOUNDED"

    def __bool__(self):
        return False


UNBOUNDED = _Unbounded()


def _scale_le(coeffs, rhs):
    """Normalize ``a.x <= b`` so the first nonzero coefficient has absolute value 1."""
    lead = next((a for a in coeffs if a), None)
    if lead is None:
        return tuple(coeffs), rhs
    s = abs(lead)
    if s == 1:
        return tuple(coeffs), rhs
    return tuple(a / s for a in coeffs), rhs / s


def _prune(rows):
    """Drop duplicate directions (keeping the tightest bound) and trivial rows."""
    best = {}
    for coeffs, rhs in rows:
        if not any(coeffs):
            if rhs < 0:
                raise Infeasible()
            continue
        key, b = _scale_le(coeffs, rhs)
        if key not in best or b < best[key]:
            best[key] = b
    return [(k, v) for k, v in best.items()]


class _System:
    """Inequalities ``a.x <= b`` plus equality substitutions, ready for elimination."""

    def __init__(self, constraints: Sequence[Constraint], nvars: int, keep=()):
        self.n = nvars
        self.keep = set(keep)
        ineqs, eqs = [], []
        for c in constraints:
            if len(c.coeffs) != nvars:
                raise DimensionMismatch(f"constraint has {len(c.coeffs)} coefficients, expected {nvars}")
            if c.rel == "<=":
                ineqs.append((tuple(c.coeffs), c.rhs))
            elif c.rel == ">=":
                ineqs.append((tuple(-a for a in c.coeffs), -c.rhs))
            else:
                eqs.append((list(c.coeffs), c.rhs))
        self.subs = []  # (j, e, r) with e[j] == 1: x_j = r - sum over k != j of e[k] x_k
        kept_eqs = []
        while eqs:
            coeffs, rhs = eqs.pop()
            j = next((k for k in range(nvars) if coeffs[k] and k not in self.keep), None)
            if j is None:
                if not any(coeffs):
                    if rhs:
                        raise Infeasible()
                    continue
                kept_eqs.append((tuple(coeffs), rhs))
                continue
            piv = coeffs[j]
            e = [a / piv for a in coeffs]
            r = rhs / piv
            self.subs.append((j, e, r))

            def sub(row, rhs_, j=j, e=e, r=r):
                f = row[j]
                if not f:
                    return tuple(row), rhs_
                return tuple(a - f * b for a, b in zip(row, e)), rhs_ - f * r

            eqs = [(list(cf), rh) for cf, rh in (sub(cf, rh) for cf, rh in eqs)]
            ineqs = [sub(cf, rh) for cf, rh in ineqs]
            kept_eqs = [sub(cf, rh) for cf, rh in kept_eqs]
        for cf, rh in kept_eqs:
            ineqs.append((cf, rh))
            ineqs.append((tuple(-a for a in cf), -rh))
        self.ineqs = _prune(ineqs)
        self.substituted = {j for j, _, _ in self.subs}

    def eliminate(self):
        """Eliminate every free variable.  Returns the stage list for back-substitution."""
        alive = [k for k in range(self.n) if k not in self.substituted and k not in self.keep]
        rows = self.ineqs
        stages = []
        while alive:
            def cost(k):
                p = sum(1 for a, _ in rows if a[k] > 0)
                q = sum(1 for a, _ in rows if a[k] < 0)
                return (p * q - p - q, k)

            k = min(alive, key=cost)
            alive.remove(k)
            stages.append((k, rows))
            pos = [(a, b) for a, b in rows if a[k] > 0]
            neg = [(a, b) for a, b in rows if a[k] < 0]
            new = [(a, b) for a, b in rows if not a[k]]
            for ap, bp in pos:
                for an, bn in neg:
                    fp, fn = ap[k], -an[k]
                    coeffs = tuple(x / fp + y / fn for x, y in zip(ap, an))
                    coeffs = coeffs[:k] + (0,) + coeffs[k + 1:]
                    new.append((coeffs, bp / fp + bn / fn))
            rows = _prune(new)
        return stages, rows

    @staticmethod
    def bounds(rows, k, x):
        """Interval for ``x[k]`` given the other coordinates of ``x``."""
        lo = hi = None
        for a, b in rows:
            if not a[k]:
                continue
            rest = b - sum((a[i] * x[i] for i in range(len(a)) if i != k and a[i]), 0)
            v = rest / a[k]
            if a[k] > 0:
                hi = v if hi is None or v < hi else hi
            else:
                lo = v if lo is None or v > lo else lo
        return lo, hi

    def back_substitute(self, stages, x):
        for k, rows in reversed(stages):
            lo, hi = self.bounds(rows, k, x)
            if lo is not None:
                x[k] = lo
            elif hi is not None:
                x[k] = hi if hi < 0 else 0
            else:
                x[k] = 0
            if lo is not None and hi is not None and lo > hi:
                raise Infeasible()
        for j, e, r in reversed(self.subs):
            x[j] = r - sum((e[i] * x[i] for i in range(self.n) if i != j and e[i]), 0)
        return x


def _with_strict(constraints, nvars, strict_positive):
    out = list(constraints)
    for i in strict_positive:
        row = [0] * nvars
        row[i] = 1
        out.append(Constraint(tuple(row), ">=", 1))
    return out


def lp_feasible(constraints: Sequence[Constraint], nvars: int | None = None, strict_positive=()):
    """A witness point for the system, or raise :class:`Infeasible`.

    Coordinates listed in ``strict_positive`` are required to be positive.
    Since the systems this package builds are homogeneous in those
    coordinates, positivity is encoded as ``x_i >= 1``.
    """
    if nvars is None:
        if not constraints:
            raise ValueError("nvars is required for an empty system")
        nvars = len(constraints[0].coeffs)
    cons = _with_strict(constraints, nvars, strict_positive)
    system = _System(cons, nvars)
    stages, final = system.eliminate()
    for a, b in final:
        if b < 0:
            raise Infeasible()
    x = system.back_substitute(stages, [0] * nvars)
    return x


def is_feasible(constraints, nvars=None, strict_positive=()) -> bool:
    try:
        lp_feasible(constraints, nvars, strict_positive)
    except Infeasible:
        return False
    return True


def lp_extremum(objective: Sequence, constraints: Sequence[Constraint], direction: str = "max"):
    """Exact optimum of ``objective . x`` over the region, or :data:`UNBOUNDED`.

    Raises :class:`EmptyRegion` if there is no feasible point.
    """
    if direction not in ("max", "min"):
        raise ValueError("direction must be 'max' or 'min'")
    n = len(objective)
    cons = [Constraint(tuple(c.coeffs) + (0,), c.rel, c.rhs) for c in constraints]
    cons.append(Constraint(tuple(-a for a in objective) + (1,), "=", 0))
    try:
        system = _System(cons, n + 1, keep=(n,))
        _, final = system.eliminate()
    except Infeasible:
        raise EmptyRegion("the region is empty") from None
    lo = hi = None
    for a, b in final:
        t = a[n]
        if not t:
            if b < 0:
                raise EmptyRegion("the region is empty")
            continue
        v = b / t
        if t > 0:
            hi = v if hi is None or v < hi else hi
        else:
            lo = v if lo is None or v > lo else lo
    if lo is not None and hi is not None and lo > hi:
        raise EmptyRegion("the region is empty")
    if direction == "max":
        return UNBOUNDED if hi is None else hi
    return UNBOUNDED if lo is None else lo


def _floor(x) -> int:
    if isinstance(x, Scalar):
        if x.is_rational:
            return math.floor(x.a)
        k = math.floor(x.a + x.b * math.isqrt(x.d * 10**12) / 10**6)  # estimate, then correct
        while Scalar(k) > x:
            k -= 1
        while Scalar(k + 1) <= x:
            k += 1
        return k
    return math.floor(x)


def integer_points(constraints: Sequence[Constraint], nvars: int, on_unbounded=None):
    """All integer points of a bounded polyhedron, in lexicographic order.

    A bounding box is found with :func:`lp_extremum`; ``on_unbounded`` is the
    exception class raised when some coordinate is unbounded.
    """
    box = []
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 1
        try:
            hi = lp_extremum(e, constraints, "max")
            lo = lp_extremum(e, constraints, "min")
        except EmptyRegion:
            return []
        if hi is UNBOUNDED or lo is UNBOUNDED:
            raise (on_unbounded or ValueError)(f"coordinate {i} is unbounded")
        box.append(range(-_floor(-lo), _floor(hi) + 1))
    return [p for p in itertools.product(*box) if all(c.holds(p) for c in constraints)]
