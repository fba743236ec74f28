"""The lattice generated by the rays and the grading of the Cox ring.

For a fan whose rays have rational coordinates the lattice ``Gamma`` is the
integer span of the rays inside the ambient space.  Otherwise the fan is
rationalized first, which replaces it by a rational fan with the same
combinatorics and the smallest discrete quotient.

Rays are stored in coordinates with respect to the Hermite basis of
``Gamma``; a covector ``m`` in the dual lattice pairs with the ray of ``s``
as ``sum_j m_j * coords[s][j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactlin import clear_denominators, hermite_normal_form, smith_normal_form, solve
from .fan import GeneralizedFan, rationalize

__all__ = ["FanLattice", "GradingGroup", "fan_lattice", "dual_fan_map", "grading_group", "pairing"]


@dataclass(frozen=True)
class FanLattice:
    """Hermite basis of the ray lattice and the integer coordinates of every ray.

    ``basis`` rows live in the ambient space of ``fan`` (the rationalized fan
    when ``rationalized`` is true).
    """

    fan: GeneralizedFan
    basis: tuple
    coords: tuple
    rationalized: bool

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> tuple:
        return self.fan.labels

    def coords_of(self, label) -> tuple:
        return self.coords[self.fan.index[label]]

    @property
    def spans_ambient(self) -> bool:
        return self.rank == self.fan.ambient_dim


@lru_cache(maxsize=256)
def fan_lattice(fan: GeneralizedFan) -> FanLattice:
    rationalized = not fan.is_rational_coordinates
    work = rationalize(fan).fan if rationalized else fan
    rays = [list(r) for r in work.numeric_rays]
    ints, den = clear_denominators(rays) if rays else ([], 1)
    H = hermite_normal_form(ints) if ints else []
    basis = tuple(tuple(Fraction(x, den) for x in row) for row in H)
    coords = []
    # solve c . basis = ray; transpose to columns
    BT = [[basis[j][i] for j in range(len(basis))] for i in range(work.ambient_dim)]
    for r in rays:
        c = solve(BT, r, len(basis)) if basis else []
        if c is None or any(Fraction(x).denominator != 1 for x in c):
            raise ArithmeticError("ray outside its own lattice; Hermite basis is wrong")
        coords.append(tuple(int(x) for x in c))
    return FanLattice(work, basis, tuple(coords), rationalized)


def pairing(lattice: FanLattice, m, label) -> int:
    return sum(a * b for a, b in zip(m, lattice.coords_of(label)))


def dual_fan_map(fan: GeneralizedFan) -> tuple:
    """Matrix (rank x |S|) of the dual map sending ``gamma`` to ``(<gamma, rho(s)>)_s``.

    Row ``j`` is the image of the ``j``-th dual basis vector.
    """
    lat = fan_lattice(fan)
    return tuple(tuple(c[j] for c in lat.coords) for j in range(lat.rank))


@dataclass(frozen=True)
class GradingGroup:
    """``L = Z^S / image of the dual map``, with the degree of every variable.

    ``invariant_factors`` lists the torsion orders (entries > 1) and
    ``free_rank`` the rank of the free part.  ``degrees[s]`` is the class of
    ``e_s`` written in the matching cyclic coordinates (torsion entries are
    reduced).  ``classes`` groups labels of equal degree, in label order.
    """

    invariant_factors: tuple
    free_rank: int
    degrees: dict
    classes: tuple

    def class_of(self, label) -> tuple:
        return next(c for c in self.classes if label in c)

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


@lru_cache(maxsize=256)
def grading_group(fan: GeneralizedFan) -> GradingGroup:
    lat = fan_lattice(fan)
    n = len(fan.labels)
    M = dual_fan_map(fan)
    snf = smith_normal_form(M, n) if M else smith_normal_form([], n)
    # Z^n / rowspace(U D W) = Z^n / rowspace(D W); x -> x W^-1 straightens it to Z^n / rowspace(D).
    r = snf.rank
    diag = [snf.D[i][i] if i < len(snf.D) else 0 for i in range(n)]
    kept = [i for i in range(n) if i >= r or diag[i] > 1]
    degrees = {}
    for s in fan.labels:
        row = snf.W_inv[fan.index[s]]
        degrees[s] = tuple(row[i] % diag[i] if i < r else row[i] for i in kept)
    classes = {}
    for s in fan.labels:
        classes.setdefault(degrees[s], []).append(s)
    torsion = tuple(d for d in diag[:r] if d > 1)
    return GradingGroup(torsion, n - r, degrees, tuple(tuple(c) for c in classes.values()))
