"""Graded pieces of the Cox ring and the graded automorphism group.

The Cox ring is ``C[z_s : s in S]`` graded by ``L = Z^S / Gamma^dual``.  The
monomials of degree ``[alpha]`` correspond to the lattice points of

    P_alpha = { tau in Gamma^dual : <tau, rho(s)> >= -alpha_s for all s },

via ``tau -> prod z_s ** (alpha_s + <tau, rho(s)>)``.  Graded automorphisms
act on each degree class of variables by an invertible matrix plus higher
degree monomials, which gives the dimension count in :func:`autg_structure`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import UnboundedComponent, UnknownLabel
from .exactlin import Constraint, integer_points
from .fan import GeneralizedFan, _restrict
from .lattice import fan_lattice, grading_group

__all__ = ["DegreePolyhedron", "MonomialBasis", "AutGStructure", "degree_polyhedron",
           "graded_dimension", "monomial_basis", "autg_structure"]


@dataclass(frozen=True)
class DegreePolyhedron:
    alpha: tuple
    inequalities: tuple  # Constraint objects over Gamma^dual coordinates
    rank: int

    def points(self) -> list:
        if self.rank == 0:
            return [()] if all(a >= 0 for a in self.alpha) else []
        return integer_points(self.inequalities, self.rank, UnboundedComponent)


def _alpha_vector(fan: GeneralizedFan, alpha) -> tuple:
    if isinstance(alpha, Mapping):
        unknown = set(map(str, alpha)) - set(fan.labels)
        if unknown:
            raise UnknownLabel(f"unknown labels {sorted(unknown)}")
        return tuple(int(alpha.get(s, 0)) for s in fan.labels)
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != len(fan.labels):
        raise ValueError("alpha needs one entry per label")
    return alpha


def degree_polyhedron(fan: GeneralizedFan, alpha) -> DegreePolyhedron:
    lat = fan_lattice(fan)
    a = _alpha_vector(fan, alpha)
    cons = tuple(Constraint(c, ">=", -ai) for c, ai in zip(lat.coords, a))
    return DegreePolyhedron(a, cons, lat.rank)


def _exponents(fan, poly, tau):
    lat = fan_lattice(fan)
    return tuple(a + sum(x * y for x, y in zip(tau, c)) for a, c in zip(poly.alpha, lat.coords))


def graded_dimension(fan: GeneralizedFan, alpha) -> int:
    """Number of monomials of degree ``[alpha]``."""
    return len(degree_polyhedron(fan, alpha).points())


@dataclass(frozen=True)
class MonomialBasis:
    """Exponent vectors of the monomials in one degree, split into variables and the rest."""

    labels: tuple
    degree_class: tuple
    generators: tuple
    decomposables: tuple

    @property
    def dim(self) -> int:
        return len(self.generators) + len(self.decomposables)


def _unit(fan, s):
    return tuple(1 if t == s else 0 for t in fan.labels)


def monomial_basis(fan: GeneralizedFan, class_index: int) -> MonomialBasis:
    """Monomials in the degree of the ``class_index``-th class of variables."""
    classes = grading_group(fan).classes
    cls = classes[class_index]
    alpha = _unit(fan, cls[0])
    poly = degree_polyhedron(fan, alpha)
    exps = sorted(_exponents(fan, poly, t) for t in poly.points())
    gens = tuple(_unit(fan, s) for s in cls)
    rest = tuple(e for e in exps if e not in gens)
    return MonomialBasis(fan.labels, cls, gens, rest)


@dataclass(frozen=True)
class AutGStructure:
    """Dimensions of the graded automorphism group.

    ``classes`` are the degree classes of the non-ghost variables and
    ``class_dims`` the dimension of the graded piece each one spans.  Each
    ghost variable contributes one more factor of ``C^*``.
    """

    classes: tuple
    class_dims: tuple
    reductive_factors: tuple
    ghost_torus_dim: int
    unipotent_dim: int
    total: int

    @property
    def gl_factors(self) -> tuple:
        """Sizes of the general linear factors, ghosts counted as ``GL(1)``."""
        return self.reductive_factors + (1,) * self.ghost_torus_dim

    @property
    def reductive_dim(self) -> int:
        return sum(k * k for k in self.reductive_factors) + self.ghost_torus_dim


def autg_structure(fan: GeneralizedFan) -> AutGStructure:
    """Graded automorphisms: ``GL`` blocks on equal-degree variables, unipotent rest."""
    ghosts = set(fan.ghosts)
    red = _restrict(fan, [s for s in fan.labels if s not in ghosts], "ghost reduction") if ghosts else fan
    classes = grading_group(red).classes if red.labels else ()
    dims = tuple(graded_dimension(red, _unit(red, c[0])) for c in classes)
    sizes = tuple(len(c) for c in classes)
    unip = sum(k * (d - k) for k, d in zip(sizes, dims))
    total = sum(k * d for k, d in zip(sizes, dims)) + len(ghosts)
    return AutGStructure(classes, dims, sizes, len(ghosts), unip, total)
