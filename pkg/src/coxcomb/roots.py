"""Demazure roots and their root subgroups.

A root at the label ``s`` is a covector ``m`` of the ray lattice with
``<m, rho(s)> = 1`` and ``<m, rho(t)> <= 0`` for every other label ``t``.
It is *semisimple* when ``-m`` is a root too, and *geometric* when its root
subgroup preserves the complement of the irrelevant locus, which is a
purely combinatorial condition on the complex.

The root subgroup of ``(s, m)`` is ``z_s -> z_s + lam * prod_t z_t ** (-<m, rho(t)>)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (ExponentNotIntegral, NonInvertibleTorusElement, NotARoot,
                     UnboundedRootPolyhedron)
from .exactlin import Constraint, integer_points
from .fan import GeneralizedFan
from .lattice import fan_lattice
from .scalar import ComplexScalar

__all__ = ["DemazureRoot", "demazure_roots", "geometric_filter", "root_subgroup_apply",
           "conjugation_check", "escape_witness"]


@dataclass(frozen=True)
class DemazureRoot:
    label: str
    covector: tuple
    semisimple: bool = False
    geometric: bool = True

    def __str__(self):
        kind = "semisimple" if self.semisimple else "unipotent"
        geo = "" if self.geometric else ", not geometric"
        return f"{self.label}: {list(self.covector)} ({kind}{geo})"


def _raw_roots(fan: GeneralizedFan):
    lat = fan_lattice(fan)
    r = lat.rank
    out = []
    for s in fan.labels:
        cs = lat.coords_of(s)
        if not any(cs):
            continue
        cons = [Constraint(cs, "=", 1)]
        cons += [Constraint(lat.coords_of(t), "<=", 0) for t in fan.labels if t != s]
        for m in integer_points(cons, r, UnboundedRootPolyhedron):
            out.append((s, tuple(m)))
    return out


def _pairings(fan, m):
    lat = fan_lattice(fan)
    return {t: sum(a * b for a, b in zip(m, lat.coords_of(t))) for t in fan.labels}


def _is_geometric(fan, s, m):
    pair = _pairings(fan, m)
    for sigma in fan.maximal_faces:
        sigma_m = frozenset(t for t in sigma if pair[t] == 0)
        if sigma_m | {s} not in fan.faces:
            return False, sigma
    return True, None


def demazure_roots(fan: GeneralizedFan) -> tuple:
    """All roots, ordered by label and then lexicographically by covector."""
    raw = _raw_roots(fan)
    covectors = {m for _, m in raw}
    out = []
    for s, m in raw:
        neg = tuple(-x for x in m)
        geo, _ = _is_geometric(fan, s, m)
        out.append(DemazureRoot(s, m, neg in covectors, geo))
    return tuple(out)


def _check_root(fan, root: DemazureRoot):
    pair = _pairings(fan, root.covector)
    if pair[root.label] != 1 or any(v > 0 for t, v in pair.items() if t != root.label):
        raise NotARoot(f"{root.covector} is not a root at {root.label}")
    return pair


def geometric_filter(fan: GeneralizedFan, root: DemazureRoot):
    """``(True, None)`` or ``(False, sigma)`` for a maximal face that breaks the condition."""
    _check_root(fan, root)
    ok, sigma = _is_geometric(fan, root.label, root.covector)
    return ok, (fan.sorted_face(sigma) if sigma is not None else None)


def _as_point(fan, z):
    if isinstance(z, Mapping):
        return {s: ComplexScalar._coerce(z[s]) or z[s] for s in fan.labels}
    return {s: ComplexScalar._coerce(v) or v for s, v in zip(fan.labels, z)}


def root_subgroup_apply(fan: GeneralizedFan, root: DemazureRoot, lam, z) -> dict:
    pair = _check_root(fan, root)
    pt = _as_point(fan, z)
    mono = ComplexScalar(1)
    for t in fan.labels:
        if t == root.label:
            continue
        e = -pair[t]
        if e:
            mono = mono * pt[t] ** e
    out = dict(pt)
    out[root.label] = pt[root.label] + ComplexScalar._coerce(lam) * mono
    return out


def _torus(fan, t):
    pt = _as_point(fan, t)
    if any(not v for v in pt.values()):
        raise NonInvertibleTorusElement("torus elements need nonzero coordinates")
    return pt


def conjugation_check(fan: GeneralizedFan, root: DemazureRoot, t, lam, z) -> bool:
    """Check ``t y(lam) t^-1 = y(lam * t_s * prod t_u ** <m, rho(u)>)`` at the point ``z``."""
    pair = _check_root(fan, root)
    tt = _torus(fan, t)
    pt = _as_point(fan, z)
    inv = {s: pt[s] / tt[s] for s in fan.labels}
    moved = root_subgroup_apply(fan, root, lam, inv)
    lhs = {s: tt[s] * moved[s] for s in fan.labels}
    factor = tt[root.label]
    for u in fan.labels:
        if u != root.label and pair[u]:
            factor = factor * tt[u] ** pair[u]
    rhs = root_subgroup_apply(fan, root, ComplexScalar._coerce(lam) * factor, pt)
    return lhs == rhs


def escape_witness(fan: GeneralizedFan, root: DemazureRoot):
    """For a non-geometric root, a point of the Cox construction sent outside it.

    Returns ``(point, lam, sigma)`` where ``sigma`` is a maximal face breaking
    the condition.  The point vanishes exactly on the labels of ``sigma``
    pairing to zero with the root, so its monomial is 1 and ``lam = -1``
    kills the label's coordinate; the new zero set is not a face.
    """
    ok, sigma = geometric_filter(fan, root)
    if ok:
        return None
    pair = _pairings(fan, root.covector)
    zero = {u for u in sigma if pair[u] == 0}
    point = {u: ComplexScalar(0) if u in zero else ComplexScalar(1) for u in fan.labels}
    return point, ComplexScalar(-1), sigma
