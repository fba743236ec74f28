"""Generalized fans: a labelled simplicial complex together with a ray map.

A :class:`GeneralizedFan` is a finite label set ``S``, a simplicial complex
``K`` on ``S`` (stored as the set of all faces, including the empty one), a
real vector space of dimension ``ambient_dim`` over Q(sqrt d), and a ray
``rho(s)`` for every label.  Rays may repeat, vanish or sit in lower
dimensional position; labels that belong to no face are *ghosts*.

The cone of a face is the non-negative span of its rays; the fan is
complete when these cones cover the whole space.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (DimensionMismatch, Infeasible, MalformedComplex, NoPositiveCombination,
                     NotComplete, ParseError, UnknownFace, UnknownLabel)
from .exactlin import (Constraint, Subspace, kernel, lp_feasible, mat_vec, rank,
                       rational_closure)
from .scalar import ComplexScalar, FieldContext, Scalar, as_scalar

__all__ = [
    "GeneralizedFan", "FanValidity", "Membership", "Completeness", "Rationalization",
    "GhostReduction", "validate", "cone_membership", "is_complete", "positive_combination",
    "pushforward", "quotient_fan", "canonical_development", "rationalize", "is_rational",
    "reduce_ghosts", "in_cox_construction", "downward_closure", "product", "relabel",
    "projective_space", "calabi_eckmann", "hirzebruch", "hopf_surface", "example_fan",
    "fan_to_json", "fan_from_json", "ray_operator",
]


def downward_closure(faces: Iterable[Iterable[str]]) -> frozenset:
    out = {frozenset()}
    for f in faces:
        f = tuple(f)
        for k in range(len(f) + 1):
            out.update(frozenset(c) for c in itertools.combinations(f, k))
    return frozenset(out)


@dataclass(frozen=True)
class GeneralizedFan:
    labels: tuple
    faces: frozenset
    ambient_dim: int
    rays: tuple
    field_d: int = 0
    provenance: tuple = field(default=(), compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        object.__setattr__(self, "faces", frozenset(frozenset(str(s) for s in f) for f in self.faces) | {frozenset()})
        object.__setattr__(self, "rays", tuple(tuple(as_scalar(x) for x in r) for r in self.rays))

    @classmethod
    def from_maximal_faces(cls, labels: Sequence, maximal_faces: Iterable[Iterable], rays,
                           ambient_dim: int | None = None, field_d: int = 0, provenance=()):
        """Build a fan from its maximal faces; ``rays`` is a sequence or a label mapping."""
        labels = tuple(str(s) for s in labels)
        if isinstance(rays, Mapping):
            rays = [rays[s] for s in labels]
        rays = tuple(tuple(r) for r in rays)
        if ambient_dim is None:
            ambient_dim = len(rays[0]) if rays else 0
        faces = downward_closure([[str(s) for s in f] for f in maximal_faces])
        return cls(labels, faces, ambient_dim, rays, field_d, tuple(provenance))

    # -- derived data -------------------------------------------------------
    @cached_property
    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.labels)}

    def ray(self, label) -> tuple:
        try:
            return self.rays[self.index[str(label)]]
        except KeyError:
            raise UnknownLabel(f"no label {label!r}") from None

    @cached_property
    def ray_map(self) -> dict:
        return dict(zip(self.labels, self.rays))

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(s for f in self.faces for s in f)

    @cached_property
    def ghosts(self) -> tuple:
        return tuple(s for s in self.labels if s not in self.vertices)

    @cached_property
    def maximal_faces(self) -> tuple:
        faces = sorted(self.faces, key=lambda f: (-len(f), self._face_key(f)))
        out = []
        for f in faces:
            if not any(f < g for g in out):
                out.append(f)
        return tuple(sorted(out, key=self._face_key))

    def _face_key(self, f) -> tuple:
        return tuple(sorted(self.index.get(s, -1) for s in f))

    def sorted_face(self, f) -> tuple:
        return tuple(sorted(f, key=lambda s: self.index[s]))

    @cached_property
    def is_rational_coordinates(self) -> bool:
        return all(x.is_rational for r in self.rays for x in r)

    @cached_property
    def numeric_rays(self) -> tuple:
        """Rays as Fractions when possible (faster), otherwise as Scalars."""
        if self.is_rational_coordinates:
            return tuple(tuple(x.a for x in r) for r in self.rays)
        return self.rays

    def with_provenance(self, *steps) -> "GeneralizedFan":
        return GeneralizedFan(self.labels, self.faces, self.ambient_dim, self.rays,
                              self.field_d, self.provenance + tuple(steps))

    def __repr__(self):
        return (f"GeneralizedFan(labels={list(self.labels)}, dim={self.ambient_dim}, "
                f"maximal_faces={[list(self.sorted_face(f)) for f in self.maximal_faces]})")


def ray_operator(fan: GeneralizedFan):
    """Matrix (ambient_dim x |S|) whose columns are the rays."""
    R = fan.numeric_rays
    return [[R[j][i] for j in range(len(fan.labels))] for i in range(fan.ambient_dim)]


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class FanValidity:
    ok: bool
    n_labels: int
    n_faces: int
    ambient_dim: int
    ghosts: tuple


def validate(fan: GeneralizedFan) -> FanValidity:
    labels = set(fan.labels)
    if len(labels) != len(fan.labels):
        raise MalformedComplex("duplicate labels")
    for f in fan.faces:
        extra = f - labels
        if extra:
            raise MalformedComplex(f"face uses unknown labels {sorted(extra)}")
        for s in f:
            if f - {s} not in fan.faces:
                raise MalformedComplex(f"face {sorted(f)} is present but its subface {sorted(f - {s})} is not")
    if len(fan.rays) != len(fan.labels):
        raise DimensionMismatch("need exactly one ray per label")
    for s, r in zip(fan.labels, fan.rays):
        if len(r) != fan.ambient_dim:
            raise DimensionMismatch(f"ray of {s} has {len(r)} coordinates, ambient dimension is {fan.ambient_dim}")
        for x in r:
            if x.d and x.d != fan.field_d:
                raise DimensionMismatch(f"ray of {s} has an entry outside Q(sqrt {fan.field_d})")
    return FanValidity(True, len(fan.labels), len(fan.faces), fan.ambient_dim, fan.ghosts)


def _check_face(fan, face) -> frozenset:
    f = frozenset(str(s) for s in face)
    if f not in fan.faces:
        raise UnknownFace(f"{sorted(f)} is not a face")
    return f


# ---------------------------------------------------------------------------
# cones

@dataclass(frozen=True)
class Membership:
    """Result of a cone test.

    ``coefficients`` (label -> value) writes the vector as a non-negative
    combination when it lies in the cone; otherwise ``separator`` is a
    covector that is non-negative on the cone and negative on the vector.
    """

    member: bool
    coefficients: dict | None = None
    separator: tuple | None = None

    def __bool__(self):
        return self.member


def cone_membership(fan: GeneralizedFan, face, v) -> Membership:
    f = _check_face(fan, face)
    if len(v) != fan.ambient_dim:
        raise DimensionMismatch("vector does not live in the ambient space")
    labels = fan.sorted_face(f)
    rays = [fan.numeric_rays[fan.index[s]] for s in labels]
    v = [_numeric(x, fan) for x in v]
    n, k = fan.ambient_dim, len(labels)
    cons = [Constraint(tuple(r[i] for r in rays), "=", v[i]) for i in range(n)]
    cons += [Constraint(tuple(1 if j == i else 0 for j in range(k)), ">=", 0) for i in range(k)]
    if k == 0:
        if all(not x for x in v):
            return Membership(True, {})
    else:
        try:
            lam = lp_feasible(cons, k)
            return Membership(True, dict(zip(labels, lam)))
        except Infeasible:
            pass
    # Farkas alternative: y.rho(s) >= 0 on the face, y.v <= -1.
    sep = [Constraint(tuple(r), ">=", 0) for r in rays] + [Constraint(tuple(v), "<=", -1)]
    y = lp_feasible(sep, n)
    return Membership(False, separator=tuple(y))


def _numeric(x, fan):
    s = as_scalar(x)
    if fan.is_rational_coordinates and s.is_rational:
        return s.a
    return s


def positive_combination(fan: GeneralizedFan) -> dict:
    """Coefficients ``lambda_s >= 1`` with ``sum lambda_s rho(s) = 0``."""
    A = ray_operator(fan)
    m = len(fan.labels)
    cons = [Constraint(tuple(row), "=", 0) for row in A]
    try:
        lam = lp_feasible(cons, m, strict_positive=range(m))
    except Infeasible:
        raise NoPositiveCombination("the rays admit no strictly positive vanishing combination") from None
    return dict(zip(fan.labels, lam))


# ---------------------------------------------------------------------------
# completeness

@dataclass(frozen=True)
class Completeness:
    """``complete`` plus a point in no cone when the fan is not complete.

    ``n_chambers`` counts the chambers of the wall arrangement that were
    checked; each chamber lies inside or outside every full-dimensional cone.
    """

    complete: bool
    witness: tuple | None
    n_chambers: int

    def __bool__(self):
        return self.complete


def _primitive_direction(h):
    lead = next(a for a in h if a)
    return tuple(a / abs(lead) for a in h)


def _facet_normals(rays, n):
    """Inward normals of the facets of the full-dimensional cone spanned by ``rays``."""
    uniq = []
    for r in rays:
        if any(r) and r not in uniq:
            uniq.append(r)
    normals = []
    for sub in itertools.combinations(uniq, n - 1):
        K = kernel([list(r) for r in sub], n)
        if K.dim != 1:
            continue
        h = K.basis[0]
        vals = [sum((a * b for a, b in zip(h, r)), 0) for r in uniq]
        if all(v >= 0 for v in vals):
            h = _primitive_direction(h)
        elif all(v <= 0 for v in vals):
            h = _primitive_direction([-a for a in h])
        else:
            continue
        if h not in normals:
            normals.append(h)
    return normals


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def _chambers(hyperplanes, n):
    """Interior points of all chambers of a central arrangement."""
    chambers = [((), (Fraction(0),) * n)]
    for h in hyperplanes:
        nxt = []
        for signs, p in chambers:
            val = _dot(h, p)
            for side in (1, -1):
                if val * side > 0:
                    nxt.append((signs + (side,), p))
                    continue
                cons = [Constraint(tuple(s * a for a in g), ">=", 1) for s, g in zip(signs, hyperplanes)]
                cons.append(Constraint(tuple(side * a for a in h), ">=", 1))
                try:
                    q = lp_feasible(cons, n)
                except Infeasible:
                    continue
                nxt.append((signs + (side,), tuple(q)))
        chambers = nxt
    return [p for _, p in chambers]


@lru_cache(maxsize=256)
def is_complete(fan: GeneralizedFan) -> Completeness:
    """Decide exactly whether the cones of ``fan`` cover the ambient space.

    Only full-dimensional cones can contribute interior points, and each is the
    intersection of its facet half-spaces.  Every chamber of the arrangement
    of all facet hyperplanes therefore lies in a cone or misses its interior,
    so testing one interior point per chamber decides coverage.
    """
    n = fan.ambient_dim
    if n == 0:
        return Completeness(True, None, 1)
    R = fan.numeric_rays
    cones = []
    for f in fan.maximal_faces:
        rays = [R[fan.index[s]] for s in f]
        if rank(rays, n) < n:
            continue
        normals = _facet_normals(rays, n)
        if not normals:
            return Completeness(True, None, 1)
        cones.append(normals)
    hyperplanes = []
    for normals in cones:
        for h in normals:
            key = _primitive_direction(h) if next(a for a in h if a) > 0 else _primitive_direction([-a for a in h])
            if key not in hyperplanes:
                hyperplanes.append(key)
    points = _chambers(hyperplanes, n)
    for p in points:
        if not any(all(_dot(h, p) > 0 for h in normals) for normals in cones):
            thin = [Subspace.from_vectors([R[fan.index[s]] for s in f], n) for f in fan.maximal_faces]
            return Completeness(False, _generic_point(p, hyperplanes, thin, n), len(points))
    return Completeness(True, None, len(points))


def _generic_point(p, hyperplanes, spans, n):
    """A point of the open chamber of ``p`` outside every proper subspace in ``spans``.

    Moves ``p`` along the moment curve by less than its distance to each
    wall; only finitely many steps can land in a given proper subspace.
    """
    spans = [W for W in spans if W.dim < n]
    for t in itertools.count(1):
        w = [Fraction(t) ** k for k in range(n)]
        slack = min((abs(_dot(h, p)) for h in hyperplanes), default=1)
        push = max((abs(_dot(h, w)) for h in hyperplanes), default=0)
        q = tuple(a + slack * b / (1 + push) for a, b in zip(p, w))
        if not any(W.contains(q) for W in spans):
            return q


# ---------------------------------------------------------------------------
# morphisms and quotients

def pushforward(fan: GeneralizedFan, A) -> GeneralizedFan:
    """Image of ``fan`` under the linear map with matrix ``A`` (target_dim x ambient_dim)."""
    A = [[as_scalar(x) for x in row] for row in A]
    for row in A:
        if len(row) != fan.ambient_dim:
            raise DimensionMismatch(f"map has {len(row)} columns, fan lives in dimension {fan.ambient_dim}")
    d = fan.field_d
    for row in A:
        for x in row:
            if x.d and d and x.d != d:
                raise DimensionMismatch("map and fan use different quadratic fields")
            d = d or x.d
    rays = tuple(tuple(mat_vec(A, r)) for r in fan.rays)
    return GeneralizedFan(fan.labels, fan.faces, len(A), rays, d,
                          fan.provenance + (f"pushforward to dimension {len(A)}",))


def quotient_fan(fan: GeneralizedFan, L: Subspace) -> GeneralizedFan:
    """The fan ``fan / L`` in ``V / L``, with coordinates on the echelon complement of ``L``."""
    if L.ambient_dim != fan.ambient_dim:
        raise DimensionMismatch("subspace and fan live in different dimensions")
    Q = L.quotient_map()
    out = pushforward(fan, Q)
    return GeneralizedFan(out.labels, out.faces, out.ambient_dim, out.rays, out.field_d,
                          fan.provenance + (f"quotient by a {L.dim}-dimensional subspace",))


def canonical_development(fan: GeneralizedFan) -> GeneralizedFan:
    """The same complex with rays the standard basis of ``R^S``."""
    m = len(fan.labels)
    rays = tuple(tuple(1 if j == i else 0 for j in range(m)) for i in range(m))
    return GeneralizedFan(fan.labels, fan.faces, m, rays, 0, fan.provenance + ("canonical development",))


@dataclass(frozen=True)
class Rationalization:
    """The rationalized fan, the closure of the kernel in ``R^S`` and the projection ``R^S -> V'``."""

    fan: GeneralizedFan
    kernel_closure: Subspace
    projection: tuple


def ray_kernel(fan: GeneralizedFan) -> Subspace:
    return kernel(ray_operator(fan), len(fan.labels))


@lru_cache(maxsize=256)
def rationalize(fan: GeneralizedFan) -> Rationalization:
    W = rational_closure(ray_kernel(fan))
    Q = W.quotient_map()
    m = len(fan.labels)
    rays = tuple(tuple(Q[i][j] for i in range(len(Q))) for j in range(m))
    out = GeneralizedFan(fan.labels, fan.faces, len(Q), rays, 0,
                         fan.provenance + ("rationalization",))
    return Rationalization(out, W, tuple(tuple(r) for r in Q))


def is_rational(fan: GeneralizedFan) -> bool:
    """True when the rays generate a discrete group, i.e. rationalizing loses nothing."""
    if fan.is_rational_coordinates:
        return True
    K = ray_kernel(fan)
    return rational_closure(K).dim == K.dim


# ---------------------------------------------------------------------------
# ghosts

@dataclass(frozen=True)
class GhostReduction:
    """The fan without its ghost labels, and each ghost ray written in terms of the others.

    ``expressions[g]`` holds non-negative coefficients supported on a single
    face; ``integer_expressions[g]`` holds non-negative integers, when the
    fan is rational.
    """

    reduced: GeneralizedFan
    ghosts: tuple
    expressions: dict
    integer_expressions: dict


def _restrict(fan: GeneralizedFan, keep: Sequence[str], note: str) -> GeneralizedFan:
    keep_set = set(keep)
    labels = tuple(s for s in fan.labels if s in keep_set)
    faces = frozenset(f for f in fan.faces if f <= keep_set)
    rays = tuple(fan.ray(s) for s in labels)
    return GeneralizedFan(labels, faces, fan.ambient_dim, rays, fan.field_d, fan.provenance + (note,))


def _integer_combination(rays, target):
    """Integers ``c`` with ``sum c_i rays_i = target``, or ``None``."""
    from .exactlin import clear_denominators, smith_normal_form

    if not rays:
        return [] if not any(target) else None
    mat, den = clear_denominators([list(r) for r in rays] + [list(target)])
    M, t = mat[:-1], mat[-1]
    snf = smith_normal_form(M, len(t))
    # x M = t  <=>  (x U) D = t W^-1
    tw = [sum(t[k] * snf.W_inv[k][j] for k in range(len(t))) for j in range(len(t))]
    y = [0] * len(M)
    for j, v in enumerate(tw):
        dj = snf.D[j][j] if j < len(M) else 0
        if dj:
            if v % dj:
                return None
            y[j] = v // dj
        elif v:
            return None
    return [sum(y[k] * snf.U_inv[k][i] for k in range(len(M))) for i in range(len(M))]


def reduce_ghosts(fan: GeneralizedFan) -> GhostReduction:
    ghosts = fan.ghosts
    reduced = _restrict(fan, [s for s in fan.labels if s not in set(ghosts)], "ghost reduction")
    expressions, integer_expressions = {}, {}
    for g in ghosts:
        target = fan.numeric_rays[fan.index[g]]
        for f in reduced.maximal_faces:
            res = cone_membership(reduced, f, target)
            if res.member:
                coeffs = {s: res.coefficients.get(s, 0) for s in reduced.sorted_face(f)}
                break
        else:
            raise NotComplete(f"the ray of ghost {g} lies in no cone, so the fan is not complete")
        expressions[g] = coeffs
        if fan.is_rational_coordinates:
            integer_expressions[g] = _nonneg_integer_expression(reduced, target, coeffs)
    return GhostReduction(reduced, ghosts, expressions, integer_expressions)


def _nonneg_integer_expression(reduced, target, face_coeffs):
    if all(Fraction(c).denominator == 1 for c in face_coeffs.values()):
        return {s: int(c) for s, c in face_coeffs.items() if c}
    rays = [reduced.numeric_rays[i] for i in range(len(reduced.labels))]
    x = _integer_combination(rays, target)
    if x is None:
        return None
    try:
        lam = positive_combination(reduced)
    except NoPositiveCombination:
        return None
    from math import lcm

    den = 1
    for v in lam.values():
        den = lcm(den, Fraction(v).denominator)
    q = [int(lam[s] * den) for s in reduced.labels]
    k = max([0] + [-(xi // qi) for xi, qi in zip(x, q)])
    c = [xi + k * qi for xi, qi in zip(x, q)]
    return {s: ci for s, ci in zip(reduced.labels, c) if ci}


def in_cox_construction(fan: GeneralizedFan, z: Mapping | Sequence) -> bool:
    """True when the zero coordinates of ``z`` form a face."""
    if isinstance(z, Mapping):
        vals = [z[s] for s in fan.labels]
    else:
        vals = list(z)
    if len(vals) != len(fan.labels):
        raise DimensionMismatch("point needs one coordinate per label")
    zeros = frozenset(s for s, v in zip(fan.labels, vals) if not v)
    return zeros in fan.faces


# ---------------------------------------------------------------------------
# constructions

def relabel(fan: GeneralizedFan, mapping: Mapping | callable) -> GeneralizedFan:
    f = mapping if callable(mapping) else (lambda s: mapping[s])
    labels = tuple(f(s) for s in fan.labels)
    faces = frozenset(frozenset(f(s) for s in face) for face in fan.faces)
    return GeneralizedFan(labels, faces, fan.ambient_dim, fan.rays, fan.field_d, fan.provenance)


def product(f: GeneralizedFan, g: GeneralizedFan) -> GeneralizedFan:
    """Product fan: joined complexes, direct sum of spaces."""
    if set(f.labels) & set(g.labels):
        f = relabel(f, lambda s: "L." + s)
        g = relabel(g, lambda s: "R." + s)
    if f.field_d and g.field_d and f.field_d != g.field_d:
        raise DimensionMismatch("factors use different quadratic fields")
    zf, zg = (Scalar(0),) * f.ambient_dim, (Scalar(0),) * g.ambient_dim
    rays = tuple(r + zg for r in f.rays) + tuple(zf + r for r in g.rays)
    faces = frozenset(a | b for a in f.faces for b in g.faces)
    prov = (f"product of [{'; '.join(f.provenance)}] and [{'; '.join(g.provenance)}]",)
    return GeneralizedFan(f.labels + g.labels, faces, f.ambient_dim + g.ambient_dim, rays,
                          f.field_d or g.field_d, prov)


def projective_space(n: int, prefix: str = "") -> GeneralizedFan:
    """Fan of CP^n: rays e_1..e_n and -(e_1+...+e_n), every proper subset a face.

    For ``n == 0`` this is a single ghost label with the zero ray in R^0.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    labels = [f"{prefix}{i}" for i in range(n + 1)]
    rays = [[1 if j == i else 0 for j in range(n)] for i in range(n)] + [[-1] * n]
    maximal = [[s for s in labels if s != t] for t in labels] if n else []
    return GeneralizedFan.from_maximal_faces(labels, maximal, rays, n, provenance=(f"projective_space({n})",))


def calabi_eckmann(p: int, q: int) -> GeneralizedFan:
    """Product of the fans of CP^p and CP^q with labels x0..xp, y0..yq."""
    fan = product(projective_space(p, "x"), projective_space(q, "y"))
    return fan.with_provenance(f"calabi_eckmann({p},{q})")


def calabi_eckmann_structure(p: int, q: int, alpha=ComplexScalar(0, 1)):
    """The complex structure row ``(1, ..., 1, alpha, ..., alpha)``."""
    alpha = alpha if isinstance(alpha, ComplexScalar) else ComplexScalar.parse(str(alpha))
    return [[ComplexScalar(1)] * (p + 1) + [alpha] * (q + 1)]


def hirzebruch(a: int) -> GeneralizedFan:
    rays = [[1, 0], [0, 1], [-1, a], [0, -1]]
    labels = ["0", "1", "2", "3"]
    maximal = [["0", "1"], ["1", "2"], ["2", "3"], ["3", "0"]]
    return GeneralizedFan.from_maximal_faces(labels, maximal, rays, 2, provenance=(f"hirzebruch({a})",))


def _as_complex(z) -> ComplexScalar:
    if isinstance(z, ComplexScalar):
        return z
    if isinstance(z, complex):
        return ComplexScalar(Fraction(z.real).limit_denominator(), Fraction(z.imag).limit_denominator())
    if isinstance(z, (tuple, list)):
        return ComplexScalar(*z)
    return ComplexScalar.parse(str(z))


def hopf_surface(zeta1=ComplexScalar(1, 1), zeta2=ComplexScalar(1, 2)) -> GeneralizedFan:
    """One-dimensional fan with two opposite rays and a ghost.

    With ``zeta_j = l_j + i m_j`` the rays are ``l2, -l1`` and ``l1 m2 - l2 m1``
    (denominators cleared); ``zeta1`` and ``zeta2`` must be R-independent and
    ``l1, l2 > 0``.
    """
    z1, z2 = _as_complex(zeta1), _as_complex(zeta2)
    l1, m1, l2, m2 = z1.re, z1.im, z2.re, z2.im
    if not (l1 > 0 and l2 > 0):
        raise ValueError("real parts must be positive")
    a3 = l1 * m2 - l2 * m1
    if not a3:
        raise ValueError("zeta1 and zeta2 must be linearly independent over R")
    vals = [l2, -l1, a3]
    if all(v.is_rational for v in vals):
        from math import lcm

        den = 1
        for v in vals:
            den = lcm(den, v.a.denominator)
        vals = [v * den for v in vals]
    fan = GeneralizedFan.from_maximal_faces(["1", "2", "3"], [["1"], ["2"]], [[v] for v in vals], 1,
                                            provenance=(f"hopf_surface({z1},{z2})",))
    return fan


def hopf_structure(zeta1=ComplexScalar(1, 1), zeta2=ComplexScalar(1, 2)):
    """Complex structure row ``(zeta1, zeta2, i)`` on the kernel of the Hopf ray map."""
    return [[_as_complex(zeta1), _as_complex(zeta2), ComplexScalar(0, 1)]]


def _parse_example(example: str):
    name, _, params = example.partition(":")
    return name.strip(), params.strip()


def example_fan(example: str) -> GeneralizedFan:
    """Build an example from ``name:params``.

    ``projective_space:n``, ``calabi_eckmann:p,q``, ``hirzebruch:a``,
    ``hopf_surface`` or ``hopf_surface:re1:im1,re2:im2``, and
    ``product:A*B`` where ``A`` and ``B`` are example strings.
    """
    name, params = _parse_example(example)
    try:
        if name == "projective_space":
            return projective_space(int(params))
        if name == "calabi_eckmann":
            p, q = (int(x) for x in params.split(","))
            return calabi_eckmann(p, q)
        if name == "hirzebruch":
            return hirzebruch(int(params))
        if name == "hopf_surface":
            if not params:
                return hopf_surface()
            z1, z2 = (ComplexScalar.parse(x) for x in params.split(","))
            return hopf_surface(z1, z2)
        if name == "product":
            parts = params.split("*")
            fan = example_fan(parts[0])
            for part in parts[1:]:
                fan = product(fan, example_fan(part))
            return fan
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad parameters for example {name!r}: {exc}") from exc
    raise ParseError(f"unknown example {name!r}")


def example_structure(example: str):
    """Default complex structure for an example string, or ``None``."""
    name, params = _parse_example(example)
    if name == "calabi_eckmann":
        p, q = (int(x) for x in params.split(","))
        return calabi_eckmann_structure(p, q)
    if name == "hopf_surface":
        if not params:
            return hopf_structure()
        z1, z2 = (ComplexScalar.parse(x) for x in params.split(","))
        return hopf_structure(z1, z2)
    if name == "product":
        blocks = [example_structure(p) for p in params.split("*")]
        if any(b is None for b in blocks):
            return None
        return block_diagonal(blocks)
    return None


def block_diagonal(blocks):
    width = sum(len(b[0]) for b in blocks)
    rows, offset = [], 0
    for b in blocks:
        w = len(b[0])
        for row in b:
            rows.append([ComplexScalar(0)] * offset + list(row) + [ComplexScalar(0)] * (width - offset - w))
        offset += w
    return rows


# ---------------------------------------------------------------------------
# JSON

def fan_to_json(fan: GeneralizedFan) -> dict:
    return {
        "field_d": fan.field_d,
        "labels": list(fan.labels),
        "faces": [list(fan.sorted_face(f)) for f in fan.maximal_faces if f],
        "ambient_dim": fan.ambient_dim,
        "rays": {s: [str(x) for x in r] for s, r in zip(fan.labels, fan.rays)},
    }


def fan_from_json(data: dict | str) -> GeneralizedFan:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    try:
        d = int(data.get("field_d", 0))
        FieldContext(d)
        labels = [str(s) for s in data["labels"]]
        faces = [[str(s) for s in f] for f in data["faces"]]
        ambient = int(data["ambient_dim"])
        raw = data["rays"]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"fan JSON is missing or mistypes a field: {exc}") from exc
    missing = [s for s in labels if s not in raw]
    if missing:
        raise DimensionMismatch(f"no ray given for {missing}")
    rays = [[Scalar.parse(x, d) for x in raw[s]] for s in labels]
    fan = GeneralizedFan.from_maximal_faces(labels, faces, rays, ambient, d, provenance=("json",))
    validate(fan)
    return fan
