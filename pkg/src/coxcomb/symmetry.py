"""Combinatorial symmetries of a fan.

``S`` is the group of label permutations that preserve the complex and the
ghost labels and are induced by an automorphism ``g`` of the ray lattice,
``rho(pi(s)) = g(rho(s))``.  The subgroup ``I`` consists of those
permutations that keep every variable inside its own degree class; it is
normal, and ``ES = S / I`` is the group of components beyond the identity
component.

Elements are found by backtracking: labels whose rays form a lattice basis
are placed first, which pins down ``g``, and the remaining labels are then
forced up to repeated rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import RaysDoNotSpan
from .exactlin import rank, rref
from .fan import GeneralizedFan
from .lattice import fan_lattice, grading_group

__all__ = ["FanSymmetry", "SymmetryGroups", "symmetry_groups", "symmetry_group",
           "inertia_group", "essential_quotient", "cycle_notation"]


@dataclass(frozen=True)
class FanSymmetry:
    """A label permutation (as a tuple of images in label order) and its lattice matrix.

    The matrix acts on row vectors of ray coordinates: ``coords[pi(s)] == coords[s] @ matrix``.
    """

    labels: tuple
    images: tuple
    matrix: tuple

    def __call__(self, label):
        return self.images[self.labels.index(label)]

    @property
    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.images))

    def is_identity(self) -> bool:
        return self.images == self.labels

    def __str__(self):
        return cycle_notation(self.labels, self.images)


def cycle_notation(labels, images) -> str:
    img = dict(zip(labels, images))
    seen, cycles = set(), []
    for s in labels:
        if s in seen or img[s] == s:
            seen.add(s)
            continue
        cyc, t = [], s
        while t not in seen:
            seen.add(t)
            cyc.append(t)
            t = img[t]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "()"


def _compose(p, q):
    """``p o q`` for permutations given as index tuples."""
    return tuple(p[i] for i in q)


def _solve_matrix(B, T):
    """Rational ``g`` with ``B g = T`` for an invertible square ``B``."""
    r = len(B)
    aug = [list(B[i]) + list(T[i]) for i in range(r)]
    R, piv = rref(aug, 2 * r)
    return [row[r:] for row in R]


@dataclass(frozen=True)
class SymmetryGroups:
    labels: tuple
    elements: tuple
    inertia: tuple
    coset_representatives: tuple
    generators: tuple
    quotient_generators: tuple
    restricted_to_span: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def inertia_order(self) -> int:
        return len(self.inertia)

    @property
    def quotient_order(self) -> int:
        return len(self.coset_representatives)


def _enumerate(fan: GeneralizedFan):
    lat = fan_lattice(fan)
    labels = fan.labels
    n, r = len(labels), lat.rank
    C = lat.coords
    ghosts = set(fan.ghosts)
    grading = grading_group(fan)
    class_size = {s: len(grading.class_of(s)) for s in labels}
    nfaces = {s: sum(1 for f in fan.maximal_faces if s in f) for s in labels}

    def content(v):
        g = 0
        for x in v:
            g = gcd(g, x)
        return g

    inv = {s: (s in ghosts, content(C[i]), class_size[s], nfaces[s]) for i, s in enumerate(labels)}

    basis, chosen = [], []
    for i in range(n):
        if len(basis) == r:
            break
        if rank([list(C[j]) for j in chosen + [i]], r) > len(chosen):
            chosen.append(i)
            basis.append(labels[i])
    order = basis + [s for s in labels if s not in basis]
    idx = fan.index
    if r:
        inv_b = _solve_matrix([C[idx[b]] for b in basis], [[int(i == j) for j in range(r)] for i in range(r)])
        den = 1
        for row in inv_b:
            for x in row:
                den = lcm(den, Fraction(x).denominator)
        adj = [[int(x * den) for x in row] for row in inv_b]
    faces_of = {s: [f for f in fan.maximal_faces if s in f] for s in labels}
    by_coords = {}
    for i, s in enumerate(labels):
        by_coords.setdefault(C[i], []).append(s)

    results = []
    assign, used = {}, set()

    def faces_ok(s):
        for f in faces_of[s]:
            dom = [t for t in f if t in assign]
            if frozenset(assign[t] for t in dom) not in fan.faces:
                return False
        return True

    def rec(k, g):
        if k == n:
            results.append((tuple(assign[s] for s in labels), g))
            return
        s = order[k]
        if k < r:
            cands = [t for t in labels if t not in used and inv[t] == inv[s]]
        else:
            target = tuple(sum(C[idx[s]][a] * g[a][b] for a in range(r)) for b in range(r)) if r else ()
            cands = [t for t in by_coords.get(target, []) if t not in used and inv[t] == inv[s]]
        for t in cands:
            assign[s] = t
            used.add(t)
            if faces_ok(s):
                g2, ok = g, True
                if k == r - 1:
                    # g = B^-1 T must be integral.  Once every label is placed g
                    # permutes a generating set of the lattice, so it is unimodular.
                    T = [C[idx[assign[b]]] for b in basis]
                    num = [[sum(adj[i][a] * T[a][j] for a in range(r)) for j in range(r)] for i in range(r)]
                    ok = all(x % den == 0 for row in num for x in row)
                    g2 = tuple(tuple(x // den for x in row) for row in num) if ok else None
                if ok:
                    rec(k + 1, g2)
            del assign[s]
            used.discard(t)

    rec(0, () if r == 0 else None)
    return results, lat


@lru_cache(maxsize=256)
def symmetry_groups(fan: GeneralizedFan, restrict_to_span: bool = True) -> SymmetryGroups:
    lat = fan_lattice(fan)
    restricted = not lat.spans_ambient
    if restricted and not restrict_to_span:
        raise RaysDoNotSpan("the rays do not span the ambient space")
    raw, _ = _enumerate(fan)
    labels = fan.labels
    idx = fan.index
    perms = sorted((tuple(idx[t] for t in p), g) for p, g in raw)
    elements = tuple(FanSymmetry(labels, tuple(labels[i] for i in p), g) for p, g in perms)
    index_perms = [p for p, _ in perms]

    classes = grading_group(fan).classes
    class_id = [None] * len(labels)
    for c, members in enumerate(classes):
        for t in members:
            class_id[idx[t]] = c
    # Left cosets of I are told apart by where each degree class is sent.
    def class_map(p):
        return tuple(class_id[p[idx[members[0]]]] for members in classes)

    ident_map = tuple(range(len(classes)))
    inertia = tuple(e for e, p in zip(elements, index_perms) if class_map(p) == ident_map)
    reps, seen = [], set()
    for e, p in zip(elements, index_perms):
        key = class_map(p)
        if key not in seen:
            seen.add(key)
            reps.append(e)

    ident = tuple(range(len(labels)))
    gens = _generators(index_perms, {ident})
    inertia_set = {p for p, e in zip(index_perms, elements) if e in set(inertia)}
    rep_perms = [tuple(idx[t] for t in e.images) for e in reps]
    qgens = _generators(rep_perms, inertia_set, extra=list(_generators(sorted(inertia_set), {ident})))
    lookup = {p: e for p, e in zip(index_perms, elements)}
    return SymmetryGroups(labels, elements, inertia, tuple(reps),
                          tuple(lookup[p] for p in gens), tuple(lookup[p] for p in qgens), restricted)


def _closure(gens, start):
    group = set(start)
    frontier = list(group)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _compose(g, a)
                if b not in group:
                    group.add(b)
                    nxt.append(b)
        frontier = nxt
    return group


def _generators(perms, start, extra=()):
    """Greedy generating set for the group generated by ``start`` and ``perms``."""
    gens, group = [], set(start)
    for p in perms:
        if p not in group:
            gens.append(p)
            group = _closure(list(extra) + gens, group | {p})
    return gens


def symmetry_group(fan: GeneralizedFan) -> tuple:
    return symmetry_groups(fan).elements


def inertia_group(fan: GeneralizedFan) -> tuple:
    return symmetry_groups(fan).inertia


def essential_quotient(fan: GeneralizedFan) -> tuple:
    """Coset representatives of ``S / I``, one per component."""
    return symmetry_groups(fan).coset_representatives
