import itertools

import pytest
from sympy import Matrix

from coxcomb import fan as F
from coxcomb.errors import RaysDoNotSpan
from coxcomb.lattice import fan_lattice, grading_group
from coxcomb.symmetry import cycle_notation, essential_quotient, inertia_group, symmetry_group, symmetry_groups

FANS = {
    "CP2": F.projective_space(2),
    "CP3": F.projective_space(3),
    "CP1xCP1": F.product(F.projective_space(1), F.projective_space(1)),
    "H1": F.hirzebruch(1),
    "H2": F.hirzebruch(2),
    "CE11": F.calabi_eckmann(1, 1),
    "CE12": F.calabi_eckmann(1, 2),
    "hopf": F.hopf_surface(),
    "CP2-partial": F.GeneralizedFan.from_maximal_faces("012", [["0", "1"], ["2"]], [[1, 0], [0, 1], [-1, -1]], 2),
}


def brute_force(fan):
    """All label permutations preserving faces and ghosts and induced by GL(r, Z) on the ray lattice."""
    lat = fan_lattice(fan)
    labels = fan.labels
    C = Matrix([list(c) for c in lat.coords]) if lat.rank else None
    ghosts = set(fan.ghosts)
    out = set()
    for images in itertools.permutations(labels):
        pi = dict(zip(labels, images))
        if {frozenset(pi[s] for s in f) for f in fan.faces} != set(fan.faces):
            continue
        if {pi[g] for g in ghosts} != ghosts:
            continue
        if C is not None:
            T = Matrix([list(lat.coords_of(pi[s])) for s in labels])
            # C G = T with C of full column rank has at most one solution
            G = (C.T * C).inv() * C.T * T
            if C * G != T or any(x.q != 1 for x in G) or abs(G.det()) != 1:
                continue
        out.add(images)
    return out


def degree_preserving(fan, images):
    deg = grading_group(fan).degrees
    return all(deg[s] == deg[t] for s, t in zip(fan.labels, images))


def compose(fan, a, b):
    """(a o b) as an image tuple, with a and b image tuples in label order."""
    pa = dict(zip(fan.labels, a))
    pb = dict(zip(fan.labels, b))
    return tuple(pa[pb[s]] for s in fan.labels)


def inverse(fan, a):
    inv = {t: s for s, t in zip(fan.labels, a)}
    return tuple(inv[s] for s in fan.labels)


@pytest.mark.parametrize("name", sorted(FANS))
def test_symmetry_group_matches_brute_force(name):
    fan = FANS[name]
    G = symmetry_groups(fan)
    assert {e.images for e in G.elements} == brute_force(fan)
    assert {e.images for e in G.inertia} == {p for p in brute_force(fan) if degree_preserving(fan, p)}


@pytest.mark.parametrize("name", sorted(FANS))
def test_inertia_is_normal_and_cosets_partition(name):
    fan = FANS[name]
    G = symmetry_groups(fan)
    elems = {e.images for e in G.elements}
    inertia = {e.images for e in G.inertia}
    for g in elems:
        assert {compose(fan, compose(fan, g, h), inverse(fan, g)) for h in inertia} == inertia
    cosets = {frozenset(compose(fan, r.images, h) for h in inertia) for r in G.coset_representatives}
    assert len(cosets) == G.quotient_order
    assert set().union(*cosets) == elems
    assert G.order == G.inertia_order * G.quotient_order


@pytest.mark.parametrize("name", sorted(FANS))
def test_generators_generate(name):
    fan = FANS[name]
    G = symmetry_groups(fan)
    ident = tuple(fan.labels)
    group, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in G.generators:
                b = compose(fan, g.images, a)
                if b not in group:
                    group.add(b)
                    nxt.append(b)
        frontier = nxt
    assert group == {e.images for e in G.elements}


def test_matrices_realize_the_permutations():
    fan = F.hirzebruch(2)
    lat = fan_lattice(fan)
    for e in symmetry_group(fan):
        for s in fan.labels:
            c = lat.coords_of(s)
            image = tuple(sum(c[a] * e.matrix[a][b] for a in range(lat.rank)) for b in range(lat.rank))
            assert image == lat.coords_of(e(s))


def test_known_orders():
    assert symmetry_groups(F.projective_space(2)).order == 6
    assert len(essential_quotient(F.projective_space(2))) == 1
    p1p1 = symmetry_groups(FANS["CP1xCP1"])
    assert (p1p1.order, p1p1.inertia_order, p1p1.quotient_order) == (8, 4, 2)
    for a in range(1, 4):
        h = symmetry_groups(F.hirzebruch(a))
        assert (h.order, h.inertia_order, h.quotient_order) == (2, 2, 1)
    ce = symmetry_groups(F.calabi_eckmann(1, 1))
    assert ce.quotient_order == 2
    assert len(inertia_group(F.calabi_eckmann(1, 2))) == 12


def test_cycle_notation():
    assert cycle_notation(("a", "b", "c"), ("b", "c", "a")) == "(a b c)"
    assert cycle_notation(("a", "b"), ("a", "b")) == "()"


def test_non_spanning_rays():
    fan = F.GeneralizedFan.from_maximal_faces("ab", [["a"], ["b"]], [[1, 0], [-1, 0]], 2)
    G = symmetry_groups(fan)
    assert G.restricted_to_span and G.order == 2
    with pytest.raises(RaysDoNotSpan):
        symmetry_groups(fan, restrict_to_span=False)
