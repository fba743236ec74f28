import itertools

import pytest
from hypothesis import given, settings, strategies as st

from coxcomb import fan as F
from coxcomb.errors import NonInvertibleTorusElement, NotARoot
from coxcomb.lattice import fan_lattice
from coxcomb.roots import (
    DemazureRoot, conjugation_check, demazure_roots, escape_witness, geometric_filter,
    root_subgroup_apply,
)
from coxcomb.scalar import ComplexScalar


def partial(base, keep):
    """``base`` with only some maximal faces kept (every ray stays a face)."""
    faces = [list(f) for f in keep] + [[s] for s in base.labels]
    return F.GeneralizedFan.from_maximal_faces(base.labels, faces, base.rays, base.ambient_dim)


COMPLETE = [F.projective_space(2), F.hirzebruch(1), F.hirzebruch(2), F.hirzebruch(4),
            F.calabi_eckmann(1, 1), F.calabi_eckmann(2, 1)]
PARTIAL = [partial(F.projective_space(2), [["0", "1"]]),
           partial(F.projective_space(2), [["0", "1"], ["1", "2"]]),
           partial(F.hirzebruch(2), [["0", "1"], ["0", "3"], ["2", "3"]]),
           partial(F.hirzebruch(1), [["0", "3"], ["1", "2"]])]
ALL = COMPLETE + PARTIAL

ROOTS = [(fan, r) for fan in ALL for r in demazure_roots(fan)]
GEOMETRIC = [(fan, r) for fan, r in ROOTS if r.geometric]
NON_GEOMETRIC = [(fan, r) for fan, r in ROOTS if not r.geometric]

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)
complex_st = st.builds(ComplexScalar, small, small)
nonzero_complex = complex_st.filter(bool)


def pairings(fan, m):
    lat = fan_lattice(fan)
    return tuple(sum(a * b for a, b in zip(m, lat.coords_of(t))) for t in fan.labels)


def brute_force_roots(fan, box=4):
    """Search integer covectors on the ambient lattice; these fans have unimodular ray lattices."""
    found = set()
    for m in itertools.product(range(-box, box + 1), repeat=fan.ambient_dim):
        pair = [sum(a * b for a, b in zip(m, r)) for r in fan.numeric_rays]
        for i, s in enumerate(fan.labels):
            if pair[i] == 1 and all(p <= 0 for j, p in enumerate(pair) if j != i):
                found.add((s, tuple(pair)))
    return found


def escapes_at_some_zero_one_point(fan, root):
    for bits in itertools.product((0, 1), repeat=len(fan.labels)):
        if not F.in_cox_construction(fan, bits):
            continue
        z = [ComplexScalar(b) for b in bits]
        image = root_subgroup_apply(fan, root, -1, z)
        if not F.in_cox_construction(fan, image):
            return True
    return False


@pytest.mark.parametrize("fan", ALL, ids=repr)
def test_roots_match_box_search(fan):
    ours = {(r.label, pairings(fan, r.covector)) for r in demazure_roots(fan)}
    assert ours == brute_force_roots(fan)


@pytest.mark.parametrize("fan", ALL, ids=repr)
def test_geometric_flag_matches_zero_one_escape_search(fan):
    for r in demazure_roots(fan):
        assert r.geometric == (not escapes_at_some_zero_one_point(fan, r))


def test_counts_on_examples():
    rs = demazure_roots(F.projective_space(2))
    assert len(rs) == 6 and all(r.semisimple and r.geometric for r in rs)
    for a in range(1, 6):
        rs = demazure_roots(F.hirzebruch(a))
        assert len(rs) == a + 3
        assert sum(not r.semisimple for r in rs) == a + 1
    for p, q in itertools.product(range(3), repeat=2):
        assert len(demazure_roots(F.calabi_eckmann(p, q))) == p * (p + 1) + q * (q + 1)


def test_not_a_root_is_rejected():
    cp2 = F.projective_space(2)
    with pytest.raises(NotARoot):
        root_subgroup_apply(cp2, DemazureRoot("0", (1, 1)), 1, [1, 1, 1])
    with pytest.raises(NonInvertibleTorusElement):
        r = demazure_roots(cp2)[0]
        conjugation_check(cp2, r, [0, 1, 1], 1, [1, 1, 1])


def test_geometric_filter_reports_a_face():
    fan = PARTIAL[0]
    bad = next(r for r in demazure_roots(fan) if not r.geometric)
    ok, sigma = geometric_filter(fan, bad)
    assert not ok and sigma in {fan.sorted_face(f) for f in fan.maximal_faces}
    assert escape_witness(F.projective_space(2), demazure_roots(F.projective_space(2))[0]) is None


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ROOTS), st.data())
def test_conjugation_identity(case, data):
    fan, root = case
    n = len(fan.labels)
    t = data.draw(st.lists(nonzero_complex, min_size=n, max_size=n))
    z = data.draw(st.lists(nonzero_complex, min_size=n, max_size=n))
    lam = data.draw(complex_st)
    assert conjugation_check(fan, root, t, lam, z)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(GEOMETRIC), st.data())
def test_geometric_roots_preserve_the_cox_construction(case, data):
    fan, root = case
    face = data.draw(st.sampled_from(sorted(fan.faces, key=sorted)))
    z = [ComplexScalar(0) if s in face else data.draw(nonzero_complex) for s in fan.labels]
    lam = data.draw(complex_st)
    assert F.in_cox_construction(fan, z)
    assert F.in_cox_construction(fan, root_subgroup_apply(fan, root, lam, z))


def test_non_geometric_roots_have_escape_witnesses():
    assert NON_GEOMETRIC
    for fan, root in NON_GEOMETRIC:
        point, lam, _ = escape_witness(fan, root)
        assert F.in_cox_construction(fan, point)
        assert not F.in_cox_construction(fan, root_subgroup_apply(fan, root, lam, point))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(NON_GEOMETRIC), st.data())
def test_non_geometric_roots_escape_from_random_points(case, data):
    fan, root = case
    witness, _, _ = escape_witness(fan, root)
    zero = {s for s, v in witness.items() if not v}
    z = [ComplexScalar(0) if s in zero else data.draw(nonzero_complex) for s in fan.labels]
    s = root.label
    mono = root_subgroup_apply(fan, root, 1, z)[s] - z[fan.index[s]]
    assert mono  # the monomial avoids every zero coordinate
    lam = -z[fan.index[s]] / mono
    assert F.in_cox_construction(fan, z)
    assert not F.in_cox_construction(fan, root_subgroup_apply(fan, root, lam, z))
