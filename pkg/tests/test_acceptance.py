"""Acceptance suite: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.  Randomized checks use fixed seeds, so
every run sees the same cases.
"""

import itertools
import json
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from coxcomb import fan as F
from coxcomb.autreport import (
    equivariant_report, moment_angle_report, tilde_aut_report, toric_aut_report, validate_complex_structure,
)
from coxcomb.coxring import autg_structure, graded_dimension
from coxcomb.errors import InvalidComplexStructure, NoPositiveCombination
from coxcomb.exactlin import Subspace, rational_closure, solve
from coxcomb.lattice import fan_lattice, grading_group
from coxcomb.roots import conjugation_check, demazure_roots, escape_witness, root_subgroup_apply
from coxcomb.scalar import ComplexScalar, Scalar
from coxcomb.symmetry import symmetry_groups

FIXTURES = Path(__file__).parent / "fixtures"
R2 = Scalar.sqrt(2)
CASES = 100


class Checks:
    """Collects named sub-checks; a criterion passes when all of them do."""

    def __init__(self):
        self.failed = []
        self.count = 0

    def __call__(self, ok, what):
        self.count += 1
        if not ok:
            self.failed.append(what)


# -- oracles ---------------------------------------------------------------------

def brute_force_roots(fan, box):
    """Roots by scanning integer covectors in a box; valid for fans whose rays generate Z^n."""
    found = set()
    rays = fan.numeric_rays
    for m in itertools.product(range(-box, box + 1), repeat=fan.ambient_dim):
        pair = tuple(sum(a * b for a, b in zip(m, r)) for r in rays)
        for i, s in enumerate(fan.labels):
            if pair[i] == 1 and all(p <= 0 for j, p in enumerate(pair) if j != i):
                found.add((s, pair))
    return found


def root_pairings(fan, roots):
    lat = fan_lattice(fan)
    return {(r.label, tuple(sum(a * b for a, b in zip(r.covector, lat.coords_of(t))) for t in fan.labels))
            for r in roots}


def brute_force_graded_dimension(fan, weights, alpha):
    """Count exponent vectors x >= 0 with x - alpha = (<m, rho(s)>)_s for integral m.

    ``weights`` are positive integers with sum w_s rho(s) = 0, so w . x = w . alpha bounds x.
    """
    budget = sum(w * a for w, a in zip(weights, alpha))
    if budget < 0:
        return 0
    rays = [list(r) for r in fan.numeric_rays]
    count = 0
    for head in itertools.product(*[range(budget // w + 1) for w in weights[:-1]]):
        rest = budget - sum(w * x for w, x in zip(weights, head))
        if rest < 0 or rest % weights[-1]:
            continue
        x = head + (rest // weights[-1],)
        m = solve(rays, [a - b for a, b in zip(x, alpha)], fan.ambient_dim)
        if m is not None and all(Fraction(v).denominator == 1 for v in m):
            count += 1
    return count


def is_nonabelian(group):
    elems = [e.images for e in group.elements]
    labels = group.labels

    def compose(a, b):
        pa, pb = dict(zip(labels, a)), dict(zip(labels, b))
        return tuple(pa[pb[s]] for s in labels)

    return any(compose(a, b) != compose(b, a) for a, b in itertools.combinations(elems, 2))


# -- random generators -------------------------------------------------------------

def rand_fraction(rng, lo=-3, hi=3, den=3):
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def rand_complex(rng, nonzero=False):
    while True:
        z = ComplexScalar(rand_fraction(rng), rand_fraction(rng))
        if z or not nonzero:
            return z


def rand_planar_fan(rng, irrational):
    """Rays sorted by angle, with a cone between each pair of neighbours closer than a half turn."""
    pool = {}
    while len(pool) < rng.randint(3, 6):
        a, b = rng.randint(-2, 2), rng.randint(-2, 2)
        c = rng.randint(-1, 1) if irrational else 0
        v = (Scalar(a, c, 2), Scalar(b))
        if not (a or c) and not b:
            continue
        pool[math.atan2(float(v[1].a), float(v[0].a) + float(v[0].b) * math.sqrt(2))] = v
    rays = [pool[k] for k in sorted(pool)]
    labels = [f"r{i}" for i in range(len(rays))]
    maximal = [[s] for s in labels]
    for i in range(len(rays)):
        u, w = rays[i], rays[(i + 1) % len(rays)]
        if (u[0] * w[1] - u[1] * w[0]).sign() > 0:
            maximal.append([labels[i], labels[(i + 1) % len(rays)]])
    return F.GeneralizedFan.from_maximal_faces(labels, maximal, rays, 2, field_d=2 if irrational else 0)


def rand_quadratic_fan(rng):
    n, m = rng.randint(1, 3), rng.randint(2, 5)
    rays = [[Scalar(rng.randint(-2, 2), rng.randint(-1, 1), 2) for _ in range(n)] for _ in range(m)]
    labels = [str(i) for i in range(m)]
    faces = [rng.sample(labels, rng.randint(0, min(n, m))) for _ in range(rng.randint(0, 3))]
    return F.GeneralizedFan.from_maximal_faces(labels, faces, rays, n, field_d=2)


def partial_fan(base, keep):
    faces = [list(f) for f in keep] + [[s] for s in base.labels]
    return F.GeneralizedFan.from_maximal_faces(base.labels, faces, base.rays, base.ambient_dim)


ROOT_FANS = [F.projective_space(2), F.hirzebruch(1), F.hirzebruch(3), F.calabi_eckmann(1, 1),
             F.calabi_eckmann(2, 1), F.projective_space(3),
             partial_fan(F.projective_space(2), [["0", "1"]]),
             partial_fan(F.projective_space(2), [["0", "1"], ["1", "2"]]),
             partial_fan(F.hirzebruch(2), [["0", "1"], ["0", "3"], ["2", "3"]]),
             partial_fan(F.hirzebruch(1), [["0", "3"], ["1", "2"]]),
             partial_fan(F.product(F.projective_space(1), F.projective_space(1)), [["L.0", "R.0"]])]


# -- criteria --------------------------------------------------------------------

def criterion_1(check):
    cp2 = F.projective_space(2)
    g = grading_group(cp2)
    check(g.invariant_factors == () and g.free_rank == 1, "grading group is Z")
    check(len(set(g.degrees.values())) == 1, "all degrees equal")
    roots = demazure_roots(cp2)
    check(len(roots) == 6, "six roots")
    check(all(r.semisimple and r.geometric for r in roots), "roots semisimple and geometric")
    check(autg_structure(cp2).total == 9, "dim Aut_g = 9 from the graded pieces")
    check(len(cp2.labels) + len(roots) == 9, "dim Aut_g = |S| + #roots = 9")
    check(tilde_aut_report(cp2).dim_aut0 == 9, "report agrees")
    G = symmetry_groups(cp2)
    check(G.order == 6 and is_nonabelian(G), "S is a nonabelian group of order 6")
    check(G.quotient_order == 1, "ES trivial")


def criterion_2(check):
    cp2 = F.projective_space(2)
    q = F.quotient_fan(cp2, Subspace.from_vectors([[1, R2]], 2))
    r = F.rationalize(q)
    check(r.fan.ambient_dim == 0, "rationalized ambient space is 0-dimensional")
    check(fan_lattice(q).rank == 0, "lattice has rank 0")
    check(all(not any(ray) for ray in r.fan.rays), "all rays are zero")
    rep = equivariant_report(cp2, [[1, R2]])
    check(rep.n_roots == 0, "no roots")
    check(rep.dim_aut0 == rep.torus_rank == 3, "identity component is the torus (C*)^S")


def criterion_3(check):
    for p, q in itertools.product(range(4), repeat=2):
        fan = F.calabi_eckmann(p, q)
        total = (p + 1) ** 2 + (q + 1) ** 2
        a = autg_structure(fan)
        check(sorted(a.gl_factors) == sorted((p + 1, q + 1)), f"GL factors of CE({p},{q})")
        check(a.total == total, f"total dim of CE({p},{q})")
        roots = demazure_roots(fan)
        expected = p * (p + 1) + q * (q + 1)
        check(len(roots) == expected, f"#roots of CE({p},{q})")
        check(root_pairings(fan, roots) == brute_force_roots(fan, 2), f"roots of CE({p},{q}) vs box search")
        rep = moment_angle_report(fan, F.calabi_eckmann_structure(p, q))
        check(rep.quotient_dim == total - 1, f"moment-angle dim of CE({p},{q})")
        check(validate_complex_structure(fan, F.calabi_eckmann_structure(p, q)).valid, f"alpha = i on CE({p},{q})")
        for alpha in ("2", "-1/2", "sqrt(2)"):
            rows = F.calabi_eckmann_structure(p, q, alpha)
            rejected = not validate_complex_structure(fan, rows).valid
            try:
                moment_angle_report(fan, rows)
            except InvalidComplexStructure:
                pass
            else:
                rejected = False
            check(rejected, f"real alpha {alpha} rejected on CE({p},{q})")


def criterion_4(check):
    fixture = json.loads((FIXTURES / "hirzebruch_roots.json").read_text())
    for a in range(1, 6):
        fan = F.hirzebruch(a)
        roots = demazure_roots(fan)
        hand = {(r["label"], tuple(sum(x * y for x, y in zip(r["covector"], ray)) for ray in fan.numeric_rays))
                for r in fixture[str(a)]}
        ours = root_pairings(fan, roots)
        check(len(roots) == a + 3, f"#roots of H{a}")
        check(ours == hand, f"roots of H{a} vs hand-derived fixture")
        check(ours == brute_force_roots(fan, a + 2), f"roots of H{a} vs box search")
        rep = toric_aut_report(fan)
        check(rep.quotient_dim == a + 5, f"dim Aut of H{a} on the toric variety")
        check(rep.component_group_order == 1, f"ES of H{a} trivial")


def criterion_5(check):
    hopf = F.hopf_surface()
    red = F.reduce_ghosts(hopf)
    check(red.ghosts == ("3",), "vertex 3 is the ghost")
    mu = red.integer_expressions["3"]
    rays = {s: hopf.numeric_rays[hopf.index[s]] for s in hopf.labels}
    check(all(isinstance(c, int) and c >= 0 for c in mu.values()), "integer expression is non-negative")
    # mu_1 a_1 + mu_2 a_2 + a_3 = 0 with mu_s = -c_s
    residual = [rays["3"][k] - sum(c * rays[s][k] for s, c in mu.items()) for k in range(hopf.ambient_dim)]
    check(all(v == 0 for v in residual), "integer relation holds")
    rep = moment_angle_report(hopf, F.hopf_structure())
    check(rep.autg.ghost_torus_dim == 1, "Aut_g splits off a 1-dimensional ghost torus")
    ce = moment_angle_report(F.calabi_eckmann(1, 0), F.calabi_eckmann_structure(1, 0))
    check(rep.dim_aut0 == ce.dim_aut0 == 5, "dimension matches CE(1,0) = 5")
    check(sorted(rep.gl_factors) == sorted(ce.gl_factors), "GL factors match CE(1,0)")


def criterion_6(check):
    rng = random.Random(20261016)

    # conjugation identity of root subgroups
    all_roots = [(fan, r) for fan in ROOT_FANS for r in demazure_roots(fan)]
    for _ in range(CASES):
        fan, root = rng.choice(all_roots)
        n = len(fan.labels)
        t = [rand_complex(rng, True) for _ in range(n)]
        z = [rand_complex(rng, True) for _ in range(n)]
        check(conjugation_check(fan, root, t, rand_complex(rng), z), f"conjugation {root} with t={t}")

    # geometric roots keep U(Sigma); non-geometric ones have escape witnesses
    geometric = [(f, r) for f, r in all_roots if r.geometric]
    non_geometric = [(f, r) for f, r in all_roots if not r.geometric]
    for _ in range(CASES):
        fan, root = rng.choice(geometric)
        face = rng.choice(sorted(fan.faces, key=sorted))
        z = [ComplexScalar(0) if s in face else rand_complex(rng, True) for s in fan.labels]
        check(F.in_cox_construction(fan, root_subgroup_apply(fan, root, rand_complex(rng), z)),
              f"geometric root {root} keeps {z}")
    for _ in range(CASES):
        fan, root = rng.choice(non_geometric)
        point, lam, _ = escape_witness(fan, root)
        zero = {s for s, v in point.items() if not v}
        z = [ComplexScalar(0) if s in zero else rand_complex(rng, True) for s in fan.labels]
        mono = root_subgroup_apply(fan, root, 1, z)[root.label] - z[fan.index[root.label]]
        lam = -z[fan.index[root.label]] / mono
        check(F.in_cox_construction(fan, z) and
              not F.in_cox_construction(fan, root_subgroup_apply(fan, root, lam, z)),
              f"non-geometric root {root} escapes from {z}")

    # graded dimensions against monomial enumeration
    weighted = [(F.projective_space(2), (1, 1, 1)),
                (F.product(F.projective_space(1), F.projective_space(1)), (1, 1, 1, 1)),
                (F.hirzebruch(1), (1, 1, 1, 2)), (F.hirzebruch(2), (1, 1, 1, 3)), (F.hirzebruch(3), (1, 1, 1, 4))]
    for fan, w in weighted:
        check(all(sum(x * r[k] for x, r in zip(w, fan.numeric_rays)) == 0 for k in range(fan.ambient_dim)),
              "oracle weights are relations")
    for _ in range(CASES):
        fan, w = rng.choice(weighted)
        alpha = tuple(rng.randint(-1, 3) for _ in fan.labels)
        check(graded_dimension(fan, alpha) == brute_force_graded_dimension(fan, w, alpha),
              f"graded dimension of {alpha} on {fan!r}")

    # rationalization: idempotent, and its kernel is the rational closure
    for _ in range(CASES):
        fan = rand_quadratic_fan(rng)
        once = F.rationalize(fan).fan
        check(F.rationalize(once).fan == once, f"rationalize idempotent on {fan!r}")
        K = F.ray_kernel(once)
        closure = rational_closure(F.ray_kernel(fan))
        check(K.contains_subspace(closure) and closure.contains_subspace(K), f"kernel closure on {fan!r}")

    # complete implies a positive vanishing combination
    complete_seen = 0
    while complete_seen < CASES:
        fan = rand_planar_fan(rng, irrational=rng.random() < 0.5)
        if not F.is_complete(fan):
            continue
        complete_seen += 1
        try:
            lam = F.positive_combination(fan)
        except NoPositiveCombination:
            check(False, f"positive combination on {fan!r}")
            continue
        total = [sum((lam[s] * fan.rays[i][k] for i, s in enumerate(fan.labels)), Scalar(0)) for k in range(2)]
        check(all(v >= 1 for v in lam.values()) and all(not v for v in total), f"positive combination on {fan!r}")


CRITERIA = {
    1: ("CP2 suite", criterion_1),
    2: ("irrational quotient suite", criterion_2),
    3: ("Calabi-Eckmann suite", criterion_3),
    4: ("Hirzebruch suite", criterion_4),
    5: ("Hopf and ghost suite", criterion_5),
    6: ("randomized property suites", criterion_6),
}


def evaluate(n):
    title, fn = CRITERIA[n]
    check = Checks()
    start = time.perf_counter()
    try:
        fn(check)
    except Exception as exc:  # an unexpected error is a failure of the criterion, not of the harness
        check(False, f"raised {type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    status = "PASS" if not check.failed else "FAIL"
    line = f"[{status}] criterion {n}: {title} ({check.count} checks, {elapsed:.1f}s)"
    if check.failed:
        line += "; failed: " + "; ".join(check.failed[:3])
    return not check.failed, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = evaluate(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
