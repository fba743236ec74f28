"""Automorphism group reports assembled from roots, gradings and symmetries.

Every report starts from the same data for a (rationalized) fan: the torus
``(C^*)^S``, one additive subgroup per geometric root, and the finite
component group ``S / I``.  The variants differ in which subgroup is divided
out at the end:

* ``tilde_aut_report``: nothing; this is the group of the Cox construction.
  The kernel ``G_Sigma`` of ``(C^*)^S -> T`` (dimension ``|S| - rank``) is
  recorded for the variants below.
* ``toric_aut_report``: ``G_Sigma``, giving the automorphisms of the toric
  variety.
* ``moment_angle_report``: a complex subgroup of dimension ``l`` cut out by a
  complex structure on the kernel, giving the automorphisms of the
  moment-angle manifold.
* ``equivariant_report``: automorphisms normalizing a subgroup ``H``, read off
  from the quotient fan by the real part of its Lie algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .coxring import AutGStructure, autg_structure
from .errors import (DimensionMismatch, NotComplete, NotIsomorphicProjection, NotRational,
                     OddKernel, QuotientNotComplete)
from .exactlin import Subspace, rref
from .fan import (GeneralizedFan, _restrict, canonical_development, is_complete, is_rational,
                  quotient_fan, rationalize, ray_kernel)
from .lattice import fan_lattice, grading_group
from .roots import demazure_roots
from .scalar import ComplexScalar, as_scalar
from .symmetry import symmetry_groups

__all__ = ["AutReport", "ComplexStructure", "tilde_aut_report", "toric_aut_report",
           "moment_angle_report", "equivariant_report", "validate_complex_structure",
           "distinguish_reports", "factor_coupling"]


@dataclass(frozen=True)
class AutReport:
    kind: str
    labels: tuple
    torus_rank: int
    roots: tuple
    n_roots: int
    n_geometric_roots: int
    dim_aut0: int
    autg: AutGStructure | None
    symmetry_order: int
    inertia_order: int
    component_group_order: int
    component_generators: tuple
    kernel_desc: str
    kernel_dim: int
    quotient_dim: int | None = None
    factor_coupling: tuple | None = None
    restricted_to_span: bool = False
    provenance: tuple = field(default=(), compare=False)

    @property
    def all_geometric(self) -> bool:
        return self.n_roots == self.n_geometric_roots

    @property
    def gl_factors(self) -> tuple | None:
        return self.autg.gl_factors if self.autg else None

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "labels": list(self.labels),
            "torus_rank": self.torus_rank,
            "n_roots": self.n_roots,
            "n_geometric_roots": self.n_geometric_roots,
            "roots": [{"label": r.label, "covector": list(r.covector), "semisimple": r.semisimple,
                       "geometric": r.geometric} for r in self.roots],
            "dim_aut0": self.dim_aut0,
            "symmetry_order": self.symmetry_order,
            "inertia_order": self.inertia_order,
            "component_group_order": self.component_group_order,
            "component_generators": list(self.component_generators),
            "kernel": self.kernel_desc,
            "kernel_dim": self.kernel_dim,
            "restricted_to_span": self.restricted_to_span,
            "provenance": list(self.provenance),
        }
        if self.autg is not None:
            d["autg"] = {
                "classes": [list(c) for c in self.autg.classes],
                "class_dims": list(self.autg.class_dims),
                "gl_factors": list(self.autg.gl_factors),
                "ghost_torus_dim": self.autg.ghost_torus_dim,
                "unipotent_dim": self.autg.unipotent_dim,
                "total": self.autg.total,
            }
        if self.quotient_dim is not None:
            d["quotient_dim"] = self.quotient_dim
        if self.factor_coupling is not None:
            d["factor_coupling"] = [list(c) for c in self.factor_coupling]
        return d

    def format_text(self) -> str:
        lines = [
            f"report: {self.kind}",
            f"torus (C*)^S of dimension {self.torus_rank}",
            f"roots: {self.n_roots} ({self.n_geometric_roots} geometric)",
        ]
        lines += [f"  {r}" for r in self.roots]
        lines.append(f"dim of identity component upstairs: {self.dim_aut0}")
        if self.autg is not None:
            gl = " x ".join(f"GL({k})" for k in self.autg.gl_factors) or "trivial"
            lines.append(f"reductive part: {gl}; unipotent dim {self.autg.unipotent_dim}; total {self.autg.total}")
        lines.append(f"symmetries |S| = {self.symmetry_order}, |I| = {self.inertia_order}, "
                     f"components |S/I| = {self.component_group_order}")
        if self.component_generators:
            lines.append("component generators: " + ", ".join(self.component_generators))
        lines.append(f"kernel: {self.kernel_desc} (dim {self.kernel_dim})")
        if self.quotient_dim is not None:
            lines.append(f"dim Aut after dividing by the kernel: {self.quotient_dim}")
        if self.factor_coupling is not None:
            lines.append("factor coupling: " + " | ".join(
                "*".join(f"GL({k})" for k in grp) for grp in self.factor_coupling))
        if self.restricted_to_span:
            lines.append("note: rays do not span the ambient space; symmetries computed on their span")
        return "\n".join(lines)


def _working_fan(fan: GeneralizedFan) -> GeneralizedFan:
    return fan if fan.is_rational_coordinates else rationalize(fan).fan


def tilde_aut_report(fan: GeneralizedFan, *, check_complete: bool = True) -> AutReport:
    """Automorphisms of the Cox construction of ``fan``.

    Roots are taken on the fan with ghost labels removed; each ghost adds one
    torus factor, already counted in ``torus_rank``.
    """
    work = _working_fan(fan)
    if check_complete:
        c = is_complete(work)
        if not c:
            raise NotComplete(f"fan is not complete; {list(map(str, c.witness))} lies in no cone")
    ghosts = set(work.ghosts)
    red = _restrict(work, [s for s in work.labels if s not in ghosts], "ghost reduction") if ghosts else work
    roots = demazure_roots(red) if red.labels else ()
    n_geo = sum(1 for r in roots if r.geometric)
    autg = autg_structure(work) if n_geo == len(roots) else None
    sym = symmetry_groups(work)
    n = len(work.labels)
    return AutReport(
        kind="tilde",
        labels=work.labels,
        torus_rank=n,
        roots=roots,
        n_roots=len(roots),
        n_geometric_roots=n_geo,
        dim_aut0=n + n_geo,
        autg=autg,
        symmetry_order=sym.order,
        inertia_order=sym.inertia_order,
        component_group_order=sym.quotient_order,
        component_generators=tuple(str(g) for g in sym.quotient_generators),
        kernel_desc="G_Sigma",
        kernel_dim=n - fan_lattice(work).rank,
        restricted_to_span=sym.restricted_to_span,
        provenance=fan.provenance,
    )


def toric_aut_report(fan: GeneralizedFan) -> AutReport:
    if not fan.is_rational_coordinates and not is_rational(fan):
        raise NotRational("the rays do not generate a lattice")
    c = is_complete(fan)
    if not c:
        raise NotComplete(f"fan is not complete; {list(map(str, c.witness))} lies in no cone")
    base = tilde_aut_report(fan)
    return replace(base, kind="toric", quotient_dim=base.dim_aut0 - base.kernel_dim)


# ---------------------------------------------------------------------------
# complex structures

@dataclass(frozen=True)
class ComplexStructure:
    """A complex subspace ``h`` of ``C^S`` and whether its real part is the ray kernel."""

    rows: tuple
    half_dim: int
    valid: bool
    reason: str = ""


def _real_span(rows, m):
    vecs = []
    for row in rows:
        vecs.append([x.re for x in row])
        vecs.append([x.im for x in row])
    return Subspace.from_vectors(vecs, m)


def validate_complex_structure(fan: GeneralizedFan, rows: Sequence[Sequence]) -> ComplexStructure:
    """Check that taking real parts maps ``h`` isomorphically onto the real ray kernel."""
    m = len(fan.labels)
    rows = tuple(tuple(x if isinstance(x, ComplexScalar) else ComplexScalar.parse(str(x)) for x in r)
                 for r in rows)
    for r in rows:
        if len(r) != m:
            raise DimensionMismatch(f"structure rows need {m} entries")
    K = ray_kernel(fan)
    if K.dim % 2:
        raise OddKernel(f"the ray kernel has odd dimension {K.dim}")
    l = K.dim // 2
    crank = len(rref(list(rows), m)[1]) if rows else 0
    if crank != l:
        return ComplexStructure(rows, l, False, f"h has complex dimension {crank}, need {l}")
    re = _real_span(rows, m)
    if re.dim != 2 * l:
        return ComplexStructure(rows, l, False, "taking real parts is not injective on h")
    if not K.contains_subspace(re):
        return ComplexStructure(rows, l, False, "real parts of h leave the ray kernel")
    return ComplexStructure(rows, l, True)


def factor_coupling(fan: GeneralizedFan, structure: ComplexStructure) -> tuple:
    """Group the general linear factors by the blocks in which ``h`` couples them.

    Two degree classes are coupled when a row of the reduced echelon form of
    ``h`` touches both; the echelon form makes the grouping independent of
    the chosen basis.
    """
    work = _working_fan(fan)
    ghosts = set(work.ghosts)
    red = _restrict(work, [s for s in work.labels if s not in ghosts], "ghost reduction") if ghosts else work
    groups = [list(c) for c in grading_group(red).classes] if red.labels else []
    groups += [[g] for g in work.labels if g in ghosts]
    owner = {s: i for i, grp in enumerate(groups) for s in grp}
    parent = list(range(len(groups)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    R, _ = rref(list(structure.rows), len(work.labels)) if structure.rows else ([], [])
    for row in R:
        touched = {find(owner[s]) for s, x in zip(work.labels, row) if x}
        touched = sorted(touched)
        for t in touched[1:]:
            parent[find(t)] = find(touched[0])
    blocks = {}
    for i, grp in enumerate(groups):
        blocks.setdefault(find(i), []).append(len(grp))
    return tuple(sorted(tuple(sorted(b)) for b in blocks.values()))


def moment_angle_report(fan: GeneralizedFan, structure) -> AutReport:
    """Automorphisms of the moment-angle manifold of a complete rational fan."""
    if not isinstance(structure, ComplexStructure):
        structure = validate_complex_structure(fan, structure)
    if not structure.valid:
        raise NotIsomorphicProjection(structure.reason)
    if not is_rational(fan):
        raise NotRational("the rays do not generate a lattice")
    c = is_complete(fan)
    if not c:
        raise NotComplete(f"fan is not complete; {list(map(str, c.witness))} lies in no cone")
    base = tilde_aut_report(fan)
    l = structure.half_dim
    return replace(base, kind="moment-angle", kernel_desc="H_Sigma",
                   kernel_dim=l, quotient_dim=base.dim_aut0 - l,
                   factor_coupling=factor_coupling(fan, structure))


def distinguish_reports(a: AutReport, b: AutReport) -> tuple:
    """Fields (among dimension, GL factors and their coupling) where two reports differ."""
    out = []
    if a.quotient_dim != b.quotient_dim:
        out.append("quotient_dim")
    if sorted(a.gl_factors or ()) != sorted(b.gl_factors or ()):
        out.append("gl_factors")
    if a.factor_coupling != b.factor_coupling:
        out.append("factor_coupling")
    return tuple(out)


# ---------------------------------------------------------------------------
# equivariant automorphisms

def _real_part(vectors, dim) -> Subspace:
    vecs = []
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatch(f"subspace vectors need {dim} entries")
        if any(isinstance(x, ComplexScalar) for x in v):
            cv = [x if isinstance(x, ComplexScalar) else ComplexScalar(x) for x in v]
            vecs.append([x.re for x in cv])
            vecs.append([x.im for x in cv])
        else:
            vecs.append([as_scalar(x) for x in v])
    return Subspace.from_vectors(vecs, dim)


def equivariant_report(fan: GeneralizedFan, h_basis, *, space: str = "auto") -> AutReport:
    """Automorphisms normalizing the subgroup whose Lie algebra has real part ``h``.

    ``h_basis`` spans ``h`` (real or complex vectors).  With
    ``space="ambient"`` the vectors live in the space of ``fan``; with
    ``space="development"`` they live in ``R^S`` and the quotient is taken of
    the canonical development.  ``"auto"`` picks by vector length, preferring
    the ambient space when both lengths agree.
    """
    h_basis = [list(v) for v in h_basis]
    if space == "auto":
        lengths = {len(v) for v in h_basis}
        space = "development" if lengths == {len(fan.labels)} and len(fan.labels) != fan.ambient_dim else "ambient"
    if space not in ("ambient", "development"):
        raise ValueError("space must be 'auto', 'ambient' or 'development'")
    base = canonical_development(fan) if space == "development" else fan
    hR = _real_part(h_basis, base.ambient_dim)
    q = quotient_fan(base, hR)
    c = is_complete(q)
    if not c:
        raise QuotientNotComplete(
            f"the quotient fan is not complete; {list(map(str, c.witness))} lies in no cone")
    # The rationalization of a complete fan is a further quotient, hence complete.
    rep = tilde_aut_report(q, check_complete=False)
    return replace(rep, kind="equivariant", kernel_desc="preimage-of-H", provenance=q.provenance)
