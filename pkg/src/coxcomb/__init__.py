"""Exact computations on generalized fans and their automorphism groups."""

from .autreport import (equivariant_report, moment_angle_report, tilde_aut_report, toric_aut_report,
                        validate_complex_structure)
from .coxring import autg_structure, graded_dimension, monomial_basis
from .fan import (GeneralizedFan, calabi_eckmann, hirzebruch, hopf_surface, is_complete,
                  projective_space, product, quotient_fan, rationalize, reduce_ghosts)
from .lattice import dual_fan_map, fan_lattice, grading_group
from .roots import demazure_roots
from .scalar import ComplexScalar, FieldContext, Scalar
from .symmetry import symmetry_groups

__version__ = "0.1.0"
