"""Irreducible mod-p representations of twisted products T x_q Sigma.

The modules, bottom up: ffield (finite fields and embeddings),
twisted_group (the groups and their classes), char_orbits (the
parametrizing pairs), rep_builder (matrices, descent to F_p), modcheck
(independent module-theoretic checks), tame_galois (the tame Galois
application), verification and cli.
"""

from .char_orbits import PhiOrbit, PairClass, enumerate_pairs, phi_orbits
from .errors import LittleGroupsError
from .ffield import FieldDesc, make_field
from .matrep import MatrixRep
from .rep_builder import build_pi, build_rho, decompose_pi_over_tilde, recover_pair, restrict_scalars
from .tame_galois import PFieldParams, classify_galois_reps, level_params
from .twisted_group import TwistedGroup, make_group

__all__ = [
    "FieldDesc",
    "LittleGroupsError",
    "MatrixRep",
    "PFieldParams",
    "PairClass",
    "PhiOrbit",
    "TwistedGroup",
    "build_pi",
    "build_rho",
    "classify_galois_reps",
    "decompose_pi_over_tilde",
    "enumerate_pairs",
    "level_params",
    "make_field",
    "make_group",
    "phi_orbits",
    "recover_pair",
    "restrict_scalars",
]
