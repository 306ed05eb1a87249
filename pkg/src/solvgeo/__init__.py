"""Left-invariant metrics on the solvable Lie group of complex hyperbolic space.

The package classifies all positive-definite inner products on the algebra
R x H^n (one-dimensional extension of the Heisenberg algebra) up to the
automorphism group, and computes their full curvature apparatus: Levi-Civita
connection, curvature operators (matrix and 2-vector form), Ricci and scalar
curvature, the Einstein characterization p*beta = 1, x = 0, sigma = 1, and the
Ricci-soliton pipeline linking the Heisenberg nilsoliton to the Einstein
metric.  Every closed form is cross-validated against a brute-force oracle
built from the structure constants alone.
"""

from .autgrp import (Automorphism, act_on_metric, compose, diagonal_automorphism,
                     identity_automorphism, inverse, is_automorphism,
                     make_automorphism, random_automorphism, symplectic_automorphism,
                     translation_automorphism)
from .canon import (CanonicalMetric, canonicalize, check_metric, expand, is_isometric,
                    random_canonical, random_metric)
from .curvature import (CurvatureData, WedgeExpansion, closed_form_connection,
                        complex_structure, curvature_closed_form, curvature_of_metric,
                        curvature_oracle, curvature_wedge, is_einstein,
                        koszul_connection, oracle_comparison, ricci_closed_form,
                        scalar_closed_form, sectional_curvature, symmetry_residuals,
                        wedge_to_operators)
from .errors import ConditioningError, DimensionError, DomainError, SolvgeoError
from .liealg import LieAlgebraCHn, adjoint, bracket, build_chn, derived_algebra, validate_jacobi
from .soliton import (NilsolitonData, SolitonCertificate, extend_nilsoliton,
                      heisenberg_nilsoliton, heisenberg_ricci_operator,
                      mean_curvature_vector, orthonormal_frame, ricci_soliton_check)
from .sympl import (WilliamsonDecomposition, diagonal_symplectic, is_symplectic,
                    phase_rotation, random_symplectic, symplectic_form, williamson)

__version__ = "0.1.0"

__all__ = [
    "Automorphism", "CanonicalMetric", "ConditioningError", "CurvatureData",
    "DimensionError", "DomainError", "LieAlgebraCHn", "NilsolitonData",
    "SolitonCertificate", "SolvgeoError", "WedgeExpansion", "WilliamsonDecomposition",
    "act_on_metric", "adjoint", "bracket", "build_chn", "canonicalize", "check_metric",
    "closed_form_connection", "complex_structure", "compose", "curvature_closed_form",
    "curvature_of_metric", "curvature_oracle", "curvature_wedge", "derived_algebra",
    "diagonal_automorphism",
    "diagonal_symplectic", "expand", "extend_nilsoliton", "heisenberg_nilsoliton",
    "heisenberg_ricci_operator", "identity_automorphism", "inverse", "is_automorphism",
    "is_einstein", "is_isometric", "is_symplectic", "koszul_connection",
    "make_automorphism", "mean_curvature_vector", "oracle_comparison",
    "orthonormal_frame", "phase_rotation", "random_automorphism", "random_canonical",
    "random_metric", "random_symplectic", "ricci_closed_form", "ricci_soliton_check",
    "scalar_closed_form", "sectional_curvature", "symmetry_residuals",
    "symplectic_automorphism", "symplectic_form", "translation_automorphism",
    "validate_jacobi", "wedge_to_operators", "williamson",
]
