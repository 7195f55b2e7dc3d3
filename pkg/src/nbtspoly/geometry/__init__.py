"""Exact polyhedral geometry over the rationals."""
from .hull import (AffineHull, affine_dimension, affine_hull, convex_weights,
                   extremal_subset, extremal_subset_lp, extremality_certificates,
                   hrep_vertices, hull_facets, is_in_hull, others,
                   separating_hyperplane)
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LPResult, lp_solve
from .types import (EQ, GE, LE, Certificate, CertificateKind, DimensionMismatch,
                    GeometryError, Inequality, Infeasible, Point, PolytopeH,
                    PolytopeV, Unbounded, make_point)
