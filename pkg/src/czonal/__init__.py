"""Harmonic decomposition and zonal expansions on the unit sphere of C^n."""
from .polyalg import BiPoly, HarmonicComponents, brute_force_decompose, canonical_decompose
from .zonal import DiscPolyTable, ZonalKernelSpec, dim_h, disc_poly, disc_poly_eval, gamma_coefficient
from .expansion import ExpansionTable, ProfileTaylor, expand_profile, expansion_coefficient
from .quadrature import DiscRule, SphereRule, build_disc_rule, build_sphere_rule

__version__ = "0.1.0"
