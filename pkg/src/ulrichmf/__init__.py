"""Exact computer algebra for matrix factorizations of cyclic covers of P^n
and the rank 2 aCM bundles they present."""

from __future__ import annotations

from .cohomtab import bundle_numerics, ext_dims, normal_cohomology, splitting_table, stability_class
from .decompose import Decomposition, SamplingError, sample_decomposition, verify_appendix
from .field import QQ, FieldSpec
from .mfactory import (
    MatrixFactorization,
    involution_mf,
    mf_add2,
    mf_cyclic_diag,
    mf_from_decomposition,
    normalize_tform,
    splitting_from_twists,
    verify_mf,
)
from .polyring import Poly, Ring, parse_poly

__all__ = [
    "QQ",
    "Decomposition",
    "FieldSpec",
    "MatrixFactorization",
    "Poly",
    "Ring",
    "SamplingError",
    "bundle_numerics",
    "ext_dims",
    "involution_mf",
    "mf_add2",
    "mf_cyclic_diag",
    "mf_from_decomposition",
    "normal_cohomology",
    "normalize_tform",
    "parse_poly",
    "sample_decomposition",
    "splitting_from_twists",
    "splitting_table",
    "stability_class",
    "verify_appendix",
    "verify_mf",
]

__version__ = "0.1.0"
