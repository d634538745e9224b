"""Exact finite-field computations on plane curves.

Hilbert-Kunz functions, rank-2 syzygy bundles under Frobenius pull-back,
the Frobenius action on H^1 and the arithmetic of descent bounds.
"""

from __future__ import annotations

from .cech import (
    CechClass,
    HasseWitt,
    detect_repetition,
    extension_splits,
    fixed_classes,
    flat_class,
    frobenius_on_class,
    h1_basis,
    hasse_witt,
    p_rank,
    parse_class,
)
from .curvefile import builtin_curve, load_curve
from .curvering import GradedPiece, PlaneCurve, h0, h1, hilbert_function, is_smooth_probe, normal_form
from .descent import (
    BoundContext,
    DescentSequence,
    bundle_count_bound,
    count_constant,
    descent_threshold,
    mu_max_bound,
    pigeonhole_window,
    theorem_margin,
)
from .gf import (
    FieldElement,
    FieldSpec,
    ParamPoly,
    absolute_frobenius_param,
    field_arithmetic,
    find_irreducible,
    frobenius,
)
from .hnrank2 import HNData, SyzBundle, ehk_from_hn, min_section_twist, semistable_rank2, strong_hn_scan, vanishing_degree
from .poly import HomogPoly, monomials_of_degree, parse_ideal, parse_poly, substitute
from .syz_hk import EHKEstimate, HKTable, IdealGens, colength_piece, ehk_estimate, hk_function, syzygy_space

__version__ = "0.1.0"
