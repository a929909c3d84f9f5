"""Exact verification of a Chevalley-Eilenberg 3-cocycle on the Moyal algebra."""

from .algebra import QQ, HElement, LaurentPoly, ParamPoly, ScalarSeries, even_part, odd_part
from .cocycle import (
    Chain,
    CocycleConfig,
    build_c_lambda,
    calibrate_q_coefficient,
    ce_boundary,
    ce_differential,
    ce_differential_3,
    pair_c_lambda,
    pairing_matrix,
    psi3,
    psi3_even,
    psi3_odd,
)
from .moyal import MoyalContext, bn, build_q, commutator, d1, d2, star, trace
from .psdo import PsdoSymbol, build_r, psdo_compose
from .weyl import WeylOp, pbw_symmetrize, weyl_compose

__all__ = [
    "QQ", "HElement", "LaurentPoly", "ParamPoly", "ScalarSeries", "even_part", "odd_part",
    "Chain", "CocycleConfig", "build_c_lambda", "calibrate_q_coefficient", "ce_boundary",
    "ce_differential", "ce_differential_3", "pair_c_lambda", "pairing_matrix",
    "psi3", "psi3_even", "psi3_odd",
    "MoyalContext", "bn", "build_q", "commutator", "d1", "d2", "star", "trace",
    "PsdoSymbol", "build_r", "psdo_compose",
    "WeylOp", "pbw_symmetrize", "weyl_compose",
]
