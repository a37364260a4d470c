"""Permutation polynomials X^r B(X^(q-1)) over GF(q^2) built from generalized Redei functions."""

from .field import GF, FieldError, build_field, parse_field_spec
from .poly import INFINITY, Mobius, Poly, RationalMap, is_degree_one, poly_gcd, rat_build, reversal_num
from .families import (
    Decomposition,
    Degenerate,
    FamilyParams,
    InvalidParams,
    b_poly,
    criterion,
    decompose,
    eval_fast,
    f_poly,
    g0_eval,
    g_map,
    special_case,
    thm1_check,
    thm2_check,
)
from .oracle import PermVerdict, permutes_fq2, permutes_mu

__version__ = "0.1.0"
