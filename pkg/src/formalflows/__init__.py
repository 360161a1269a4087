"""Exact composition, inversion and fractional/c-adic iteration of formal maps."""

from .errors import (
    FormalFlowsError,
    NotASumFunctionError,
    NotAUnitError,
    ParseError,
    PreconditionError,
    RingError,
    RingMismatchError,
    VerificationError,
)
from .rings import FF, QQ, ZZ, PrimeField, Ring, is_integral
from .series import INFINITY, Series
from .maps import (
    FormalMap,
    compose,
    compose_series,
    homogeneous_term,
    identity_map,
    invert,
    is_tangent_identity,
    iterate,
    linear_part,
    linear_part_invertible,
    order_upto,
    weierstrass_degree,
)
from .sumfn import SumFunction, fit_char0, fit_charc, period_of, rho_eval, sumfn_eval
from .blockmatrix import antidiagonal, block_matrix, rho_product_formula, solve_against_Br, template
from .fraciter import (
    coeff_poly,
    commuting_pair_check,
    factor_finite_linear_part,
    frac_iterate,
    group_law_check,
    nth_root,
)
from .cadic import CAdicInt, cadic_from_integer, cadic_inverse_unit, cadic_iterate, cadic_root
from .mapfile import parse_map_file, render_map_file

__version__ = "0.1.0"
