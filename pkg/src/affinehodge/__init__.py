"""Exact Brieskorn-module computations for tame polynomials.

Typical use::

    from affinehodge import parse_polynomial, Weights, milnor_data, connection
    f = parse_polynomial("x1^3+x2^3+x3^3+x4^3+x5^3-x1-x2")
    data = milnor_data(f, Weights((1,) * 5, 3))
    conn = connection(data)
"""

__version__ = "0.1.0"

from .brieskorn import (
    ConnectionData, ReductionCertificate, basis_change_matrix, build_connection, connection,
    nabla_k_op, nabla_power_eta, nabla_power_eta_operator, nabla_top, reduce_n_form,
    reduce_top_form,
)
from .errors import (
    AffineHodgeError, CriticalValue, DenominatorSurvived, DimensionMismatch, ExceptionalValue,
    NotSeparable, NotTame, OddDimension, ParseError,
)
from .groebner import MonomialOrder, groebner_basis, normal_form, quotient_basis
from .hodge import (
    compute_d_beta, fermat_hodge_lattice, gs_basis, hodge_basis, hodge_cycle_criterion,
    hodge_dimensions,
)
from .milnor import MilnorData, TameInput, check_strong_tameness, milnor_data, separable_critical_values
from .numeric import CycloElem, RatFunc, UniPoly
from .parse import parse_polynomial
from .picard_fuchs import PFEquation, picard_fuchs
from .polyforms import FormN, FormTop, MPoly, Weights
