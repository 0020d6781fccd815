"""Exact verification of the q-Pfaff-Saalschütz identity and computations in
Lusztig's integral form of U_q(sl2)."""

from .cartan_u0 import CartanElement, expand, multiply_rule, normal_form, parse_cartan_element, product
from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    DivisionByZero,
    IntegralityViolated,
    NotDivisible,
    ParseError,
    PreconditionViolated,
    QPfaffError,
    ZeroPoint,
)
from .exact_arith import KLaurent, LaurentPoly, RatFunc
from .fq_subspaces import PrimeField, Subspace, verify_bijection
from .integral_form import AlgebraElement, parse_word, straighten, verify_straighten, weyl_action
from .q_gaussian import q_binom, verify_qps
from .quantum_binom import quantum_binom, verify_quantum_ps
from .report import VerificationReport

__version__ = "0.1.0"
