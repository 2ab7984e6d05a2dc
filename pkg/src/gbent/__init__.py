"""Exact Walsh analysis, duals and constructions of generalized bent functions V_n -> Z_{p^k}."""
from __future__ import annotations

from .analysis import (
    NON_WEAKLY_REGULAR, NOT_BENT, REGULAR, WEAKLY_REGULAR, BentCertificate, Report, analyze, check_inverse_identity, check_even_dual,
    check_sign_at_zero, check_double_dual, dual, is_bent, is_self_dual, search_self_dual, second_derivative_witness,
)
from .constructions import (
    SymmetricParams, TwistedParams, build_indirect_sum, build_symmetric, build_selfdual, build_twisted, eta_pattern, mm_gbent,
    psap_blocks, quadratic_bent, twisted_dual_condition, twisted_dual_closed_form, validate_family,
)
from .cyclotomic import CycInt, gauss_sum, recognize_bent_value
from .decomposition import check_components_bent, check_dual_components, component_function, extract_lambda
from .domain import Dot, DomainSpec, TraceField
from .errors import (
    BudgetExceeded, ConstructionError, DomainError, FormatError, GBentError, InvalidSpectrum, UsageError,
)
from .field import ExtField, FieldElem
from .gfunction import GFunction, compose, decompose, embed_bent, read_table, write_table
from .walsh import WalshSpectrum, inverse_walsh, walsh_full_fast, walsh_naive, walsh_naive_full

__version__ = "0.1.0"
