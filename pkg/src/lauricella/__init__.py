"""Exact construction and verification of Lauricella bi-flat F-manifold structures."""

from .connection import ChristoffelTable, gamma_entry, gamma_seed, gamma_table
from .dual import dual_gamma_closed, dual_gamma_generic, dual_product, euler_inverse
from .errors import (CoincidingSpeeds, IndexOutOfRange, LauricellaError, MalformedInput, NonInvertibleEuler,
                     NonRegularPoint, NotClosed, NotSemisimpleConfig, NotSingleBlock, TorsionNotZero,
                     UnsupportedDimension)
from .hierarchy import FlowSequence, flows_are_symmetries, hierarchy_generate, nijenhuis_torsion
from .jordan import BlockConfig, a0_poly, canonical_fields, is_regular, operator_L
from .kernel import Jet1, Jet2, Poly, format_rational, integrate_radial, parse_rational
from .report import Check, VerificationReport
from .tsarev import DiagonalSystem, candidate_residuals, residuals, tsarev_symbol
from .verify import axiom_suite, identity_suite

__version__ = "0.1.0"
