"""Finite-level verification of the false-Tate functional-equation identity for modular forms."""

from .errors import (BadKummerBase, BadReduction, CompletenessFailure, DivisionByIndeterminate,
                     FalseTateError, InconsistentSpecialData, InputError, LevelMismatch,
                     MissingCoefficient, NotInvertible, ParseError, PrecisionExhausted, QEqualsP,
                     SchemaViolation, UnsupportedPrime)
from .padic import CycElem, PadicScalar, teichmuller
from .group import GroupAlgElem, GroupElem, decomposition_data, geometric_sum
from .reps import ArtinRep, RepLabel, contragredient, enumerate_irreps
from .charelem import (EvalResult, Indeterminate, LocalModuleSpec, annihilator, evaluate,
                       local_error_eval)
from .euler import FormData, euler_factor, euler_ratio_product, twisted_frobenius_data
from .classify import (ErrorTermClass, PrimeClassification, assemble_error_term,
                       classify_primes, count_points_weight2)
from .verifier import (VerificationReport, VerifyOptions, emit_report, ingest_form,
                       verify_functional_equation)

__version__ = "0.1.0"
