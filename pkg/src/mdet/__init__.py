"""Moment-determinacy diagnostics via probability density tails.

The library tests densities against tail-ratio sufficient conditions for
moment-determinacy, computes Carleman partial sums as corroboration, and
numerically verifies the supporting lemmas and proof-internal inequality
chains.  Everything runs in log space.
"""

from .carleman import (CONVERGENT, DIVERGENT, CarlemanDiagnosis,
                       bound_implies_divergence, carleman_terms)
from .densities import (CatalogEntry, Classification, SupportKind,
                        TailDensity, catalog_density, catalog_names,
                        default_fixtures, evaluate_log_density)
from .errors import (DivergentMomentError, EvalDomainError, InputError,
                     MdetError, NonFiniteError, ParseError, ProofCheckError,
                     QuadratureError, TailDecayError)
from .expr import (ExprAst, eval_log, eval_plain, expr_density,
                   parse_density_expr, to_source)
from .moments import MomentTable, Side, log_abs_moment, log_mass, moment_table
from .phi import (CUSTOM, FAMILIES, LOG_POW, LOG_POW_PLUS_LOGLOG,
                  LOG_POW_TIMES_LOGLOG, ConditionCertificate, PhiSpec,
                  certify_conditions, custom_phi, forward, inverse, make_phi,
                  varphi_and_prime)
from .proofs import (ProofIntegralResult, RecursionConstants,
                     check_moment_identity, empirical_recursion_check,
                     lemma1_integral_bound, lemma1_sup, lemma2_bound_check,
                     lemma2_extremal_log_sequence, proof_integral_bounds,
                     recursion_constants, select_x_hat0, symmetrize)
from .quadrature import log_integral
from .report import (AnalyzeConfig, DeterminacyReport, analyze,
                     render, report_as_dict, run_proof_checks)
from .tailratio import (FAILED, INCONCLUSIVE, SATISFIED, GammaEstimate,
                        GridSpec, gamma1, gamma2, gamma3)

__version__ = "0.1.0"
