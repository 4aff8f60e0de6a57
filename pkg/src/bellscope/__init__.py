"""Maximal CHSH violations of two-qubit reductions and their trade-off relations."""

from .chsh import (
    ChshResult,
    CorrelationMatrix,
    MeasurementSettings,
    analytic_m_ab,
    analytic_reduced_ab,
    chsh_max,
    closed_form_chsh_sq,
    correlation_matrix,
    evaluate_bell,
    optimal_settings,
)
from .errors import DegenerateStateError, NumericError, ValidationError
from .states import (
    DensityMatrix,
    Ensemble,
    PureState,
    SchmidtParams,
    mix,
    named_state,
    partial_trace,
    random_mixed,
    random_pure,
    schmidt_state,
)
from .tradeoff import (
    TradeoffReport,
    frobenius_identity,
    implication_checks,
    monogamy_pair_sum,
    pairwise_chsh,
    tradeoff_report,
)

__version__ = "0.1.0"
