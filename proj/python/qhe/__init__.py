"""Multi-level quantum Otto engines."""

from ._qhe import (
    QheError,
    SpacingEndpoints,
    classify_case,
    closed_form_work,
    critical_hot_temperature,
    cycle_report,
    dark_state_endpoints,
    dark_state_spectrum,
    entropy,
    gibbs_populations,
    kappa_high_t,
    looseness_verdict,
    net_work,
    run,
    shape_params,
    solution_region,
    theta,
)

__all__ = [name for name in dir() if not name.startswith("_")]
