"""Massive-MIMO ZF / MRT / MRC sum-rate simulation and closed forms."""

from ._mmimo import (
    ConfigError,
    DegenerateChannel,
    LinkDirection,
    Normalization,
    NotPositiveDefinite,
    RateEstimate,
    Scheme,
    SystemConfig,
    analytic,
    db_to_linear,
    downlink_sinr,
    draw_channel,
    ergodic_sum_rate,
    ergodic_zf_mat_u1,
    figure_ids,
    invert_hpd,
    linear_to_db,
    mrc_combiner,
    mrt_precoder,
    normalize,
    reproduce_fig,
    selection,
    thresholds,
    uplink_sinr,
    validate_config,
    zf_combiner,
    zf_precoder,
)

__all__ = [name for name in dir() if not name.startswith("_")]
