"""Rate bounds, gDoF regions and capacity gaps for the Gaussian interference
channel with one oblivious receiver."""

from .bounds import (BoundPair, Constellation, collision_lower, id_bound, id_lower, ig, mi_bounds,
                     pam)
from .channel import (ChannelParams, GapReport, RateRegion, Regime, UnsupportedRegimeError,
                      achievable_region, classic_reference, classify_regime, gap_report)
from .gdof import (GdofConstraints, GdofPolygon, empirical_gdof, gdof_closure,
                   gdof_constraints, sum_gdof_classic, sum_gdof_icor, sum_gdof_tin)
from .oracle import OracleConvergenceError, QuadratureSpec, mi_exact, mixture_entropy
from .ptp import (GdofEstimate, PtpDesign, choose_eps, choose_n, ptp_design, ptp_gap_bound,
                  ptp_rate_lower, state_channel_gdof_check, state_channel_rate)

__version__ = "0.1.0"
