"""Historical volatility from daily OHLCV bars and intraday trades.

Five range/close based estimators (close-to-close, Parkinson, Garman-Klass,
Rogers-Satchell, Yang-Zhang) and a volume-weighted intrinsic-entropy
estimator, evaluated over rolling windows and compared against a benchmark.
"""

__version__ = "0.1.0"

from .classical import (  # noqa: E402
    close_to_close,
    garman_klass,
    parkinson,
    rogers_satchell,
    yang_zhang,
    yang_zhang_k,
)
from .core import BarComponents, DailySeries, OhlcvBar, WindowSpec, WindowView, components, validate_bar  # noqa: E402
from .entropy import (  # noqa: E402
    EntropicWeights,
    EntropyComponents,
    EntropyMode,
    entropic_weights,
    entropy_cc,
    entropy_components,
    intrinsic_entropy_estimate,
)
from .ingest import TradeRecord, parse_daily_csv, parse_trades_csv  # noqa: E402
from .intraday import IntradayState  # noqa: E402
from .metrics import ComparisonReport, EstimateSeries, efficiency, mean_var_cv, mse, proportional_bias  # noqa: E402
from .rolling import ESTIMATORS, RollingConfig, roll, summarize  # noqa: E402

__all__ = [
    "BarComponents",
    "ComparisonReport",
    "DailySeries",
    "ESTIMATORS",
    "EntropicWeights",
    "EntropyComponents",
    "EntropyMode",
    "EstimateSeries",
    "IntradayState",
    "OhlcvBar",
    "RollingConfig",
    "TradeRecord",
    "WindowSpec",
    "WindowView",
    "close_to_close",
    "components",
    "efficiency",
    "entropic_weights",
    "entropy_cc",
    "entropy_components",
    "garman_klass",
    "intrinsic_entropy_estimate",
    "mean_var_cv",
    "mse",
    "parkinson",
    "parse_daily_csv",
    "parse_trades_csv",
    "proportional_bias",
    "rogers_satchell",
    "roll",
    "summarize",
    "validate_bar",
    "yang_zhang",
    "yang_zhang_k",
]
