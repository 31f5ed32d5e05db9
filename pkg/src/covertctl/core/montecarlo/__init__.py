"""Seeded Monte Carlo estimation of detector error rates."""

from covertctl.core.montecarlo.config import ExperimentConfig, load_experiment_config  # noqa: F401
from covertctl.core.montecarlo.harness import (  # noqa: F401
    estimate_error_rates,
    estimate_moment,
    simulate_trials,
    sweep,
    sweep_configs,
)
from covertctl.core.montecarlo.rates import (  # noqa: F401
    ErrorRates,
    Verdict,
    verify_bound,
    wilson_half_width,
)
from covertctl.core.montecarlo.results import (  # noqa: F401
    ExperimentResult,
    json_mirror_path,
    write_results,
)
