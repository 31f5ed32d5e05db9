"""The AR(1) plant: models, seeded simulation and closed-form covariances."""

from covertctl.core.ar1.covariance import (  # noqa: F401
    CovMatrix,
    reset_covariance,
    state_covariance,
    stationary_covariance,
)
from covertctl.core.ar1.models import NoiseKind, NoiseModel, SystemParams  # noqa: F401
from covertctl.core.ar1.plant import (  # noqa: F401
    ControlLaw,
    PathBatch,
    check_simulation,
    control_law,
    initial_variance,
    simulate,
    simulate_batch,
    step,
    validate_controller,
)
from covertctl.core.ar1.rng import (  # noqa: F401
    BatchDraws,
    TrialDraws,
    batch_draws,
    batch_uniforms,
    stream_key,
    stream_seed,
    trial_draws,
)
from covertctl.core.ar1.trajectory import Trajectory  # noqa: F401
