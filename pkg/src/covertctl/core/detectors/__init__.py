"""Willie's detectors: decision rules, designs and the Q function."""

from covertctl.core.detectors.design import (  # noqa: F401
    ChiSquareDesign,
    InnovationEnergyDesign,
    MagnitudeDesign,
    innovation_energy_chebyshev,
    innovation_energy_design,
    magnitude_design,
    magnitude_false_alarm,
    reset_chi_square_design,
    reset_chi_square_rates,
)
from covertctl.core.detectors.qfunc import q_function, q_inverse  # noqa: F401
from covertctl.core.detectors.rules import (  # noqa: F401
    apply_detector,
    decide_batch,
    detector_statistics,
    detector_threshold,
    gaussian_lrt_decide,
    gaussian_lrt_statistic,
    innovation_energy,
    innovation_energy_decide,
    magnitude_decide,
    reset_chi_square_decide,
    reset_quadratic_decide,
    reset_quadratic_statistic,
)
from covertctl.core.detectors.specs import (  # noqa: F401
    Decision,
    DetectorSpec,
    GaussianLRT,
    InnovationEnergy,
    Magnitude,
    ResetChiSquare,
    ResetQuadratic,
    covariance_from_document,
    parse_detector,
    required_horizon,
)
