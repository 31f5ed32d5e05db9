"""Alice's control laws and the one-bit energy analysis."""

from covertctl.core.controllers.admissibility import check_admissible  # noqa: F401
from covertctl.core.controllers.energy import EnergyBounds, one_bit_energy_bounds  # noqa: F401
from covertctl.core.controllers.laws import (  # noqa: F401
    closed_loop_gain,
    gain_change_control,
    one_bit_control,
    one_bit_fixed_point,
    one_bit_gain,
    reset_once_control,
    stabilizer_gain,
    threshold_control,
)
from covertctl.core.controllers.specs import (  # noqa: F401
    ControllerSpec,
    GainChange,
    NoControl,
    OneBit,
    ResetOnce,
    Stabilizer,
    Threshold,
    parse_controller,
)
