"""Short-time decoherence of a Josephson charge qubit in Ohmic and 1/f noise."""

from .dynamics import (
    EXCITED,
    GROUND,
    Deviation,
    DynamicsParams,
    QubitState,
    ShortTimeWarning,
    decoherence_D,
    decoherence_from_b2,
    deviation,
    evolve,
    ideal_evolve,
    norm_closed_form,
    norm_lambda,
)
from .kernel import (
    IntegrationError,
    KernelRequest,
    KernelResult,
    QuadratureSpec,
    b_squared,
    b_squared_discrete,
    b_squared_discrete_converged,
    c_phase,
    kernel,
)
from .scenario import (
    BracketError,
    ConfigError,
    ScenarioConfig,
    SweepResult,
    critical_alpha_f,
    critical_alpha_report,
    emit_csv,
    run_figure,
    run_sweep,
)
from .spectra import (
    Band,
    CompositeNoise,
    OhmicNoise,
    OneOverFNoise,
    Temperature,
    power_spectrum_S,
    spectral_density_J,
    weight,
    weight_ohmic,
    weight_oneoverf,
)
from .units import (
    CONSTANTS,
    CircuitParams,
    EnergyScales,
    charging_energy,
    eta_from_circuit,
    freq_to_energy,
    josephson_energy,
    kappa_from_charging,
    t_to_tau_ps,
    tau_ps_to_t,
)

__version__ = "0.1.0"
