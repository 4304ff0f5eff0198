"""Antenna model of photon-assisted quasiparticle poisoning in superconducting qubits."""

from .antenna import (CouplingSpectrum, ImpedanceTable, coupling_efficiency, coupling_spectrum,
                      load_impedance_table, radiation_impedance)
from .core import CONST, FrequencyGrid, gap_from_threshold, josephson_frequency, make_grid
from .errors import (BoundaryWarning, ClampWarning, ConfigError, DomainError, FitError,
                     NoRootError, OutOfRangeError, PairbreakerError, ParseError, RegimeWarning,
                     SingularityError, ValidationError)
from .junction import (JunctionParams, QpState, ambegaokar_baratoff_current,
                       capacitance_from_area, junction_impedance, steady_state_xqp,
                       suppressed_critical_current)
from .radiation import (BlackbodyEnvironment, EnclosureParams, TransferSpectrum,
                        baseline_parity_rate, effective_temperature, parity_rate_spectrum,
                        photon_absorption_rate, transmitter_radiated_power,
                        wall_absorption_efficiency, wall_surface_impedance)
from .telemetry import (LorentzianFit, ParityTimeSeries, PsdEstimate, average_psd,
                        fit_linear, fit_lorentzian, simulate_measure_idle_measure,
                        simulate_telegraph)
from .transitions import (StructureFactors, predicted_upward_spectrum, structure_factors,
                          upward_fraction)
from .transmon import (DispersionResult, TransmonParams, charge_basis_levels, dispersion,
                       fit_ej_ec)

__version__ = "0.1.0"
