"""Entanglement and quantum discord of two qubits sharing one cavity mode.

The dynamics are exact within a single excitation manifold of the resonant
Tavis-Cummings Hamiltonian; times are measured in Rabi periods.
"""
__version__ = "0.1.0"

from .errors import (AmbiguityError, ConfigurationError, DomainError, InputError,
                     NumericalError, SolverFailure, StateError, TCError)
from .qmatrix import (check_density, eig_hermitian, partial_trace_a, partial_trace_b,
                      von_neumann_entropy)
from .dynamics import ManifoldDensity, TCParams, build_unitary, evolve, evolve_many, unitaries
from .reduction import TwoQubitX, XBatch, partial_trace_field, reduce_many
from .correlations import (Branch, DiscordResult, chen_huang_conditions, concurrence_wootters,
                           concurrence_x, discord_bruteforce, discord_x, mutual_information)
from .families import (ClosedForm, CriticalAlpha, Family, FamilySpec, closed_form,
                       critical_alpha, make_state)
from .features import (FeatureReport, Kink, KinkKind, Trajectory, find_collapse_revival,
                       find_features, find_kinks, solve_alpha_zero_discord)
from .sweep import (COLUMNS, CorrelationPoint, GateSchedule, SweepConfig, emit, run_gate,
                    run_sweep)

__all__ = [name for name in dir() if not name.startswith("_")]
