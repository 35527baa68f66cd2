"""Domain types and unit conventions shared by the whole simulator.

Everything is expressed in atomic units (hbar = e = m = 1).  The vector
potential is defined as A(t) = -int_{t0}^{t} E(tau) dtau so that the kinetic
momentum of a continuum electron is p + A(t); no stray e/c factors appear
anywhere downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "LaserPulse",
    "AtomModel",
    "ModeSet",
    "SimConfig",
    "ponderomotive_energy",
    "validate_regime",
    "OVER_BARRIER_FIELD",
    "RESCATTERING_ENERGY_FACTOR",
]

# Peak-field threshold above which over-the-barrier ionization dominates
# tunneling for hydrogenic atoms, and the photoelectron-energy multiple of Up
# beyond which rescattering can no longer be neglected.
OVER_BARRIER_FIELD = 0.147
RESCATTERING_ENERGY_FACTOR = 2.5


@dataclass(frozen=True)
class LaserPulse:
    """Linearly polarized sin^2-envelope pulse, all parameters in a.u.

    Attributes
    ----------
    E0 : float
        Peak electric-field amplitude.
    omega_L : float
        Carrier angular frequency.
    n_cycles : int
        Number of optical cycles under the envelope.
    cep : float
        Carrier-envelope phase (radians).
    t0 : float
        Pulse start time.
    """

    E0: float
    omega_L: float
    n_cycles: int = 5
    cep: float = 0.0
    t0: float = 0.0

    def __post_init__(self):
        if not self.E0 > 0:
            raise ValueError(f"E0 must be positive, got {self.E0}")
        if not self.omega_L > 0:
            raise ValueError(f"omega_L must be positive, got {self.omega_L}")
        if int(self.n_cycles) != self.n_cycles or self.n_cycles < 1:
            raise ValueError(f"n_cycles must be a positive integer, got {self.n_cycles}")
        if not math.isfinite(self.cep):
            raise ValueError("cep must be finite")
        if not math.isfinite(self.t0):
            raise ValueError("t0 must be finite")

    @property
    def duration(self) -> float:
        """Total pulse duration T = 2 pi n_cycles / omega_L."""
        return 2.0 * math.pi * self.n_cycles / self.omega_L

    @property
    def t_end(self) -> float:
        return self.t0 + self.duration

    @property
    def up(self) -> float:
        """Ponderomotive energy E0^2 / (4 omega_L^2)."""
        return self.E0**2 / (4.0 * self.omega_L**2)


@dataclass(frozen=True)
class AtomModel:
    """1D single-active-electron atom: ionization potential and dipole scale."""

    Ip: float = 0.5
    dipole_scale: float = 1.0

    def __post_init__(self):
        if not self.Ip > 0:
            raise ValueError(f"Ip must be positive, got {self.Ip}")
        if not self.dipole_scale > 0:
            raise ValueError(f"dipole_scale must be positive, got {self.dipole_scale}")


@dataclass(frozen=True)
class ModeSet:
    """Discretized field modes at harmonics of the drive frequency.

    The mode of order n has frequency n * omega_L; order 1 (the driving mode)
    must always be present.  V is the quantization volume; the default 1e14
    a.u. corresponds to |alpha| ~ 1e6 for a focussed 800 nm beam at
    1e14 W/cm^2.
    """

    V: float = 1e14
    harmonic_orders: tuple[int, ...] = (1, 2, 3)

    def __post_init__(self):
        if not self.V > 0:
            raise ValueError(f"V must be positive, got {self.V}")
        orders = tuple(int(n) for n in self.harmonic_orders)
        if orders != tuple(self.harmonic_orders):
            raise ValueError("harmonic_orders must be integers")
        if any(n <= 0 for n in orders):
            raise ValueError(f"harmonic orders must be positive, got {orders}")
        if list(orders) != sorted(set(orders)):
            raise ValueError(f"harmonic orders must be strictly increasing, got {orders}")
        if 1 not in orders:
            raise ValueError("the fundamental (order 1) must be in harmonic_orders")
        object.__setattr__(self, "harmonic_orders", orders)

    @property
    def fundamental_index(self) -> int:
        return self.harmonic_orders.index(1)


@dataclass(frozen=True)
class SimConfig:
    """Bundle of pulse/atom/mode parameters plus numerical tolerances.

    The measurement time is pinned to the end of the pulse, where A(t) = 0
    for integer-cycle pulses; passing any other value is rejected.
    """

    pulse: LaserPulse
    atom: AtomModel = field(default_factory=AtomModel)
    modes: ModeSet = field(default_factory=ModeSet)
    measurement_time: float | None = None
    quad_tolerance: float = 1e-9
    saddle_tolerance: float = 1e-10
    n_atoms: int = 1

    def __post_init__(self):
        t_end = self.pulse.t_end
        if self.measurement_time is None:
            object.__setattr__(self, "measurement_time", t_end)
        elif not math.isclose(self.measurement_time, t_end, rel_tol=0, abs_tol=1e-9 * max(1.0, abs(t_end))):
            raise ValueError(
                f"measurement_time must equal the pulse end {t_end!r}, got {self.measurement_time!r}"
            )
        if not self.quad_tolerance > 0:
            raise ValueError("quad_tolerance must be positive")
        if not self.saddle_tolerance > 0:
            raise ValueError("saddle_tolerance must be positive")
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise ValueError(f"n_atoms must be a positive integer, got {self.n_atoms}")

    def mode_frequency(self, order: int) -> float:
        if order not in self.modes.harmonic_orders:
            raise ValueError(f"order {order} not in mode set {self.modes.harmonic_orders}")
        return order * self.pulse.omega_L


def ponderomotive_energy(pulse: LaserPulse) -> float:
    """Cycle-averaged quiver energy Up = E0^2 / (4 omega_L^2) in a.u."""
    return pulse.up


def validate_regime(config: SimConfig, photoelectron_energies=()) -> list[str]:
    """Check that the configuration sits inside the model's validity window.

    Returns a list of human-readable warnings (possibly empty); never raises.
    Optionally give the photoelectron energies the run will probe so that the
    rescattering bound E(p) <= 2.5 Up can be checked as well.
    """
    warnings = []
    pulse = config.pulse
    if pulse.E0 >= OVER_BARRIER_FIELD:
        warnings.append(
            f"E0 = {pulse.E0:g} a.u. >= {OVER_BARRIER_FIELD} a.u.: over-the-barrier ionization "
            "dominates tunneling; direct-ATI amplitudes are unreliable"
        )
    up = pulse.up
    for energy in photoelectron_energies:
        if energy > RESCATTERING_ENERGY_FACTOR * up:
            warnings.append(
                f"photoelectron energy {energy:g} a.u. exceeds {RESCATTERING_ENERGY_FACTOR} Up "
                f"= {RESCATTERING_ENERGY_FACTOR * up:g} a.u.: rescattering (neglected here) matters"
            )
    # Residual vector potential at the pulse end breaks the A(t_meas) = 0
    # assumption used by the conditioning projectors.
    from .field import vector_potential

    residual = abs(vector_potential(pulse, pulse.t_end))
    if residual > 1e-6 * pulse.E0 / pulse.omega_L:
        warnings.append(
            f"|A(t_end)| = {residual:g} a.u. is not negligible (cep = {pulse.cep:g}); "
            "the end-of-pulse momentum conditioning is only approximate"
        )
    return warnings
