"""Semiclassical ionization amplitudes.

M(p, t') = exp(-i S(p, t, t')) E(t') d(p + A(t')) is the direct-ionization
amplitude density; its stationary-phase evaluation at the complex ionization
times yields one weight per saddle.  The dipole matrix element defaults to
the canonical 1D short-range/hydrogenic form d(v) = i * scale * v/(v^2+2Ip)^2,
which is odd in the kinetic momentum; absolute normalization is arbitrary and
every downstream observable uses shapes or ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import _forms
from .model import AtomModel, SimConfig
from .trajectory import SaddlePoint, SaddleSet, action

__all__ = ["DipoleModel", "dipole", "m_integrand", "event_weight", "event_weights",
           "ionization_amplitude_quadrature"]


@dataclass(frozen=True)
class DipoleModel:
    """Analytic dipole matrix element family; only the 1D hydrogenic form ships."""

    form: str = "hydrogenic_1d"
    scale: float = 1.0

    def __post_init__(self):
        if self.form != "hydrogenic_1d":
            raise ValueError(f"unknown dipole form {self.form!r}")
        if not self.scale > 0:
            raise ValueError("scale must be positive")


def dipole(p_kin, atom: AtomModel, model: DipoleModel | None = None):
    """d(v) = i * scale * v / (v^2 + 2 Ip)^2 (complex-capable, odd in v)."""
    scale = (model or DipoleModel(scale=atom.dipole_scale)).scale
    v = np.asarray(p_kin, dtype=complex)
    value = 1j * scale * v / (v * v + 2.0 * atom.Ip) ** 2
    if np.ndim(p_kin) == 0:
        return complex(value)
    return value


def m_integrand(p: float, t_prime, config: SimConfig):
    """Direct-ionization amplitude density M(p, t') at the measurement time.

    Vectorized over real t'; vanishes with the field outside the pulse.
    """
    forms = _forms(config.pulse)
    E = forms.E_at(t_prime)
    A = forms.A_at(t_prime)
    S = action(p, config.measurement_time, t_prime, config)
    d = dipole(p + np.asarray(A, dtype=complex), config.atom)
    value = np.exp(-1j * np.asarray(S, dtype=complex)) * E * d
    if np.ndim(t_prime) == 0:
        return complex(value)
    return value


def _prefactor(s_pp: complex) -> complex:
    return np.sqrt(2.0 * np.pi / (1j * s_pp))


def event_weight(p: float, saddle: SaddlePoint, config: SimConfig) -> complex:
    """Stationary-phase weight sqrt(2 pi/(i S'')) E(ts) d(p + A(ts)) e^{-i S}.

    Uses the principal square-root branch; when several saddles of one pulse
    are combined, use :func:`event_weights`, which keeps the branch continuous
    along the saddle sequence.
    """
    forms = _forms(config.pulse)
    ts = np.asarray(saddle.ts, dtype=complex)
    E = complex(forms.E_at(ts))
    d = dipole(p + complex(forms.A_at(ts)), config.atom)
    return _prefactor(saddle.s_pp) * E * d * np.exp(-1j * saddle.action)


def event_weights(saddle_set: SaddleSet, config: SimConfig) -> np.ndarray:
    """Weights for all saddles with branch-continuity of the sqrt prefactor.

    Walking the saddles in order of Re(ts), a sign flip relative to the
    previous prefactor (angle jump beyond pi/2) is undone, which prevents
    spurious alternation between adjacent half-cycles.
    """
    p = saddle_set.p
    forms = _forms(config.pulse)
    prefactors = []
    previous = None
    for saddle in saddle_set.saddles:
        pref = _prefactor(saddle.s_pp)
        if previous is not None and (np.conj(previous) * pref).real < 0:
            pref = -pref
        prefactors.append(pref)
        previous = pref
    weights = []
    for saddle, pref in zip(saddle_set.saddles, prefactors):
        ts = np.asarray(saddle.ts, dtype=complex)
        E = complex(forms.E_at(ts))
        d = dipole(p + complex(forms.A_at(ts)), config.atom)
        weights.append(pref * E * d * np.exp(-1j * saddle.action))
    return np.array(weights, dtype=complex)


def ionization_amplitude_quadrature(p: float, config: SimConfig,
                                    points_per_cycle: int = 200) -> complex:
    """int M(p, t') dt' on a dense composite-Simpson grid.

    Oracle for the stationary-phase sum of :func:`event_weights`; the grid
    density is chosen from the maximum phase rate of exp(-i S).
    """
    pulse = config.pulse
    rate = (abs(p) + pulse.E0 / pulse.omega_L) ** 2 / 2.0 + config.atom.Ip
    periods = rate * pulse.duration / (2.0 * np.pi)
    n = int(max(points_per_cycle * pulse.n_cycles, 24 * periods))
    n += n % 2  # Simpson needs an even interval count
    grid = np.linspace(pulse.t0, pulse.t_end, n + 1)
    values = m_integrand(p, grid, config)
    h = grid[1] - grid[0]
    weights = np.ones(n + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return complex((values * weights).sum() * h / 3.0)
