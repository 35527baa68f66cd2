"""Closed-form evaluation of the driving field and its integrals.

The pulse is E(t) = E0 sin^2(pi (t-t0)/T) cos(omega_L (t-t0) + cep) inside
[t0, t0+T] and exactly zero outside.  The vector potential is the exact
integral A(t) = -int_{t0}^t E, held constant after the pulse, so the pair
(E, A) is gauge consistent to machine precision.  All evaluators accept
scalars or arrays; complex arguments are evaluated on the analytic
continuation of the in-pulse closed form (used by the saddle-point solver).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._exppoly import ExpPoly
from .model import LaserPulse

__all__ = [
    "FieldSample",
    "evaluate_E",
    "vector_potential",
    "vector_potential_integral",
    "field_maximum_time",
    "field_sample",
]


@dataclass(frozen=True)
class FieldSample:
    """Field and vector potential at one time."""

    t: float
    E: float
    A: float


class _PulseForms:
    """Exact trig-polynomial forms for one pulse, in the local time theta = t - t0.

    Exposes E, A, IA = int_0^theta A, and Q = int_0^theta A^2 together with
    their end-of-pulse values.  All four are entire functions of theta; window
    clamping for real arguments is applied by the public evaluators.
    """

    def __init__(self, pulse: LaserPulse):
        self.pulse = pulse
        T = pulse.duration
        nu = 2.0 * np.pi / T
        self.nu = nu
        nc = int(pulse.n_cycles)
        phase = np.exp(1j * pulse.cep)

        # E = (E0/2) cos(w th + cep) - (E0/4) cos((w+nu) th + cep) - (E0/4) cos((w-nu) th + cep)
        # with w = nc * nu; harmonic indices nc, nc+1, nc-1 (nc-1 = 0 folds in
        # automatically for single-cycle pulses).
        ep = ExpPoly(nu)
        for m, amp in ((nc, pulse.E0 / 2.0), (nc + 1, -pulse.E0 / 4.0), (nc - 1, -pulse.E0 / 4.0)):
            ep._accumulate(m, [amp / 2.0 * phase])
            ep._accumulate(-m, [amp / 2.0 * np.conj(phase)])
        self.E = ep

        prim = ep.antiderivative()
        self.A = (-1.0) * prim + ExpPoly(nu, {0: [prim(0.0)]})
        prim = self.A.antiderivative()
        self.IA = prim + ExpPoly(nu, {0: [-prim(0.0)]})
        prim = (self.A * self.A).antiderivative()
        self.Q = prim + ExpPoly(nu, {0: [-prim(0.0)]})

        self.A_end = complex(self.A(T)).real
        self.IA_end = complex(self.IA(T)).real
        self.Q_end = complex(self.Q(T)).real

    def _windowed(self, form, t, before, after_linear_slope, after_value):
        """Evaluate a form for real input with the outside-pulse continuation."""
        pulse = self.pulse
        theta = np.asarray(t, dtype=float) - pulse.t0
        T = pulse.duration
        inside = form(np.clip(theta, 0.0, T)).real
        value = np.where(theta < 0.0, before, inside)
        value = np.where(theta > T, after_value + after_linear_slope * (theta - T), value)
        if np.ndim(t) == 0:
            return float(value)
        return value

    def E_at(self, t):
        if np.iscomplexobj(t):
            return self.E(np.asarray(t, dtype=complex) - self.pulse.t0)
        return self._windowed(self.E, t, 0.0, 0.0, 0.0)

    def A_at(self, t):
        if np.iscomplexobj(t):
            return self.A(np.asarray(t, dtype=complex) - self.pulse.t0)
        return self._windowed(self.A, t, 0.0, 0.0, self.A_end)

    def IA_at(self, t):
        if np.iscomplexobj(t):
            return self.IA(np.asarray(t, dtype=complex) - self.pulse.t0)
        return self._windowed(self.IA, t, 0.0, self.A_end, self.IA_end)

    def Q_at(self, t):
        if np.iscomplexobj(t):
            return self.Q(np.asarray(t, dtype=complex) - self.pulse.t0)
        return self._windowed(self.Q, t, 0.0, self.A_end**2, self.Q_end)


@lru_cache(maxsize=64)
def _forms(pulse: LaserPulse) -> _PulseForms:
    return _PulseForms(pulse)


def evaluate_E(pulse: LaserPulse, t):
    """Electric field at time(s) t; zero outside the pulse window."""
    return _forms(pulse).E_at(t)


def vector_potential(pulse: LaserPulse, t):
    """A(t) = -int_{t0}^t E(tau) dtau in closed form; constant after the pulse."""
    return _forms(pulse).A_at(t)


def vector_potential_integral(pulse: LaserPulse, t):
    """Running integral int_{t0}^t A(tau) dtau (closed form)."""
    return _forms(pulse).IA_at(t)


def field_sample(pulse: LaserPulse, t: float) -> FieldSample:
    return FieldSample(t=float(t), E=float(evaluate_E(pulse, t)), A=float(vector_potential(pulse, t)))


def field_maximum_time(pulse: LaserPulse, samples_per_cycle: int = 400) -> float:
    """Time of the global maximum of |E(t)|.

    A dense scan locates the winning sample; a parabolic fit through its
    neighbours polishes the estimate.  Exact ties (e.g. the zero-amplitude
    limit) break to the pulse midpoint.
    """
    n = max(64, int(samples_per_cycle) * pulse.n_cycles)
    t_grid = np.linspace(pulse.t0, pulse.t_end, n + 1)
    magnitude = np.abs(evaluate_E(pulse, t_grid))
    peak = float(magnitude.max())
    midpoint = pulse.t0 + 0.5 * pulse.duration
    if peak <= 0.0:
        return midpoint
    winners = np.flatnonzero(magnitude == peak)
    # Prefer the winner closest to the midpoint so symmetric ties are stable.
    i = int(winners[np.argmin(np.abs(t_grid[winners] - midpoint))])
    if i == 0 or i == n:
        return float(t_grid[i])
    y0, y1, y2 = magnitude[i - 1], magnitude[i], magnitude[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(t_grid[i])
    shift = 0.5 * (y0 - y2) / denom
    shift = float(np.clip(shift, -1.0, 1.0))
    return float(t_grid[i] + shift * (t_grid[1] - t_grid[0]))
