"""Continuum-electron kinematics and complex ionization times.

The semiclassical action S(p, t, t') = int_{t'}^{t} [(p + A)^2/2 + Ip] dtau
and the displacement Delta r(p, tau, t') = int_{t'}^{tau} (p + A) ds are
evaluated from the exact antiderivatives of A and A^2, so both accept complex
time arguments directly.  Ionization times are the upper-half-plane roots of
(p + A(ts))^2/2 + Ip = 0, found by damped Newton iteration on the two linear
branches p + A(ts) = +-i sqrt(2 Ip).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .field import _forms
from .model import SimConfig

__all__ = [
    "SaddlePoint",
    "SaddleSet",
    "DegenerateSaddleError",
    "displacement",
    "action",
    "action_second_derivative",
    "solve_saddles",
]

log = logging.getLogger(__name__)

# Roots closer than this (a.u.) are considered duplicates; far below the
# half-cycle spacing of any pulse in the validity regime.
DEDUP_TOLERANCE = 1e-6


class DegenerateSaddleError(ValueError):
    """S''(p, ts) vanished; the stationary-phase weight is undefined."""


@dataclass(frozen=True)
class SaddlePoint:
    """One complex ionization time with its action data.

    Attributes
    ----------
    ts : complex
        Ionization time (Im ts > 0 for accepted tunneling saddles).
    action : complex
        S(p, t_meas, ts).
    s_pp : complex
        d^2 S / dt'^2 at ts.
    residual : float
        |(p + A(ts))^2 / 2 + Ip| after Newton convergence.
    """

    ts: complex
    action: complex
    s_pp: complex
    residual: float


@dataclass(frozen=True)
class SaddleSet:
    p: float
    saddles: tuple[SaddlePoint, ...]

    def __len__(self):
        return len(self.saddles)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.ts for s in self.saddles])


def displacement(p: float, tau, t_prime, pulse):
    """Electron displacement Delta r(p, tau, t') = int_{t'}^{tau} (p + A) ds.

    Antisymmetric under swapping tau and t'; complex arguments use the
    analytic continuation of the in-pulse vector potential.
    """
    forms = _forms(pulse)
    if np.iscomplexobj(tau) or np.iscomplexobj(t_prime):
        tau_c = np.asarray(tau, dtype=complex)
        tp_c = np.asarray(t_prime, dtype=complex)
        return p * (tau_c - tp_c) + forms.IA_at(tau_c) - forms.IA_at(tp_c)
    return p * (np.asarray(tau, dtype=float) - t_prime) + forms.IA_at(tau) - forms.IA_at(t_prime)


def action(p: float, t, t_prime, config: SimConfig):
    """Semiclassical action S(p, t, t') in closed form (complex-capable)."""
    pulse = config.pulse
    Ip = config.atom.Ip
    forms = _forms(pulse)
    free = (0.5 * p * p + Ip) * (np.asarray(t) - np.asarray(t_prime))
    cross = p * (forms.IA_at(t) - forms.IA_at(t_prime))
    quiver = 0.5 * (forms.Q_at(t) - forms.Q_at(t_prime))
    return free + cross + quiver


def action_second_derivative(p: float, ts, config: SimConfig):
    """d^2 S/dt'^2 at t' = ts, i.e. (p + A(ts)) E(ts) with analytic E, A."""
    forms = _forms(config.pulse)
    ts_c = complex(ts)
    value = (p + forms.A_at(np.asarray(ts_c))) * forms.E_at(np.asarray(ts_c))
    value = complex(value)
    if abs(value) < 1e-12:
        raise DegenerateSaddleError(
            f"S'' = {value:.3e} at ts = {ts_c:.6g} (p = {p:g}): degenerate saddle"
        )
    return value


def _newton_root(forms, p: float, target: complex, seed: complex, tolerance: float,
                 max_iter: int = 80):
    """Damped Newton for p + A(z) = target; returns the root or None."""
    z = complex(seed)

    def g(zz):
        return p + complex(forms.A_at(np.asarray(zz, dtype=complex))) - target

    gz = g(z)
    for _ in range(max_iter):
        dg = -complex(forms.E_at(np.asarray(z, dtype=complex)))  # A' = -E
        if abs(dg) < 1e-300:
            return None
        step = -gz / dg
        # Damping: back off until the residual actually decreases.
        for _ in range(12):
            z_new = z + step
            g_new = g(z_new)
            if abs(g_new) <= abs(gz):
                break
            step *= 0.5
        else:
            return None
        z, gz = z_new, g_new
        # Residual of the physical saddle equation (p+A)^2/2 + Ip.
        kin = p + complex(forms.A_at(np.asarray(z, dtype=complex)))
        residual = abs(0.5 * kin * kin + 0.5 * abs(target) ** 2)
        if residual <= tolerance:
            return z
    return None


def solve_saddles(p: float, config: SimConfig, seeds_per_quarter_cycle: int = 1,
                  relevance_cutoff: float = 0.1) -> SaddleSet:
    """Upper-half-plane ionization times of the dominant tunneling family.

    Newton iterations are seeded on a real-time grid (``seeds_per_quarter_cycle``
    per quarter cycle) at an initial imaginary part sqrt(2 Ip)/E0, the
    tunneling-time scale, for both branches p + A = +-i sqrt(2 Ip).  Roots are
    accepted when the residual |(p + A)^2/2 + Ip| falls below
    config.saddle_tolerance, deduplicated, and sorted by their real part.

    Roots whose tunneling weight exp(Im S) falls below ``relevance_cutoff``
    times the strongest root's weight are discarded: the saddle equation also
    has solutions deep under the pulse edges (imaginary parts several times
    the tunneling time) that carry exponentially negligible amplitude, and
    keeping them would make the returned set depend on the seed density.
    Pass ``relevance_cutoff=0`` to keep every converged root.

    Seeds that fail to converge are logged and dropped; an empty set is valid.
    """
    pulse = config.pulse
    Ip = config.atom.Ip
    if not Ip > 0:
        raise ValueError("Ip must be positive")
    forms = _forms(pulse)
    kappa = np.sqrt(2.0 * Ip)
    im0 = min(kappa / pulse.E0, 0.45 * pulse.duration)
    n_seeds = 4 * pulse.n_cycles * max(1, int(seeds_per_quarter_cycle))
    spacing = pulse.duration / n_seeds
    seeds_re = pulse.t0 + (np.arange(n_seeds) + 0.5) * spacing

    tolerance = config.saddle_tolerance
    roots: list[complex] = []
    failures = 0
    for re0 in seeds_re:
        for sign in (1.0, -1.0):
            root = _newton_root(forms, p, sign * 1j * kappa, complex(re0, im0), tolerance)
            if root is None:
                failures += 1
                continue
            if root.imag <= 0:
                continue
            if not (pulse.t0 <= root.real <= pulse.t_end):
                continue
            if any(abs(root - r) < DEDUP_TOLERANCE for r in roots):
                continue
            roots.append(root)
    if failures:
        log.debug("solve_saddles(p=%g): %d of %d Newton seeds did not converge",
                  p, failures, 2 * n_seeds)

    roots.sort(key=lambda z: z.real)
    t_meas = config.measurement_time
    saddles = []
    for z in roots:
        kin = p + complex(forms.A_at(np.asarray(z, dtype=complex)))
        residual = abs(0.5 * kin * kin + Ip)
        saddles.append(SaddlePoint(
            ts=z,
            action=complex(action(p, t_meas, z, config)),
            s_pp=action_second_derivative(p, z, config),
            residual=float(residual),
        ))
    if saddles and relevance_cutoff > 0:
        log_weights = np.array([s.action.imag for s in saddles])
        keep = log_weights >= log_weights.max() + np.log(relevance_cutoff)
        saddles = [s for s, k in zip(saddles, keep) if k]
    return SaddleSet(p=float(p), saddles=tuple(saddles))
