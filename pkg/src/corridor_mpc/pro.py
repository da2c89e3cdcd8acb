"""Passive relative orbit (PRO) reference trajectories.

Amplitude-phase parametrisation of the periodic unforced relative orbits
used as tracking references, with position/velocity/acceleration evaluation
and worst-case norm bounds over one period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ProParams:
    """Amplitudes [m], phases [rad] and chief mean motion [1/s].

    Radial amplitude rho_r also drives the along-track excursion (2 rho_r);
    rho_s offsets the along-track centre; rho_w is the cross-track amplitude.
    Phases are wrapped into [0, 2pi).
    """

    rho_r: float
    rho_s: float
    rho_w: float
    alpha_r: float
    alpha_w: float
    omega_w: float

    def __post_init__(self):
        if min(self.rho_r, self.rho_s, self.rho_w) < 0.0:
            raise ValueError("amplitudes must be non-negative")
        if self.omega_w <= 0.0:
            raise ValueError("omega_w must be positive")
        two_pi = 2.0 * math.pi
        object.__setattr__(self, "alpha_r", self.alpha_r % two_pi)
        object.__setattr__(self, "alpha_w", self.alpha_w % two_pi)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega_w


@dataclass(frozen=True)
class ProBounds:
    """Maxima of ||position||, ||velocity||, ||acceleration|| over one period."""

    r_bar: float
    v_bar: float
    a_bar_r: float


def pro_state(params: ProParams, t):
    """Reference position, velocity, acceleration at time t (Hill frame).

    Componentwise, with theta_r = omega t + alpha_r, theta_w = omega t + alpha_w:

      radial:      rho_r sin(theta_r) |  omega rho_r cos(theta_r) | -omega^2 rho_r sin(theta_r)
      along-track: rho_s + 2 rho_r cos(theta_r) | -2 omega rho_r sin(theta_r) | -2 omega^2 rho_r cos(theta_r)
      cross-track: rho_w sin(theta_w) |  omega rho_w cos(theta_w) | -omega^2 rho_w sin(theta_w)

    t may be a scalar or array; outputs have shape t.shape + (3,).
    """
    t = np.asarray(t, dtype=float)
    w = params.omega_w
    th_r = w * t + params.alpha_r
    th_w = w * t + params.alpha_w
    sr, cr = np.sin(th_r), np.cos(th_r)
    sw, cw = np.sin(th_w), np.cos(th_w)
    dr = np.stack(
        [params.rho_r * sr, params.rho_s + 2.0 * params.rho_r * cr, params.rho_w * sw], axis=-1
    )
    dv = np.stack(
        [w * params.rho_r * cr, -2.0 * w * params.rho_r * sr, w * params.rho_w * cw], axis=-1
    )
    da = np.stack(
        [-(w**2) * params.rho_r * sr, -2.0 * w**2 * params.rho_r * cr, -(w**2) * params.rho_w * sw],
        axis=-1,
    )
    return dr, dv, da


def pro_state_vec(params: ProParams, t):
    """Stacked [position, velocity] reference, shape t.shape + (6,)."""
    dr, dv, _ = pro_state(params, t)
    return np.concatenate([dr, dv], axis=-1)


def _golden_max(f, a: float, b: float, tol: float = 1e-12) -> float:
    """Golden-section maximisation of a scalar unimodal f on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol * max(1.0, abs(a) + abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return max(fc, fd)


def pro_bounds(params: ProParams, n_samples: int = 20000) -> ProBounds:
    """Worst-case norms over one period: dense grid plus golden refinement."""
    if params.rho_r == 0.0 and params.rho_s == 0.0 and params.rho_w == 0.0:
        return ProBounds(0.0, 0.0, 0.0)
    period = params.period
    ts = np.linspace(0.0, period, n_samples, endpoint=False)
    dr, dv, da = pro_state(params, ts)
    norms = [np.linalg.norm(arr, axis=-1) for arr in (dr, dv, da)]
    out = []
    step = period / n_samples
    for idx, series in enumerate(norms):
        k = int(np.argmax(series))
        t_lo, t_hi = ts[k] - step, ts[k] + step

        def f(t, _i=idx):
            vals = pro_state(params, t)
            return float(np.linalg.norm(vals[_i]))

        out.append(max(float(series[k]), _golden_max(f, t_lo, t_hi)))
    return ProBounds(*out)
