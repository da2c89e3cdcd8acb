"""Relative orbital dynamics in the chief-centred Hill (LVLH) frame.

Provides the rotating-frame basis, the nonlinear relative equations of
motion for an inspector about a chief in a nearly circular orbit, a
fixed-step RK4 propagator, and two-body Keplerian propagation of the
chief itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .constants import MU_EARTH

# Reject inspector positions closer than this to the planet centre: a
# relative offset of order the chief radius is physically meaningless at
# inspection scale.
MIN_RADIUS_M = 1.0


class DegenerateOrbit(ValueError):
    """Chief position and velocity do not define a plane."""


class SingularRadius(ValueError):
    """Inspector radius vector has collapsed toward the planet centre."""


class KeplerNoConvergence(RuntimeError):
    """Universal-variable anomaly iteration exceeded its budget."""


@dataclass(frozen=True)
class ChiefState:
    """Inertial state of the inspected vehicle plus orbit constants.

    r_sv, v_sv are inertial position [m] and velocity [m/s]; mu the
    gravitational parameter [m^3/s^2]; semi_major_axis [m] and
    eccentricity define the two-body orbit (eccentricity must stay
    below 0.05 -- the nearly circular regime this model assumes).
    """

    r_sv: np.ndarray
    v_sv: np.ndarray
    mu: float = MU_EARTH
    semi_major_axis: float = 0.0
    eccentricity: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "r_sv", np.asarray(self.r_sv, dtype=float))
        object.__setattr__(self, "v_sv", np.asarray(self.v_sv, dtype=float))
        if np.linalg.norm(self.r_sv) <= 0.0:
            raise ValueError("chief radius must be positive")
        if self.mu <= 0.0:
            raise ValueError("mu must be positive")
        if not 0.0 <= self.eccentricity < 0.05:
            raise ValueError("eccentricity outside the nearly circular range [0, 0.05)")
        if self.semi_major_axis <= 0.0:
            # infer from vis-viva when not supplied
            r = np.linalg.norm(self.r_sv)
            v2 = float(self.v_sv @ self.v_sv)
            inv_a = 2.0 / r - v2 / self.mu
            if inv_a <= 0.0:
                raise ValueError("state is not an elliptic orbit")
            object.__setattr__(self, "semi_major_axis", 1.0 / inv_a)
        if not math.isfinite(self.mean_motion) or self.mean_motion <= 0.0:
            raise ValueError("mean motion must be positive and finite")

    @property
    def mean_motion(self) -> float:
        return math.sqrt(self.mu / self.semi_major_axis**3)


@dataclass(frozen=True)
class RelativeState:
    """Inspector position/velocity offset from the chief, Hill frame [m, m/s]."""

    dr: np.ndarray
    dv: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dr", np.asarray(self.dr, dtype=float))
        object.__setattr__(self, "dv", np.asarray(self.dv, dtype=float))
        if not (np.all(np.isfinite(self.dr)) and np.all(np.isfinite(self.dv))):
            raise ValueError("relative state components must be finite")

    @property
    def vec(self) -> np.ndarray:
        return np.concatenate([self.dr, self.dv])

    @classmethod
    def from_vec(cls, x) -> "RelativeState":
        x = np.asarray(x, dtype=float)
        return cls(x[:3], x[3:])


@dataclass(frozen=True)
class HillFrame:
    """Orthonormal LVLH basis and the frame angular velocity (inertial coords)."""

    r_hat: np.ndarray
    s_hat: np.ndarray
    w_hat: np.ndarray
    omega_hj: np.ndarray

    @property
    def dcm(self) -> np.ndarray:
        """Columns are the basis vectors: maps Hill coordinates to inertial."""
        return np.column_stack([self.r_hat, self.s_hat, self.w_hat])


def hill_frame(chief: ChiefState) -> HillFrame:
    """Radial / along-track / cross-track basis from the chief inertial state."""
    r = chief.r_sv
    v = chief.v_sv
    rn = np.linalg.norm(r)
    h = np.cross(r, v)
    hn = np.linalg.norm(h)
    if rn <= 0.0 or hn <= 1e-12 * max(rn * np.linalg.norm(v), 1.0):
        raise DegenerateOrbit("position and velocity are parallel or zero")
    r_hat = r / rn
    w_hat = h / hn
    s_hat = np.cross(w_hat, r_hat)
    omega_hj = h / rn**2
    return HillFrame(r_hat, s_hat, w_hat, omega_hj)


def _hill_rates(chief: ChiefState) -> tuple[float, float, float]:
    """Chief radius, frame angular rate and its time derivative.

    omega = ||r x v|| / r^2; conservation of angular momentum gives
    omega_dot = -2 rdot omega / r.
    """
    r = chief.r_sv
    v = chief.v_sv
    rn = float(np.linalg.norm(r))
    h = float(np.linalg.norm(np.cross(r, v)))
    omega = h / rn**2
    rdot = float(r @ v) / rn
    omega_dot = -2.0 * rdot * omega / rn
    return rn, omega, omega_dot


def drift_accel(x, chief: ChiefState):
    """Unforced relative acceleration f_v in the Hill frame.

    x has shape (..., 6) = [dr, dv]. The chief sets the frame radius r_c,
    angular rate omega and rate derivative omega_dot. Channels:

      ddx = -mu (r_c + x) / r^3 + mu / r_c^2 + 2 omega vy + omega_dot y + omega^2 x
      ddy = -mu y / r^3 - 2 omega vx - omega_dot x + omega^2 y
      ddz = -mu z / r^3

    with r the inspector's own orbit radius. Broadcasts over leading axes.
    """
    x = np.asarray(x, dtype=float)
    rc, omega, omega_dot = _hill_rates(chief)
    mu = chief.mu
    px, py, pz = x[..., 0], x[..., 1], x[..., 2]
    vx, vy = x[..., 3], x[..., 4]
    r_ins = np.sqrt((rc + px) ** 2 + py**2 + pz**2)
    if np.any(r_ins < MIN_RADIUS_M):
        raise SingularRadius("inspector radius below %g m" % MIN_RADIUS_M)
    r3 = r_ins**3
    ax = -mu * (rc + px) / r3 + mu / rc**2 + 2.0 * omega * vy + omega_dot * py + omega**2 * px
    ay = -mu * py / r3 - 2.0 * omega * vx - omega_dot * px + omega**2 * py
    az = -mu * pz / r3
    return np.stack([ax, ay, az], axis=-1)


def relative_dynamics(x, chief: ChiefState, u=None, d=None):
    """State derivative [dv, f_v + u + d] of the relative motion.

    x has shape (..., 6); u and d are accelerations with shape (..., 3)
    (defaulting to zero). The input enters only the velocity channel.
    """
    x = np.asarray(x, dtype=float)
    acc = drift_accel(x, chief)
    if u is not None:
        acc = acc + np.asarray(u, dtype=float)
    if d is not None:
        acc = acc + np.asarray(d, dtype=float)
    return np.concatenate([x[..., 3:], acc], axis=-1)


def rk4(deriv, y, t: float, dt: float):
    """One classical RK4 step of y' = deriv(y, t)."""
    k1 = deriv(y, t)
    k2 = deriv(y + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = deriv(y + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = deriv(y + dt * k3, t + dt)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step(x, t: float, u, dt: float, chief_model):
    """Discrete nominal map: RK4 step of the unforced dynamics plus held u.

    `chief_model` supplies the chief state as chief_model.state_at(t) (or is
    a bare ChiefState, held fixed over the step). u is zero-order held.
    Broadcasts over leading axes of x.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if isinstance(chief_model, ChiefState):
        chief_at = lambda _t: chief_model
    else:
        chief_at = chief_model.state_at
    u = None if u is None else np.asarray(u, dtype=float)

    def deriv(y, tau):
        return relative_dynamics(y, chief_at(tau), u)

    return rk4(deriv, np.asarray(x, dtype=float), t, dt)


def _stumpff_c(z: float) -> float:
    if abs(z) < 1e-7:
        return 0.5 - z / 24.0 + z * z / 720.0
    if z > 0:
        return (1.0 - math.cos(math.sqrt(z))) / z
    return (math.cosh(math.sqrt(-z)) - 1.0) / (-z)


def _stumpff_s(z: float) -> float:
    if abs(z) < 1e-7:
        return 1.0 / 6.0 - z / 120.0 + z * z / 5040.0
    if z > 0:
        sz = math.sqrt(z)
        return (sz - math.sin(sz)) / sz**3
    sz = math.sqrt(-z)
    return (math.sinh(sz) - sz) / sz**3


def chief_propagate(chief: ChiefState, t: float, max_iter: int = 60) -> ChiefState:
    """Two-body propagation of the chief by time t (universal-variable solve)."""
    if t == 0.0:
        return replace(chief)
    r0 = chief.r_sv
    v0 = chief.v_sv
    mu = chief.mu
    r0n = float(np.linalg.norm(r0))
    sqmu = math.sqrt(mu)
    vr0 = float(r0 @ v0) / r0n
    alpha = 2.0 / r0n - float(v0 @ v0) / mu  # 1/a

    chi = sqmu * abs(alpha) * t
    converged = False
    for _ in range(max_iter):
        z = alpha * chi * chi
        c = _stumpff_c(z)
        s = _stumpff_s(z)
        f = (r0n * vr0 / sqmu) * chi * chi * c + (1.0 - alpha * r0n) * chi**3 * s + r0n * chi - sqmu * t
        fp = (r0n * vr0 / sqmu) * chi * (1.0 - z * s) + (1.0 - alpha * r0n) * chi * chi * c + r0n
        dchi = f / fp
        chi -= dchi
        if abs(dchi) < 1e-12 * max(1.0, abs(chi)):
            converged = True
            break
    if not converged:
        raise KeplerNoConvergence("universal anomaly did not converge in %d iterations" % max_iter)

    z = alpha * chi * chi
    c = _stumpff_c(z)
    s = _stumpff_s(z)
    lf = 1.0 - chi * chi * c / r0n
    lg = t - chi**3 * s / sqmu
    r_new = lf * r0 + lg * v0
    rn = float(np.linalg.norm(r_new))
    lfd = sqmu / (rn * r0n) * chi * (z * s - 1.0)
    lgd = 1.0 - chi * chi * c / rn
    v_new = lfd * r0 + lgd * v0
    return ChiefState(r_new, v_new, mu, chief.semi_major_axis, chief.eccentricity)


def _perifocal_state(a, e, i, raan, argp, nu0, mu):
    """Inertial state from classical elements (true anomaly nu0)."""
    p = a * (1.0 - e * e)
    rmag = p / (1.0 + e * math.cos(nu0))
    r_pf = rmag * np.array([math.cos(nu0), math.sin(nu0), 0.0])
    v_pf = math.sqrt(mu / p) * np.array([-math.sin(nu0), e + math.cos(nu0), 0.0])
    co, so = math.cos(raan), math.sin(raan)
    ci, si = math.cos(i), math.sin(i)
    cw, sw = math.cos(argp), math.sin(argp)
    rot = np.array(
        [
            [co * cw - so * sw * ci, -co * sw - so * cw * ci, so * si],
            [so * cw + co * sw * ci, -so * sw + co * cw * ci, -co * si],
            [sw * si, cw * si, ci],
        ]
    )
    return rot @ r_pf, rot @ v_pf


class ChiefOrbit:
    """Keplerian chief ephemeris with memoised lookups.

    The closed-loop machinery queries the chief at a dense, repeating grid
    of times; propagation results are cached per exact time value.
    """

    def __init__(self, initial: ChiefState):
        self.initial = initial
        self._cache: dict[float, ChiefState] = {}

    @classmethod
    def from_elements(
        cls,
        semi_major_axis_m: float,
        eccentricity: float = 0.0,
        inclination_rad: float = 0.0,
        raan_rad: float = 0.0,
        arg_perigee_rad: float = 0.0,
        true_anomaly_rad: float = 0.0,
        mu: float = MU_EARTH,
    ) -> "ChiefOrbit":
        r, v = _perifocal_state(
            semi_major_axis_m, eccentricity, inclination_rad, raan_rad, arg_perigee_rad, true_anomaly_rad, mu
        )
        return cls(ChiefState(r, v, mu, semi_major_axis_m, eccentricity))

    @classmethod
    def from_mean_motion(cls, omega_w: float, mu: float = MU_EARTH, **kwargs) -> "ChiefOrbit":
        a = (mu / omega_w**2) ** (1.0 / 3.0)
        return cls.from_elements(a, mu=mu, **kwargs)

    @property
    def mean_motion(self) -> float:
        return self.initial.mean_motion

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.mean_motion

    def state_at(self, t: float) -> ChiefState:
        hit = self._cache.get(t)
        if hit is None:
            hit = chief_propagate(self.initial, t)
            if len(self._cache) > 400000:
                self._cache.clear()
            self._cache[t] = hit
        return hit
