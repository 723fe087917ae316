"""Singularity handling for the tilt-arm allocation.

Three mechanisms keep the actuator map well conditioned and the tilt
commands bounded when the desired force direction approaches a
degenerate geometry:

* tilt bias: when the force comes within phi_t of the body z-axis or the
  body z-plane, arms are biased apart by alternating offsets so the
  instantaneous allocation matrix keeps full rank;
* tilt damping: when the force aligns with an arm line, that arm's
  extracted tilt angle becomes ill defined and its commanded velocity is
  quadratically damped to zero (the arm freezes);
* unwinding: a frozen arm is slowly driven back toward zero tilt so the
  internal cabling does not wind up.

The derivative-level allocation matrix used for analysis lives here too.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .mathcore import angle_between, angle_to_plane
from .vehicle import VehicleParams, rotor_columns

Z_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass
class SingularityParams:
    """Thresholds and rates for the singularity handlers.

    phi_0: arm-alignment angle below which the tilt freezes, rad
    phi_d: arm-alignment angle above which damping is inactive, rad
    phi_t: z-misalignment angle below which tilt bias activates, rad
    c_t: full-bias tilt offset magnitude, rad
    omega_u: unwinding rate for frozen arms, rad/s
    b: per-arm bias directions, alternating +/-1
    """

    phi_0: float = np.deg2rad(5.0)
    phi_d: float = np.deg2rad(15.0)
    phi_t: float = np.deg2rad(10.0)
    c_t: float = np.deg2rad(10.0)
    omega_u: float = 8.0
    b: np.ndarray = field(default_factory=lambda: np.array([-1.0, 1.0, -1.0, 1.0, -1.0, 1.0]))

    def __post_init__(self):
        self.b = np.asarray(self.b, dtype=float)
        if not (0.0 < self.phi_0 < self.phi_d):
            raise ValueError("need 0 < phi_0 < phi_d")
        if self.phi_t <= 0.0 or self.c_t <= 0.0:
            raise ValueError("phi_t and c_t must be positive")
        if self.omega_u < 0.0:
            raise ValueError("omega_u must be nonnegative")
        if self.b.shape != (6,) or not np.all(np.isin(self.b, (-1.0, 1.0))) or np.any(self.b[:-1] == self.b[1:]):
            raise ValueError("b must be 6 alternating entries of +/-1")


def z_misalignment(F_dir):
    """Angle of a unit force direction to the nearer of the body z-axis
    (either sign) and the body z-plane. Ranges over [0, pi/4]."""
    to_axis = min(angle_between(F_dir, Z_AXIS), angle_between(F_dir, -Z_AXIS))
    to_plane = angle_to_plane(F_dir, Z_AXIS)
    return min(to_axis, to_plane)


def tilt_bias_multiplier(phi, params: SingularityParams):
    """Bias activation k_t: 1 at phi = 0, quadratic falloff, 0 beyond phi_t."""
    if phi >= params.phi_t:
        return 0.0
    return float((1.0 - phi / params.phi_t) ** 2)


def apply_tilt_bias(delta_alpha, k_t, params: SingularityParams):
    """Add the alternating bias offsets k_t * b_i * c_t to each arm's tilt step."""
    return np.asarray(delta_alpha, dtype=float) + k_t * params.b * params.c_t


def arm_alignment(F_dir, arm_index, params: VehicleParams):
    """Angle of a unit force direction to the line of arm arm_index.

    The line runs along (cos gamma_i, sin gamma_i, 0); alignment with
    either end counts, so the result lies in [0, pi/2].
    """
    g = params.gamma[arm_index]
    axis = np.array([np.cos(g), np.sin(g), 0.0])
    return min(angle_between(F_dir, axis), angle_between(F_dir, -axis))


def damping_multiplier(eta, params: SingularityParams):
    """Damping gain k_alpha: 1 (frozen) up to phi_0, quadratic ramp to 0 at phi_d."""
    if eta <= params.phi_0:
        return 1.0
    if eta > params.phi_d:
        return 0.0
    return float((1.0 - (eta - params.phi_0) / (params.phi_d - params.phi_0)) ** 2)


def apply_damping_and_unwind(delta_alpha_tilde, k_alpha, alpha_prev, params: SingularityParams, dt):
    """Damp each arm's tilt step by (1 - k_alpha) and unwind frozen arms.

    The unwinding term moves a damped arm toward zero tilt at rate
    k_alpha * omega_u. If that term alone would push the angle past
    zero, the angle is clamped to exactly zero instead of oscillating.
    Returns the final tilt steps delta_alpha_star.
    """
    delta_alpha_tilde = np.asarray(delta_alpha_tilde, dtype=float)
    k_alpha = np.asarray(k_alpha, dtype=float)
    alpha_prev = np.asarray(alpha_prev, dtype=float)

    damped = delta_alpha_tilde * (1.0 - k_alpha)
    unwind = -np.sign(alpha_prev) * k_alpha * params.omega_u * dt
    base = alpha_prev + damped
    crossing = (np.sign(base) == np.sign(alpha_prev)) & (np.abs(unwind) >= np.abs(base)) & (alpha_prev != 0.0)
    new = np.where(crossing, 0.0, base + unwind)
    return new - alpha_prev


def derivative_allocation(params: VehicleParams, alpha, Omega):
    """Rate-level allocation matrix [A_alpha | B], 6x18.

    Maps stacked rates (Omega_dot[12], alpha_dot[6]) to the body wrench
    rate. Column i of the right 6x6 block is the sum over arm i's two
    rotors of d(wrench column)/d(alpha_i) scaled by the rotor's current
    Omega, so the block vanishes when the rotors are stopped.
    """
    alpha = np.asarray(alpha, dtype=float)
    Omega = np.asarray(Omega, dtype=float)
    sin_cols, cos_cols = rotor_columns(params)
    sa = np.sin(alpha[np.arange(12) % 6])
    ca = np.cos(alpha[np.arange(12) % 6])
    A_alpha = sin_cols * sa + cos_cols * ca
    B = np.zeros((6, 6))
    for i in range(6):
        for j in (i, i + 6):
            B[:, i] += (np.cos(alpha[i]) * sin_cols[:, j] - np.sin(alpha[i]) * cos_cols[:, j]) * Omega[j]
    return np.hstack([A_alpha, B])
