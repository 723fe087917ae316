"""Closed-loop simulation driver with structured logging.

Each control tick evaluates the controller and the allocation pipeline,
holds the resulting actuator commands (zero-order hold), and advances
the plant through an integer number of physics steps. The run is fully
deterministic: no randomness, no wall-clock dependence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .allocation import Allocator, build_A_alpha
from .controller import Gains, compute_errors, control_wrench
from .mathcore import rotation_to_quat, wrap_angle
from .singularity import SingularityParams
from .trajectories import Trajectory
from .vehicle import RigidBodyState, VehicleParams, Wrench, integrate_step


@dataclass
class SimConfig:
    """Loop rates and optional overrides for a simulation run."""

    dt_physics: float = 0.001
    dt_control: float = 0.005
    duration: float | None = None
    initial_state: RigidBodyState | None = None

    def __post_init__(self):
        if self.dt_physics <= 0.0 or self.dt_control <= 0.0:
            raise ValueError("time steps must be positive")
        ratio = self.dt_control / self.dt_physics
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            raise ValueError("dt_control must be an integer multiple of dt_physics")


# Flat log column layout: (name, width) in order.
LOG_FIELDS = (
    ("t", 1),
    ("x", 3), ("v", 3), ("q", 4), ("omega", 3),
    ("x_sp", 3), ("v_sp", 3), ("q_sp", 4), ("omega_sp", 3),
    ("e_p", 3), ("e_v", 3), ("e_R", 3), ("e_omega", 3),
    ("F_cmd", 3), ("tau_cmd", 3),
    ("alpha_cmd", 6), ("Omega_cmd", 12),
    ("eta_f", 1), ("k_t", 1), ("k_alpha", 6),
)


def log_column_names():
    names = []
    for name, width in LOG_FIELDS:
        if width == 1:
            names.append(name)
        else:
            names.extend(f"{name}{k}" for k in range(width))
    return names


@dataclass
class SimLog:
    """Row-per-control-tick time series of a simulation run."""

    data: np.ndarray  # shape (n_rows, n_columns) per LOG_FIELDS
    dt_control: float

    def column(self, name):
        """All rows of one named field, squeezed to 1-D for scalar fields."""
        offset = 0
        for fname, width in LOG_FIELDS:
            if fname == name:
                block = self.data[:, offset:offset + width]
                return block[:, 0] if width == 1 else block
            offset += width
        raise KeyError(name)

    def to_csv(self, path):
        names = log_column_names()
        with open(path, "w") as fh:
            fh.write(",".join(names) + "\n")
            for row in self.data:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


class SimulationDiverged(RuntimeError):
    """Raised when the plant state stops being finite; carries the partial log."""

    def __init__(self, message, log: SimLog):
        super().__init__(message)
        self.log = log


def simulate(trajectory: Trajectory, params: VehicleParams, gains: Gains,
             sing_params: SingularityParams | None = None,
             config: SimConfig | None = None) -> SimLog:
    """Run the controller/allocation/plant loop over a trajectory."""
    config = config or SimConfig()
    duration = config.duration if config.duration is not None else trajectory.duration
    n_ticks = int(round(duration / config.dt_control))
    steps_per_tick = int(round(config.dt_control / config.dt_physics))

    allocator = Allocator(params, sing_params)
    sp0 = trajectory.sampler(0.0)
    if config.initial_state is not None:
        state = config.initial_state
    else:
        state = RigidBodyState(x=sp0.x_sp.copy(), v=sp0.v_sp.copy(),
                               R=sp0.R_sp.copy(), omega_b=sp0.omega_sp.copy())
    alpha = np.zeros(6)

    n_cols = sum(w for _, w in LOG_FIELDS)
    rows = np.empty((n_ticks + 1, n_cols))

    for k in range(n_ticks + 1):
        t = k * config.dt_control
        sp = trajectory.sampler(t)
        errors = compute_errors(state, sp)
        wrench_des = control_wrench(errors, state, sp, gains, params)
        cmd = allocator.allocate(wrench_des.as_vector(), alpha, config.dt_control)
        alpha = cmd.alpha_cmd

        A_alpha = build_A_alpha(params, alpha)
        realized = A_alpha @ cmd.Omega_cmd
        thrusts = params.c_f * cmd.Omega_cmd
        thrust_sum = float(np.sum(thrusts))
        eta_f = float(np.linalg.norm(realized[:3]) / thrust_sum) if thrust_sum > 0.0 else 0.0

        rows[k] = np.concatenate([
            [t], state.x, state.v, rotation_to_quat(state.R), state.omega_b,
            sp.x_sp, sp.v_sp, rotation_to_quat(sp.R_sp), sp.omega_sp,
            errors.e_p, errors.e_v, errors.e_R, errors.e_omega,
            wrench_des.F, wrench_des.tau,
            cmd.alpha_cmd, cmd.Omega_cmd,
            [eta_f, cmd.k_t], cmd.k_alpha,
        ])

        if k == n_ticks:
            break
        plant_wrench = Wrench(F=realized[:3], tau=realized[3:])
        try:
            for _ in range(steps_per_tick):
                state = integrate_step(state, lambda _t: plant_wrench,
                                       config.dt_physics, params)
        except RuntimeError as exc:
            partial = SimLog(data=rows[:k + 1].copy(), dt_control=config.dt_control)
            raise SimulationDiverged(str(exc), partial) from exc

    return SimLog(data=rows, dt_control=config.dt_control)


@dataclass
class TrackingSummary:
    max_pos_err_m: float
    rms_pos_err_m: float
    max_att_err_deg: float
    rms_att_err_deg: float
    max_tilt_rate_rad_s: float
    min_eta_f: float

    def as_dict(self):
        return {
            "max_pos_err_m": self.max_pos_err_m,
            "rms_pos_err_m": self.rms_pos_err_m,
            "max_att_err_deg": self.max_att_err_deg,
            "rms_att_err_deg": self.rms_att_err_deg,
            "max_tilt_rate_rad_s": self.max_tilt_rate_rad_s,
            "min_eta_f": self.min_eta_f,
        }


def tracking_summary(log: SimLog) -> TrackingSummary:
    """Aggregate tracking errors, tilt rates, and forced-efficiency floor."""
    if log.data.shape[0] == 0:
        raise ValueError("empty log")
    pos_err = np.linalg.norm(log.column("e_p"), axis=1)

    q = log.column("q")
    q_sp = log.column("q_sp")
    dots = np.clip(np.abs(np.sum(q * q_sp, axis=1)), 0.0, 1.0)
    att_err = 2.0 * np.arccos(dots)

    alpha = log.column("alpha_cmd")
    if alpha.shape[0] > 1:
        steps = wrap_angle(np.diff(alpha, axis=0))
        max_tilt_rate = float(np.max(np.abs(steps)) / log.dt_control)
    else:
        max_tilt_rate = 0.0

    return TrackingSummary(
        max_pos_err_m=float(np.max(pos_err)),
        rms_pos_err_m=float(np.sqrt(np.mean(pos_err**2))),
        max_att_err_deg=float(np.rad2deg(np.max(att_err))),
        rms_att_err_deg=float(np.rad2deg(np.sqrt(np.mean(att_err**2)))),
        max_tilt_rate_rad_s=max_tilt_rate,
        min_eta_f=float(np.min(log.column("eta_f"))),
    )
