"""Minimal 3D linear algebra: hat/vee maps, rotations, and angle utilities.

All vectors are length-3 numpy arrays and all rotations are 3x3 numpy
arrays in SO(3). Functions are pure and never mutate their inputs.
"""

from __future__ import annotations

import numpy as np

SKEW_TOL = 1e-9
ORTHO_TOL = 1e-9


def hat(v):
    """Skew-symmetric matrix M of a 3-vector, with M @ w == cross(v, w)."""
    v = np.asarray(v, dtype=float)
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


def vee(M):
    """Inverse of hat. Rejects matrices that are not skew-symmetric."""
    M = np.asarray(M, dtype=float)
    if np.max(np.abs(M + M.T)) > SKEW_TOL:
        raise ValueError("vee: input is not skew-symmetric")
    return np.array([M[2, 1], M[0, 2], M[1, 0]])


def rotation_from_axis_angle(axis, angle):
    """Rodrigues rotation about a unit axis by angle (rad)."""
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("rotation_from_axis_angle: axis must be a unit vector")
    K = hat(axis)
    return np.eye(3) + np.sin(angle) * K + (1.0 - np.cos(angle)) * (K @ K)


def angle_between(a, b):
    """Angle between two nonzero vectors, in [0, pi]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("angle_between: zero-length vector has no direction")
    c = np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0)
    return float(np.arccos(c))


def angle_to_plane(v, normal):
    """Angle between a vector and the plane with the given unit normal, in [0, pi/2]."""
    v = np.asarray(v, dtype=float)
    if np.linalg.norm(v) == 0.0:
        raise ValueError("angle_to_plane: zero-length vector has no direction")
    return abs(np.pi / 2.0 - angle_between(v, normal))


def wrap_angle(theta):
    """Wrap an angle to (-pi, pi]."""
    w = (theta + np.pi) % (2.0 * np.pi) - np.pi
    if np.isscalar(theta):
        return np.pi if w == -np.pi else float(w)
    w = np.asarray(w)
    w[w == -np.pi] = np.pi
    return w


def is_rotation(R, tol=ORTHO_TOL):
    """True if R is orthonormal with determinant +1 within tol."""
    R = np.asarray(R, dtype=float)
    return (np.max(np.abs(R.T @ R - np.eye(3))) < tol
            and abs(np.linalg.det(R) - 1.0) < tol)


def orthonormalize(R):
    """Nearest rotation matrix (polar decomposition via SVD)."""
    U, _, Vt = np.linalg.svd(np.asarray(R, dtype=float))
    D = U @ Vt
    if np.linalg.det(D) < 0.0:
        U = U.copy()
        U[:, -1] = -U[:, -1]
        D = U @ Vt
    return D


def rotation_to_quat(R):
    """Unit quaternion (w, x, y, z) of a rotation matrix, w >= 0."""
    R = np.asarray(R, dtype=float)
    t = np.trace(R)
    if t > 0.0:
        s = np.sqrt(t + 1.0) * 2.0
        q = np.array([0.25 * s,
                      (R[2, 1] - R[1, 2]) / s,
                      (R[0, 2] - R[2, 0]) / s,
                      (R[1, 0] - R[0, 1]) / s])
    else:
        i = int(np.argmax(np.diag(R)))
        j, k = (i + 1) % 3, (i + 2) % 3
        s = np.sqrt(R[i, i] - R[j, j] - R[k, k] + 1.0) * 2.0
        q = np.empty(4)
        q[0] = (R[k, j] - R[j, k]) / s
        q[1 + i] = 0.25 * s
        q[1 + j] = (R[j, i] + R[i, j]) / s
        q[1 + k] = (R[k, i] + R[i, k]) / s
    if q[0] < 0.0:
        q = -q
    return q
