"""Small 2x2 matrix/vector kernels shared by the whole package.

Matrices are plain numpy arrays of shape (2, 2), vectors of shape (2,).
Powers are formed by repeated multiplication, singular values come from
the closed-form 2x2 expression, and the pseudo-inverse goes through an
SVD with a relative rank cutoff so that rank decisions stay stable at
monodromy scale (entries O(1) up to O(|c|**N)).
"""

from __future__ import annotations

import math

import numpy as np

# A singular value counts as zero iff sigma <= RANK_RTOL * max(1, sigma_max).
RANK_RTOL = 1e-9


def as_mat2(a) -> np.ndarray:
    A = np.asarray(a, dtype=float)
    if A.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


def as_vec2(v) -> np.ndarray:
    x = np.asarray(v, dtype=float)
    if x.shape != (2,):
        raise ValueError(f"expected a 2-vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector entries must be finite")
    return x


def mat2_pow(A, t: int) -> np.ndarray:
    """A**t for integer t >= 0 by repeated multiplication; t=0 is the identity."""
    A = as_mat2(A)
    if t != int(t) or t < 0:
        raise ValueError("exponent must be a nonnegative integer")
    out = np.eye(2)
    for _ in range(int(t)):
        out = A @ out
    return out


def svals2(A) -> tuple[float, float]:
    """Both singular values of a 2x2 matrix, largest first.

    Uses the closed form via the Gram matrix A A^T: with
    s1 = sum of squared entries and s2 = hypot(a^2+b^2-c^2-d^2, 2(ac+bd)),
    the squared singular values are (s1 +- s2) / 2.
    """
    a, b, c, d = as_mat2(A).ravel()
    s1 = a * a + b * b + c * c + d * d
    s2 = math.hypot(a * a + b * b - c * c - d * d, 2.0 * (a * c + b * d))
    smax = math.sqrt(0.5 * (s1 + s2))
    smin = math.sqrt(max(0.0, 0.5 * (s1 - s2)))
    return smax, smin


def rank2(A) -> int:
    """Numerical rank under the package cutoff."""
    smax, smin = svals2(A)
    cut = RANK_RTOL * max(1.0, smax)
    return int(smax > cut) + int(smin > cut)


def pinv2(A) -> np.ndarray:
    """Moore-Penrose pseudo-inverse with the package rank cutoff."""
    U, s, Vt = np.linalg.svd(as_mat2(A))
    cut = RANK_RTOL * max(1.0, s[0])
    inv = np.array([1.0 / sv if sv > cut else 0.0 for sv in s])
    return (Vt.T * inv) @ U.T
