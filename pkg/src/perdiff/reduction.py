"""Nonlinear machinery: reduction of the periodic problem to kernel coordinates.

Solving L x = F(x) splits into the auxiliary equation
x = P x + M_p (I - Q) F(x), solved by a damped fixed-point iteration (with a
finite-difference Newton fallback) for each choice of kernel coordinates, and
a finite-dimensional bifurcation equation: the pairing of F against the
periodic adjoint solutions must vanish. A sequence solves the original
problem exactly when both hold.

Depending on the kernel dimension of the linear part this gives three
solvers:

* ``solve_nonresonant`` -- invertible linear part; plain fixed point of
  L^{-1} F with damping and a Newton fallback;
* ``solve_1d`` -- one kernel direction; bisection on the scalar bifurcation
  function over [-r, r] after checking it changes sign, mirroring the sign
  argument that proves existence;
* ``solve_2d`` -- two kernel directions; the winding number of the planar
  bifurcation map around a circle provides degree evidence, then Newton from
  a deterministic grid of seeds locates a zero.

All produced solutions are re-validated: the two reduced equations, the
scalar recurrence residual, and the independent oracle check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import expr, oracle
from .linear import (
    LinearData,
    Problem,
    apply_L,
    build_linear_data,
    image_test,
    mp_solve,
    proj_P,
    proj_Q,
    sup_norm,
    _mpiq_blocks,
    _upper_from_blocks,
)

_PICARD_BUDGET = 80
_DAMPING_FLOOR = 2.0**-10


class SolverError(RuntimeError):
    """A solver could not produce an acceptable solution."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConvergenceError(SolverError):
    """Iteration budget exhausted before reaching the requested tolerance."""


class NoSignChangeError(SolverError):
    """Scalar bifurcation function has equal signs at both interval ends."""


class BoundaryZeroError(RuntimeError):
    """The swept map vanishes on the circle; the degree is undefined there."""


# -- substitution operator ------------------------------------------------


def apply_F(problem: Problem, x: np.ndarray) -> np.ndarray:
    """(F x)(t) = (0, g(t, x1(t))); the nonlinearity lifted to sequences."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    try:
        out[:, 1] = expr.evaluate(problem.g, np.arange(problem.N), x[:, 0])
    except expr.DomainError:
        for t in range(problem.N):
            try:
                expr.evaluate(problem.g, t, x[t, 0])
            except expr.DomainError as e:
                raise expr.DomainError(f"{e} (at t={t}, x={x[t, 0]!r})") from None
        raise
    return out


# -- bifurcation map -------------------------------------------------------


@dataclass
class BifurcationMap:
    """Reduced problem in kernel coordinates, with the inner solve settings."""

    problem: Problem
    ld: LinearData
    inner_tol: float = 1e-12
    inner_max_iter: int = 500
    _norm_upper: float | None = field(default=None, repr=False)
    _inner_iters: int = field(default=0, repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("bifurcation map needs a nontrivial kernel")
        if self.inner_tol <= 0:
            raise ValueError("inner_tol must be positive")

    @property
    def dim(self) -> int:
        return self.ld.resonance.dim

    @property
    def norm_upper(self) -> float:
        """Cached sound upper bound for the norm of M_p (I - Q)."""
        if self._norm_upper is None:
            self._norm_upper = _upper_from_blocks(_mpiq_blocks(self.ld))
        return self._norm_upper

    def kernel_lift(self, alpha) -> np.ndarray:
        """Kernel element with coordinates alpha in the classified basis."""
        a = np.atleast_1d(np.asarray(alpha, dtype=float))
        if a.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} kernel coordinate(s)")
        lift = np.zeros((self.problem.N, 2))
        for aj, zj in zip(a, self.ld.resonance.kernel_basis):
            lift += aj * zj
        return lift


def _aux_fixed_point(bm: BifurcationMap, lift: np.ndarray) -> np.ndarray:
    """Solve w = M_p (I - Q) F(lift + w) in Ker(P) to bm.inner_tol."""
    ld = bm.ld

    def step(w):
        Fx = apply_F(bm.problem, lift + w)
        target = mp_solve(ld, Fx - proj_Q(ld, Fx))
        # the image of M_p(I-Q) is bounded by its operator norm times the
        # largest nonlinearity value actually reached; a violation would
        # mean the linear data is inconsistent
        bound = bm.norm_upper * float(np.max(np.abs(Fx[:, 1]), initial=0.0))
        if sup_norm(target) > bound * (1.0 + 1e-9) + 1e-12:
            raise RuntimeError("auxiliary iterate exceeded the operator-norm bound")
        return target

    w = np.zeros((bm.problem.N, 2))
    target = step(w)
    res = sup_norm(target - w)
    lam = 1.0
    used = 0
    while used < min(_PICARD_BUDGET, bm.inner_max_iter) and res > bm.inner_tol:
        w_new = (1.0 - lam) * w + lam * target
        target_new = step(w_new)
        res_new = sup_norm(target_new - w_new)
        used += 1
        if res_new <= res:
            w, target, res = w_new, target_new, res_new
            lam = min(1.0, 2.0 * lam)
        else:
            lam *= 0.5
            if lam < _DAMPING_FLOOR:
                break
    bm._inner_iters += used

    if res <= bm.inner_tol:
        return w

    # Newton fallback on the flattened residual w - M_p(I-Q)F(lift + w);
    # steps stay inside Ker(P) because the right-hand map lands there
    N = bm.problem.N

    def resid(wf):
        ws = wf.reshape(N, 2)
        return (ws - step(ws)).ravel()

    wf = w.ravel().copy()
    r = resid(wf)
    for it in range(min(40, bm.inner_max_iter - used)):
        rn = float(np.max(np.abs(r)))
        if rn <= bm.inner_tol:
            bm._inner_iters += it
            return wf.reshape(N, 2)
        J = np.empty((2 * N, 2 * N))
        for j in range(2 * N):
            h = 1e-6 * (1.0 + abs(wf[j]))
            wp = wf.copy()
            wp[j] += h
            wm = wf.copy()
            wm[j] -= h
            J[:, j] = (resid(wp) - resid(wm)) / (2.0 * h)
        try:
            d = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            raise ConvergenceError(
                f"auxiliary equation: singular Newton system (residual {rn:.3e})"
            ) from None
        f0 = float(r @ r)
        s = 1.0
        while True:
            r_new = resid(wf + s * d)
            if float(r_new @ r_new) <= (1.0 - 1e-4 * s) * f0:
                break
            s *= 0.5
            if s < 1e-12:
                raise ConvergenceError(
                    f"auxiliary equation stalled (residual {rn:.3e})"
                )
        wf = wf + s * d
        r = r_new
    rn = float(np.max(np.abs(r)))
    if rn <= bm.inner_tol:
        return wf.reshape(N, 2)
    raise ConvergenceError(f"auxiliary equation did not converge (residual {rn:.3e})")


def aux_solve(bm: BifurcationMap, alpha) -> np.ndarray:
    """Converged auxiliary solution w(alpha) in Ker(P).

    Satisfies sup_norm(w - M_p(I-Q)F(kernel_lift(alpha) + w)) <= inner_tol.
    Raises ConvergenceError when the damped iteration and the Newton
    fallback both fail.
    """
    return _aux_fixed_point(bm, bm.kernel_lift(alpha))


def bifurcation_value(bm: BifurcationMap, alpha) -> np.ndarray:
    """Reduced equation values at alpha (one entry per kernel dimension).

    Pairs F(kernel_lift(alpha) + w(alpha)) against the shifted adjoint
    basis. With the classified bases this is the plain sum of g-values in
    the one-dimensional constant-kernel case and the cos/sin-weighted sums
    in the two-dimensional rotation case.
    """
    lift = bm.kernel_lift(alpha)
    w = _aux_fixed_point(bm, lift)
    return image_test(bm.ld, apply_F(bm.problem, lift + w))


# -- winding numbers -------------------------------------------------------


def winding_of_map(fn, radius: float, samples: int = 8,
                   max_samples: int = 1 << 14) -> int:
    """Winding number of t -> fn(radius * e^{it}) around the origin.

    Doubles the sample count until consecutive image points subtend less
    than pi/2 each, then rounds the accumulated angle to an integer.
    Raises BoundaryZeroError if an image point (relative to the largest)
    is numerically zero, and ConvergenceError if refinement never settles.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    m = max(8, int(samples))
    while m <= max_samples:
        phis = 2.0 * math.pi * np.arange(m) / m
        vals = np.array([fn(radius * np.array([math.cos(p), math.sin(p)]))
                         for p in phis], dtype=float)
        mags = np.linalg.norm(vals, axis=1)
        scale = float(np.max(mags))
        if scale == 0.0 or np.any(mags < 1e-8 * scale):
            raise BoundaryZeroError(
                f"map vanishes on the circle of radius {radius}; degree undefined"
            )
        nxt = np.roll(vals, -1, axis=0)
        cross = vals[:, 0] * nxt[:, 1] - vals[:, 1] * nxt[:, 0]
        dot = np.sum(vals * nxt, axis=1)
        dang = np.arctan2(cross, dot)
        if float(np.max(np.abs(dang))) < 0.5 * math.pi:
            turns = float(np.sum(dang)) / (2.0 * math.pi)
            if abs(turns - round(turns)) < 0.25:
                return int(round(turns))
        m *= 2
    raise ConvergenceError("winding sweep did not stabilize")


def winding_number(bm: BifurcationMap, radius: float, samples: int = 8) -> int:
    """Winding number of the planar bifurcation map on |alpha| = radius."""
    if bm.dim != 2:
        raise ValueError("winding numbers need a two-dimensional kernel")
    return winding_of_map(lambda a: bifurcation_value(bm, a), radius, samples)


# -- solve reports ---------------------------------------------------------


@dataclass
class SolveReport:
    """Outcome of one solve: solution, recomputed residual, evidence."""

    y: np.ndarray                    # scalar N-periodic solution
    solution: np.ndarray             # system sequence (y(t), y(t+1))
    residual_sup: float              # sup-norm recurrence residual, recomputed
    regime: int                      # kernel dimension used (0, 1 or 2)
    alpha: np.ndarray | None         # kernel coordinates (regimes 1 and 2)
    winding: int | None              # degree evidence (regime 2)
    degree_evidence: bool | None     # winding computed and nonzero
    oracle_verified: bool            # independent residual check at 1e-9
    iterations: dict
    nontrivial_root_found: bool | None = None  # only when g(t, 0) = 0 for all t

    def as_dict(self) -> dict:
        return {
            "regime": self.regime,
            "y": [float(v) for v in self.y],
            "residual_sup": self.residual_sup,
            "alpha": None if self.alpha is None else [float(a) for a in self.alpha],
            "winding": self.winding,
            "degree_evidence": self.degree_evidence,
            "oracle_verified": self.oracle_verified,
            "iterations": self.iterations,
            "nontrivial_root_found": self.nontrivial_root_found,
        }


def _system_sequence(y: np.ndarray) -> np.ndarray:
    return np.stack([y, np.roll(y, -1)], axis=1)


def _check_reduced_equations(problem: Problem, ld: LinearData, x: np.ndarray,
                             tol: float) -> None:
    # both halves of the reduction must hold on any accepted solution
    Fx = apply_F(problem, x)
    aux = x - proj_P(ld, x) - mp_solve(ld, Fx - proj_Q(ld, Fx))
    if sup_norm(aux) > 10.0 * tol:
        raise SolverError(f"auxiliary equation violated ({sup_norm(aux):.3e})")
    if sup_norm(proj_Q(ld, Fx)) > 10.0 * tol:
        raise SolverError(
            f"bifurcation equation violated ({sup_norm(proj_Q(ld, Fx)):.3e})"
        )


def _finalize(problem: Problem, ld: LinearData, y: np.ndarray, regime: int,
              alpha, tol: float, iterations: dict, winding=None,
              degree_evidence=None, nontrivial=None) -> SolveReport:
    polished = oracle.newton_solve(problem, y, tol=1e-12, max_iter=30)
    if polished is not None and (
        np.max(np.abs(oracle.residual(problem, polished)))
        < np.max(np.abs(oracle.residual(problem, y)))
    ):
        y = polished
    x = _system_sequence(y)
    residual_sup = float(np.max(np.abs(oracle.residual(problem, y))))
    _check_reduced_equations(problem, ld, x, tol)
    return SolveReport(
        y=y,
        solution=x,
        residual_sup=residual_sup,
        regime=regime,
        alpha=None if alpha is None else np.atleast_1d(np.asarray(alpha, dtype=float)),
        winding=winding,
        degree_evidence=degree_evidence,
        oracle_verified=oracle.check_solution(problem, y, tol=1e-9),
        iterations=iterations,
        nontrivial_root_found=nontrivial,
    )


def _forcing_free(problem: Problem) -> bool:
    # does the zero sequence solve the problem (g(t, 0) = 0 for every t)?
    vals = expr.evaluate(problem.g, np.arange(problem.N), np.zeros(problem.N))
    return float(np.max(np.abs(np.asarray(vals)))) <= 1e-13


# -- regime 0: invertible linear part ---------------------------------------


def solve_nonresonant(problem: Problem, tol: float = 1e-9,
                      max_iter: int = 200) -> SolveReport:
    """Fixed point of L^{-1} F by damped iteration with a Newton fallback."""
    ld = build_linear_data(problem)
    if ld.resonance.dim != 0:
        raise ValueError("linear part is resonant; use solve_1d or solve_2d")
    N = problem.N

    def fixed_point_map(x):
        return mp_solve(ld, apply_F(problem, x))

    x = np.zeros((N, 2))
    target = fixed_point_map(x)
    res = sup_norm(target - x)
    lam = 1.0
    picard = 0
    newton = 0
    best_x, best_res = x, res
    while picard < max_iter and res > 1e-13:
        if float(np.max(np.abs(oracle.residual(problem, x[:, 0])))) <= 0.1 * tol:
            break
        x_new = (1.0 - lam) * x + lam * target
        try:
            target_new = fixed_point_map(x_new)
        except expr.DomainError:
            lam *= 0.5
            if lam < _DAMPING_FLOOR:
                break
            continue
        res_new = sup_norm(target_new - x_new)
        picard += 1
        if res_new <= res:
            x, target, res = x_new, target_new, res_new
            lam = min(1.0, 2.0 * lam)
            if res < best_res:
                best_x, best_res = x, res
        else:
            lam *= 0.5
            if lam < _DAMPING_FLOOR:
                break

    if res > 1e-13 and float(np.max(np.abs(oracle.residual(problem, x[:, 0])))) > 0.1 * tol:
        # Newton on the flattened fixed-point residual
        def resid(xf):
            xs = xf.reshape(N, 2)
            return (xs - fixed_point_map(xs)).ravel()

        xf = best_x.ravel().copy()
        r = resid(xf)
        for _ in range(40):
            newton += 1
            if float(np.max(np.abs(r))) <= 1e-13:
                break
            J = np.empty((2 * N, 2 * N))
            for j in range(2 * N):
                h = 1e-6 * (1.0 + abs(xf[j]))
                xp = xf.copy()
                xp[j] += h
                xm = xf.copy()
                xm[j] -= h
                J[:, j] = (resid(xp) - resid(xm)) / (2.0 * h)
            try:
                d = np.linalg.solve(J, -r)
            except np.linalg.LinAlgError:
                break
            f0 = float(r @ r)
            s = 1.0
            while True:
                r_new = resid(xf + s * d)
                if float(r_new @ r_new) <= (1.0 - 1e-4 * s) * f0:
                    break
                s *= 0.5
                if s < 1e-12:
                    break
            if s < 1e-12:
                break
            xf = xf + s * d
            r = r_new
        x = xf.reshape(N, 2)

    iterations = {"picard": picard, "newton": newton}
    report = _finalize(problem, ld, x[:, 0], 0, None, tol, iterations)
    if report.residual_sup > tol:
        raise ConvergenceError(
            f"nonresonant solve stalled at residual {report.residual_sup:.3e}",
            diagnostics={"y": [float(v) for v in report.y],
                         "residual_sup": report.residual_sup},
        )
    return report


# -- regime 1: one-dimensional kernel ---------------------------------------


def solve_1d(problem: Problem, r: float = 10.0, tol: float = 1e-9) -> SolveReport:
    """Bisection on the scalar bifurcation function over [-r, r].

    Requires the function to take opposite signs at the two ends (this is
    what the existence argument guarantees under its hypotheses); raises
    NoSignChangeError otherwise.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    ld = build_linear_data(problem)
    if ld.resonance.dim != 1:
        raise ValueError("kernel dimension is not 1")
    bm = BifurcationMap(problem, ld)

    def beta(a: float) -> float:
        return float(bifurcation_value(bm, [a])[0])

    b_hi = beta(r)
    b_lo = beta(-r)
    scale = max(abs(b_hi), abs(b_lo))
    bisection = 0
    if scale <= 1e-14:
        alpha_star = 0.0
    elif b_hi == 0.0:
        alpha_star = r
    elif b_lo == 0.0:
        alpha_star = -r
    elif (b_hi > 0) == (b_lo > 0):
        raise NoSignChangeError(
            f"bifurcation function has the same sign at -r and +r "
            f"({b_lo:.3e}, {b_hi:.3e}); existence hypotheses likely violated",
            diagnostics={"beta_minus": b_lo, "beta_plus": b_hi, "r": r},
        )
    else:
        lo, hi, f_lo = -r, r, b_lo
        while hi - lo > 1e-12 * r:
            mid = 0.5 * (lo + hi)
            f_mid = beta(mid)
            bisection += 1
            if f_mid == 0.0:
                lo = hi = mid
                break
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        alpha_star = 0.5 * (lo + hi)

    lift = bm.kernel_lift([alpha_star])
    w = _aux_fixed_point(bm, lift)
    y = (lift + w)[:, 0]

    nontrivial = None
    if _forcing_free(problem):
        nontrivial = _scan_1d_nontrivial(bm, r)

    iterations = {"bisection": bisection, "inner_fixed_point": bm._inner_iters}
    report = _finalize(problem, ld, y, 1, [alpha_star], tol, iterations,
                       nontrivial=nontrivial)
    if report.residual_sup > tol:
        raise ConvergenceError(
            f"resonant 1d solve stalled at residual {report.residual_sup:.3e}",
            diagnostics={"alpha": alpha_star, "residual_sup": report.residual_sup},
        )
    return report


def _scan_1d_nontrivial(bm: BifurcationMap, r: float) -> bool:
    # with g(t,0)=0 the zero solution exists; look for sign-change brackets
    # away from 0 and check whether any yields a visibly nonzero solution
    grid = np.linspace(-r, r, 33)
    try:
        vals = [float(bifurcation_value(bm, [a])[0]) for a in grid]
    except (ConvergenceError, expr.DomainError):
        return False
    for k in range(len(grid) - 1):
        a0, a1, f0, f1 = grid[k], grid[k + 1], vals[k], vals[k + 1]
        if f0 == 0.0 or (f0 > 0) == (f1 > 0):
            continue
        for _ in range(60):
            mid = 0.5 * (a0 + a1)
            fm = float(bifurcation_value(bm, [mid])[0])
            if fm == 0.0:
                a0 = a1 = mid
                break
            if (fm > 0) == (f0 > 0):
                a0, f0 = mid, fm
            else:
                a1, f1 = mid, fm
        alpha = 0.5 * (a0 + a1)
        lift = bm.kernel_lift([alpha])
        try:
            w = _aux_fixed_point(bm, lift)
        except ConvergenceError:
            continue
        if sup_norm(lift + w) > 1e-6:
            return True
    return False


# -- regime 2: two-dimensional kernel ----------------------------------------


def _estimate_bounds(problem: Problem, span: float = 100.0,
                     points: int = 401) -> tuple[float, float]:
    """Sampled (zhat_est, K_est): sign-condition onset and sup of |g|."""
    xs = np.linspace(-span, span, points)
    ts = np.arange(problem.N)
    vals = np.array([expr.evaluate(problem.g, t, xs) for t in ts])
    K_est = float(np.max(np.abs(vals)))
    zhat_est = 1.0
    for cand in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0):
        mask = np.abs(xs) >= cand
        if np.all((xs[None, mask] * vals[:, mask]) > 0.0):
            zhat_est = cand
            break
    return zhat_est, K_est


def solve_2d(problem: Problem, radius: float = 0.0, grid: int = 9,
             tol: float = 1e-9, samples: int = 16) -> SolveReport:
    """Winding-number evidence plus Newton on the planar bifurcation map.

    With radius <= 0 a heuristic default 10 * (zhat_est + ||M_p(I-Q)|| *
    K_est) is used, both estimates sampled from g. Seeds are the grid x grid
    points of the square inscribed in the search disk, tried closest to the
    origin first; the first root that reproduces the recurrence to tol wins.
    """
    ld = build_linear_data(problem)
    if ld.resonance.dim != 2:
        raise ValueError("kernel dimension is not 2")
    if grid < 1:
        raise ValueError("grid must be >= 1")
    bm = BifurcationMap(problem, ld)

    zhat_est, K_est = _estimate_bounds(problem)
    if radius <= 0.0:
        radius = 10.0 * (zhat_est + bm.norm_upper * K_est)
    scale = 1.0 + problem.N * K_est

    winding = None
    try:
        winding = winding_number(bm, radius, samples)
    except BoundaryZeroError:
        winding = None
    except ConvergenceError:
        winding = None
    degree_evidence = winding is not None and winding != 0

    axis = np.linspace(-radius, radius, grid) if grid > 1 else np.array([0.0])
    seeds = [np.array([a0, a1]) for a0 in axis for a1 in axis
             if math.hypot(a0, a1) <= radius * (1.0 + 1e-12)]
    seeds.sort(key=lambda a: (float(np.hypot(a[0], a[1])), float(a[0]), float(a[1])))

    forcing_free = _forcing_free(problem)
    accepted = None
    newton_iters = 0
    nontrivial = False
    for seed in seeds:
        try:
            root, iters = _newton_2d(bm, seed, tol * scale)
        except (ConvergenceError, expr.DomainError):
            continue
        newton_iters += iters
        if root is None:
            continue
        lift = bm.kernel_lift(root)
        try:
            w = _aux_fixed_point(bm, lift)
        except ConvergenceError:
            continue
        y = (lift + w)[:, 0]
        if float(np.max(np.abs(oracle.residual(problem, y)))) > max(tol, 1e-6):
            continue
        if accepted is None:
            accepted = (root, y)
            if not forcing_free:
                break
        if forcing_free and sup_norm(lift + w) > 1e-6:
            nontrivial = True
            break

    if accepted is None:
        raise SolverError(
            "no root of the bifurcation map found from any seed",
            diagnostics={"radius": radius, "grid": grid, "winding": winding},
        )
    root, y = accepted
    iterations = {
        "newton": newton_iters,
        "inner_fixed_point": bm._inner_iters,
        "winding_samples": samples,
    }
    report = _finalize(problem, ld, y, 2, root, tol, iterations, winding=winding,
                       degree_evidence=degree_evidence,
                       nontrivial=nontrivial if forcing_free else None)
    if report.residual_sup > tol:
        raise ConvergenceError(
            f"resonant 2d solve stalled at residual {report.residual_sup:.3e}",
            diagnostics={"alpha": [float(a) for a in root],
                         "residual_sup": report.residual_sup},
        )
    return report


def _newton_2d(bm: BifurcationMap, seed: np.ndarray,
               tol_abs: float, max_iter: int = 40):
    """Damped Newton on alpha -> bifurcation_value; (root, iters) or (None, iters)."""
    a = np.array(seed, dtype=float)
    v = bifurcation_value(bm, a)
    for it in range(max_iter):
        if float(np.linalg.norm(v)) <= tol_abs:
            return a, it
        J = np.empty((2, 2))
        for j in range(2):
            h = 1e-6 * (1.0 + abs(a[j]))
            ap = a.copy()
            ap[j] += h
            am = a.copy()
            am[j] -= h
            J[:, j] = (bifurcation_value(bm, ap) - bifurcation_value(bm, am)) / (2.0 * h)
        try:
            d = np.linalg.solve(J, -v)
        except np.linalg.LinAlgError:
            return None, it
        f0 = float(v @ v)
        s = 1.0
        while True:
            v_new = bifurcation_value(bm, a + s * d)
            if float(v_new @ v_new) <= (1.0 - 1e-4 * s) * f0:
                break
            s *= 0.5
            if s < 1e-12:
                return None, it
        a = a + s * d
        v = v_new
    return (a, max_iter) if float(np.linalg.norm(v)) <= tol_abs else (None, max_iter)


def solve(problem: Problem, tol: float = 1e-9, r: float = 10.0,
          radius: float = 0.0, grid: int = 9) -> SolveReport:
    """Dispatch to the regime solver matching the kernel dimension."""
    dim = classify_dim(problem)
    if dim == 0:
        return solve_nonresonant(problem, tol=tol)
    if dim == 1:
        return solve_1d(problem, r=r, tol=tol)
    return solve_2d(problem, radius=radius, grid=grid, tol=tol)


def classify_dim(problem: Problem) -> int:
    return build_linear_data(problem).resonance.dim
