import math

import numpy as np
import pytest

from perdiff import (
    NotInImageError,
    Problem,
    apply_L,
    build_linear_data,
    classify,
    companion_matrix,
    image_test,
    mp_solve,
    norm_bound_mp_iq,
    proj_P,
    proj_Q,
    sup_norm,
)
from perdiff.linear import _apply_mpiq_batch, _mpiq_blocks, _upper_from_blocks
from perdiff.mat2 import RANK_RTOL

from conftest import instance_grid, make_problem


def _ld(b, c, N, g="0"):
    return build_linear_data(make_problem(b, c, N, g))


def test_companion_matrix_values():
    np.testing.assert_array_equal(companion_matrix(-3, 2), [[0, 1], [-2, 3]])
    np.testing.assert_array_equal(companion_matrix(1, 1), [[0, 1], [-1, -1]])
    np.testing.assert_array_equal(companion_matrix(0, 2), [[0, 1], [-2, 0]])
    with pytest.raises(ValueError):
        companion_matrix(1, 0)


def test_problem_validation():
    with pytest.raises(ValueError):
        Problem.from_text(1, 0, 3, "x")
    with pytest.raises(ValueError):
        Problem.from_text(1, 1, 1, "x")


def test_monodromy_values():
    np.testing.assert_allclose(_ld(1, 1, 3).monodromy, np.eye(2), atol=1e-14)
    np.testing.assert_allclose(_ld(-3, 2, 3).monodromy, [[-6, 7], [-14, 15]], atol=1e-12)
    ld = _ld(0, 2, 3)
    IA = np.eye(2) - ld.monodromy
    np.testing.assert_allclose(IA, [[1, 2], [-4, 1]], atol=1e-12)
    assert abs(np.linalg.det(IA) - 9.0) < 1e-10


def test_classify_dims():
    assert classify(make_problem(0, 2, 3, "0")).dim == 0
    assert classify(make_problem(-3, 2, 3, "0")).dim == 1
    assert classify(make_problem(1, 1, 3, "0")).dim == 2


def test_classify_dim1_bases():
    rc = classify(make_problem(-3, 2, 3, "0"))
    assert rc.dim == 1
    np.testing.assert_allclose(rc.kernel_basis[0], np.tile([1.0, 1.0], (3, 1)))
    np.testing.assert_allclose(rc.adjoint_basis[0], np.tile([-2.0, 1.0], (3, 1)))


def test_classify_dim2_rotation_data():
    rc = classify(make_problem(1, 1, 3, "0"))
    assert rc.dim == 2
    assert rc.theta == pytest.approx(2.0 * math.pi / 3.0, abs=1e-12)
    assert rc.r_int == 1
    # kernel basis columns are the sampled rotation solutions
    th = rc.theta
    for t in range(3):
        np.testing.assert_allclose(
            rc.kernel_basis[0][t], [math.cos(th * t), math.cos(th * (t + 1))], atol=1e-12
        )
        np.testing.assert_allclose(
            rc.kernel_basis[1][t], [math.sin(th * t), math.sin(th * (t + 1))], atol=1e-12
        )


def test_classify_jordan_case_is_one_dimensional():
    # b=-2, c=1: eigenvalue 1 with a single Jordan block
    rc = classify(make_problem(-2, 1, 5, "0"))
    assert rc.dim == 1
    np.testing.assert_allclose(rc.kernel_basis[0], np.tile([1.0, 1.0], (5, 1)))


def test_classify_agrees_with_independent_rank():
    mismatches = 0
    for b in np.linspace(-3, 3, 20):
        for c in np.linspace(-2, 2, 20):
            if c == 0.0:
                continue
            for N in (3, 5, 7, 9, 11):
                ld = _ld(float(b), float(c), N)
                M = np.eye(2) - ld.monodromy
                smax = np.linalg.svd(M, compute_uv=False)[0]
                rank = np.linalg.matrix_rank(M, tol=RANK_RTOL * max(1.0, smax))
                if ld.resonance.dim != 2 - rank:
                    mismatches += 1
    assert mismatches == 0


def test_kernel_basis_is_in_kernel():
    for b, c, N in instance_grid():
        ld = _ld(b, c, N)
        for z in ld.resonance.kernel_basis:
            assert sup_norm(apply_L(ld, z)) <= 1e-9 * (1.0 + sup_norm(z))


def test_apply_L_examples():
    ld = _ld(-3, 2, 3)
    assert sup_norm(apply_L(ld, np.zeros((3, 2)))) == 0.0
    assert sup_norm(apply_L(ld, np.tile([1.0, 1.0], (3, 1)))) <= 1e-14
    # pairing of any L-image with the shifted adjoint solutions vanishes
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = rng.standard_normal((3, 2))
        defect = image_test(ld, apply_L(ld, x))
        assert np.max(np.abs(defect)) <= 1e-12


def test_image_test_constant_obstruction():
    ld = _ld(-3, 2, 3)
    h = np.tile([0.0, 1.0], (3, 1))
    vals = image_test(ld, h)
    assert vals.shape == (1,)
    assert vals[0] == pytest.approx(3.0, abs=1e-12)
    with pytest.raises(NotInImageError):
        mp_solve(ld, h)


def test_image_test_dim0_is_empty():
    ld = _ld(0, 2, 3)
    assert image_test(ld, np.ones((3, 2))).size == 0


def test_proj_P_examples():
    # trivial kernel: P is the zero map
    ld0 = _ld(0, 2, 3)
    rng = np.random.default_rng(1)
    x = rng.standard_normal((3, 2))
    assert sup_norm(proj_P(ld0, x)) == 0.0
    # kernel elements are fixed
    ld1 = _ld(-3, 2, 3)
    z = ld1.resonance.kernel_basis[0]
    np.testing.assert_allclose(proj_P(ld1, z), z, atol=1e-12)
    # constant (1,0) projects onto the diagonal direction
    x = np.tile([1.0, 0.0], (3, 1))
    np.testing.assert_allclose(proj_P(ld1, x), np.tile([0.5, 0.5], (3, 1)), atol=1e-12)


def test_proj_Q_examples():
    ld = _ld(-3, 2, 3)
    rng = np.random.default_rng(2)
    # Ker(Q) contains Im(L)
    for _ in range(10):
        x = rng.standard_normal((3, 2))
        assert sup_norm(proj_Q(ld, apply_L(ld, x))) <= 1e-12
    # columns of the adjoint table are fixed by Q
    for j in range(2):
        h = ld.W_table[:, :, j]
        np.testing.assert_allclose(proj_Q(ld, h), h, atol=1e-12)
    # trivial kernel: Q is the zero map
    ld0 = _ld(0, 2, 3)
    assert sup_norm(proj_Q(ld0, rng.standard_normal((3, 2)))) == 0.0


def test_projection_idempotence_across_grid():
    rng = np.random.default_rng(3)
    for b, c, N in instance_grid()[::5]:
        ld = _ld(b, c, N)
        for _ in range(5):
            x = rng.standard_normal((N, 2))
            Px = proj_P(ld, x)
            np.testing.assert_allclose(proj_P(ld, Px), Px, atol=1e-10 * (1 + sup_norm(Px)))
            Qx = proj_Q(ld, x)
            np.testing.assert_allclose(proj_Q(ld, Qx), Qx, atol=1e-10 * (1 + sup_norm(Qx)))


def test_image_test_iff_Q_annihilates():
    rng = np.random.default_rng(4)
    for b, c, N in [(-3, 2, 3), (1, 1, 3), (0, 2, 5), (-2, 1, 5)]:
        ld = _ld(b, c, N)
        for _ in range(25):
            h = rng.standard_normal((N, 2))
            in_image = (
                image_test(ld, h).size == 0
                or np.max(np.abs(image_test(ld, h))) <= 1e-8 * (1 + sup_norm(h))
            )
            q_zero = sup_norm(proj_Q(ld, h)) <= 1e-8 * (1 + sup_norm(h))
            assert in_image == q_zero


def test_mp_solve_contract():
    rng = np.random.default_rng(5)
    for b, c, N in [(-3, 2, 3), (1, 1, 3), (0, 2, 3), (0, 2, 7), (-2, 1, 5)]:
        ld = _ld(b, c, N)
        assert sup_norm(mp_solve(ld, np.zeros((N, 2)))) == 0.0
        for _ in range(10):
            h = rng.standard_normal((N, 2))
            h = h - proj_Q(ld, h)
            x = mp_solve(ld, h)
            assert sup_norm(apply_L(ld, x) - h) <= 1e-9 * (1.0 + sup_norm(h))
            assert sup_norm(proj_P(ld, x)) <= 1e-9


def test_mp_solve_is_inverse_when_nonresonant():
    ld = _ld(0, 2, 3)
    rng = np.random.default_rng(6)
    for _ in range(10):
        h = rng.standard_normal((3, 2))
        np.testing.assert_allclose(apply_L(ld, mp_solve(ld, h)), h, atol=1e-10)


def test_mp_solve_inverts_L_on_complement():
    rng = np.random.default_rng(7)
    for b, c, N in [(-3, 2, 3), (1, 1, 3), (0, 2, 5)]:
        ld = _ld(b, c, N)
        for _ in range(10):
            x = rng.standard_normal((N, 2))
            xc = x - proj_P(ld, x)
            back = mp_solve(ld, apply_L(ld, xc))
            assert sup_norm(back - xc) <= 1e-8 * (1.0 + sup_norm(xc))


def test_adjoint_table_satisfies_recurrence_exactly():
    for b, c, N in [(-3, 2, 3), (1, 1, 3), (0.5, -1.5, 5)]:
        ld = _ld(b, c, N)
        A_inv_T = np.array([[-b / c, 1.0], [-1.0 / c, 0.0]])
        for t in range(N - 1):
            assert np.array_equal(ld.W_table[t + 1], A_inv_T @ ld.W_table[t])


def test_trigonometric_adjoint_cross_check():
    # in the two-dimensional case the iterated adjoint table equals the
    # closed-form trigonometric solution up to a constant invertible factor
    p = make_problem(1, 1, 3, "0")
    ld = build_linear_data(p)
    th = ld.resonance.theta
    A_inv_T = np.array([[-p.b / p.c, 1.0], [-1.0 / p.c, 0.0]])
    gamma = np.eye(2)
    table = []
    for t in range(p.N + 1):
        table.append(gamma)
        gamma = A_inv_T @ gamma
    C = np.array([[-1.0, 0.0], [math.cos(-th), math.sin(-th)]])  # trig value at t=0
    for t in range(p.N + 1):
        trig = np.array([
            [-math.cos(th * t), -math.sin(th * t)],
            [math.cos(th * (t - 1)), math.sin(th * (t - 1))],
        ])
        np.testing.assert_allclose(table[t] @ C, trig, atol=1e-12)


def test_V_is_orthogonal_projector():
    for b, c, N in instance_grid()[::3]:
        ld = _ld(b, c, N)
        np.testing.assert_allclose(ld.V @ ld.V, ld.V, atol=1e-12)
        np.testing.assert_allclose(ld.V.T, ld.V, atol=1e-12)
        M = np.eye(2) - ld.monodromy
        smax = np.linalg.svd(M, compute_uv=False)[0]
        assert np.max(np.abs(M @ ld.V)) <= RANK_RTOL * max(1.0, smax) * 10


def test_norm_bound_soundness_and_pinned_value():
    ld = _ld(0, 2, 3)
    lower, upper = norm_bound_mp_iq(ld, 100_000, seed=0)
    assert lower <= upper
    # pinned on first run of the block construction; the Monte Carlo lower
    # bound must come within a factor 2 of it
    assert upper == pytest.approx(1.9176483170182115, rel=1e-12)
    assert upper <= 2.0 * lower
    with pytest.raises(ValueError):
        norm_bound_mp_iq(ld, 0)


def test_norm_bound_zero_blocks_degenerate_case():
    assert _upper_from_blocks(np.zeros((3, 2, 3, 2))) == 0.0


def test_norm_bound_batch_matches_single():
    ld = _ld(-3, 2, 3)
    rng = np.random.default_rng(8)
    H = rng.standard_normal((4, 3, 2))
    batch = _apply_mpiq_batch(ld, H)
    for s in range(4):
        single = mp_solve(ld, H[s] - proj_Q(ld, H[s]))
        np.testing.assert_allclose(batch[s], single, atol=1e-12)


def test_norm_bound_lower_never_exceeds_upper_across_grid():
    for b, c, N in instance_grid()[::7]:
        ld = _ld(b, c, N)
        lower, upper = norm_bound_mp_iq(ld, 50, seed=1)
        assert lower <= upper * (1.0 + 1e-12)
