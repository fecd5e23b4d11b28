import math

import numpy as np
import pytest

from perdiff import Problem

CANONICAL_G = "tanh(x)+0.1*cos(2*pi*t/3)"


def make_problem(b, c, N, g):
    return Problem.from_text(b, c, N, g)


@pytest.fixture
def dim0_problem():
    return make_problem(0, 2, 3, CANONICAL_G)


@pytest.fixture
def dim1_problem():
    return make_problem(-3, 2, 3, CANONICAL_G)


@pytest.fixture
def dim2_problem():
    return make_problem(1, 1, 3, CANONICAL_G)


def instance_grid():
    """(b, c, N) triples spanning all three kernel dimensions."""
    out = []
    for b in np.linspace(-3.0, 3.0, 7):
        for c in (-2.0, -0.5, 0.5, 2.0):
            for N in (3, 5, 7):
                out.append((float(b), float(c), N))
    # one-dimensional kernels: 1 + b + c = 0
    for b, c in [(-3.0, 2.0), (-2.0, 1.0), (-1.5, 0.5), (0.0, -1.0), (1.0, -2.0), (-4.0, 3.0)]:
        for N in (3, 5):
            out.append((b, c, N))
    # two-dimensional kernels: c = 1, N * arccos(-b/2) a multiple of 2*pi
    for N in (3, 5, 7):
        for k in range(1, (N - 1) // 2 + 1):
            out.append((-2.0 * math.cos(2.0 * math.pi * k / N), 1.0, N))
    return out


def random_sequences(N, count, rng):
    return rng.standard_normal((count, N, 2))
