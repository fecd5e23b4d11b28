#!/usr/bin/env python3
# Which coefficients b make the periodic problem resonant? For c = 1 and
# |b| < 2 the companion matrix rotates by theta = arccos(-b/2) per step;
# an N-periodic kernel appears exactly when N*theta is a multiple of 2*pi.
# The set of "dangerous" b values is the image of the rational angles
# 2*pi*k/j -- detected here with continued fractions.

import math

import numpy as np

from perdiff import Problem, classify, membership_U

print("resonant angles for small odd periods (c = 1)")
print(f"{'N':>3} {'k':>3} {'b = -2 cos(2 pi k / N)':>24} {'dim':>4} {'in U':>5}")
for N in (3, 5, 7, 9):
    for k in range(1, (N - 1) // 2 + 1):
        b = -2.0 * math.cos(2.0 * math.pi * k / N)
        rc = classify(Problem.from_text(b, 1.0, N, "0"))
        in_u, witness = membership_U(b)
        print(f"{N:>3} {k:>3} {b:>24.12f} {rc.dim:>4} {str(in_u):>5}   witness {witness}")

print()
print("generic b values stay nonresonant for every odd period:")
for b in (0.3, 1.2, -1.7, math.sqrt(2) - 1):
    in_u, _ = membership_U(b)
    dims = {classify(Problem.from_text(b, 1.0, N, "0")).dim for N in (3, 5, 7, 9, 11, 13)}
    print(f"  b = {b:+.6f}: in U = {in_u}, kernel dims over N in 3..13 = {sorted(dims)}")

print()
print("away from c = 1 the two-dimensional case cannot occur; resonance needs")
print("an eigenvalue 1 of the companion matrix, i.e. 1 + b + c = 0:")
for b, c in [(-3.0, 2.0), (0.0, -1.0), (1.0, -2.0), (0.5, 0.7)]:
    rc = classify(Problem.from_text(b, c, 5, "0"))
    print(f"  (b, c) = ({b:+.1f}, {c:+.1f}): 1+b+c = {1 + b + c:+.1f}, dim = {rc.dim}")

print()
print("scan grid (the CLI produces the same table as CSV via 'perdiff scan'):")
bs = np.linspace(-1.5, 1.5, 7)
print(f"{'b':>8} " + " ".join(f"N={N}" for N in (3, 5, 7)))
for b in bs:
    dims = [classify(Problem.from_text(float(b), 1.0, N, "0")).dim for N in (3, 5, 7)]
    print(f"{b:>8.3f} " + "   ".join(str(d) for d in dims))
