#!/usr/bin/env python3
# Machine-check the existence-theorem hypotheses for concrete problems.
# The checkers sample g on grids (flagged in the report), compute the
# conservative operator-norm bound, and report every condition separately.

from perdiff import Problem, check_corollary, check_thm1, check_thm2


def show(report):
    print(f"  theorem {report.theorem}: overall {'PASS' if report.overall else 'FAIL'}")
    for cond in report.conditions:
        mark = "ok " if cond.passed else "FAIL"
        interesting = {k: v for k, v in cond.quantities.items()
                       if not isinstance(v, (list, type(None)))}
        print(f"    [{mark}] {cond.id}: {interesting}")
    print()


print("bounded-window theorem, nonresonant instance (0, 2, 3):")
p = Problem.from_text(0, 2, 3, "tanh(x)+0.1*cos(2*pi*t/3)")
show(check_thm1(p, r=10.0, zhat=1.0))

print("same theorem fails when the window is too tight for cubic growth:")
p = Problem.from_text(-3, 2, 3, "x^3")
show(check_thm1(p, r=1.0, zhat=5.0))

print("corollary (time-independent g): slow growth beats any power bound;")
print("logfade(x) = k(x)*x + 0.1*|x|^0.5 + 0.1 with k ~ 1/ln|x| passes:")
p = Problem.from_text(1.2, 1, 3, "logfade(x)")
rep = check_corollary(p, R=5.0)
show(rep)
ratios = rep.condition("C1*").quantities["ratios"]
print("  sampled growth ratios along r = 10..10^6:",
      ", ".join(f"{v:.4f}" for v in ratios))
print("  (linear g(x) = x holds at ratio 1 and fails this condition)")
print()

print("two-dimensional resonance theorem on (1, 1, 3):")
p = Problem.from_text(1, 1, 3, "tanh(x)+0.1*cos(2*pi*t/3)")
show(check_thm2(p, zhat=1.0))

print("the same check with zhat = 0.01 drags the sampled infimum J below 0:")
show(check_thm2(p, zhat=0.01))
