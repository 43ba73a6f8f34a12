"""
Monte Carlo view of the two sums
================================

With p the half-sum of 2k fair signs, S0 / 4^k = E|p| and, for an
independent copy q, S1 / 16^k = E|p^2 - q^2|.  Both are estimated here
and compared with the exact rationals.  Note E|p^2 - q^2| = 2 (E|p|)^2.
"""

from absum import RngSpec, mc_mean_abs, mc_mean_absdiffsq

spec = RngSpec(seed=2024)
for k in (1, 2, 5, 10, 20):
    a = mc_mean_abs(k, 200_000, spec)
    b = mc_mean_absdiffsq(k, 200_000, spec)
    print(f"k={k:<3} E|p|~{a.mean:.4f} ({float(a.target):.4f}, z={a.z:+.2f})  "
          f"E|p^2-q^2|~{b.mean:.4f} ({float(b.target):.4f}, z={b.z:+.2f})  "
          f"2(E|p|)^2 = {float(2 * a.target ** 2):.4f}")
