"""
The single absolute-value sum
=============================

Sum C(2k, k+p) |p| over every integer p, and compare with k C(2k, k).
"""

from absum import s0_closed, s0_direct
from absum.identities import verify_eq1, verify_p_rewrite

# The direct sum and the closed form agree for every k we try.
for k in range(8):
    print(k, s0_direct(k), s0_closed(k))

# The two symmetric halves: S0 is twice the sum over p > 0.
print(verify_eq1(6))

# The termwise rewrite behind the evaluation, checked for every p
# (including offsets outside the support, where both sides are zero).
k = 5
print(all(verify_p_rewrite(k, p).equal for p in range(-k - 2, k + 3)))
