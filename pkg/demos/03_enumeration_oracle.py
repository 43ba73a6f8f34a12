"""
Brute force: counting sign vectors
==================================

C(2k, k+p) counts the +-1 vectors of length 2k whose sum is 2p.  The oracle
enumerates all 4^k of them and rebuilds both sums from the counts alone.
"""

from absum import enumerate_histogram, oracle_s0, oracle_s1, s0_closed, s1_closed

h = enumerate_histogram(4)
print(dict(sorted(h.counts.items())), "total", h.total)

for k in range(0, 11):
    print(k, oracle_s0(k) == s0_closed(k), oracle_s1(k) == s1_closed(k))
