"""
The double sum, one step at a time
==================================

S1 = sum_{p,q} C(2k,k+p) C(2k,k+q) |p^2 - q^2| equals 2 k^2 C(2k,k)^2.
We split S1 into the p=0-or-q=0 slice (S2) and the rest (S3), then follow
S3 through the telescoping argument.
"""

from absum import identities as ids

k = 6

s1, s2, s3 = ids.s1_direct(k), ids.s2_closed(k), ids.s3_direct(k)
print("S1 =", s1, " closed form:", ids.s1_closed(k))
print("S2 + S3 =", s2 + s3)

# The second moment that gives S2, via x d/dx applied twice to the
# generating function x^-k (1+x)^2k and evaluated at 1.
print("sum p^2 C(2k,k+p):", ids.moment_via_genfun(k, 2), "=", k * 2 ** (2 * k - 1))

# Every intermediate form of S3 / 8 along the way.
for name, value in ids.telescope_forms(k).items():
    print(f"  {name:<10} {value}")

print("S3 closed:", ids.s3_closed(k))

# Everything at once.
for report in ids.verify_all(k):
    print(f"{report.identity_id.value:<11} {'ok' if report.equal else 'FAIL'}")
