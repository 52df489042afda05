#!/usr/bin/env python3
"""The headline P-256 probability grids, and the thread/size trade-off.

(Z/pZ)* for P-256's group order p has divisors around 2^201..2^220 with
known factorizations.  For each subgroup order d and thread count m, the
grid prices the chance that some thread's randomized key lands in the
subgroup.  Reproducing these grids costs milliseconds; running the
attack they price would cost ~2^110 steps per thread.
"""

from subgroupdlp import build_table, estimate, load_builtin, int_log2
from subgroupdlp.catalog import P256_TABLE_DIVISORS

p = load_builtin("P-256").p
d1, d2, d3, d4, d5 = P256_TABLE_DIVISORS

print("three divisors near 2^202 (m = 2^45..2^56 threads):")
print(build_table(p, (d1, d2, d3), (45, 50, 52, 53, 54, 55, 56)).render_text())
print()
print("a divisor near 2^213:")
print(build_table(p, (d4,), (41, 42, 43, 44)).render_text())
print()
print("a divisor near 2^220 (the headline: even odds at 2^35 threads):")
print(build_table(p, (d5,), (33, 34, 35, 36, 37)).render_text())
print()

# The trade-off: d*m fixed means the success probability is (nearly)
# fixed, so doubling the subgroup halves the threads -- at the price of
# sqrt(2) more work per thread.
print("trade-off at fixed d*m (lower bound depends only on the product):")
for d, e in ((d1, 54), (2 * d1, 53), (4 * d1, 52)):
    est = estimate(p, d, 1 << e)
    print("  d ~ 2^%7.2f, m = 2^%d:  lower %.5f  exact %.5f  "
          "~2^%.2f steps/thread"
          % (int_log2(d), e, est.lower_bound, est.exact, est.log2_sqrt_d))
