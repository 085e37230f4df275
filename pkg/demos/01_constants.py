"""
The constants c_n
=================

The projective-space criteria are driven by an explicit rational constant
``c_n``.  We print the first few values exactly, check the polynomial lower
bound ``c_n >= n^5`` and look at how the ratio to the Stirling-type
asymptotic settles down.
"""

from orbijet.criteria import cn, cn_asymptotic, cn_ratio_bound

# exact values: c_1 = 1, c_2 = 65/2, ...
for n in range(1, 6):
    print(f"c_{n} = {cn(n)}  (~ {float(cn(n)):.6g})")

# the n^5 lower bound holds well past anything one would use in practice
print("c_n >= n^5 for n <= 64:", all(cn(n) >= n**5 for n in range(1, 65)))

# ratio to the asymptotic form, next to the explicit upper bound for that ratio
print(f"{'n':>3} {'ratio':>10} {'bound':>10}")
for n in (3, 5, 10, 20, 40):
    print(f"{n:>3} {float(cn(n)) / cn_asymptotic(n):>10.6f} {cn_ratio_bound(n):>10.6f}")
