"""
Fibonacci-base arithmetic
=========================

Integers as sums of non-adjacent Fibonacci numbers, added with the carry
rules ``phi^n + phi^(n+1) = phi^(n+2)`` and ``2 phi^n = phi^(n+1) + phi^(n-2)``.
"""

from fareycorona.zeckendorf import star_pattern_report, zeck_add, zeck_bits, zeck_encode, zeck_mul, zeck_render

a, b = zeck_encode(100), zeck_encode(250)
print(zeck_render(a), "+", zeck_render(b), "=", zeck_render(zeck_add(a, b)))
print(zeck_bits(zeck_mul(a, b)))

# %%
# Products of single powers
# -------------------------
# The product pattern is checked under each exponent reading; which ones
# reproduce the true product is reported, not assumed.

tally = {}
for n in range(1, 21):
    for m in range(n, 21):
        for conv in star_pattern_report(n, m)["matching"]:
            tally[conv] = tally.get(conv, 0) + 1
print(tally)
