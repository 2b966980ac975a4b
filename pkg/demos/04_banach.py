"""Exact Banach iteration and the stability bound for perturbed contractions."""
import random
from fractions import Fraction

from posetfix.interval import (PiecewiseLinear, banach_fixed_point, banach_iterate,
                               banach_stability_gap, random_contraction)

K = Fraction(1, 2)
f = PiecewiseLinear.affine(K, Fraction(1, 4))
print("iterates of x/2 + 1/4 from 0:", [str(v) for v in banach_iterate(f, 0, 6)])
print("fixed point:", banach_fixed_point(f, K))

rng = random.Random(1)
g, h = random_contraction(rng, K), random_contraction(rng, K)
lhs, rhs = banach_stability_gap(g, h, K)
print(f"random pair: |p(g) - p(h)| = {lhs} <= {rhs} = sup|g - h| / (1 - K)")
