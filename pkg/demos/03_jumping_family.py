"""A continuous family of self-maps of [0, 3] whose fixed points jump at t = 1."""
from fractions import Fraction

from posetfix.interval import family_f, fixed_point_set, no_selection_certificate

for t in (Fraction(1, 2), Fraction(99, 100), Fraction(1), Fraction(101, 100), Fraction(3, 2)):
    print(f"t = {t}: Fix = {fixed_point_set(t)}")
print("f_1/2 at 3/4:", family_f(Fraction(1, 2), Fraction(3, 4)))
left, right = no_selection_certificate()
print(f"fixed point forced to {left} just left of t=1 and to {right} just right: no continuous choice")
