"""A provably chaotic electorate: the cooperation share follows the tent map.

Only type Z reacts to polls here, and working out its safety/
collaboration response gives exactly z -> 2z (z <= 1/2), 2 - 2z
(z >= 1/2).  The winner is b precisely when z >= 1/2, so the winners
word is the tent map's binary itinerary and its entropy rate is log 2.

Floating point cannot iterate this map (doubling eats one bit of
mantissa per step and orbits collapse onto 0 within ~53 steps), so long
orbits run on exact rationals with a fixed odd denominator.
"""

import math
from fractions import Fraction

from pollsim import build_tent_model, detect_eventual_period, ks_entropy_estimate, ks_profile

if __name__ == "__main__":
    tent = build_tent_model()

    print("float iteration collapses:")
    z = 0.1
    for k in range(60):
        z = tent.step(z)
    print(f"  after 60 float steps from 0.1: z = {z}")

    z = Fraction(1, 10)
    for k in range(60):
        z = tent.step(z)
    print(f"  after 60 exact steps from 1/10: z = {z} (still moving)")

    z = Fraction(2, 5)
    orbit = []
    for _ in range(6):
        orbit.append(str(z))
        z = tent.step(z)
    print("\nshort exact orbit:", " -> ".join(orbit), " (period 2, winners cbcbcb..., entropy 0)")

    n = 2**18  # bump to 2**20 (with max_block 16, fit 4:14) for the reference run
    z0 = tent.default_start(seed=0)
    word = tent.winners_word_exact(z0, n)
    freq = word.count("b") / n
    fit = ks_entropy_estimate(ks_profile(word, max_block=14), (4, 12))
    period = detect_eventual_period(word)
    print(f"\ngeneric start p/5^30 ~ {float(z0):.6f}, {n} exact steps:")
    print(f"  letter frequency of b: {freq:.4f} (Lebesgue-typical orbits give 1/2)")
    print(f"  entropy rate estimate: {fit.slope:.4f}  vs log 2 = {math.log(2):.4f}")
    print(f"  eventual period detected: {period}  (the true period ~ 4*5^29 is unreachable)")
