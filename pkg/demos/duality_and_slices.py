"""
Duals and filtration slices
===========================

One step of the first canonical filtration is summarized by the invariants
of ``E``, of ``E_k`` and a torsion length. Everything else follows.
"""

import random

from multicurve import CurveContext, FiltrationSlice, Invariants, cor2_sides, eqX_check, slice_derived
from multicurve.sampling import random_slice

ctx = CurveContext(n=3, g=0, l=-1)
sl = FiltrationSlice(ctx, total=Invariants(3, 0), sub=Invariants(1, -2), k=1, t_k=1)

for name, inv in slice_derived(sl).as_dict().items():
    print(f"{name:>24}  {inv}")

# the slope identity linking E and its dual holds exactly
left, right = cor2_sides(sl)
print("identity:", left, "==", right)

print(eqX_check(sl))

# and it holds on random slices as well
rng = random.Random(1)
bad = sum(left != right for left, right in (cor2_sides(random_slice(rng)) for _ in range(2000)))
print("random slices violating the identity:", bad)
