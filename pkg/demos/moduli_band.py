"""
Where the moduli space is known to be non-empty
===============================================

Sweep the degrees of ``E`` and ``F`` and mark the points inside the band
that guarantees stable rigid-type sheaves exist.
"""

from multicurve import CurveContext, ModuliPoint, moduli_dim, scan

ctx = CurveContext(n=2, g=2, l=-3)
template = ModuliPoint(ctx, a=1, k=1)
print("dimension:", moduli_dim(ctx, 1, 1))

rows = scan(template, delta_range=(-4, 4), epsilon_range=(-4, 4))

# epsilon down the side, delta across
print("     " + "".join(f"{d:>3}" for d in range(-4, 5)))
for eps in range(-4, 5):
    marks = "".join("  #" if r.nonempty else "  ." for r in rows if r.epsilon == eps)
    print(f"{eps:>4} {marks}")
