"""
Rigid-type sheaves on a double curve
====================================

Invariants, filtrations and a stability certificate for a sheaf that is
locally ``O_2 + O_C`` on a double curve with ``deg L = -3``.
"""

from multicurve import (
    CurveContext,
    Premise,
    RigidSheaf,
    Status,
    first_graded,
    rigid_invariants,
    rigid_V,
    second_graded,
    theo3_certify,
    theo3_via_theo1,
)

ctx = CurveContext(n=2, g=2, l=-3)
s = RigidSheaf.from_degrees(ctx, a=1, k=1, epsilon=0, delta=1)

inv = rigid_invariants(s)
print("R, Deg, slope:", inv.R, inv.Deg, inv.slope)
print("V:", rigid_V(s))

# both canonical filtrations add up to the same generalized degree
print("first graded: ", [str(b) for b in first_graded(s)])
print("second graded:", [str(b) for b in second_graded(s)])

# F has rank 1, so it is stable without being declared
cert = theo3_certify(s, p_E=Premise("E", Status.STABLE), p_V=Premise("V", Status.STABLE))
print("verdict:", cert.conclusion)
for c in cert.checks:
    print("  ", c.description, ":", c.left, c.relation, c.right)

# the same verdict, derived through the general one-step criterion
print("via general rule:", theo3_via_theo1(s, p_E=Premise("E", Status.STABLE), p_V=Premise("V", Status.STABLE)).conclusion)
