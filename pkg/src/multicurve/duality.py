"""Invariants of duals and of the sheaves attached to one filtration step.

For a torsion-free sheaf ``E`` on ``C_n`` and ``1 <= k < n`` the numbers
``R, Deg`` of ``E`` and of ``E_k``, together with the length ``t`` of the
torsion of ``E|C_k``, determine the invariants of

    E_k (x) Lambda^-k,  E^(k),  E|C_k,  E[k],  (E|C_k)^vv

and of the same sheaves built from the dual ``E^v``.  ``Lambda`` is a line
bundle on ``C_n`` extending the ideal sheaf of ``C``; it restricts to ``L``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import CurveContext, Invariants, TorsionLengths, _mul, _sum
from .errors import InvalidInput, InvalidSlice


def dual_invariants(inv: Invariants, torsion_len: int, ctx: CurveContext) -> Invariants:
    """Invariants of ``Hom(E, O_n)`` for a sheaf whose torsion has the given length.

    ``R`` is unchanged and ``Deg`` becomes ``-Deg + R(n-1)l + torsion_len``.
    """
    if torsion_len < 0:
        raise InvalidInput(f"torsion length must be >= 0, got {torsion_len}")
    deg = _sum(-inv.Deg, _mul(inv.R, ctx.n - 1, ctx.l), torsion_len)
    return Invariants(inv.R, deg)


def dual_torsion(t: TorsionLengths) -> TorsionLengths:
    # The dual T~ = Ext^1(T, O_n) has G^(i+1)(T~) ~ (G_i(T))~ of the same
    # length, and first/second graded lengths agree on torsion sheaves, so
    # graded lengths are preserved. Nothing finer is modelled.
    return TorsionLengths(t.ctx, t.t)


@dataclass(frozen=True)
class FiltrationSlice:
    """Input data for one step ``k`` of the first canonical filtration.

    ``total`` holds the invariants of a torsion-free ``E``, ``sub`` those of
    ``E_k``, and ``t_k`` is the length of the torsion subsheaf of ``E|C_k``.
    """

    ctx: CurveContext
    total: Invariants
    sub: Invariants
    k: int
    t_k: int = 0

    def __post_init__(self):
        if not 1 <= self.k < self.ctx.n:
            raise InvalidSlice(f"k must satisfy 1 <= k < n={self.ctx.n}, got {self.k}")
        if not 0 < self.sub.R < self.total.R:
            raise InvalidSlice(
                f"need 0 < R(E_k) < R(E), got R(E_k)={self.sub.R}, R(E)={self.total.R}"
            )
        if self.t_k < 0:
            raise InvalidSlice(f"torsion length must be >= 0, got {self.t_k}")


@dataclass(frozen=True)
class SliceDerived:
    e_k_twist: Invariants  # E_k (x) Lambda^-k
    e_up_k: Invariants  # E^(k)
    restriction: Invariants  # E|C_k
    bracket: Invariants  # E[k]
    bidual_restriction: Invariants  # (E|C_k)^vv
    dual_total: Invariants  # E^v
    dual_sub: Invariants  # (E^v)_k
    dual_bracket: Invariants  # (E^v)[k]
    dual_up_k: Invariants  # (E^v)^(k) = (E|C_k)^v
    dual_bidual_restriction: Invariants  # ((E^v)|C_k)^vv

    @property
    def dual_restriction(self) -> Invariants:
        """``(E^v)|C_k``, torsion included."""
        return self.dual_total - self.dual_sub

    def as_dict(self) -> dict[str, Invariants]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


def slice_derived(sl: FiltrationSlice) -> SliceDerived:
    ctx, k, t = sl.ctx, sl.k, sl.t_k
    n, l = ctx.n, ctx.l
    R_E, D_E = sl.total.R, sl.total.Deg
    R_k, D_k = sl.sub.R, sl.sub.Deg
    R_q = R_E - R_k

    e_k_twist = Invariants(R_k, _sum(D_k, -_mul(k, l, R_k)))
    e_up_k = Invariants(R_q, _sum(D_E, -e_k_twist.Deg))
    restriction = Invariants(R_q, _sum(D_E, -D_k))
    bracket = Invariants(R_k, _sum(D_k, t))
    bidual_restriction = Invariants(R_q, _sum(D_E, -D_k, -t))

    dual_total = dual_invariants(sl.total, 0, ctx)
    dual_sub = Invariants(R_k, _sum(-D_k, _mul(n + k - 1, R_k, l), -t))
    # Sigma_k(E^v) is dual to Sigma_k(E), hence also of length t
    dual_bracket = Invariants(R_k, _sum(dual_sub.Deg, t))
    dual_up_k = dual_invariants(restriction, t, ctx)
    dual_bidual_restriction = Invariants(R_q, _sum(dual_total.Deg, -dual_bracket.Deg))

    return SliceDerived(
        e_k_twist=e_k_twist,
        e_up_k=e_up_k,
        restriction=restriction,
        bracket=bracket,
        bidual_restriction=bidual_restriction,
        dual_total=dual_total,
        dual_sub=dual_sub,
        dual_bracket=dual_bracket,
        dual_up_k=dual_up_k,
        dual_bidual_restriction=dual_bidual_restriction,
    )


def dual_slice(sl: FiltrationSlice) -> FiltrationSlice:
    """The slice of ``E^v`` at the same step, with the same torsion length."""
    d = slice_derived(sl)
    return FiltrationSlice(sl.ctx, d.dual_total, d.dual_sub, sl.k, sl.t_k)


def cor2_sides(sl: FiltrationSlice) -> tuple[Fraction, Fraction]:
    """Both sides of the slope identity relating a slice to its dual.

    left  = mu((E^v)|C_k) - mu((E^v)_k)
    right = mu(E_k (x) Lambda^-k) - mu(E^(k)) + t (1/R(E^(k)) + 1/R(E_k))
    """
    d = slice_derived(sl)
    left = d.dual_restriction.slope - d.dual_sub.slope
    right = (
        d.e_k_twist.slope
        - d.e_up_k.slope
        + sl.t_k * (Fraction(1, d.e_up_k.R) + Fraction(1, d.e_k_twist.R))
    )
    return left, right


def cor2_check(sl: FiltrationSlice) -> bool:
    left, right = cor2_sides(sl)
    return left == right
