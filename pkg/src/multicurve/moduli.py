"""Numerical bookkeeping for moduli of stable sheaves on ``C_n``.

``M(R, d)`` is the moduli space of stable sheaves of generalized rank ``R``
and generalized degree ``d``. Inside it:

* ``U(R, d)`` is the locus of stable vector bundles; with ``R = n r`` and
  ``d = n delta + n(n-1)/2 r deg(L)`` it is non-empty, smooth and
  irreducible (recorded here, not computed);
* ``N(a, k, delta, epsilon)`` is the reduced locus of stable rigid-type
  sheaves locally ``a O_n + O_k`` with ``deg E = epsilon`` and
  ``deg F = delta``; it is smooth and irreducible of the dimension returned
  by :func:`moduli_dim`.

Non-emptiness of ``N`` is certified by a strict band on slopes whose proof
relies on existence results for stable bundles on curves of genus at least 2,
so :func:`moduli_nonempty` refuses smaller genus. Outside the band nothing is
claimed: ``False`` means "criterion fails", not "empty".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    BundleOnC,
    CurveContext,
    Invariants,
    RigidSheaf,
    _mul,
    _sum,
)
from .errors import BudgetExceeded, GenusTooSmall, InconsistentInput, InvalidInput

DEFAULT_SCAN_CAP = 1_000_000


@dataclass(frozen=True)
class ModuliPoint:
    ctx: CurveContext
    a: int
    k: int
    epsilon: int = 0
    delta: int = 0

    def __post_init__(self):
        if self.a < 1:
            raise InvalidInput(f"a must be >= 1, got {self.a}")
        if not 1 <= self.k < self.ctx.n:
            raise InvalidInput(f"k must satisfy 1 <= k < n={self.ctx.n}, got {self.k}")

    def sheaf(self) -> RigidSheaf:
        return RigidSheaf.from_degrees(self.ctx, self.a, self.k, self.epsilon, self.delta)


def moduli_rd(p: ModuliPoint) -> Invariants:
    n, a, k, l = p.ctx.n, p.a, p.k, p.ctx.l
    half = _sum(_mul(n, n - 1, a), _mul(k, k - 1)) // 2
    d = _sum(_mul(k, p.epsilon), _mul(n - k, p.delta), _mul(half, l))
    return Invariants(_sum(_mul(a, n), k), d)


def moduli_dim(ctx: CurveContext, a: int, k: int) -> int:
    """Dimension of ``N(a, k, delta, epsilon)``; independent of the degrees."""
    n, g, l = ctx.n, ctx.g, ctx.l
    if a < 1 or not 1 <= k < n:
        raise InvalidInput(f"need a >= 1 and 1 <= k < n, got a={a}, k={k}")
    coeff = _sum(_mul(n * (n - 1) // 2, a, a), _mul(k, n - 1, a), k * (k - 1) // 2)
    return _sum(1, -_mul(coeff, l), _mul(g - 1, _sum(_mul(n, a, a), _mul(k, 2 * a + 1))))


def moduli_nonempty(p: ModuliPoint) -> bool:
    """``epsilon/(a+1) < delta/a < (epsilon - (n-k) deg L)/(a+1)``."""
    if p.ctx.g < 2:
        raise GenusTooSmall(f"the non-emptiness criterion needs genus >= 2, got g={p.ctx.g}")
    lo = Fraction(p.epsilon, p.a + 1)
    mid = Fraction(p.delta, p.a)
    hi = Fraction(p.epsilon - (p.ctx.n - p.k) * p.ctx.l, p.a + 1)
    return lo < mid < hi


def vb_moduli_rd(ctx: CurveContext, r: int, delta: int) -> Invariants:
    """``(R, d)`` of ``U(R, d)`` for bundles whose restriction is ``(r, delta)``."""
    if r < 1:
        raise InvalidInput(f"r must be >= 1, got {r}")
    n, l = ctx.n, ctx.l
    return Invariants(_mul(n, r), _sum(_mul(n, delta), _mul(n * (n - 1) // 2, r, l)))


def ext_dim_rr(g: int, source: BundleOnC, target: BundleOnC, hom_dim: int) -> int:
    """``dim Ext^1(source, target)`` on a smooth curve of genus ``g``.

    Riemann-Roch gives ``hom - ext1 = chi = r_s d_t - r_t d_s + r_s r_t (1 - g)``;
    ``hom_dim`` must be supplied (it is 0 when both bundles are semistable and
    ``mu(target) < mu(source)``).
    """
    if source.rank < 1 or target.rank < 1:
        raise InvalidInput("ranks must be >= 1")
    if hom_dim < 0 or g < 0:
        raise InvalidInput("hom_dim and g must be >= 0")
    rs, ds, rt, dt = source.rank, source.deg, target.rank, target.deg
    chi = _sum(_mul(rs, dt), -_mul(rt, ds), _mul(rs, rt, 1 - g))
    ext1 = _sum(hom_dim, -chi)
    if ext1 < 0:
        raise InconsistentInput(f"hom_dim={hom_dim} gives a negative Ext^1 dimension {ext1}")
    return ext1


@dataclass(frozen=True)
class RegionRow:
    delta: int
    epsilon: int
    R: int
    d: int
    nonempty: bool
    dim: int


def scan(
    template: ModuliPoint,
    delta_range: tuple[int, int],
    epsilon_range: tuple[int, int],
    cap: int = DEFAULT_SCAN_CAP,
) -> list[RegionRow]:
    """Tabulate the non-emptiness criterion over inclusive degree ranges.

    Rows come out with ``epsilon`` in the outer loop and ``delta`` inner.
    """
    (d0, d1), (e0, e1) = delta_range, epsilon_range
    if d1 < d0 or e1 < e0:
        raise InvalidInput("degree ranges must be non-empty")
    size = (d1 - d0 + 1) * (e1 - e0 + 1)
    if size > cap:
        raise BudgetExceeded(f"scan of {size} rows exceeds the cap of {cap}")
    dim = moduli_dim(template.ctx, template.a, template.k)
    rows = []
    for eps in range(e0, e1 + 1):
        for dl in range(d0, d1 + 1):
            p = ModuliPoint(template.ctx, template.a, template.k, eps, dl)
            rd = moduli_rd(p)
            rows.append(RegionRow(dl, eps, rd.R, rd.Deg, moduli_nonempty(p), dim))
    return rows
