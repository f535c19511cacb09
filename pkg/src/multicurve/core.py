"""Ambient curve data, numeric sheaf invariants and rigid-type sheaves.

A primitive multiple curve ``C_n`` is described here only by its discrete
data: the multiplicity ``n``, the genus ``g`` of the reduced curve ``C`` and
``l = deg(L)`` where ``L`` is the conormal line bundle of ``C``.  Sheaves are
described by the ranks and degrees of bundles on ``C`` attached to them, so
every operation below is integer (or exact rational) arithmetic.

Twisting a bundle on ``C`` by ``L^i`` is modelled as ``deg -> deg + rank*i*l``.

Integers are kept inside the signed 64-bit range; anything outside raises
:class:`~multicurve.errors.Overflow`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidContext, InvalidInput, Overflow, ZeroRank

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def checked(value: int) -> int:
    """Return ``value`` unchanged if it fits in a signed 64-bit integer."""
    if not INT64_MIN <= value <= INT64_MAX:
        raise Overflow(f"integer {value} outside the 64-bit range")
    return value


def _mul(*factors: int) -> int:
    out = 1
    for f in factors:
        out = checked(out * f)
    return out


def _sum(*terms: int) -> int:
    out = 0
    for t in terms:
        out = checked(out + t)
    return out


@dataclass(frozen=True)
class CurveContext:
    """Discrete data of a primitive multiple curve of multiplicity ``n``."""

    n: int
    g: int
    l: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidContext(f"multiplicity must be >= 2, got n={self.n}")
        if self.g < 0:
            raise InvalidContext(f"genus must be >= 0, got g={self.g}")
        if self.l >= 0:
            raise InvalidContext(f"deg(L) must be negative, got l={self.l}")


@dataclass(frozen=True)
class Invariants:
    """Generalized rank ``R`` and generalized degree ``Deg``."""

    R: int
    Deg: int

    def __post_init__(self):
        if self.R < 0:
            raise InvalidInput(f"generalized rank must be >= 0, got R={self.R}")

    @property
    def slope(self) -> Fraction:
        return slope(self)

    def __add__(self, other: Invariants) -> Invariants:
        return Invariants(_sum(self.R, other.R), _sum(self.Deg, other.Deg))

    def __sub__(self, other: Invariants) -> Invariants:
        return Invariants(_sum(self.R, -other.R), _sum(self.Deg, -other.Deg))

    def __str__(self):
        return f"(R={self.R}, Deg={self.Deg})"


@dataclass(frozen=True)
class BundleOnC:
    """Rank and degree of a vector bundle on the reduced curve ``C``."""

    rank: int
    deg: int

    def __post_init__(self):
        if self.rank < 0:
            raise InvalidInput(f"rank must be >= 0, got {self.rank}")

    @property
    def slope(self) -> Fraction:
        if self.rank == 0:
            raise ZeroRank("slope of a rank-0 bundle is undefined")
        return Fraction(self.deg, self.rank)

    def twist(self, i: int, l: int) -> BundleOnC:
        """Twist by ``L^i`` where ``deg(L) = l``."""
        return BundleOnC(self.rank, _sum(self.deg, _mul(self.rank, i, l)))

    def invariants(self) -> Invariants:
        return Invariants(self.rank, self.deg)

    def __str__(self):
        return f"({self.rank}, {self.deg})"


def slope(inv: Invariants) -> Fraction:
    """``Deg/R`` as a normalized fraction."""
    if inv.R == 0:
        raise ZeroRank(f"slope undefined for zero generalized rank {inv}")
    return Fraction(inv.Deg, inv.R)


def compare_slopes(a: Invariants, b: Invariants) -> int:
    """Sign of ``slope(a) - slope(b)`` by integer cross-multiplication.

    Ranks must be positive. This is the comparator used by the exhaustive
    oracles, where building ``Fraction`` objects would dominate the runtime.
    """
    if a.R <= 0 or b.R <= 0:
        raise ZeroRank("slope comparison needs positive ranks")
    lhs = a.Deg * b.R
    rhs = b.Deg * a.R
    return (lhs > rhs) - (lhs < rhs)


# -- quasi locally free types -------------------------------------------------


@dataclass(frozen=True)
class QlfType:
    """Local type ``(m_1, ..., m_n)``: locally ``sum m_i O_i``."""

    ctx: CurveContext
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if len(self.m) != self.ctx.n:
            raise InvalidInput(f"type needs {self.ctx.n} entries, got {len(self.m)}")
        if any(x < 0 for x in self.m):
            raise InvalidInput(f"type entries must be >= 0: {self.m}")
        if not any(self.m):
            raise InvalidInput("type must not be identically zero")


def qlf_rank(ty: QlfType) -> int:
    return _sum(*(_mul(i, mi) for i, mi in enumerate(ty.m, start=1)))


@dataclass(frozen=True)
class RigidClass:
    """Result of :func:`classify_rigid`.

    ``kind`` is ``"locally_free"`` (``a`` set, ``k`` is 0), ``"rigid"``
    (both set) or ``"not_rigid"`` (both ``None``).
    """

    kind: str
    a: int | None = None
    k: int | None = None

    @property
    def is_rigid(self) -> bool:
        return self.kind != "not_rigid"


def classify_rigid(ty: QlfType) -> RigidClass:
    n = ty.ctx.n
    a = ty.m[-1]
    lower = ty.m[:-1]
    if a >= 1 and not any(lower):
        return RigidClass("locally_free", a, 0)
    support = [i for i, x in enumerate(lower, start=1) if x]
    if a >= 1 and len(support) == 1 and lower[support[0] - 1] == 1:
        k = support[0]
        # agrees with a = floor(R/n), k = R - a*n
        assert divmod(qlf_rank(ty), n) == (a, k)
        return RigidClass("rigid", a, k)
    return RigidClass("not_rigid")


def rigid_type(ctx: CurveContext, a: int, k: int) -> QlfType:
    """The local type of ``a O_n + O_k`` (``k = 0`` for locally free)."""
    m = [0] * ctx.n
    m[-1] = a
    if k:
        m[k - 1] += 1
    return QlfType(ctx, tuple(m))


# -- rigid-type sheaves -------------------------------------------------------


@dataclass(frozen=True)
class RigidSheaf:
    """Quasi locally free sheaf of rigid type, locally ``a O_n + O_k``.

    ``E`` is the restriction to ``C`` (rank ``a+1``) and ``F`` the twisted
    graded piece ``G_k tensor L^-k`` (rank ``a``). ``V`` is derived.
    """

    ctx: CurveContext
    a: int
    k: int
    E: BundleOnC
    F: BundleOnC

    def __post_init__(self):
        if self.a < 1:
            raise InvalidInput(f"a must be >= 1, got {self.a}")
        if not 1 <= self.k < self.ctx.n:
            raise InvalidInput(f"k must satisfy 1 <= k < n={self.ctx.n}, got {self.k}")
        if self.E.rank != self.a + 1:
            raise InvalidInput(f"E must have rank a+1={self.a + 1}, got {self.E.rank}")
        if self.F.rank != self.a:
            raise InvalidInput(f"F must have rank a={self.a}, got {self.F.rank}")

    @classmethod
    def from_degrees(cls, ctx: CurveContext, a: int, k: int, epsilon: int, delta: int):
        return cls(ctx, a, k, BundleOnC(a + 1, epsilon), BundleOnC(a, delta))

    @property
    def epsilon(self) -> int:
        return self.E.deg

    @property
    def delta(self) -> int:
        return self.F.deg

    @property
    def V(self) -> BundleOnC:
        return rigid_V(self)


def rigid_invariants(s: RigidSheaf) -> Invariants:
    n, a, k, l = s.ctx.n, s.a, s.k, s.ctx.l
    R = _sum(_mul(a, n), k)
    coeff = _sum(_mul(n, n - 1, a), _mul(k, k - 1))
    # n(n-1)a and k(k-1) are both even
    Deg = _sum(_mul(k, s.E.deg), _mul(n - k, s.F.deg), _mul(coeff // 2, l))
    return Invariants(R, Deg)


def rigid_V(s: RigidSheaf) -> BundleOnC:
    return BundleOnC(s.a + 1, _sum(s.E.deg, -_mul(s.ctx.n - s.k, s.ctx.l)))


def first_graded(s: RigidSheaf) -> list[BundleOnC]:
    """``[G_0, ..., G_{n-1}]``: ``E L^i`` for ``i < k``, then ``F L^i``."""
    l = s.ctx.l
    return [(s.E if i < s.k else s.F).twist(i, l) for i in range(s.ctx.n)]


def second_graded(s: RigidSheaf) -> list[BundleOnC]:
    """``[G^(n), G^(n-1), ..., G^(1)]`` in that order.

    The first ``n-k`` entries are ``F L^i``, the last ``k`` are ``V L^i``.
    """
    l, n, k = s.ctx.l, s.ctx.n, s.k
    V = rigid_V(s)
    return [(s.F if i < n - k else V).twist(i, l) for i in range(n)]


# -- vector bundles on C_n ----------------------------------------------------


@dataclass(frozen=True)
class VectorBundleCn:
    """Vector bundle on ``C_n`` known through its restriction to ``C``."""

    ctx: CurveContext
    restriction: BundleOnC

    def __post_init__(self):
        if self.restriction.rank < 1:
            raise InvalidInput("restriction to C must have rank >= 1")

    def graded(self) -> list[BundleOnC]:
        """Both canonical filtrations agree: ``[E, E L, ..., E L^(n-1)]``."""
        return [self.restriction.twist(i, self.ctx.l) for i in range(self.ctx.n)]


def vb_invariants(v: VectorBundleCn) -> Invariants:
    n, l = v.ctx.n, v.ctx.l
    r, delta = v.restriction.rank, v.restriction.deg
    return Invariants(_mul(n, r), _sum(_mul(n, delta), _mul(n * (n - 1) // 2, r, l)))


# -- torsion and exact sequences ----------------------------------------------


@dataclass(frozen=True)
class TorsionLengths:
    """Graded lengths ``t_i = h0(G_i(T))``, ``i = 0..n-1``, of a torsion sheaf."""

    ctx: CurveContext
    t: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(int(x) for x in self.t))
        if len(self.t) != self.ctx.n:
            raise InvalidInput(f"need {self.ctx.n} graded lengths, got {len(self.t)}")
        if any(x < 0 for x in self.t):
            raise InvalidInput(f"lengths must be >= 0: {self.t}")

    @property
    def total(self) -> int:
        return _sum(*self.t)


@dataclass(frozen=True)
class ExactSeqWitness:
    """Invariants of the terms of a complex asserted to be exact.

    No maps are stored; only invariant-level consistency can be checked.
    """

    terms: tuple[Invariants, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) < 3:
            raise InvalidInput("an exact sequence witness needs at least 3 terms")


def alternating_sums(w: ExactSeqWitness) -> tuple[int, int]:
    rank = _sum(*((-1) ** i * t.R for i, t in enumerate(w.terms)))
    deg = _sum(*((-1) ** i * t.Deg for i, t in enumerate(w.terms)))
    return rank, deg


def additivity_check(w: ExactSeqWitness) -> bool:
    return alternating_sums(w) == (0, 0)


def star_sequence(s: RigidSheaf) -> ExactSeqWitness:
    """``0 -> F L^(n-k) -> V L^(n-k) -> E -> F -> 0``."""
    shift, l = s.ctx.n - s.k, s.ctx.l
    terms: Sequence[BundleOnC] = (
        s.F.twist(shift, l),
        rigid_V(s).twist(shift, l),
        s.E,
        s.F,
    )
    return ExactSeqWitness(tuple(b.invariants() for b in terms))


def total_invariants(pieces: Sequence[BundleOnC]) -> Invariants:
    """Sum of ranks and degrees of a list of graded pieces."""
    return Invariants(_sum(*(p.rank for p in pieces)), _sum(*(p.deg for p in pieces)))
