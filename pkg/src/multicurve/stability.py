"""Sufficient criteria for (semi-)stability, evaluated as certificates.

Stability of a bundle on the smooth curve ``C`` cannot be read off its rank
and degree, so every rule consumes *premises*: declared statuses of the
associated sheaves.  A rule combines the premises with exact slope
inequalities and produces a :class:`Certificate`.  Rules are one-directional;
when a sufficient condition fails the verdict is ``UNKNOWN``, never
"unstable".

The only automatic premise is that a bundle of rank one on ``C`` is stable.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction

from .core import (
    BundleOnC,
    CurveContext,
    ExactSeqWitness,
    Invariants,
    RigidSheaf,
    VectorBundleCn,
    additivity_check,
    alternating_sums,
    compare_slopes,
    first_graded,
    rigid_invariants,
    rigid_V,
    total_invariants,
    vb_invariants,
)
from .duality import FiltrationSlice, slice_derived
from .errors import BudgetExceeded, InvalidInput, WrongMultiplicity


class Status(IntEnum):
    """Ordered so that a larger value is a stronger statement."""

    UNKNOWN = 0
    SEMISTABLE = 1
    STABLE = 2

    def __str__(self):
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> Status:
        try:
            return cls[text.strip().upper().replace("-", "")]
        except KeyError:
            raise InvalidInput(f"unknown stability status {text!r}") from None


class Origin(str, Enum):
    DECLARED = "declared"
    RANK_ONE = "rank_one"
    INFERRED = "inferred"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Premise:
    subject: str
    status: Status = Status.UNKNOWN
    origin: Origin = Origin.DECLARED

    @classmethod
    def rank_one(cls, subject: str, bundle: BundleOnC) -> Premise:
        if bundle.rank != 1:
            raise InvalidInput(f"{subject} has rank {bundle.rank}; rank-one premise refused")
        return cls(subject, Status.STABLE, Origin.RANK_ONE)


@dataclass(frozen=True)
class Check:
    description: str
    left: Fraction
    relation: str
    right: Fraction
    holds: bool

    @property
    def strict(self) -> bool:
        """Whether the inequality holds with ``<`` in place of ``<=``."""
        return self.left < self.right


def _check(description: str, left, relation: str, right) -> Check:
    left, right = Fraction(left), Fraction(right)
    holds = {
        "<=": left <= right,
        "<": left < right,
        ">=": left >= right,
        "==": left == right,
    }[relation]
    return Check(description, left, relation, right, holds)


@dataclass(frozen=True)
class Certificate:
    conclusion: Status
    rule: str
    premises: tuple[Premise, ...]
    checks: tuple[Check, ...]
    invariants: tuple[tuple[str, Invariants], ...] = field(default=())

    @property
    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if not c.holds]


def _resolve(p: Premise | None, subject: str, bundle: BundleOnC | None = None) -> Premise:
    if p is None:
        p = Premise(subject)
    if p.origin is Origin.RANK_ONE and (bundle is None or bundle.rank != 1):
        raise InvalidInput(f"rank-one origin given for {subject}, which is not a line bundle")
    if bundle is not None and bundle.rank == 1 and p.status < Status.STABLE:
        return Premise(p.subject, Status.STABLE, Origin.RANK_ONE)
    return p


def _verdict(checks, premises, relaxed_stable=None) -> Status:
    statuses = [p.status for p in premises]
    if not all(c.holds for c in checks) or min(statuses) < Status.SEMISTABLE:
        return Status.UNKNOWN
    strict = all(c.strict for c in checks)
    stable_premises = relaxed_stable if relaxed_stable is not None else min(statuses) == Status.STABLE
    if strict and stable_premises:
        return Status.STABLE
    return Status.SEMISTABLE


# -- the slope lemma ----------------------------------------------------------


@dataclass(frozen=True)
class LemmaInstance:
    """Six sheaves with ``E = A + B`` and ``E2 = A2 + B2`` on invariants."""

    A: Invariants
    A2: Invariants
    B: Invariants
    B2: Invariants
    E: Invariants
    E2: Invariants

    def __post_init__(self):
        if any(x.R <= 0 for x in (self.A, self.A2, self.B, self.B2, self.E, self.E2)):
            raise InvalidInput("all six ranks must be positive")
        if self.E != self.A + self.B or self.E2 != self.A2 + self.B2:
            raise InvalidInput("E and E2 must be the sums of their parts")

    @classmethod
    def from_parts(cls, A, B, A2, B2) -> LemmaInstance:
        return cls(A, A2, B, B2, A + B, A2 + B2)


@dataclass(frozen=True)
class LemmaResult:
    hypotheses_hold: bool
    strict_hypothesis: bool
    conclusion_holds: bool
    strict_conclusion: bool

    @property
    def violated(self) -> bool:
        return (self.hypotheses_hold and not self.conclusion_holds) or (
            self.strict_hypothesis and not self.strict_conclusion
        )


def lemma_slopes(inst: LemmaInstance) -> LemmaResult:
    A, A2, B, B2, E, E2 = inst.A, inst.A2, inst.B, inst.B2, inst.E, inst.E2
    a2_vs_a = compare_slopes(A2, A)
    b2_vs_b = compare_slopes(B2, B)
    hyp = (
        compare_slopes(B, A) >= 0
        and a2_vs_a >= 0
        and b2_vs_b >= 0
        # R(E2)/R(E) >= R(A2)/R(A)
        and E2.R * A.R >= A2.R * E.R
    )
    concl = compare_slopes(E2, E)
    return LemmaResult(
        hypotheses_hold=hyp,
        strict_hypothesis=hyp and (a2_vs_a > 0 or b2_vs_b > 0),
        conclusion_holds=concl >= 0,
        strict_conclusion=concl > 0,
    )


DEFAULT_ORACLE_CAP = 2_000_000


def _lemma_chunk(args):
    A, pool = args
    bad = []
    for B in pool:
        E = A + B
        for A2 in pool:
            for B2 in pool:
                inst = LemmaInstance(A, A2, B, B2, E, A2 + B2)
                if lemma_slopes(inst).violated:
                    bad.append(inst)
    return bad


def lemma_oracle(
    rank_max: int, deg_max: int, cap: int = DEFAULT_ORACLE_CAP, workers: int = 1
) -> list[LemmaInstance]:
    """Every lemma instance in the box that violates the lemma.

    Ranks of ``A, B, A2, B2`` range over ``[1, rank_max]`` and degrees over
    ``[-deg_max, deg_max]``. The lemma is a theorem, so anything returned
    points at a bug in :func:`lemma_slopes`. The grid is split by ``A`` into
    independent chunks; ``workers > 1`` evaluates them in processes.
    """
    if not 1 <= rank_max <= 4:
        raise InvalidInput(f"rank_max must lie in [1, 4], got {rank_max}")
    if not 0 <= deg_max <= 6:
        raise InvalidInput(f"deg_max must lie in [0, 6], got {deg_max}")
    pool = [
        Invariants(r, d)
        for r in range(1, rank_max + 1)
        for d in range(-deg_max, deg_max + 1)
    ]
    size = len(pool) ** 4
    if size > cap:
        raise BudgetExceeded(f"{size} lemma instances exceed the cap of {cap}")
    jobs = [(A, pool) for A in pool]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_lemma_chunk, jobs))
    else:
        parts = [_lemma_chunk(j) for j in jobs]
    return list(itertools.chain.from_iterable(parts))


# -- the general criterion on one filtration step -----------------------------

BRACKET = "E[k]"
BIDUAL = "(E|C_k)^vv"
DUAL_BRACKET = "(E^v)[k]"
DUAL_BIDUAL = "((E^v)|C_k)^vv"


@dataclass(frozen=True)
class EqXResult:
    first: bool
    second: bool
    first_strict: bool
    second_strict: bool

    @property
    def both(self) -> bool:
        return self.first and self.second

    @property
    def both_strict(self) -> bool:
        return self.first_strict and self.second_strict


def _eqx_checks(sl: FiltrationSlice) -> tuple[Check, Check]:
    d = slice_derived(sl)
    return (
        _check("mu(E^(k)) <= mu(E)", d.e_up_k.slope, "<=", sl.total.slope),
        _check("mu((E^v)^(k)) <= mu(E^v)", d.dual_up_k.slope, "<=", d.dual_total.slope),
    )


def eqX_check(sl: FiltrationSlice) -> EqXResult:
    first, second = _eqx_checks(sl)
    return EqXResult(first.holds, second.holds, first.strict, second.strict)


def eqX_bracket_form(sl: FiltrationSlice) -> tuple[bool, bool]:
    """The pair ``mu((E|C_k)^vv) >= mu(E[k])``, ``mu(((E^v)|C_k)^vv) >= mu((E^v)[k])``.

    Dualizing exchanges the two conditions: the first of these is equivalent
    to the *second* inequality of :func:`eqX_check` and vice versa, since
    ``(E^v)^(k) = (E|C_k)^v``.
    """
    d = slice_derived(sl)
    return (
        d.bidual_restriction.slope >= d.bracket.slope,
        d.dual_bidual_restriction.slope >= d.dual_bracket.slope,
    )


def theo1_certify(
    sl: FiltrationSlice,
    p_bracket: Premise | None = None,
    p_bidual: Premise | None = None,
    p_dual_bracket: Premise | None = None,
    p_dual_bidual: Premise | None = None,
    relaxed: bool = False,
) -> Certificate:
    """Certify ``E`` from its four associated sheaves at step ``k``.

    Semistable needs both slope inequalities and four semistable premises.
    Stable needs strict inequalities and, by default, all four premises
    stable. With ``relaxed=True`` one stable sheaf from each pair
    ``{E[k], (E|C_k)^vv}`` and ``{(E^v)[k], ((E^v)|C_k)^vv}`` suffices, the
    other members still being semistable.
    """
    premises = (
        _resolve(p_bracket, BRACKET),
        _resolve(p_bidual, BIDUAL),
        _resolve(p_dual_bracket, DUAL_BRACKET),
        _resolve(p_dual_bidual, DUAL_BIDUAL),
    )
    checks = _eqx_checks(sl)
    relaxed_stable = None
    if relaxed:
        st = [p.status == Status.STABLE for p in premises]
        relaxed_stable = (st[0] or st[1]) and (st[2] or st[3])
    d = slice_derived(sl)
    return Certificate(
        conclusion=_verdict(checks, premises, relaxed_stable),
        rule="theo1-relaxed" if relaxed else "theo1",
        premises=premises,
        checks=checks,
        invariants=tuple(d.as_dict().items()),
    )


# -- vector bundles -----------------------------------------------------------


def theo2_certify(v: VectorBundleCn, p_restriction: Premise | None = None) -> Certificate:
    """A vector bundle on ``C_n`` inherits the status of its restriction to ``C``."""
    p = _resolve(p_restriction, "E", v.restriction)
    graded = v.graded()
    checks = tuple(
        _check(f"mu(E L^{i + 1}) < mu(E L^{i})", graded[i + 1].slope, "<", graded[i].slope)
        for i in range(len(graded) - 1)
    )
    # the filtration inequalities hold automatically because deg(L) < 0
    conclusion = p.status if all(c.holds for c in checks) else Status.UNKNOWN
    return Certificate(
        conclusion=conclusion,
        rule="theo2",
        premises=(p,),
        checks=checks,
        invariants=(("E_total", vb_invariants(v)),),
    )


# -- rigid-type sheaves -------------------------------------------------------


@dataclass(frozen=True)
class EquCC3Result:
    holds: bool
    strict: bool
    combined: bool
    combined_strict: bool


def _equcc3_checks(s: RigidSheaf) -> tuple[Check, Check]:
    half_nl = Fraction(s.ctx.n * s.ctx.l, 2)
    muE, muF, muV = s.E.slope, s.F.slope, rigid_V(s).slope
    return (
        _check("mu(V) + (n/2)deg(L) <= mu(F)", muV + half_nl, "<=", muF),
        _check("mu(F) <= mu(E) - (n/2)deg(L)", muF, "<=", muE - half_nl),
    )


def equCC3_check(s: RigidSheaf) -> EquCC3Result:
    lo, hi = _equcc3_checks(s)
    muE, muF = s.E.slope, s.F.slope
    top = muE - Fraction((s.ctx.n - s.k) * s.ctx.l, s.a + 1)
    return EquCC3Result(
        holds=lo.holds and hi.holds,
        strict=lo.strict and hi.strict,
        combined=muE <= muF <= top,
        combined_strict=muE < muF < top,
    )


def theo3_certify(
    s: RigidSheaf,
    p_E: Premise | None = None,
    p_F: Premise | None = None,
    p_V: Premise | None = None,
) -> Certificate:
    V = rigid_V(s)
    premises = (_resolve(p_E, "E", s.E), _resolve(p_F, "F", s.F), _resolve(p_V, "V", V))
    checks = _equcc3_checks(s)
    return Certificate(
        conclusion=_verdict(checks, premises),
        rule="theo3",
        premises=premises,
        checks=checks,
        invariants=(("E_total", rigid_invariants(s)),),
    )


def _lift_to_bundle(p: Premise, subject: str, ctx: CurveContext, m: int, restriction: BundleOnC):
    """Status of a vector bundle on ``C_m`` whose restriction to ``C`` has status ``p``."""
    if m >= 2:
        sub_ctx = CurveContext(m, ctx.g, ctx.l)
        status = theo2_certify(VectorBundleCn(sub_ctx, restriction), p).conclusion
    else:
        status = p.status
    return Premise(subject, status, Origin.INFERRED)


def rigid_slice(s: RigidSheaf) -> FiltrationSlice:
    """Slice at step ``k`` of a rigid sheaf: ``E_k`` is a bundle on ``C_{n-k}``."""
    sub = total_invariants(first_graded(s)[s.k:])
    return FiltrationSlice(s.ctx, rigid_invariants(s), sub, s.k, 0)


def theo3_via_theo1(
    s: RigidSheaf,
    p_E: Premise | None = None,
    p_F: Premise | None = None,
    p_V: Premise | None = None,
) -> Certificate:
    """Second derivation of :func:`theo3_certify` through the general rule.

    For a rigid sheaf ``E[k] = E_k`` is a bundle on ``C_{n-k}`` restricting
    to a twist of ``F``, ``E|C_k`` a bundle on ``C_k`` restricting to ``E``,
    ``(E^v)[k]`` a twist of ``E_k`` and ``(E^v)|C_k`` the dual of the bundle
    ``E^(k)`` which restricts to a twist of ``V``. The premises of the general
    rule come from the vector-bundle rule applied to these.
    """
    n, k, l = s.ctx.n, s.k, s.ctx.l
    V = rigid_V(s)
    pE, pF, pV = _resolve(p_E, "E", s.E), _resolve(p_F, "F", s.F), _resolve(p_V, "V", V)
    premises = dict(
        p_bracket=_lift_to_bundle(pF, BRACKET, s.ctx, n - k, s.F.twist(k, l)),
        p_bidual=_lift_to_bundle(pE, BIDUAL, s.ctx, k, s.E),
        p_dual_bracket=_lift_to_bundle(pF, DUAL_BRACKET, s.ctx, n - k, s.F.twist(k, l)),
        p_dual_bidual=_lift_to_bundle(pV, DUAL_BIDUAL, s.ctx, k, V),
    )
    cert = theo1_certify(rigid_slice(s), **premises)
    return Certificate(
        conclusion=cert.conclusion,
        rule="theo3-via-theo1",
        premises=(pE, pF, pV) + cert.premises,
        checks=cert.checks,
        invariants=cert.invariants,
    )


# -- kernels of maps onto points ----------------------------------------------


def theo5_certify(
    ctx: CurveContext,
    restriction: BundleOnC,
    z: int,
    p_E: Premise | None = None,
    p_Ephi: Premise | None = None,
) -> Certificate:
    """Kernel of a surjection from a vector bundle onto ``O_Z``, ``h0(O_Z) = z``.

    ``E`` is the restriction of the bundle to ``C`` and ``E_phi`` the kernel of
    the induced map ``E -> O_Z`` (same rank, degree lowered by ``z``).
    """
    if z < 0:
        raise InvalidInput(f"z must be >= 0, got {z}")
    bundle = VectorBundleCn(ctx, restriction)
    e_phi = BundleOnC(restriction.rank, restriction.deg - z)
    premises = (_resolve(p_E, "E", restriction), _resolve(p_Ephi, "E_phi", e_phi))
    total = vb_invariants(bundle)
    kernel = Invariants(total.R, total.Deg - z)
    seq = ExactSeqWitness((kernel, total, Invariants(0, z)))
    _, deg_sum = alternating_sums(seq)
    checks = (
        _check("z <= -rank(E) deg(L)", z, "<=", -restriction.rank * ctx.l),
        _check("alternating Deg over 0 -> E_phi -> E -> O_Z -> 0", deg_sum, "==", 0),
    )
    assert additivity_check(seq)
    return Certificate(
        conclusion=_verdict(checks[:1], premises),
        rule="theo5",
        premises=premises,
        checks=checks,
        invariants=(("E_total", total), ("E_phi_total", kernel), ("E_phi", e_phi.invariants())),
    )


# -- the rank-2 example on a double curve -------------------------------------


@dataclass(frozen=True)
class HNReport:
    mu_ideal: Fraction
    mu_sub: Fraction
    mu_total: Fraction
    delta_restriction: int
    destabilizes: bool
    semistable_boundary: bool


def ideal_point_slope(ctx: CurveContext) -> Fraction:
    """Slope of the ideal sheaf of a point on ``C_2``: ``(deg L - 1)/2``."""
    return Fraction(ctx.l - 1, 2)


def hn_analysis(ctx: CurveContext, d_D: int) -> HNReport:
    """Slopes in ``0 -> I_P (x) D -> E -> I_P -> 0`` on a double curve.

    ``D`` is a line bundle on ``C_2`` whose restriction to ``C`` has degree
    ``d_D``; ``E`` is a rank-2 vector bundle.
    """
    if ctx.n != 2:
        raise WrongMultiplicity(f"this example lives on a double curve, got n={ctx.n}")
    ideal = Invariants(2, ctx.l - 1)
    sub = Invariants(2, ideal.Deg + 2 * d_D)
    total = sub + ideal
    # Deg(E) = 2 deg(E|C) + 2 deg(L) for a rank-2 bundle on C_2
    delta2, rem = divmod(total.Deg - 2 * ctx.l, 2)
    assert rem == 0
    mu_sub, mu_total = sub.slope, total.slope
    return HNReport(
        mu_ideal=ideal.slope,
        mu_sub=mu_sub,
        mu_total=mu_total,
        delta_restriction=delta2,
        destabilizes=mu_sub > mu_total,
        semistable_boundary=mu_sub == mu_total,
    )
