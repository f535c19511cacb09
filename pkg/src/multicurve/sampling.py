"""Seeded random instances for the randomized property suites."""

from __future__ import annotations

import random

from .core import CurveContext, Invariants, RigidSheaf
from .duality import FiltrationSlice


def random_context(rng: random.Random, n_range=(2, 5), l_range=(-4, -1), g_range=(0, 4)):
    return CurveContext(rng.randint(*n_range), rng.randint(*g_range), rng.randint(*l_range))


def random_slice(rng: random.Random, ctx: CurveContext | None = None, rank_max=8, deg_max=20, t_max=6):
    ctx = ctx or random_context(rng)
    R = rng.randint(2, rank_max)
    R_k = rng.randint(1, R - 1)
    return FiltrationSlice(
        ctx,
        Invariants(R, rng.randint(-deg_max, deg_max)),
        Invariants(R_k, rng.randint(-deg_max, deg_max)),
        rng.randint(1, ctx.n - 1),
        rng.randint(0, t_max),
    )


def random_rigid_sheaf(rng: random.Random, ctx: CurveContext | None = None, a_max=5, deg_max=20):
    ctx = ctx or random_context(rng)
    a = rng.randint(1, a_max)
    k = rng.randint(1, ctx.n - 1)
    return RigidSheaf.from_degrees(
        ctx, a, k, rng.randint(-deg_max, deg_max), rng.randint(-deg_max, deg_max)
    )
