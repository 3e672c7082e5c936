"""The metaplectic extension Mp1 = W x Sp with the Maslov cocycle.

Elements are pairs (w, g) with w an integer Witt class over R and g an
exact symplectic matrix; the product twists the Witt parts by the
Kashiwara index of (L, gL, gg'L) for a fixed base Lagrangian L.  The
extension is central: (w, id) commutes with everything.

For n = 1 the subgroup cut out by the Leray function and the square of
the fundamental ideal (I^2 = 4Z) is exposed as ``mp2_member``; membership
depends on the chosen lifts and is invariant under 2 pi lift shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .linalg import EXACT, Matrix, inverse
from .maslov import LagrangianTuple, LerayLift, kashiwara_index, leray_m
from .symplectic import LagrangianFrame, SymplecticSpace, random_symplectic
from .witt import WittReal, ideal_power_member_real


def is_symplectic(space: SymplecticSpace, g: Matrix) -> bool:
    if g.rows != space.dim or g.cols != space.dim:
        return False
    gram = g.T @ space.omega_as(g.mode) @ g
    return (gram - space.omega_as(g.mode)).is_zero()


@dataclass(frozen=True)
class Mp1Context:
    """A symplectic space with a fixed base Lagrangian for the cocycle."""

    space: SymplecticSpace
    base: LagrangianFrame

    @staticmethod
    def standard(n: int) -> "Mp1Context":
        space = SymplecticSpace.standard(n)
        frame = Matrix.identity(n).vstack(Matrix.zeros(n, n))
        return Mp1Context(space, LagrangianFrame(space, frame))


@dataclass(frozen=True)
class Mp1Element:
    ctx: Mp1Context
    w: WittReal
    g: Matrix

    def __post_init__(self):
        if self.g.mode != EXACT:
            raise ValueError("group elements use exact matrices")
        if not is_symplectic(self.ctx.space, self.g):
            raise ValueError("matrix is not symplectic for this space")

    @staticmethod
    def of(ctx: Mp1Context, w: int, g: Matrix) -> "Mp1Element":
        return Mp1Element(ctx, WittReal(int(w)), g)


def _cocycle(ctx: Mp1Context, g1: Matrix, g2: Matrix) -> int:
    lag = ctx.base
    space = ctx.space
    l1 = LagrangianFrame(space, g1 @ lag.frame)
    l2 = LagrangianFrame(space, (g1 @ g2) @ lag.frame)
    return int(kashiwara_index(LagrangianTuple.of(lag, l1, l2)))


def mp1_mul(a: Mp1Element, b: Mp1Element) -> Mp1Element:
    if a.ctx.space.omega.entries != b.ctx.space.omega.entries:
        raise ValueError("elements live over different spaces")
    tw = _cocycle(a.ctx, a.g, b.g)
    return Mp1Element(a.ctx, WittReal(int(a.w) + int(b.w) + tw), a.g @ b.g)


def mp1_identity(ctx: Mp1Context) -> Mp1Element:
    return Mp1Element(ctx, WittReal(0), Matrix.identity(ctx.space.dim))


def mp1_inverse(a: Mp1Element) -> Mp1Element:
    """Solve (w, g)(w', g^{-1}) = (0, id) for w' in the Witt group."""
    ginv = inverse(a.g)
    tw = _cocycle(a.ctx, a.g, ginv)
    return Mp1Element(a.ctx, WittReal(-int(a.w) - tw), ginv)


def mp1_central_check(ctx: Mp1Context, w: int, others: list[Mp1Element]) -> bool:
    """True iff (w, id) commutes with every listed element."""
    c = Mp1Element.of(ctx, w, Matrix.identity(ctx.space.dim))
    for el in others:
        left = mp1_mul(c, el)
        right = mp1_mul(el, c)
        if int(left.w) != int(right.w) or left.g.entries != right.g.entries:
            return False
    return True


def random_mp1(ctx: Mp1Context, rng: Random, wmax: int = 3,
               transvections: int = 5) -> Mp1Element:
    g = random_symplectic(ctx.space, rng, transvections)
    return Mp1Element.of(ctx, rng.randint(-wmax, wmax), g)


def mp2_member(a: Mp1Element, base_lift: LerayLift, image_lift: LerayLift) -> bool:
    """Membership of an Mp1 element (n = 1) in the index-two subgroup.

    Tests w - m(lift of gL, lift of L) against I^2 = 4Z.  The caller fixes
    both lifts; shifting a lift by 2 pi does not change the answer.
    """
    if a.ctx.space.n != 1:
        raise ValueError("the Leray route to Mp2 exists only for n = 1")
    m = leray_m(image_lift, base_lift)
    if m != round(m):
        raise ValueError("lifts sit off the integer locus of m")
    diff = int(a.w) - int(round(m))
    return ideal_power_member_real(WittReal(diff), 2)
