"""Symplectic vector spaces, their subspaces, and the Lagrangian Grassmannian.

The standard space on R^{2n} uses coordinates (x_1..x_n, y_1..y_n) with
Gram matrix [[0, I], [-I, 0]], i.e. omega(x_i-axis, y_j-axis) = delta_ij;
for n = 1 this is omega(u, v) = u_x v_y - u_y v_x.  Custom rational skew
Grams are accepted and reduced to the standard form once per space by an
exact symplectic Gram-Schmidt.

Angle-parametrized Lagrangians follow L(theta) = span{(cos theta, sin theta)}
at n = 1; in general the frame of (theta_1..theta_n) has column j equal to
cos(theta_j) e_j + sin(theta_j) e_{n+j}.  det_squared is normalized so that
det2(L(theta)) = e^{2 i theta}: it is the squared determinant of any unitary
matrix mapping R^n onto L.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Sequence

import numpy as np

from .linalg import (APPROX, DEFAULT_TOL, EXACT, Matrix, ModeMixError,
                     inverse, kernel_basis, rank, spans_equal)

ANGLE_SNAP = 1e-9


def standard_gram(n: int, mode: str = EXACT) -> Matrix:
    rows = []
    for i in range(2 * n):
        row = [0] * (2 * n)
        if i < n:
            row[n + i] = 1
        else:
            row[i - n] = -1
        rows.append(row)
    return Matrix.from_rows(rows, mode)


def _symplectic_basis(omega: Matrix) -> Matrix:
    """Exact S with S^T Omega S equal to the standard Gram."""
    dim = omega.rows
    n = dim // 2
    basis = [list(col) for col in Matrix.identity(dim).T.entries]

    def w(u, v):
        return sum(ui * sum(oij * vj for oij, vj in zip(orow, v))
                   for ui, orow in zip(u, omega.entries))

    us, vs = [], []
    pool = basis
    while pool:
        u = pool[0]
        partner = None
        for cand in pool[1:]:
            if w(u, cand) != 0:
                partner = cand
                break
        if partner is None:
            raise ValueError("omega is degenerate")
        c = w(u, partner)
        v = [x / c for x in partner]
        rest = []
        for b in pool:
            if b is u or b is partner:
                continue
            a1 = w(v, b)
            a2 = w(u, b)
            nb = [bb + a1 * uu - a2 * vv for bb, uu, vv in zip(b, u, v)]
            if any(x != 0 for x in nb):
                rest.append(nb)
        us.append(u)
        vs.append(v)
        pool = rest
    if len(us) != n:
        raise ValueError("omega is degenerate")
    cols = us + vs
    return Matrix(dim, dim, tuple(tuple(cols[j][i] for j in range(dim))
                                  for i in range(dim)), EXACT)


@dataclass(frozen=True)
class SymplecticSpace:
    """R^{2n} with a fixed rational skew nondegenerate Gram matrix."""

    n: int
    omega: Matrix
    _std_transform: Matrix | None = field(default=None, compare=False)

    @staticmethod
    def standard(n: int) -> "SymplecticSpace":
        if n < 1:
            raise ValueError("n must be positive")
        return SymplecticSpace(n, standard_gram(n))

    @staticmethod
    def from_omega(omega: Matrix) -> "SymplecticSpace":
        if omega.mode != EXACT:
            raise ValueError("custom Gram matrices must be exact rationals")
        if omega.rows != omega.cols or omega.rows % 2:
            raise ValueError("Gram matrix must be square of even size")
        if (omega + omega.T).entries != Matrix.zeros(omega.rows, omega.rows).entries:
            raise ValueError("Gram matrix must be skew-symmetric")
        n = omega.rows // 2
        if rank(omega) != 2 * n:
            raise ValueError("Gram matrix is degenerate")
        space = SymplecticSpace(n, omega)
        if not space.is_standard():
            object.__setattr__(space, "_std_transform", _symplectic_basis(omega))
        return space

    def is_standard(self) -> bool:
        return self.omega.entries == standard_gram(self.n).entries

    @property
    def dim(self) -> int:
        return 2 * self.n

    def omega_as(self, mode: str) -> Matrix:
        return self.omega if mode == EXACT else self.omega.to_approx()

    def pair_frames(self, f: Matrix, g: Matrix) -> Matrix:
        """Gram of omega between column sets: f^T Omega g."""
        return f.T @ self.omega_as(f.mode) @ g


@dataclass(frozen=True)
class Subspace:
    space: SymplecticSpace
    frame: Matrix

    def __post_init__(self):
        if self.frame.rows != self.space.dim:
            raise ValueError("frame rows must match the ambient dimension")
        if self.frame.cols and rank(self.frame) != self.frame.cols:
            raise ValueError("frame columns are linearly dependent")

    @property
    def dim(self) -> int:
        return self.frame.cols


def symplectic_complement(sub: Subspace) -> Subspace:
    """The omega-orthogonal E^perp; dim = 2n - dim E for any E."""
    f = sub.frame
    mat = f.T @ sub.space.omega_as(f.mode)
    return Subspace(sub.space, kernel_basis(mat))


def classify_subspace(sub: Subspace) -> str:
    """One of isotropic / coisotropic / lagrangian / symplectic / generic."""
    perp = symplectic_complement(sub)
    inside = _span_contains(perp.frame, sub.frame)
    contains = _span_contains(sub.frame, perp.frame)
    if inside and contains:
        return "lagrangian"
    if inside:
        return "isotropic"
    if contains:
        return "coisotropic"
    meet = intersect_frames(sub.frame, perp.frame)
    if meet.cols == 0:
        return "symplectic"
    return "generic"


def _span_contains(big: Matrix, small: Matrix) -> bool:
    from .linalg import span_contains
    return span_contains(big, small)


def intersect_frames(f: Matrix, g: Matrix) -> Matrix:
    """Frame of (col span f) intersect (col span g)."""
    if f.cols == 0 or g.cols == 0:
        return Matrix.zeros(f.rows, 0, f.mode, f.tol)
    stacked = f.hstack(g.scale(-1))
    ker = kernel_basis(stacked)
    if ker.cols == 0:
        return Matrix.zeros(f.rows, 0, f.mode, f.tol)
    coeffs = ker.block(0, f.cols, 0, ker.cols)
    # full-column-rank inputs make these images automatically independent
    return f @ coeffs


@dataclass(frozen=True)
class LagrangianFrame(Subspace):
    """A Lagrangian subspace given by a 2n x n frame."""

    def __post_init__(self):
        super().__post_init__()
        if self.frame.cols != self.space.n:
            raise ValueError("a Lagrangian frame needs exactly n columns")
        g = self.space.pair_frames(self.frame, self.frame)
        if self.frame.mode == EXACT:
            if any(x != 0 for row in g.entries for x in row):
                raise ValueError("frame is not isotropic")
        else:
            scale = max(self.frame.max_abs() ** 2, 1.0)
            if g.max_abs() > self.frame.tol * scale:
                raise ValueError("frame is not isotropic within tolerance")


def lagrangian_from_angles(space: SymplecticSpace, thetas: Sequence[float],
                           tol: float = DEFAULT_TOL) -> LagrangianFrame:
    """Diagonal-angle Lagrangian; requires the standard space.

    Column j is cos(theta_j) e_j + sin(theta_j) e_{n+j} with theta in [0, pi).
    """
    if not space.is_standard():
        raise ValueError("angle parametrization needs the standard space")
    if len(thetas) != space.n:
        raise ValueError("need one angle per dimension")
    n = space.n
    cols = []
    for j, th in enumerate(thetas):
        th = float(th)
        if not (0.0 <= th < math.pi):
            raise ValueError("angles must lie in [0, pi)")
        col = [0.0] * (2 * n)
        col[j] = math.cos(th)
        col[n + j] = math.sin(th)
        cols.append(col)
    frame = Matrix.approx([[c[i] for c in cols] for i in range(2 * n)], tol)
    return LagrangianFrame(space, frame)


def line_lagrangian(space: SymplecticSpace, direction: Sequence) -> LagrangianFrame:
    """n = 1 line through a nonzero (typically rational) direction vector."""
    if space.n != 1:
        raise ValueError("line_lagrangian is for n = 1")
    mode = APPROX if any(isinstance(x, float) for x in direction) else EXACT
    frame = Matrix.from_rows([[x] for x in direction], mode)
    return LagrangianFrame(space, frame)


def graph_lagrangian(space: SymplecticSpace, phi: Matrix) -> LagrangianFrame:
    """Graph {(x, phi x)}; Lagrangian iff phi is symmetric."""
    n = space.n
    if phi.rows != n or phi.cols != n:
        raise ValueError("phi must be n x n")
    if not space.is_standard():
        raise ValueError("graph parametrization needs the standard space")
    ident = Matrix.identity(n) if phi.mode == EXACT else Matrix.identity(n, APPROX, phi.tol)
    return LagrangianFrame(space, ident.vstack(phi))


# -- unitary representatives and the determinant-squared map ---------------


def _complex_frame(lag: LagrangianFrame) -> np.ndarray:
    f = lag.frame.to_numpy()
    n = lag.space.n
    return f[:n, :] + 1j * f[n:, :]


def _polar_unitary(lag: LagrangianFrame) -> np.ndarray:
    if not lag.space.is_standard():
        raise ValueError("unitary representatives need the standard space")
    z = _complex_frame(lag)
    u, s, vh = np.linalg.svd(z)
    if s[-1] <= lag.frame.tol * max(s[0], 1.0):
        raise ValueError("polar factor ill-conditioned beyond tolerance")
    return u @ vh


@dataclass(frozen=True)
class UnitaryRep:
    """Unitary A with A(i R^n) = L, stored as two real matrices."""

    n: int
    a_re: Matrix
    a_im: Matrix

    def as_complex(self) -> np.ndarray:
        return self.a_re.to_numpy() + 1j * self.a_im.to_numpy()


def unitary_from_lagrangian(lag: LagrangianFrame) -> UnitaryRep:
    zu = _polar_unitary(lag)
    a = -1j * zu
    rep = UnitaryRep(lag.space.n, Matrix.from_numpy(a.real, lag.frame.tol),
                     Matrix.from_numpy(a.imag, lag.frame.tol))
    # postcondition: A(i e_j) lands in L
    n = lag.space.n
    for j in range(n):
        img = 1j * a[:, j]
        col = Matrix.from_numpy(np.concatenate([img.real, img.imag]).reshape(-1, 1),
                                lag.frame.tol)
        if not _span_contains(lag.frame.to_approx(), col):
            raise ValueError("unitary representative failed the span check")
    return rep


def det_squared(lag: LagrangianFrame) -> complex:
    """Coset-invariant squared determinant; e^{2 i theta} on L(theta)."""
    zu = _polar_unitary(lag)
    d2 = np.linalg.det(zu) ** 2
    return complex(d2 / abs(d2))


def eigen_angles(lag: LagrangianFrame, snap: float = ANGLE_SNAP) -> tuple[float, ...]:
    """Angles theta_j in [0, pi) of L relative to the real axes (sorted)."""
    zu = _polar_unitary(lag)
    w = np.linalg.eigvals(zu @ zu.T)
    out = []
    for lam in w:
        a = cmath.phase(complex(lam))  # (-pi, pi]
        if a < 0:
            a += 2 * math.pi
        th = a / 2.0
        if th < snap or th > math.pi - snap:
            th = 0.0
        out.append(th)
    return tuple(sorted(out))


def loop_degree(path: Sequence[LagrangianFrame | Matrix],
                space: SymplecticSpace | None = None) -> int:
    """Winding number of det-squared along a closed Lagrangian loop.

    Requires first and last members to span the same subspace and each
    consecutive det2 argument jump to stay below pi/2 (sampling guard).
    """
    if len(path) < 3:
        raise ValueError("a loop needs at least three samples")
    frames = []
    for item in path:
        if isinstance(item, LagrangianFrame):
            frames.append(item)
        else:
            if space is None:
                raise ValueError("raw matrices need an explicit space")
            frames.append(LagrangianFrame(space, item))
    first, last = frames[0].frame, frames[-1].frame
    if not spans_equal(first.to_approx(), last.to_approx()):
        raise ValueError("path is not closed (first and last spans differ)")
    vals = [det_squared(f) for f in frames]
    total = 0.0
    for a, b in zip(vals, vals[1:]):
        step = cmath.phase(b / a)
        if abs(step) >= math.pi / 2:
            raise ValueError("undersampled loop: det2 jump of pi/2 or more")
        total += step
    turns = total / (2 * math.pi)
    deg = round(turns)
    if abs(turns - deg) > 1e-6:
        raise ValueError("loop winding failed to close to an integer")
    return int(deg)


# -- seeded random generators ----------------------------------------------


def _rand_fraction(rng: Random, lo: int = -4, hi: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_symplectic(space: SymplecticSpace, rng: Random,
                      transvections: int = 6) -> Matrix:
    """Product of random symplectic transvections v -> v + c omega(v, u) u."""
    dim = space.dim
    g = Matrix.identity(dim)
    omega = space.omega
    made = 0
    while made < transvections:
        u = [_rand_fraction(rng) for _ in range(dim)]
        if all(x == 0 for x in u):
            continue
        c = _rand_fraction(rng)
        if c == 0:
            continue
        wu = [sum(orow[j] * u[j] for j in range(dim)) for orow in omega.entries]
        t = Matrix(dim, dim,
                   tuple(tuple((Fraction(1) if a == b else Fraction(0)) +
                               c * u[a] * wu[b] for b in range(dim))
                         for a in range(dim)), EXACT)
        g = g @ t
        made += 1
    return g


def random_lagrangian(space: SymplecticSpace, rng: Random,
                      twists: int = 3) -> LagrangianFrame:
    """Seeded random Lagrangian; twisting hits the non-graph strata too."""
    n = space.n
    if not space.is_standard():
        raise ValueError("random_lagrangian needs the standard space")
    sym = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = _rand_fraction(rng)
            sym[i][j] = v
            sym[j][i] = v
    frame = Matrix.identity(n).vstack(Matrix.from_rows(sym))
    g = random_symplectic(space, rng, transvections=twists)
    return LagrangianFrame(space, g @ frame)
