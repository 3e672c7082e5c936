"""The metasymplectic structure on the model fiber of a jet bundle.

Model vectors split as (X, theta) with X in R^n horizontal and theta in
S^k(T*) tensor nu vertical.  For a covector slot lambda in S^{k-1}(T)
tensor nu*, the two-form is

    Omega(lambda)((X1, th1), (X2, th2)) = <lambda, X1 . delta th2>
                                        - <lambda, X2 . delta th1>,

zero on horizontal-horizontal and vertical-vertical pairs.  The pairing
is coefficientwise in the monomial basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from ..linalg import Matrix, kernel_basis, rank
from .symtensor import JetSignature, SymTensor, multi_indices


@dataclass
class CovectorSlot:
    """Element of S^{k-1}(T) tensor nu* (dual slot for the two-form)."""

    sig: JetSignature
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        full = {}
        for beta in multi_indices(self.sig.n, self.sig.k - 1):
            for j in range(self.sig.m):
                full[(beta, j)] = Fraction(self.coeffs.get((beta, j), 0))
        self.coeffs = full


@dataclass(frozen=True)
class ModelVector:
    """A single vector (X, theta) in the model fiber."""

    sig: JetSignature
    x: tuple
    theta: SymTensor

    @staticmethod
    def of(sig: JetSignature, x, theta: SymTensor | None = None) -> "ModelVector":
        xs = tuple(Fraction(v) for v in x)
        if len(xs) != sig.n:
            raise ValueError("horizontal part must have n components")
        if theta is None:
            theta = SymTensor.zero(sig.n, sig.m, sig.k)
        if (theta.n, theta.m, theta.degree) != (sig.n, sig.m, sig.k):
            raise ValueError("vertical part has the wrong shape")
        return ModelVector(sig, xs, theta)

    @staticmethod
    def horizontal(sig: JetSignature, x) -> "ModelVector":
        return ModelVector.of(sig, x)

    @staticmethod
    def vertical(sig: JetSignature, theta: SymTensor) -> "ModelVector":
        return ModelVector.of(sig, [0] * sig.n, theta)


def model_dim(sig: JetSignature) -> int:
    return sig.n + sig.m * comb(sig.n + sig.k - 1, sig.k)


def lambda_dim(sig: JetSignature) -> int:
    return sig.m * comb(sig.n + sig.k - 2, sig.k - 1)


def lambda_basis(sig: JetSignature) -> list[CovectorSlot]:
    out = []
    for beta in multi_indices(sig.n, sig.k - 1):
        for j in range(sig.m):
            out.append(CovectorSlot(sig, {(beta, j): 1}))
    return out


def _interior_delta(x: tuple, theta: SymTensor) -> SymTensor:
    """X . delta(theta): degree k-1 tensor with entries sum_i X_i (b_i+1) theta[b+e_i]."""
    n, m = theta.n, theta.m
    coeffs = {}
    for beta in multi_indices(n, theta.degree - 1):
        for j in range(m):
            tot = Fraction(0)
            for i in range(n):
                src = beta[:i] + (beta[i] + 1,) + beta[i + 1:]
                tot += x[i] * (beta[i] + 1) * theta.coeffs[(src, j)]
            coeffs[(beta, j)] = tot
    return SymTensor(n, m, theta.degree - 1, coeffs)


def metasymplectic_eval(lam: CovectorSlot, z1: ModelVector, z2: ModelVector):
    """Scalar Omega(lambda)(z1, z2); antisymmetric, mixed-pairs only."""
    if z1.sig != z2.sig or lam.sig != z1.sig:
        raise ValueError("signature mismatch")
    s12 = _interior_delta(z1.x, z2.theta)
    s21 = _interior_delta(z2.x, z1.theta)
    tot = Fraction(0)
    for key, lv in lam.coeffs.items():
        if lv != 0:
            tot += lv * (s12.coeffs[key] - s21.coeffs[key])
    return tot


# -- flattened coordinates ---------------------------------------------------


def _theta_keys(sig: JetSignature) -> list[tuple[tuple[int, ...], int]]:
    return [(alpha, j) for alpha in multi_indices(sig.n, sig.k)
            for j in range(sig.m)]


def flatten(vec: ModelVector) -> list[Fraction]:
    return list(vec.x) + [vec.theta.coeffs[key] for key in _theta_keys(vec.sig)]


def unflatten(sig: JetSignature, coords) -> ModelVector:
    coords = list(coords)
    x = coords[:sig.n]
    theta = SymTensor(sig.n, sig.m, sig.k,
                      dict(zip(_theta_keys(sig), coords[sig.n:])))
    return ModelVector.of(sig, x, theta)


def span_matrix(vectors: list[ModelVector]) -> Matrix:
    if not vectors:
        raise ValueError("empty vector list")
    cols = [flatten(v) for v in vectors]
    d = len(cols[0])
    return Matrix.exact([[col[i] for col in cols] for i in range(d)])


def vectors_from_matrix(sig: JetSignature, mat: Matrix) -> list[ModelVector]:
    return [unflatten(sig, mat.col(j)) for j in range(mat.cols)]


def _basis_vectors(sig: JetSignature) -> list[ModelVector]:
    dim = model_dim(sig)
    out = []
    for t in range(dim):
        coords = [Fraction(0)] * dim
        coords[t] = Fraction(1)
        out.append(unflatten(sig, coords))
    return out


def meta_orthogonal_frame(sig: JetSignature, frame: Matrix) -> Matrix:
    """Frame of all z with Omega(lambda)(z, v) = 0 for every frame column v
    and every lambda; an empty frame yields the whole fiber."""
    dim = model_dim(sig)
    if frame.rows != dim:
        raise ValueError("frame does not live in this model fiber")
    if frame.cols == 0:
        return Matrix.identity(dim)
    basis = _basis_vectors(sig)
    vectors = vectors_from_matrix(sig, frame)
    rows = []
    for lam in lambda_basis(sig):
        for v in vectors:
            rows.append([metasymplectic_eval(lam, e, v) for e in basis])
    return kernel_basis(Matrix.exact(rows))


def meta_orthogonal(sig: JetSignature, vectors: list[ModelVector]) -> list[ModelVector]:
    """All z with Omega(lambda)(z, v) = 0 for every v given and every lambda."""
    if not vectors:
        return _basis_vectors(sig)
    ker = meta_orthogonal_frame(sig, span_matrix(vectors))
    return vectors_from_matrix(sig, ker)


def singularity_condition(sig: JetSignature, p: int) -> bool:
    """Whether the rank-p isotropic family meets the singular threshold."""
    if not 0 <= p <= sig.n:
        raise ValueError("p must lie between 0 and n")
    return sig.m * comb(p + sig.k - 1, sig.k) >= sig.n


@dataclass(frozen=True)
class IntegralPlaneModel:
    """A subspace of the model fiber split into horizontal and vertical parts."""

    sig: JetSignature
    horizontal: Matrix
    vertical: tuple

    @property
    def dim(self) -> int:
        return self.horizontal.cols + len(self.vertical)

    def vectors(self) -> list[ModelVector]:
        out = [ModelVector.horizontal(self.sig, self.horizontal.col(j))
               for j in range(self.horizontal.cols)]
        out.extend(ModelVector.vertical(self.sig, th) for th in self.vertical)
        return out


def _linear_form_power_basis(sig: JetSignature, xi: Matrix) -> list[SymTensor]:
    """Products of k covectors from the columns of xi, expanded monomially."""
    n, m, k = sig.n, sig.m, sig.k
    out = []
    cols = [xi.col(j) for j in range(xi.cols)]
    for combo in combinations_with_replacement(range(len(cols)), k):
        poly = {(0,) * n: Fraction(1)}
        for idx in combo:
            nxt: dict = {}
            for alpha, cv in poly.items():
                for i in range(n):
                    if cols[idx][i] == 0:
                        continue
                    na = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                    nxt[na] = nxt.get(na, Fraction(0)) + cv * cols[idx][i]
            poly = nxt
        for j in range(m):
            out.append(SymTensor(n, m, k, {(a, j): v for a, v in poly.items()}))
    return out


def max_isotropic(sig: JetSignature, xi: Matrix) -> IntegralPlaneModel:
    """Maximal isotropic plane from a rank-p covector frame Xi.

    P = {X + theta : X in Ann(Xi), theta in S^k(Xi) tensor nu}; its
    dimension is m C(p+k-1, k) + n - p, verified on construction.
    """
    n, m, k = sig.n, sig.m, sig.k
    p = xi.cols
    if xi.rows != n:
        raise ValueError("covector frame must have n rows")
    if p and rank(xi) != p:
        raise ValueError("covector frame must have independent columns")
    ann = kernel_basis(xi.T) if p else Matrix.identity(n)
    vertical = tuple(_linear_form_power_basis(sig, xi)) if p else ()
    plane = IntegralPlaneModel(sig, ann, vertical)
    expected = m * comb(p + k - 1, k) + (n - p) if p else n
    vecs = plane.vectors()
    got = rank(span_matrix(vecs)) if vecs else 0
    if got != expected or plane.dim != expected:
        raise ValueError("isotropic plane failed its dimension audit")
    return plane
