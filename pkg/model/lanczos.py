"""
Lanczos tridiagonalization of a graph adjacency matrix.

lanczos_run grows an orthonormal Krylov basis from a start vector using the
three-term recursion with full reorthogonalization. complete_basis restarts the
iteration from vectors orthogonal to the existing bases until the reference
component is spanned.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from model.errors import DimensionMismatch, InvalidSize, NotUnit
from model.graph import Graph, stratify

UNIT_TOL = 1e-12
BREAKDOWN_FACTOR = 1e-10


@dataclass(frozen=True, eq=False)
class JacobiCoefficients:
    """
    Diagonal (alphas) and off-diagonal (betas) of the Jacobi matrix.

    len(alphas) == dim and len(betas) == dim - 1; every beta is > 0.
    """

    alphas: np.ndarray
    betas: np.ndarray

    def __post_init__(self):
        if len(self.alphas) < 1:
            raise InvalidSize("Jacobi coefficients need dim >= 1")
        if len(self.betas) != len(self.alphas) - 1:
            raise DimensionMismatch(
                f"{len(self.alphas)} alphas need {len(self.alphas) - 1} betas, got {len(self.betas)}")
        if np.any(np.asarray(self.betas) <= 0):
            raise InvalidSize("betas must be strictly positive")

    @property
    def dim(self) -> int:
        return len(self.alphas)

    def matrix(self) -> np.ndarray:
        """Dense dim x dim tridiagonal Jacobi matrix."""
        return (np.diag(self.alphas) + np.diag(self.betas, k=1) + np.diag(self.betas, k=-1))

    def to_dict(self) -> Dict:
        return {"alphas": [float(a) for a in self.alphas],
                "betas": [float(b) for b in self.betas]}

    @classmethod
    def from_lists(cls, alphas: Sequence[float], betas: Sequence[float]) -> "JacobiCoefficients":
        return cls(np.asarray(alphas, dtype=float), np.asarray(betas, dtype=float))


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """
    Orthonormal vectors in vertex space, stored as rows; vectors[0] is the start.
    """

    vectors: np.ndarray
    start: np.ndarray

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    @property
    def n(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, k: int) -> np.ndarray:
        return self.vectors[k]


def default_breakdown_tol(g: Graph) -> float:
    return BREAKDOWN_FACTOR * max(1.0, g.one_norm)


def unit_vector(n: int, o: int) -> np.ndarray:
    e = np.zeros(n)
    e[o] = 1.0
    return e


def _reorthogonalize(v: np.ndarray, blocks: Sequence[np.ndarray]) -> np.ndarray:
    # classical Gram-Schmidt, applied twice
    for _ in range(2):
        for Q in blocks:
            if Q.size:
                v = v - Q.T @ (Q @ v)
    return v


def lanczos_run(g: Graph,
                start: np.ndarray,
                max_dim: Optional[int] = None,
                breakdown_tol: Optional[float] = None,
                orthogonal_to: Optional[np.ndarray] = None
                ) -> Tuple[JacobiCoefficients, OrthonormalBasis]:
    """
    Tridiagonalize A from a unit start vector.

    Args:
        g: Graph whose adjacency matrix is used
        start: Unit vector over the vertices
        max_dim: Maximum number of basis vectors (default n)
        breakdown_tol: Stop when beta_{i+1} <= this (default 1e-10 * max(1, ||A||_1))
        orthogonal_to: Rows every new vector is also reorthogonalized against
            (used when restarting inside an orthogonal complement)

    Returns:
        (JacobiCoefficients, OrthonormalBasis) of dimension d <= max_dim
    """
    start = np.asarray(start, dtype=float)
    if start.shape != (g.n,):
        raise DimensionMismatch(f"start vector has shape {start.shape}, graph has {g.n} vertices")
    norm = np.linalg.norm(start)
    if abs(norm - 1.0) > UNIT_TOL:
        raise NotUnit(f"start vector norm is {norm!r}, expected 1")

    if max_dim is None:
        max_dim = g.n
    if max_dim < 1 or max_dim > g.n:
        raise InvalidSize(f"max_dim must be in [1, {g.n}], got {max_dim}")
    if breakdown_tol is None:
        breakdown_tol = default_breakdown_tol(g)
    extra = np.zeros((0, g.n)) if orthogonal_to is None else np.atleast_2d(orthogonal_to)

    # grown by doubling up to max_dim
    basis = np.zeros((min(max_dim, 64), g.n))
    basis[0] = start
    alphas: List[float] = []
    betas: List[float] = []

    for i in range(max_dim):
        phi = basis[i]
        v = g.apply(phi)
        alpha = float(phi @ v)
        alphas.append(alpha)
        if i + 1 == max_dim:
            break

        # three-term step, then full reorthogonalization against every earlier vector
        v = v - alpha * phi
        if i > 0:
            v = v - betas[-1] * basis[i - 1]
        v = _reorthogonalize(v, [basis[:i + 1], extra])

        beta = float(np.linalg.norm(v))
        if beta <= breakdown_tol:
            break
        betas.append(beta)
        if i + 1 == basis.shape[0]:
            basis = np.vstack([basis, np.zeros((min(basis.shape[0], max_dim - basis.shape[0]), g.n))])
        basis[i + 1] = v / beta

    d = len(alphas)
    jacobi = JacobiCoefficients(np.array(alphas), np.array(betas))
    return jacobi, OrthonormalBasis(vectors=basis[:d].copy(), start=start.copy())


def _signed(v: np.ndarray) -> np.ndarray:
    """Flip v so its largest-magnitude component (lowest index on ties) is positive."""
    mags = np.abs(v)
    top = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    return v if v[top] > 0 else -v


def complete_basis(g: Graph,
                   existing: Sequence[OrthonormalBasis],
                   breakdown_tol: Optional[float] = None,
                   component: Optional[Sequence[int]] = None) -> List[OrthonormalBasis]:
    """
    Extend mutually orthonormal bases until they span the reference component.

    Each restart picks the canonical vector e_v (v in the component) with the
    largest residual after projection onto the orthogonal complement, lowest v on
    ties, normalizes the residual, and runs Lanczos from it. Returns the new
    bases in generation order; an empty list means the span was already complete.
    """
    if not existing:
        raise InvalidSize("complete_basis needs at least one existing basis")
    if component is None:
        anchor = int(np.argmax(np.abs(existing[0].start)))
        component = stratify(g, anchor).component
    component = list(component)
    target = len(component)

    Q = np.vstack([b.vectors for b in existing])
    if Q.shape[0] > target:
        raise DimensionMismatch(f"{Q.shape[0]} vectors exceed the component size {target}")

    supplements: List[OrthonormalBasis] = []
    while Q.shape[0] < target:
        residual_sq = 1.0 - np.sum(Q[:, component] ** 2, axis=0)
        best = residual_sq.max()
        if best <= 1e-16:
            break
        pick = component[int(np.flatnonzero(residual_sq >= best - 1e-12)[0])]

        psi = _reorthogonalize(unit_vector(g.n, pick), [Q])
        psi = _signed(psi / np.linalg.norm(psi))
        _, basis = lanczos_run(g, psi,
                               max_dim=target - Q.shape[0],
                               breakdown_tol=breakdown_tol,
                               orthogonal_to=Q)
        supplements.append(basis)
        Q = np.vstack([Q, basis.vectors])
    return supplements


def project(g: Graph, basis: OrthonormalBasis) -> np.ndarray:
    """Phi A Phi^T: A expressed in the basis (tridiagonal for a Lanczos basis)."""
    applied = np.column_stack([g.apply(v) for v in basis.vectors])
    return basis.vectors @ applied


def orthonormality_defect(vectors: np.ndarray) -> float:
    """max |<phi_i|phi_j> - delta_ij| over all pairs."""
    gram = vectors @ vectors.T
    return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))


def krylov_moments(g: Graph, start: np.ndarray, m_max: int) -> np.ndarray:
    """<start|A^m|start> for m = 0..m_max by repeated adjacency application."""
    start = np.asarray(start, dtype=float)
    out = np.empty(m_max + 1)
    w = start.copy()
    for m in range(m_max + 1):
        out[m] = start @ w
        w = g.apply(w)
    return out
