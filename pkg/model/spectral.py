"""
Orthogonal polynomials and the spectral measure of a Jacobi matrix.

Conventions:
    P_k   normalized polynomials, beta_{k+1} P_{k+1} = (x - alpha_k) P_k - beta_k P_{k-1}
    P'_k  monic polynomials P'_k = beta_1 ... beta_k P_k
    Q_k   first associated polynomials, Q_0 = 1, Q_1 = x - alpha_1,
          x Q_k = Q_{k+1} + alpha_{k+1} Q_k + beta_{k+1}^2 Q_{k-1}

For k = dim there is no beta_dim; P_dim is taken as P'_dim / (beta_1 ... beta_{dim-1}).
Its roots are the atoms of the measure.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal

from model.errors import DimensionMismatch, IndexOutOfRange, NotAnAtom, PoleAtAtom
from model.lanczos import JacobiCoefficients

ATOM_TOL = 1e-7
POLE_TOL = 1e-13
RESCALE = 1e100

Number = Union[float, complex, np.ndarray]


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Discrete probability measure sum_l A_l delta(x - x_l), atoms ascending."""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if len(self.atoms) != len(self.weights):
            raise DimensionMismatch(f"{len(self.atoms)} atoms but {len(self.weights)} weights")

    @property
    def size(self) -> int:
        return len(self.atoms)

    def moments(self, m_max: int) -> np.ndarray:
        """sum_l A_l x_l^m for m = 0..m_max."""
        powers = self.atoms[None, :] ** np.arange(m_max + 1)[:, None]
        return powers @ self.weights

    def stieltjes(self, z: complex) -> complex:
        """sum_l A_l / (z - x_l)."""
        return complex(np.sum(self.weights / (z - self.atoms)))

    def to_dict(self) -> Dict:
        return {"atoms": [{"x": float(x), "weight": float(w)}
                          for x, w in zip(self.atoms, self.weights)]}

    @classmethod
    def from_dict(cls, doc: Dict) -> "SpectralMeasure":
        atoms = np.array([float(a["x"]) for a in doc["atoms"]])
        weights = np.array([float(a["weight"]) for a in doc["atoms"]])
        return cls(atoms, weights)


def _check_index(j: JacobiCoefficients, k: int, top: int) -> None:
    if k < 0 or k > top:
        raise IndexOutOfRange(f"polynomial index {k} not in [0, {top}]")


def _beta(j: JacobiCoefficients, i: int) -> float:
    """beta_i with beta_0 = 0 and beta_dim = 1."""
    if i == 0:
        return 0.0
    # P_dim keeps the monic scale of its last step, so its roots are the atoms
    if i == j.dim:
        return 1.0
    return float(j.betas[i - 1])


def _relative_residual(j: JacobiCoefficients, z: complex) -> float:
    """
    |P_dim(z)| / ||(P_0(z), ..., P_{dim-1}(z))||.

    With beta_dim = 1 this equals ||(J - z) p|| / ||p|| for p = (P_0(z), ..., P_{dim-1}(z)),
    so some atom lies within this distance of z. Safe for long chains.
    """
    prev, cur = 0.0, 1.0
    norm_sq = 0.0
    for i in range(j.dim):
        norm_sq += abs(cur) ** 2
        prev, cur = cur, ((z - j.alphas[i]) * cur - _beta(j, i) * prev) / _beta(j, i + 1)
        # only the ratio matters; rescale before the recursion overflows
        big = max(abs(prev), abs(cur))
        if big > RESCALE:
            prev, cur, norm_sq = prev / big, cur / big, norm_sq / big ** 2
    return float(abs(cur) / np.sqrt(norm_sq))


def poly_table(j: JacobiCoefficients, x: Number, k_max: Optional[int] = None) -> np.ndarray:
    """
    Normalized polynomials P_0..P_{k_max} at x.

    Returns an array of shape x.shape + (k_max + 1,).
    """
    if k_max is None:
        k_max = j.dim
    _check_index(j, k_max, j.dim)
    x = np.asarray(x)
    table = np.empty(x.shape + (k_max + 1,), dtype=np.result_type(x, float))
    prev = np.zeros(x.shape, table.dtype)
    cur = np.ones(x.shape, table.dtype)
    table[..., 0] = cur
    for i in range(k_max):
        nxt = ((x - j.alphas[i]) * cur - _beta(j, i) * prev) / _beta(j, i + 1)
        prev, cur = cur, nxt
        table[..., i + 1] = cur
    return table


def eval_poly_p(j: JacobiCoefficients, k: int, x: Number) -> Number:
    """Normalized P_k(x); P_0 = 1."""
    _check_index(j, k, j.dim)
    value = poly_table(j, x, k)[..., k]
    return value if np.ndim(value) else value.item()


def log_beta_product(j: JacobiCoefficients, k: int) -> float:
    """log(beta_1 ... beta_k), with beta_dim = 1."""
    _check_index(j, k, j.dim)
    return float(np.sum(np.log(j.betas[:min(k, j.dim - 1)])))


def eval_poly_p_scaled(j: JacobiCoefficients, k: int, x: Number) -> Tuple[Number, float]:
    """P'_k(x) reported as the pair (P_k(x), log(beta_1 ... beta_k))."""
    return eval_poly_p(j, k, x), log_beta_product(j, k)


def eval_poly_p_monic(j: JacobiCoefficients, k: int, x: Number) -> Tuple[Number, Number]:
    """
    Monic P'_k(x) and its derivative, via the differentiated recursion.

    Unscaled, so only suitable for moderate dim.
    """
    _check_index(j, k, j.dim)
    x = np.asarray(x)
    dtype = np.result_type(x, float)
    p_prev, p = np.zeros(x.shape, dtype), np.ones(x.shape, dtype)
    d_prev, d = np.zeros(x.shape, dtype), np.zeros(x.shape, dtype)
    for i in range(k):
        b2 = _beta(j, i) ** 2
        p_next = (x - j.alphas[i]) * p - b2 * p_prev
        d_next = p + (x - j.alphas[i]) * d - b2 * d_prev
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    if np.ndim(p) == 0:
        return p.item(), d.item()
    return p, d


def eval_poly_q1(j: JacobiCoefficients, k: int, x: Number) -> Number:
    """First associated polynomial Q_k(x), 0 <= k <= dim - 1."""
    _check_index(j, k, j.dim - 1)
    x = np.asarray(x)
    dtype = np.result_type(x, float)
    q_prev, q = np.zeros(x.shape, dtype), np.ones(x.shape, dtype)
    for i in range(1, k + 1):
        b2 = _beta(j, i) ** 2 if i > 1 else 0.0
        q_prev, q = q, (x - j.alphas[i]) * q - b2 * q_prev
    return q if np.ndim(q) else q.item()


def stieltjes(j: JacobiCoefficients, z: complex) -> complex:
    """
    G(z) = 1 / (z - alpha_0 - beta_1^2 / (z - alpha_1 - ...)), evaluated bottom-up.

    Raises:
        PoleAtAtom: z sits on an atom (P_dim(z) vanishes to working precision)
    """
    z = complex(z)
    if _relative_residual(j, z) <= POLE_TOL * max(1.0, abs(z)):
        raise PoleAtAtom(f"z = {z} is a pole of the Stieltjes transform")

    t = z - j.alphas[-1]
    for i in range(j.dim - 2, -1, -1):
        if t == 0:
            raise PoleAtAtom(f"continued fraction breaks down at level {i + 1} for z = {z}")
        t = z - j.alphas[i] - j.betas[i] ** 2 / t
    if t == 0:
        raise PoleAtAtom(f"z = {z} is a pole of the Stieltjes transform")
    return 1.0 / t


def measure_from_jacobi(j: JacobiCoefficients) -> SpectralMeasure:
    """
    Atoms are the Jacobi eigenvalues; each weight is the squared first component
    of the matching unit eigenvector (Gauss quadrature constants).
    """
    if j.dim == 1:
        return SpectralMeasure(np.array([float(j.alphas[0])]), np.array([1.0]))
    atoms, vectors = eigh_tridiagonal(np.asarray(j.alphas, dtype=float),
                                      np.asarray(j.betas, dtype=float))
    return SpectralMeasure(atoms, vectors[0, :] ** 2)


def is_atom(j: JacobiCoefficients, x: float, tol: float = ATOM_TOL) -> bool:
    """True when P_dim(x) vanishes relative to the polynomial vector at x."""
    return _relative_residual(j, float(x)) <= tol * max(1.0, abs(float(x)))


def weight_by_residue(j: JacobiCoefficients, x: float) -> float:
    """
    A_l = lim (z - x_l) G(z) = Q_{dim-1}(x_l) / (d/dx P'_dim)(x_l).

    Q, P' and its derivative run through one recursion and share every rescaling,
    so the ratio survives chains whose monic values overflow.

    Raises:
        NotAnAtom: x is not a root of P_dim
    """
    x = float(x)
    if not is_atom(j, x):
        raise NotAnAtom(f"x = {x!r} is not an atom (relative residual {_relative_residual(j, x):.3e})")
    p_prev, p, d_prev, d = 0.0, 1.0, 0.0, 0.0
    q_prev, q = 0.0, 1.0
    for i in range(j.dim):
        shift = x - float(j.alphas[i])
        b2 = _beta(j, i) ** 2
        p_prev, p, d_prev, d = p, shift * p - b2 * p_prev, d, p + shift * d - b2 * d_prev
        if i >= 1:
            q_prev, q = q, shift * q - (b2 if i > 1 else 0.0) * q_prev
        big = max(abs(p_prev), abs(p), abs(d_prev), abs(d), abs(q_prev), abs(q))
        if big > RESCALE:
            p_prev, p, d_prev, d, q_prev, q = (v / big for v in (p_prev, p, d_prev, d, q_prev, q))
    return q / d


def moments(measure: SpectralMeasure, m_max: int) -> np.ndarray:
    return measure.moments(m_max)


def matrix_element(measure: SpectralMeasure, j: JacobiCoefficients, k: int, power: int) -> float:
    """<phi_k|A^power|phi_0> = sum_l A_l x_l^power P_k(x_l)."""
    if measure.size != j.dim:
        raise DimensionMismatch(f"measure has {measure.size} atoms, Jacobi dim is {j.dim}")
    _check_index(j, k, j.dim - 1)
    p_k = poly_table(j, measure.atoms, k)[:, k]
    return float(np.sum(measure.weights * measure.atoms ** power * p_k))
