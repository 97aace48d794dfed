"""
Reference computations independent of the Lanczos/spectral pipeline.

Dense eigendecomposition and exact evolution of exp(-iAt), special functions,
and the closed-form large-graph limits (kite and path) with their limiting
densities. Used by the tests and by the `verify` subcommand.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, special

from model.errors import IndexOutOfRange, OutOfRange, TooLarge
from model.graph import Graph
from model.spectral import SpectralMeasure

DENSE_CAP = 4096
BESSEL_MAX_ORDER = 64
BESSEL_MAX_ARG = 1e3
CHEBYSHEV_MAX_ORDER = 10_000


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def dense_eig(g: Graph, cap: int = DENSE_CAP) -> EigenDecomposition:
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceed the dense oracle cap of {cap}")
    values, vectors = np.linalg.eigh(g.to_dense())
    return EigenDecomposition(values, vectors)


def exact_series(g: Graph, o: int, times: Sequence[float], time_scale: float = 1.0,
                 decomposition: Optional[EigenDecomposition] = None) -> np.ndarray:
    """exp(-iAt/s)|e_o> for every t, shape (len(times), n)."""
    if o < 0 or o >= g.n:
        raise IndexOutOfRange(f"vertex {o} not in [0, {g.n})")
    eig = decomposition or dense_eig(g)
    times = np.asarray(times, dtype=float)
    overlap = eig.eigenvectors[o, :]
    phases = np.exp(-1j * np.outer(times, eig.eigenvalues) / time_scale)
    return (phases * overlap) @ eig.eigenvectors.T


def exact_evolution(g: Graph, o: int, t: float,
                    decomposition: Optional[EigenDecomposition] = None) -> np.ndarray:
    """sum_j exp(-i lambda_j t) u_j <u_j|e_o>."""
    return exact_series(g, o, [t], decomposition=decomposition)[0]


def oracle_measure(g: Graph, o: int, merge_tol: float = 1e-8, min_weight: float = 1e-12,
                   decomposition: Optional[EigenDecomposition] = None) -> SpectralMeasure:
    """
    Spectral measure of e_o from the dense eigendecomposition.

    Eigenvalues closer than merge_tol are merged and their weights
    |<u_j|e_o>|^2 summed; atoms carrying less than min_weight are dropped.
    """
    eig = decomposition or dense_eig(g)
    weights = eig.eigenvectors[o, :] ** 2
    atoms, masses = [], []
    for value, weight in zip(eig.eigenvalues, weights):
        if atoms and value - atoms[-1][-1] <= merge_tol:
            atoms[-1].append(value)
            masses[-1] += weight
        else:
            atoms.append([value])
            masses.append(weight)
    keep = [i for i, w in enumerate(masses) if w > min_weight]
    return SpectralMeasure(np.array([np.mean(atoms[i]) for i in keep]),
                           np.array([masses[i] for i in keep]))


def bessel_j(l: int, x):
    """Bessel function of the first kind J_l(x) for integer 0 <= l <= 64, |x| <= 1e3."""
    if int(l) != l or l < 0 or l > BESSEL_MAX_ORDER:
        raise OutOfRange(f"Bessel order must be an integer in [0, {BESSEL_MAX_ORDER}], got {l}")
    if np.max(np.abs(x)) > BESSEL_MAX_ARG:
        raise OutOfRange(f"Bessel argument must satisfy |x| <= {BESSEL_MAX_ARG:g}")
    value = special.jv(int(l), x)
    return float(value) if np.ndim(value) == 0 else value


def chebyshev_u(l: int, x):
    """Chebyshev polynomial of the second kind U_l(x)."""
    if int(l) != l or l < 0 or l > CHEBYSHEV_MAX_ORDER:
        raise OutOfRange(f"Chebyshev order must be an integer in [0, {CHEBYSHEV_MAX_ORDER}], got {l}")
    value = special.eval_chebyu(int(l), x)
    return float(value) if np.ndim(value) == 0 else value


def kite_limit_amplitude(l: int, t: float) -> complex:
    """
    Large-k kite amplitude on stratum l under exp(-iAt/sqrt(k)):
    (l + 1) (-i)^l J_{l+1}(2t) / t, and delta_{l0} at t = 0.

    The (-i)^l phase matches the exp(-iAt) convention; the modulus agrees with
    the i^l form, which is its complex conjugate.
    """
    if t == 0:
        return complex(1.0 if l == 0 else 0.0)
    return complex((l + 1) * (-1j) ** l * special.jv(l + 1, 2 * t) / t)


def path_limit_q0(t: float) -> complex:
    """Long-path amplitude at the start vertex: 4 J_1(2t)/t - 6 J_2(2t)/t^2, 1 at t = 0."""
    if t == 0:
        return complex(1.0)
    return complex(4 * special.jv(1, 2 * t) / t - 6 * special.jv(2, 2 * t) / t ** 2)


def path_limit_density(x: float) -> float:
    """(1/2pi) x^2 sqrt(4 - x^2) on [-2, 2], 0 outside."""
    if abs(x) >= 2:
        return 0.0
    return x * x * np.sqrt(4 - x * x) / (2 * np.pi)


def kite_limit_density(k: int, x: float) -> float:
    """(k/2pi) sqrt(4(k+1) - x^2) / (k^2 + x^2) on |x| <= 2 sqrt(k+1), 0 outside."""
    if k < 2:
        raise OutOfRange(f"kite dimension must be >= 2, got {k}")
    edge_sq = 4 * (k + 1)
    if x * x >= edge_sq:
        return 0.0
    return k * np.sqrt(edge_sq - x * x) / (2 * np.pi * (k * k + x * x))


def density_fourier(smooth: Callable[[float], float], half_width: float, t: float) -> complex:
    """
    int exp(-ixt) mu(x) dx for mu(x) = smooth(x) sqrt(a^2 - x^2) on [-a, a].

    The square-root edge is handled by the algebraic quadrature weight.
    """
    opts = dict(weight="alg", wvar=(0.5, 0.5), epsabs=1e-13, epsrel=1e-12, limit=400)
    re, _ = integrate.quad(lambda x: smooth(x) * np.cos(x * t), -half_width, half_width, **opts)
    im, _ = integrate.quad(lambda x: -smooth(x) * np.sin(x * t), -half_width, half_width, **opts)
    return complex(re, im)


def path_limit_fourier(t: float) -> complex:
    """Fourier transform of the long-path density; t = 0 gives its total mass."""
    return density_fourier(lambda x: x * x / (2 * np.pi), 2.0, t)


def kite_limit_fourier(k: int, t: float) -> complex:
    """Fourier transform of the kite density; t = 0 gives its total mass."""
    if k < 2:
        raise OutOfRange(f"kite dimension must be >= 2, got {k}")
    return density_fourier(lambda x: k / (2 * np.pi * (k * k + x * x)), 2 * np.sqrt(k + 1), t)
