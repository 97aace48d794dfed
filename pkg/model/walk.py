"""
Continuous-time quantum walk amplitudes from a spectral measure.

q_k(t) = sum_l A_l exp(-i x_l t / s) P_k(x_l) gives the amplitude on the k-th
Lanczos vector; expanding psi(t) = sum_k q_k(t) phi_k gives vertex amplitudes.
gqd_certify decides whether the Lanczos vectors are (generalized) stratum
vectors and extracts their coefficients.
"""

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from model.errors import DimensionMismatch, IndexOutOfRange, MismatchedReference, OutOfRange
from model.graph import Graph, Stratification
from model.lanczos import JacobiCoefficients, OrthonormalBasis, unit_vector
from model.spectral import SpectralMeasure, poly_table

QD = "QD"
GQD = "GQD"
NON_GQD = "NON_GQD"

SUPPORT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class AmplitudeSeries:
    """
    Amplitudes on a time grid.

    Attributes:
        times: Ascending time grid
        krylov: krylov[t, k] = q_k(times[t])
        time_scale: Evolution is exp(-i A t / time_scale)
        vertex: vertex[t, alpha] = q_alpha(times[t]) once expanded
    """

    times: np.ndarray
    krylov: np.ndarray
    time_scale: float = 1.0
    vertex: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return self.krylov.shape[1]

    def norms(self) -> np.ndarray:
        """sum_k |q_k(t)|^2 at every time."""
        return np.sum(np.abs(self.krylov) ** 2, axis=1)

    def conservation_defect(self) -> float:
        defect = float(np.max(np.abs(self.norms() - 1.0)))
        if self.vertex is not None:
            vertex_norms = np.sum(np.abs(self.vertex) ** 2, axis=1)
            defect = max(defect, float(np.max(np.abs(vertex_norms - 1.0))))
        return defect


@dataclass(frozen=True)
class GqdCertificate:
    """
    Outcome of checking the generalized-stratification conditions.

    g holds, per stratum, the coefficients {vertex: g} scaled so the stratum
    minimum is 1. gammas[k] and etas[k] are the constants of the up/down and
    same-stratum sums (gammas[0] is unused and None).
    """

    status: str
    g: Optional[Tuple[Dict[int, float], ...]] = None
    gammas: Optional[Tuple[Optional[float], ...]] = None
    etas: Optional[Tuple[float, ...]] = None
    predicted_alphas: Optional[Tuple[float, ...]] = None
    predicted_betas: Optional[Tuple[float, ...]] = None
    integral: Optional[bool] = None
    violation: Optional[str] = None
    magnitude: float = 0.0

    def to_dict(self) -> Dict:
        doc = {"status": self.status}
        if self.g is not None:
            doc["g"] = [{str(v): c for v, c in stratum.items()} for stratum in self.g]
            doc["gammas"] = list(self.gammas)
            doc["etas"] = list(self.etas)
            doc["predicted_alphas"] = list(self.predicted_alphas)
            doc["predicted_betas"] = list(self.predicted_betas)
            doc["integral"] = self.integral
        if self.violation is not None:
            doc["violation"] = self.violation
            doc["magnitude"] = self.magnitude
        return doc


def krylov_amplitudes(m: SpectralMeasure,
                      j: JacobiCoefficients,
                      times: Sequence[float],
                      time_scale: float = 1.0) -> AmplitudeSeries:
    """
    q_k(t) for k = 0..dim-1 on a time grid.

    Raises:
        DimensionMismatch: measure atom count differs from the Jacobi dimension
    """
    if m.size != j.dim:
        raise DimensionMismatch(f"measure has {m.size} atoms, Jacobi dim is {j.dim}")
    if time_scale <= 0:
        raise OutOfRange(f"time_scale must be positive, got {time_scale}")

    times = np.asarray(times, dtype=float)
    # weighted[l, k] = A_l P_k(x_l)
    weighted = m.weights[:, None] * poly_table(j, m.atoms, j.dim - 1)
    phases = np.exp(-1j * np.outer(times, m.atoms) / time_scale)
    return AmplitudeSeries(times=times, krylov=phases @ weighted, time_scale=float(time_scale))


def average_probability(m: SpectralMeasure, j: JacobiCoefficients, k: int) -> float:
    """Long-time average of |q_k(t)|^2: sum_l A_l^2 P_k(x_l)^2."""
    if k < 0 or k >= j.dim:
        raise IndexOutOfRange(f"stratum index {k} not in [0, {j.dim - 1}]")
    if m.size != j.dim:
        raise DimensionMismatch(f"measure has {m.size} atoms, Jacobi dim is {j.dim}")
    p_k = poly_table(j, m.atoms, k)[:, k]
    return float(np.sum(m.weights ** 2 * p_k ** 2))


def vertex_amplitudes(basis: OrthonormalBasis, series: AmplitudeSeries) -> AmplitudeSeries:
    """Expand psi(t) = sum_k q_k(t) phi_k in the vertex basis."""
    if series.dim != basis.size:
        raise DimensionMismatch(f"series has {series.dim} Krylov amplitudes, basis has {basis.size} vectors")
    return replace(series, vertex=series.krylov @ basis.vectors)


def stratum_probabilities(series: AmplitudeSeries) -> np.ndarray:
    return np.abs(series.krylov) ** 2


def vertex_probabilities(series: AmplitudeSeries) -> np.ndarray:
    if series.vertex is None:
        raise DimensionMismatch("series carries no vertex amplitudes")
    return np.abs(series.vertex) ** 2


def time_average_probability(series: AmplitudeSeries) -> np.ndarray:
    """Trapezoidal time average of |q_k(t)|^2 over the grid, per k."""
    span = series.times[-1] - series.times[0]
    if span <= 0:
        raise OutOfRange("time average needs a grid of positive length")
    return trapezoid(stratum_probabilities(series), series.times, axis=0) / span


def complement_overlaps(supplements: Sequence[OrthonormalBasis], series: AmplitudeSeries) -> np.ndarray:
    """<psi_j|exp(-iAt)|phi_0> for every supplementary vector psi_j, shape (T, count)."""
    if series.vertex is None:
        raise DimensionMismatch("series carries no vertex amplitudes")
    if not supplements:
        return np.zeros((len(series.times), 0), dtype=complex)
    vectors = np.vstack([b.vectors for b in supplements])
    return series.vertex @ vectors.T


def _constant(values: List[float], tol: float) -> Tuple[float, float]:
    """Mean of values and their spread relative to max(1, |mean|)."""
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    return mean, float(arr.max() - arr.min()) / max(1.0, abs(mean))


def gqd_certify(g: Graph,
                s: Stratification,
                basis: OrthonormalBasis,
                j: JacobiCoefficients,
                tol: float = SUPPORT_TOL) -> GqdCertificate:
    """
    Classify the walk as QD, GQD or NON_GQD.

    The Lanczos vectors must be one per stratum, each supported on its own
    stratum with one sign. The coefficients g are then checked against the up
    (A1), same-stratum (A2) and down (A3) sum conditions, and the Jacobi
    coefficients they predict are compared with the Lanczos ones. Strata are
    checked in order, A1 then A2 then A3 within each, and a NON_GQD certificate
    names the first condition that fails.

    Raises:
        MismatchedReference: the basis was not grown from e_o
    """
    o = s.reference
    if basis.start.shape != (g.n,) or not np.allclose(basis.start, unit_vector(g.n, o), atol=1e-12):
        raise MismatchedReference(f"basis was not started from vertex {o}")

    if basis.size != s.depth:
        return GqdCertificate(NON_GQD, violation="dimension",
                              magnitude=float(basis.size - s.depth))

    coeffs: List[Dict[int, float]] = []
    for k, stratum in enumerate(s.strata):
        v = basis[k]
        threshold = tol * np.max(np.abs(v))
        support = set(np.flatnonzero(np.abs(v) > threshold).tolist())
        if support != set(stratum):
            stray = sorted(support - set(stratum))
            return GqdCertificate(NON_GQD, violation=f"support of phi_{k}",
                                  magnitude=float(np.max(np.abs(v[stray]))) if stray else 0.0)
        signs = np.sign(v[list(stratum)])
        if np.any(signs != signs[0]):
            return GqdCertificate(NON_GQD, violation=f"mixed signs in phi_{k}", magnitude=1.0)
        mags = np.abs(v[list(stratum)])
        coeffs.append({u: float(c) for u, c in zip(stratum, mags / mags.min())})

    adjacency = [set(nbrs) for nbrs in g.adjacency]

    def neighbour_sum(target: int, k: int) -> float:
        return sum(c for u, c in coeffs[k].items() if u in adjacency[target])

    norms_sq = [sum(c * c for c in stratum.values()) for stratum in coeffs]
    gammas: List[Optional[float]] = [None]
    etas: List[float] = []
    first: Optional[Tuple[str, float]] = None
    largest = 0.0

    def check(name: str, err: float) -> None:
        nonlocal first, largest
        largest = max(largest, err)
        if first is None and err > tol:
            first = (name, err)

    for k in range(s.depth):
        if k > 0:
            # A1: up-sums from stratum k-1 into stratum k
            gamma, spread = _constant([neighbour_sum(nu, k - 1) / coeffs[k][nu] for nu in s.strata[k]], tol)
            gammas.append(gamma)
            check(f"A1 at stratum {k}", spread)
        # A2: same-stratum sums
        eta, spread = _constant([neighbour_sum(nu, k) / coeffs[k][nu] for nu in s.strata[k]], tol)
        etas.append(eta)
        check(f"A2 at stratum {k}", spread)
        if k > 0:
            # A3: down-sums from stratum k into k-1 equal gamma_k * |g_k|^2 / |g_{k-1}|^2 * g_{k-1}
            ratio = norms_sq[k] / norms_sq[k - 1]
            for nu in s.strata[k - 1]:
                expected = gammas[k] * ratio * coeffs[k - 1][nu]
                check(f"A3 at stratum {k}", abs(neighbour_sum(nu, k) - expected) / max(1.0, abs(expected)))

    predicted_betas = [gammas[k] * np.sqrt(norms_sq[k] / norms_sq[k - 1]) for k in range(1, s.depth)]
    jacobi_err = max(
        float(np.max(np.abs(np.array(etas) - j.alphas))),
        float(np.max(np.abs(np.array(predicted_betas) - j.betas))) if predicted_betas else 0.0)
    check("Jacobi coefficients", jacobi_err / max(1.0, g.one_norm))

    all_g = np.array([c for stratum in coeffs for c in stratum.values()])
    cert = dict(g=tuple(coeffs),
                gammas=tuple(gammas),
                etas=tuple(etas),
                predicted_alphas=tuple(etas),
                predicted_betas=tuple(float(b) for b in predicted_betas),
                integral=bool(np.all(np.abs(all_g - np.round(all_g)) <= 1e-6)))
    if first is not None:
        return GqdCertificate(NON_GQD, violation=first[0], magnitude=first[1], **cert)

    status = QD if np.all(np.abs(all_g - 1.0) <= tol) else GQD
    return GqdCertificate(status, magnitude=largest, **cert)
