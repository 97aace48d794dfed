"""
End-to-end walk computation and oracle verification.

run_walk chains stratify -> lanczos_run -> measure_from_jacobi ->
krylov_amplitudes -> vertex_amplitudes (plus complete_basis when the Krylov
space is a proper subspace) and gqd_certify. verify compares the resulting vertex
amplitudes with dense exact evolution.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from model.graph import Graph, Stratification, gen_random, stratify
from model.lanczos import (BREAKDOWN_FACTOR, JacobiCoefficients, OrthonormalBasis,
                           complete_basis, lanczos_run, unit_vector)
from model.oracle import DENSE_CAP, dense_eig, exact_series
from model.spectral import SpectralMeasure, measure_from_jacobi
from model.walk import (SUPPORT_TOL, AmplitudeSeries, GqdCertificate, complement_overlaps,
                        gqd_certify, krylov_amplitudes, vertex_amplitudes)


@dataclass(frozen=True, eq=False)
class RunResult:
    graph: Graph
    stratification: Stratification
    jacobi: JacobiCoefficients
    basis: OrthonormalBasis
    supplements: List[OrthonormalBasis]
    measure: SpectralMeasure
    series: AmplitudeSeries
    certificate: GqdCertificate
    warnings: List[str]

    def metadata(self) -> Dict:
        return {
            "n": self.graph.n,
            "start": self.stratification.reference,
            "strata_sizes": self.stratification.sizes,
            "jacobi": self.jacobi.to_dict(),
            "measure": self.measure.to_dict(),
            "gqd": self.certificate.to_dict(),
            "supplementary_vectors": sum(b.size for b in self.supplements),
            "conservation_defect": self.series.conservation_defect(),
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class VerifyReport:
    n: int
    start: int
    krylov_dim: int
    supplementary_vectors: int
    max_deviation: float
    complement_overlap: float
    tol: float
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def to_dict(self) -> Dict:
        doc = {
            "n": self.n,
            "start": self.start,
            "krylov_dim": self.krylov_dim,
            "supplementary_vectors": self.supplementary_vectors,
            "max_deviation": self.max_deviation,
            "complement_overlap": self.complement_overlap,
            "tol": self.tol,
            "passed": self.passed,
        }
        if self.seed is not None:
            doc["seed"] = self.seed
        return doc


def run_walk(g: Graph,
             start: int,
             times: Sequence[float],
             time_scale: float = 1.0,
             breakdown_factor: float = BREAKDOWN_FACTOR,
             gqd_tol: float = SUPPORT_TOL) -> RunResult:
    """Full spectral pipeline from vertex `start`."""
    strat = stratify(g, start)
    warnings = list(strat.warnings)

    tol = breakdown_factor * max(1.0, g.one_norm)
    jacobi, basis = lanczos_run(g, unit_vector(g.n, start), breakdown_tol=tol)
    supplements = []
    if basis.size < strat.component_size:
        supplements = complete_basis(g, [basis], breakdown_tol=tol, component=strat.component)
        warnings.append("proper_krylov_space")

    measure = measure_from_jacobi(jacobi)
    series = vertex_amplitudes(basis, krylov_amplitudes(measure, jacobi, times, time_scale))
    certificate = gqd_certify(g, strat, basis, jacobi, tol=gqd_tol)

    return RunResult(graph=g, stratification=strat, jacobi=jacobi, basis=basis,
                     supplements=supplements, measure=measure, series=series,
                     certificate=certificate, warnings=warnings)


def verify(g: Graph,
           start: int,
           times: Sequence[float],
           tol: float = 1e-8,
           time_scale: float = 1.0,
           dense_cap: int = DENSE_CAP,
           seed: Optional[int] = None,
           breakdown_factor: float = BREAKDOWN_FACTOR,
           gqd_tol: float = SUPPORT_TOL) -> VerifyReport:
    """Max componentwise deviation between spectral vertex amplitudes and exact evolution."""
    result = run_walk(g, start, times, time_scale, breakdown_factor=breakdown_factor, gqd_tol=gqd_tol)
    exact = exact_series(g, start, times, time_scale, dense_eig(g, cap=dense_cap))
    deviation = float(np.max(np.abs(result.series.vertex - exact)))
    overlaps = complement_overlaps(result.supplements, result.series)
    return VerifyReport(n=g.n,
                        start=start,
                        krylov_dim=result.basis.size,
                        supplementary_vectors=sum(b.size for b in result.supplements),
                        max_deviation=deviation,
                        complement_overlap=float(np.max(np.abs(overlaps))) if overlaps.size else 0.0,
                        tol=tol,
                        seed=seed)


def verify_random(trials: int,
                  n_max: int,
                  seed: int,
                  times: Sequence[float],
                  tol: float = 1e-8,
                  p: float = 0.2,
                  max_tries: int = 1000,
                  progress: bool = False,
                  **options) -> List[VerifyReport]:
    """
    Verify `trials` seeded random connected graphs with 2..n_max vertices.

    Graph i uses seed + i; its size and start vertex come from the same stream.
    Remaining keyword options (time_scale, dense_cap, breakdown_factor, gqd_tol)
    go to verify unchanged.
    """
    reports = []
    for i in tqdm(range(trials), desc="[verify]", disable=not progress):
        rng = np.random.default_rng(seed + i)
        n = int(rng.integers(2, n_max + 1))
        g = gen_random(n, p, seed + i, max_tries)
        start = int(rng.integers(0, n))
        reports.append(verify(g, start, times, tol=tol, seed=seed + i, **options))
    return reports
