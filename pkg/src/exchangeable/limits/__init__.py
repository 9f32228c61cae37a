"""Graph limits: cut norm and distance, motif densities, weak regularity and experiment drivers."""
from .cutnorm import (CutNormResult, DeltaResult, as_step, cut_distance, cut_norm, cut_norm_exact,
                      cut_norm_heuristic, delta_cut_upper)
from .experiments import (CSV_FIELDS, ConcentrationReport, ConvergenceRow, concentration_check,
                          convergence_experiment, edge_density, loglog_slope, sorted_cut_distance,
                          subsample_indices, write_csv)
from .homomorphism import (C4, K2, K3, MOTIFS, P3, MotifGraph, degree_projection,
                           empirical_graphon, hom_density_graph, hom_density_graphon,
                           injective_density_graph, motif)
from .regularity import (QuotientGraph, RegularityResult, blowup, quotient_graph,
                         regularity_partition, weak_regularity_bound)

__all__ = [
    "CutNormResult", "DeltaResult", "as_step", "cut_distance", "cut_norm", "cut_norm_exact",
    "cut_norm_heuristic", "delta_cut_upper", "CSV_FIELDS", "ConcentrationReport", "ConvergenceRow",
    "concentration_check", "convergence_experiment", "edge_density", "loglog_slope",
    "sorted_cut_distance", "subsample_indices", "write_csv", "C4", "K2", "K3", "MOTIFS", "P3",
    "MotifGraph", "degree_projection", "empirical_graphon", "hom_density_graph",
    "hom_density_graphon", "injective_density_graph", "motif", "QuotientGraph", "RegularityResult", "blowup",
    "quotient_graph", "regularity_partition", "weak_regularity_bound",
]
