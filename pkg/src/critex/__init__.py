"""critex: critical exponents of tree lattices from edge-indexed quotient graphs."""
from ._kernels import BACKEND, GuardExceeded
from .graph import (EdgeIndexedGraph, GraphError, GraphFormatError, MergePoint,
                    MissingVertexError, cover_degree, from_edge_list, is_regular_cover,
                    merge, parse_graph, serialize_graph)
from .grouping import NoGrouping, VertexOrdering, find_vertex_ordering, verify_ordering
from .growth import (ExactExponent, GrowthError, PartitionSpec, RayQuotient,
                     TransferOperator, TruncationError, bouquet, build_ray_quotient,
                     complete_graph, cumulative_orbit_counts, cycle_graph, estimate_delta,
                     exact_delta_of_partition, predicted_orbit_count, return_counts,
                     spectral_delta, sphere_counts, target_partition, trace_counts,
                     transfer_operator)
from .polynomial import IntPolynomial, RootInterval
from .series import (NoRoot, SeriesError, TruncatedSeries, genfun_from_counts,
                     merge_genfun, partition_series, solve_unit_product)
from .zeta import (DegenerateSpectrumError, ZetaError, ZetaReport, adjacency_matrices,
                   brute_force_cycle_counts, cycle_counts, dumbbell, enumerate_primes,
                   ihara_zeta, pgt_check)

__version__ = "0.1.0"
