"""randpoly: exact and Monte Carlo verification of random-polytope
neighborliness bounds, threshold curves and convex-position oracles."""

from .bounds import (BoundQuery, BoundValue, binary_entropy, cyclic_face_count,
                     depth_containment_lower_bound, evaluate_query,
                     face_nonface_bound, neighborly_failure_bound, wendel_bound,
                     wendel_limit_ratio)
from .convex_oracle import (BOUNDARY_OR_DEGENERATE, INSIDE, OUTSIDE, FaceQueryResult,
                            FaceWitness, PointCloud, contains_point, facets_bruteforce,
                            gale_transform, is_face, is_face_bruteforce,
                            is_k_neighborly, moment_curve_cloud, read_cloud_csv,
                            write_cloud_csv)
from .exact_linalg import RationalMatrix, RationalScalar, null_space_basis, row_reduce
from .experiments import (AdversarialReport, Estimate, ExperimentConfig,
                          adversarial_comparison, estimate_containment,
                          estimate_face_density, estimate_neighborliness,
                          run_experiment_suite, wilson_interval)
from .sampling import (DistributionSpec, SeededStream, depth_of_point,
                       gaussian_halfspace_mass, sample_cloud, sample_point)
from .thresholds import (ThresholdPoint, neighborliness_exponent, rho_D_prime,
                         rho_N_prime, rho_delta, threshold_curve)

__version__ = "0.1.0"
