#pragma once

#include "manifuse/types.hpp"

// Pairwise metrics, Gaussian affinities and row-stochastic normalization.
// All functions are pure; pairwise loops are parallelized with disjoint
// writes so results do not depend on the thread count.

namespace manifuse::kernels {

DistanceMatrix euclidean_distance_matrix(const SampleMatrix& x);

// Neighborhood covariance of the k_nn Euclidean nearest neighbors of each
// row (self excluded), shrunk by +shrinkage*I and pseudo-inverted through
// its top `rank` eigencomponents. shrinkage < 0 selects the automatic
// policy 1e-3 * trace(C_i) / D per sample.
LocalCovarianceSet local_covariances(const SampleMatrix& x, int k_nn,
                                     double shrinkage, int rank);

// d(i,j) = sqrt( (x_i-x_j)^T (Ci^-1 + Cj^-1) (x_i-x_j) / 2 )
DistanceMatrix mahalanobis_distance_matrix(const SampleMatrix& x,
                                           const LocalCovarianceSet& c);

// epsilon = multiplier * median of off-diagonal squared distances.
double median_scale(const DistanceMatrix& d, double multiplier);

// W_ij = exp(-d_ij^2 / epsilon)
AffinityMatrix gaussian_affinity(const DistanceMatrix& d, double epsilon);

// K_ij = W_ij / sum_l W_il; the reciprocals of the row sums are retained.
DiffusionOperator row_normalize(const AffinityMatrix& w);

struct MahalanobisConfig {
    int k_nn = 16;
    double shrinkage = -1.0;   // < 0: automatic 1e-3 * trace / D
    int rank = -1;             // < 0: min(D, k_nn - 1)
};

// euclidean or mahalanobis distances per sensor configuration
enum class Metric { euclidean, mahalanobis };

DistanceMatrix sensor_distance_matrix(const SampleMatrix& x, Metric metric,
                                      const MahalanobisConfig& cfg = {});

// distance -> median-scaled Gaussian affinity -> row-stochastic operator
DiffusionOperator sensor_operator(const SampleMatrix& x, Metric metric,
                                  double eps_multiplier = 1.0,
                                  const MahalanobisConfig& cfg = {});

} // namespace manifuse::kernels
