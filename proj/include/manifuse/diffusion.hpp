#pragma once

#include "manifuse/types.hpp"

// Spectral machinery of the diffusion-maps pipeline: stationary
// distribution, diffusion distance, eigendecomposition, truncated
// embedding, spectral-gap dimension selection.

namespace manifuse::diffusion {

// Left fixed point of K, entries normalized to sum 1. Power iteration on
// K^T, max-norm convergence threshold 1e-13, at most 1e5 iterations;
// non-convergence raises numerical_failure_error carrying the residual.
StationaryDistribution stationary_distribution(const DiffusionOperator& k);

// K^t by binary exponentiation, t >= 1.
Matrix matrix_power(const DiffusionOperator& k, int t);

// d_t(i,j) = sqrt( sum_l ((K^t)_il - (K^t)_jl)^2 / phi0(l) )
DistanceMatrix diffusion_distance(const DiffusionOperator& k, int t,
                                  const StationaryDistribution& phi0);

// Top-P eigenpairs by modulus. Single-sensor operators go through the
// symmetric conjugation Q^{1/2} W Q^{1/2} (all-real spectrum); alternating
// and common operators use a general real eigensolver and may produce
// complex conjugate pairs. Right eigenvectors are scaled so that
// sum_i phi0(i) |psi_l(i)|^2 = 1 with psi_0 == 1, the normalization under
// which the truncated embedding reproduces the diffusion distance, and the
// first nonzero coordinate of each vector is made real positive.
Eigensystem spectral_decompose(const DiffusionOperator& k, Eigen::Index p);

// coordinates[i][l] = lambda_{l+1}^t psi_{l+1}(i); psi_0 is skipped. A
// complex conjugate pair inside the cutoff yields its real and imaginary
// parts as two columns and sets has_complex_components.
Embedding embed(const Eigensystem& es, int t, Eigen::Index dim,
                OperatorProvenance source = OperatorProvenance::single_sensor);

// Index of the bottom of the largest drop in the modulus sequence,
// searched over l in [1, min(P-2, l_max)]; ties toward smaller l.
Eigen::Index spectral_gap(const std::vector<Complex>& eigenvalues,
                          Eigen::Index l_max = 15);

// decompose + spectral-gap (or fixed dim) + embed in one step
Embedding diffusion_map(const DiffusionOperator& k, int t,
                        Eigen::Index fixed_dim = 0, Eigen::Index l_max = 15);

} // namespace manifuse::diffusion
