#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "manifuse/errors.hpp"

namespace manifuse {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// =========================================================================
// Samples and distances
// =========================================================================

// N aligned observations of one sensor, one row per sample.
struct SampleMatrix {
    Matrix data;            // N x D
    std::string sensor_id;

    Eigen::Index n() const { return data.rows(); }
    Eigen::Index dim() const { return data.cols(); }
};

// Throws invalid_input_error unless N >= 2, D >= 1 and every entry is finite.
void validate(const SampleMatrix& x);

enum class DistanceKind { euclidean, mahalanobis, diffusion, ad, common };

std::string to_string(DistanceKind k);
DistanceKind distance_kind_from_string(const std::string& s);

// Symmetric, nonnegative, zero diagonal.
struct DistanceMatrix {
    Matrix values;          // N x N
    DistanceKind kind;

    Eigen::Index n() const { return values.rows(); }
};

struct AffinityMatrix {
    Matrix values;          // N x N, entries in (0,1], unit diagonal
    double epsilon;         // kernel scale in squared-distance units
};

enum class OperatorProvenance { single_sensor, alternating, common };

// Row-stochastic Markov operator K = QW together with the normalization
// diagonal Q (reciprocal row sums of the source affinity).
struct DiffusionOperator {
    Matrix matrix;              // N x N
    Vector normalization;       // length N, Q_ii = 1 / sum_l W_il
    OperatorProvenance provenance = OperatorProvenance::single_sensor;

    Eigen::Index n() const { return matrix.rows(); }
};

// Per-sample truncated inverse-covariance approximations.
struct LocalCovarianceSet {
    std::vector<Matrix> inverse_covariances;  // N matrices, D x D
    int k_nn = 0;
    double shrinkage = 0.0;
    int rank = 0;
};

// =========================================================================
// Spectral objects
// =========================================================================

struct Eigensystem {
    std::vector<Complex> eigenvalues;   // length P, descending modulus
    ComplexMatrix right_eigenvectors;   // N x P
    std::vector<bool> is_real;          // per component

    Eigen::Index n() const { return right_eigenvectors.rows(); }
    Eigen::Index count() const { return static_cast<Eigen::Index>(eigenvalues.size()); }
};

struct StationaryDistribution {
    Vector phi0;   // positive, sums to 1
};

struct Embedding {
    Matrix coordinates;                  // N x L
    std::vector<double> eigenvalues_used;  // length L (real parts; pairs repeat)
    int t = 1;
    OperatorProvenance source = OperatorProvenance::single_sensor;
    bool has_complex_components = false;

    Eigen::Index n() const { return coordinates.rows(); }
    Eigen::Index dim() const { return coordinates.cols(); }
};

// =========================================================================
// Multimodal data
// =========================================================================

// K x M binary matrix; row k marks the sensors observing hidden variable k.
struct SensitivityTable {
    Eigen::MatrixXi table;

    Eigen::Index num_variables() const { return table.rows(); }
    Eigen::Index num_sensors() const { return table.cols(); }
};

// Throws unless entries are 0/1 and every row sums to >= 2.
void validate(const SensitivityTable& s);

struct GroundTruth {
    Matrix angles;                         // N x (number of hidden angles), in [0, 2pi)
    std::vector<std::string> angle_names;  // e.g. theta1..theta3, n1..n3
    SensitivityTable sensitivity;
    std::optional<Vector> noise_phi;       // per-observation instantaneous frequency
};

struct MultimodalDataset {
    std::vector<SampleMatrix> sensors;   // identical N across sensors
    std::optional<GroundTruth> ground_truth;

    Eigen::Index num_sensors() const { return static_cast<Eigen::Index>(sensors.size()); }
    Eigen::Index n() const { return sensors.empty() ? 0 : sensors.front().n(); }
};

// Throws unless M >= 2 and all sensors share N.
void validate(const MultimodalDataset& d);

} // namespace manifuse
