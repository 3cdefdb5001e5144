#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "manifuse/types.hpp"

// Quantitative scoring of embeddings: hidden-variable recovery by least
// squares, k-NN classification over repeated splits, and metric-axiom
// checking of distance matrices.

namespace manifuse::evaluation {

struct RecoveryScore {
    std::string variable_id;
    double r_squared = 0.0;
    Matrix coefficients;        // fitted map, one column per target
    bool rank_deficient = false;
};

// OLS of (cos angle, sin angle) on the embedding coordinates plus an
// intercept; r_squared = 1 - SSE/SST pooled over both targets. Circular
// targets keep the regression well-posed where the raw angle wraps.
RecoveryScore angle_recovery_r2(const Embedding& e, const Vector& angle,
                                std::string variable_id = {});

// Same regression against a raw scalar target (e.g. an instantaneous
// frequency, which is not an angle).
RecoveryScore value_recovery_r2(const Embedding& e, const Vector& values,
                                std::string variable_id = {});

struct ClassificationReport {
    std::vector<double> per_class_error;    // indexed by class id
    std::vector<double> class_prior;        // test-set priors
    double total_error = 0.0;               // prior-weighted mean
    double total_std = 0.0;                 // across repeats
    double train_fraction = 0.75;
    int repeats = 1;
    int k = 7;
};

// Majority vote among the k nearest training points; ties broken by the
// smaller mean distance, then the smaller class id.
std::vector<int> knn_predict(const Matrix& train, const std::vector<int>& train_labels,
                             const Matrix& test, int k);

// Repeated random split protocol: train on `train_fraction`, classify the
// rest, average errors over `repeats` seeded splits.
ClassificationReport knn_classify(const Embedding& e, const std::vector<int>& labels,
                                  int k, double train_fraction = 0.75, int repeats = 10,
                                  std::uint64_t seed = 0);

struct MetricReport {
    double worst_asymmetry = 0.0;
    double worst_diagonal = 0.0;
    double worst_negativity = 0.0;        // most negative entry magnitude
    double worst_triangle_violation = 0.0;  // max over triples of d(i,k)-d(i,j)-d(j,k)
    std::size_t triples_checked = 0;
    bool exhaustive = false;

    bool passes(double tol) const {
        return worst_asymmetry <= tol && worst_diagonal <= tol &&
               worst_negativity <= tol && worst_triangle_violation <= tol;
    }
};

// Symmetry, zero diagonal and nonnegativity over all entries; triangle
// inequality over all triples when N <= 60, otherwise over `sample_triples`
// seeded random triples.
MetricReport check_metric_properties(const DistanceMatrix& d, std::uint64_t seed = 0,
                                     std::size_t sample_triples = 100000);

// Equal-width bins of an angle in [0, 2pi); the toy classification labels.
std::vector<int> quantize_angle(const Vector& angle, int bins);

} // namespace manifuse::evaluation
