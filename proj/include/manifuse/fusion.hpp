#pragma once

#include <map>

#include "manifuse/alternating.hpp"
#include "manifuse/kernels.hpp"
#include "manifuse/types.hpp"

// Multimodal fusion schemes. The common-graph scheme sums the alternating
// diffusion distances over all ordered sensor pairs and re-kernelizes the
// sum into a single operator; the Mahalanobis union concatenates the
// per-pair embeddings and measures a locally whitened distance instead.
// The concatenation and multiplication schemes are the reference baselines.

namespace manifuse::fusion {

using PairKey = std::pair<int, int>;
using PairDistances = std::map<PairKey, DistanceMatrix>;
using PairOperators = std::map<PairKey, alternating::ADOperator>;

enum class UnionVariant { distance_sum, mahalanobis_union };
enum class DimPolicy { spectral_gap, fixed };

struct FusionConfig {
    int t = 1;
    double eps_multiplier_sensor = 1.0;
    double eps_multiplier_union = 1.0;
    kernels::Metric metric = kernels::Metric::euclidean;
    kernels::MahalanobisConfig mahalanobis;   // sensor metric + union stage

    UnionVariant union_variant = UnionVariant::distance_sum;
    bool squared_union_kernel = true;   // exp(-d^2/eps); switchable to exp(-d/eps)

    DimPolicy pair_dim_policy = DimPolicy::spectral_gap;   // per-pair truncation
    Eigen::Index pair_fixed_dim = 3;
    DimPolicy embed_dim_policy = DimPolicy::spectral_gap;  // final embedding
    Eigen::Index embed_fixed_dim = 10;
    Eigen::Index l_max = 15;

    Eigen::Index rp_dim = 0;            // >0: pre-reduce concatenated pair embeddings
    std::uint64_t seed = 0;

    void validate() const;
};

// Element-wise sum over all M(M-1) ordered pair distances.
DistanceMatrix union_distance_sum(const PairDistances& pair_distances);

// Gaussian kernel on the union distance, row-normalized. `squared`
// selects exp(-d^2/eps) (default) versus exp(-d/eps).
DiffusionOperator common_kernel(const DistanceMatrix& d_union, double epsilon_u,
                                bool squared = true);

// Per-sensor operators in sensor order, shared by all schemes.
std::vector<DiffusionOperator> sensor_operators(const MultimodalDataset& data,
                                                const FusionConfig& cfg);

// All M(M-1) ordered alternating-diffusion operators.
PairOperators ad_operators(const std::vector<DiffusionOperator>& ops);

// Concatenated per-pair diffusion-map coordinates, optionally projected
// to `rp_dim` dimensions, measured with the local Mahalanobis distance.
DistanceMatrix mahalanobis_union(const PairOperators& ops, const FusionConfig& cfg);

// Full pipeline: sensor kernels -> ordered AD operators -> pair distances
// -> union (per cfg variant) -> common kernel -> spectral embedding.
Embedding common_graph(const MultimodalDataset& data, const FusionConfig& cfg);

// Standard diffusion maps on the per-sample concatenation of all sensors.
Embedding concatenation_baseline(const MultimodalDataset& data, const FusionConfig& cfg);

// Standard diffusion maps on the ordered product K^(1) K^(2) ... K^(M).
Embedding multiplication_baseline(const MultimodalDataset& data, const FusionConfig& cfg);

// Single-sensor diffusion map under the same configuration.
Embedding single_sensor_dm(const SampleMatrix& x, const FusionConfig& cfg);

} // namespace manifuse::fusion
