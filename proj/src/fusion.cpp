#include "manifuse/fusion.hpp"

#include <set>

#include "manifuse/basis.hpp"
#include "manifuse/diffusion.hpp"
#include "manifuse/rng.hpp"

namespace manifuse::fusion {

namespace {

std::string pair_tag(const PairKey& p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

Eigen::Index pair_embedding_dim(const Eigensystem& es, const FusionConfig& cfg) {
    if (cfg.pair_dim_policy == DimPolicy::fixed)
        return std::min(cfg.pair_fixed_dim, es.count() - 1);
    return diffusion::spectral_gap(es.eigenvalues, cfg.l_max);
}

Embedding final_embedding(const DiffusionOperator& op, const FusionConfig& cfg) {
    const Eigen::Index fixed =
        cfg.embed_dim_policy == DimPolicy::fixed ? cfg.embed_fixed_dim : 0;
    return diffusion::diffusion_map(op, cfg.t, fixed, cfg.l_max);
}

} // namespace

void FusionConfig::validate() const {
    if (t < 1) throw invalid_config_error("FusionConfig: t must be >= 1");
    if (eps_multiplier_sensor <= 0.0 || eps_multiplier_union <= 0.0)
        throw invalid_config_error("FusionConfig: epsilon multipliers must be > 0");
    if (pair_fixed_dim < 1 || embed_fixed_dim < 1 || l_max < 1)
        throw invalid_config_error("FusionConfig: embedding dimensions must be >= 1");
    if (rp_dim < 0) throw invalid_config_error("FusionConfig: rp_dim must be >= 0");
}

DistanceMatrix union_distance_sum(const PairDistances& pair_distances) {
    if (pair_distances.empty())
        throw invalid_input_error("union_distance_sum: no pair distances");

    std::set<int> sensors;
    for (const auto& [key, d] : pair_distances) {
        sensors.insert(key.first);
        sensors.insert(key.second);
    }
    const int m = static_cast<int>(sensors.size());
    const Eigen::Index n = pair_distances.begin()->second.n();
    for (int a : sensors)
        for (int b : sensors) {
            if (a == b) continue;
            const auto it = pair_distances.find({a, b});
            if (it == pair_distances.end())
                throw invalid_input_error("union_distance_sum: missing ordered pair " +
                                          pair_tag({a, b}) + " (M=" + std::to_string(m) + ")");
            if (it->second.n() != n)
                throw invalid_input_error("union_distance_sum: size mismatch for pair " +
                                          pair_tag({a, b}));
        }

    DistanceMatrix out{Matrix::Zero(n, n), DistanceKind::common};
    for (const auto& [key, d] : pair_distances) out.values += d.values;
    return out;
}

DiffusionOperator common_kernel(const DistanceMatrix& d_union, double epsilon_u,
                                bool squared) {
    if (epsilon_u <= 0.0)
        throw invalid_config_error("common_kernel: epsilon must be > 0");
    AffinityMatrix w;
    w.epsilon = epsilon_u;
    if (squared)
        w.values = (-d_union.values.array().square() / epsilon_u).exp();
    else
        w.values = (-d_union.values.array() / epsilon_u).exp();
    DiffusionOperator k = kernels::row_normalize(w);
    k.provenance = OperatorProvenance::common;
    return k;
}

std::vector<DiffusionOperator> sensor_operators(const MultimodalDataset& data,
                                                const FusionConfig& cfg) {
    validate(data);
    cfg.validate();
    std::vector<DiffusionOperator> ops;
    ops.reserve(data.sensors.size());
    for (std::size_t m = 0; m < data.sensors.size(); ++m) {
        try {
            ops.push_back(kernels::sensor_operator(data.sensors[m], cfg.metric,
                                                   cfg.eps_multiplier_sensor,
                                                   cfg.mahalanobis));
        } catch (const error& e) {
            throw invalid_input_error("sensor " + std::to_string(m) + " (" +
                                      data.sensors[m].sensor_id + "): " + e.what());
        }
    }
    return ops;
}

PairOperators ad_operators(const std::vector<DiffusionOperator>& ops) {
    const int m = static_cast<int>(ops.size());
    PairOperators out;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (a == b) continue;
            out.emplace(PairKey{a, b},
                        alternating::ad_operator(ops[static_cast<std::size_t>(a)],
                                                 ops[static_cast<std::size_t>(b)], a, b));
        }
    return out;
}

DistanceMatrix mahalanobis_union(const PairOperators& ops, const FusionConfig& cfg) {
    cfg.validate();
    if (ops.empty()) throw invalid_input_error("mahalanobis_union: no AD operators");
    const Eigen::Index n = ops.begin()->second.op.n();

    // concatenate the per-pair diffusion-map coordinates
    std::vector<Matrix> blocks;
    Eigen::Index total = 0;
    for (const auto& [key, ad] : ops) {
        try {
            const Eigen::Index p = std::min(n, cfg.l_max + 2);
            const Eigensystem es = diffusion::spectral_decompose(ad.op, p);
            const Eigen::Index dim = pair_embedding_dim(es, cfg);
            const Embedding e = diffusion::embed(es, cfg.t, dim, OperatorProvenance::alternating);
            blocks.push_back(e.coordinates);
            total += e.coordinates.cols();
        } catch (const error& e) {
            throw numerical_failure_error("mahalanobis_union: pair " + pair_tag(key) + ": " +
                                          e.what());
        }
    }
    Matrix concat(n, total);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        concat.middleCols(at, b.cols()) = b;
        at += b.cols();
    }

    if (cfg.rp_dim > 0 && cfg.rp_dim < total) {
        const Matrix basis = detail::orthonormal_gaussian_basis(
            total, cfg.rp_dim, cfg.seed, rng::kStreamProjection);
        concat = concat * basis;
    }

    SampleMatrix joint{std::move(concat), "pair-union"};
    const int k_nn = std::min<int>(cfg.mahalanobis.k_nn, static_cast<int>(n) - 1);
    const int rank = cfg.mahalanobis.rank > 0
                         ? std::min<int>(cfg.mahalanobis.rank, static_cast<int>(joint.dim()))
                         : std::min<int>(static_cast<int>(joint.dim()), k_nn - 1);
    const auto covs = kernels::local_covariances(joint, k_nn, cfg.mahalanobis.shrinkage, rank);
    DistanceMatrix d = kernels::mahalanobis_distance_matrix(joint, covs);
    d.kind = DistanceKind::common;
    return d;
}

Embedding common_graph(const MultimodalDataset& data, const FusionConfig& cfg) {
    const auto ops = sensor_operators(data, cfg);
    const PairOperators pairs = ad_operators(ops);

    DistanceMatrix d_union{Matrix(), DistanceKind::common};
    if (cfg.union_variant == UnionVariant::distance_sum) {
        PairDistances dists;
        for (const auto& [key, ad] : pairs) {
            try {
                dists.emplace(key, alternating::ad_distance(ad, cfg.t));
            } catch (const error& e) {
                throw numerical_failure_error("common_graph: pair " + pair_tag(key) + ": " +
                                              e.what());
            }
        }
        d_union = union_distance_sum(dists);
    } else {
        d_union = mahalanobis_union(pairs, cfg);
    }

    const double eps_u = kernels::median_scale(d_union, cfg.eps_multiplier_union);
    const DiffusionOperator k_union = common_kernel(d_union, eps_u, cfg.squared_union_kernel);
    return final_embedding(k_union, cfg);
}

Embedding concatenation_baseline(const MultimodalDataset& data, const FusionConfig& cfg) {
    validate(data);
    cfg.validate();
    Eigen::Index total = 0;
    for (const auto& s : data.sensors) total += s.dim();
    Matrix joint(data.n(), total);
    Eigen::Index at = 0;
    for (const auto& s : data.sensors) {
        joint.middleCols(at, s.dim()) = s.data;
        at += s.dim();
    }
    SampleMatrix x{std::move(joint), "concat"};
    const DiffusionOperator k =
        kernels::sensor_operator(x, cfg.metric, cfg.eps_multiplier_sensor, cfg.mahalanobis);
    return final_embedding(k, cfg);
}

Embedding multiplication_baseline(const MultimodalDataset& data, const FusionConfig& cfg) {
    const auto ops = sensor_operators(data, cfg);
    DiffusionOperator product;
    product.matrix = ops.front().matrix;
    for (std::size_t m = 1; m < ops.size(); ++m)
        product.matrix = product.matrix * ops[m].matrix;
    product.normalization = Vector::Ones(data.n());
    product.provenance = OperatorProvenance::alternating;
    return final_embedding(product, cfg);
}

Embedding single_sensor_dm(const SampleMatrix& x, const FusionConfig& cfg) {
    cfg.validate();
    const DiffusionOperator k =
        kernels::sensor_operator(x, cfg.metric, cfg.eps_multiplier_sensor, cfg.mahalanobis);
    return final_embedding(k, cfg);
}

} // namespace manifuse::fusion
