#include "manifuse/alternating.hpp"

#include "manifuse/diffusion.hpp"

namespace manifuse::alternating {

ADOperator ad_operator(const DiffusionOperator& k_m, const DiffusionOperator& k_n,
                       int m, int n) {
    if (k_m.n() != k_n.n())
        throw invalid_input_error("ad_operator: size mismatch (" + std::to_string(k_m.n()) +
                                  " vs " + std::to_string(k_n.n()) + ")");
    ADOperator out;
    out.op.matrix = k_m.matrix * k_n.matrix;
    // product of row-stochastic matrices; no affinity normalization of its own
    out.op.normalization = Vector::Ones(k_m.n());
    out.op.provenance = OperatorProvenance::alternating;
    out.pair = {m, n};
    out.left = std::make_shared<DiffusionOperator>(k_m);
    out.right = std::make_shared<DiffusionOperator>(k_n);
    return out;
}

DistanceMatrix ad_distance(const ADOperator& a, int t) {
    const StationaryDistribution phi0 = diffusion::stationary_distribution(a.op);
    DistanceMatrix d = diffusion::diffusion_distance(a.op, t, phi0);
    d.kind = DistanceKind::ad;
    return d;
}

} // namespace manifuse::alternating
