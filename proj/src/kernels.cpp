#include "manifuse/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "manifuse/parallel.hpp"

namespace manifuse::kernels {

DistanceMatrix euclidean_distance_matrix(const SampleMatrix& x) {
    validate(x);
    const Eigen::Index n = x.n();
    DistanceMatrix out{Matrix::Zero(n, n), DistanceKind::euclidean};
    Matrix& d = out.values;
    par::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const auto row_i = x.data.row(static_cast<Eigen::Index>(i));
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(i); ++j)
            d(static_cast<Eigen::Index>(i), j) = (row_i - x.data.row(j)).norm();
    });
    // mirror the strict lower triangle; exact symmetry by construction
    d = d.selfadjointView<Eigen::Lower>();
    return out;
}

LocalCovarianceSet local_covariances(const SampleMatrix& x, int k_nn,
                                     double shrinkage, int rank) {
    validate(x);
    const Eigen::Index n = x.n();
    const Eigen::Index dim = x.dim();
    if (k_nn < 2 || k_nn >= n)
        throw invalid_config_error("local_covariances: need 2 <= k_nn < N, got k_nn=" +
                                   std::to_string(k_nn) + " with N=" + std::to_string(n));
    if (rank > dim)
        throw invalid_config_error("local_covariances: rank " + std::to_string(rank) +
                                   " exceeds feature dimension " + std::to_string(dim));
    if (rank < 1)
        throw invalid_config_error("local_covariances: rank must be >= 1");

    LocalCovarianceSet out;
    out.k_nn = k_nn;
    out.shrinkage = shrinkage;
    out.rank = rank;
    out.inverse_covariances.assign(static_cast<std::size_t>(n), Matrix());

    const DistanceMatrix dists = euclidean_distance_matrix(x);

    par::parallel_for(static_cast<std::size_t>(n), [&](std::size_t ui) {
        const Eigen::Index i = static_cast<Eigen::Index>(ui);

        // k_nn nearest rows, self excluded, ties broken by index
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        order.erase(order.begin() + i);
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return dists.values(i, a) < dists.values(i, b);
        });
        order.resize(static_cast<std::size_t>(k_nn));

        Matrix nbrs(k_nn, dim);
        for (int r = 0; r < k_nn; ++r) nbrs.row(r) = x.data.row(order[static_cast<std::size_t>(r)]);
        const Eigen::RowVectorXd mean = nbrs.colwise().mean();
        nbrs.rowwise() -= mean;
        Matrix cov = (nbrs.transpose() * nbrs) / static_cast<double>(k_nn);

        double lambda = shrinkage;
        if (lambda < 0.0) lambda = 1e-3 * cov.trace() / static_cast<double>(dim);
        cov.diagonal().array() += lambda;

        // truncated pseudo-inverse through the top `rank` eigencomponents
        Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
        if (es.info() != Eigen::Success)
            throw numerical_failure_error("local_covariances: eigensolver failed at sample " +
                                          std::to_string(i));
        const Vector& evals = es.eigenvalues();   // ascending
        const Matrix& evecs = es.eigenvectors();
        const double floor = std::max(evals(dim - 1), 0.0) * 1e-12;

        Matrix inv = Matrix::Zero(dim, dim);
        for (Eigen::Index c = dim - 1; c >= dim - rank; --c) {
            if (evals(c) <= floor) break;
            inv.noalias() += evecs.col(c) * evecs.col(c).transpose() / evals(c);
        }
        out.inverse_covariances[ui] = std::move(inv);
    });
    return out;
}

DistanceMatrix mahalanobis_distance_matrix(const SampleMatrix& x,
                                           const LocalCovarianceSet& c) {
    validate(x);
    const Eigen::Index n = x.n();
    const Eigen::Index dim = x.dim();
    if (static_cast<Eigen::Index>(c.inverse_covariances.size()) != n)
        throw invalid_input_error("mahalanobis_distance_matrix: covariance set has " +
                                  std::to_string(c.inverse_covariances.size()) +
                                  " entries for N=" + std::to_string(n));
    for (const auto& m : c.inverse_covariances)
        if (m.rows() != dim || m.cols() != dim)
            throw invalid_input_error("mahalanobis_distance_matrix: covariance dimension mismatch");

    DistanceMatrix out{Matrix::Zero(n, n), DistanceKind::mahalanobis};
    Matrix& d = out.values;
    par::parallel_for(static_cast<std::size_t>(n), [&](std::size_t ui) {
        const Eigen::Index i = static_cast<Eigen::Index>(ui);
        const auto& inv_i = c.inverse_covariances[ui];
        for (Eigen::Index j = 0; j < i; ++j) {
            const Vector diff = (x.data.row(i) - x.data.row(j)).transpose();
            const double q = 0.5 * (diff.dot(inv_i * diff) +
                                    diff.dot(c.inverse_covariances[static_cast<std::size_t>(j)] * diff));
            d(i, j) = std::sqrt(std::max(q, 0.0));
        }
    });
    d = d.selfadjointView<Eigen::Lower>();
    return out;
}

double median_scale(const DistanceMatrix& d, double multiplier) {
    if (multiplier <= 0.0)
        throw invalid_config_error("median_scale: multiplier must be > 0");
    const Eigen::Index n = d.n();
    if (n < 2)
        throw invalid_input_error("median_scale: need at least one off-diagonal entry");

    std::vector<double> sq;
    sq.reserve(static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            sq.push_back(d.values(i, j) * d.values(i, j));

    std::sort(sq.begin(), sq.end());
    const std::size_t mid = sq.size() / 2;
    const double median =
        (sq.size() % 2 == 1) ? sq[mid] : 0.5 * (sq[mid - 1] + sq[mid]);
    if (median <= 0.0)
        throw degenerate_scale_error("median_scale: all off-diagonal distances are zero");
    return multiplier * median;
}

AffinityMatrix gaussian_affinity(const DistanceMatrix& d, double epsilon) {
    if (epsilon <= 0.0)
        throw invalid_config_error("gaussian_affinity: epsilon must be > 0, got " +
                                   std::to_string(epsilon));
    AffinityMatrix out;
    out.epsilon = epsilon;
    out.values = (-d.values.array().square() / epsilon).exp();
    return out;
}

DiffusionOperator row_normalize(const AffinityMatrix& w) {
    const Vector row_sums = w.values.rowwise().sum();
    if ((row_sums.array() <= 0.0).any())
        throw numerical_failure_error("row_normalize: nonpositive row sum");
    DiffusionOperator k;
    k.normalization = row_sums.cwiseInverse();
    k.matrix = k.normalization.asDiagonal() * w.values;
    k.provenance = OperatorProvenance::single_sensor;
    return k;
}

DistanceMatrix sensor_distance_matrix(const SampleMatrix& x, Metric metric,
                                      const MahalanobisConfig& cfg) {
    if (metric == Metric::euclidean) return euclidean_distance_matrix(x);
    const int k_nn = std::min<int>(cfg.k_nn, static_cast<int>(x.n()) - 1);
    const int rank = cfg.rank > 0 ? std::min<int>(cfg.rank, static_cast<int>(x.dim()))
                                  : std::min<int>(static_cast<int>(x.dim()), k_nn - 1);
    const auto covs = local_covariances(x, k_nn, cfg.shrinkage, rank);
    return mahalanobis_distance_matrix(x, covs);
}

DiffusionOperator sensor_operator(const SampleMatrix& x, Metric metric,
                                  double eps_multiplier, const MahalanobisConfig& cfg) {
    const DistanceMatrix d = sensor_distance_matrix(x, metric, cfg);
    const double eps = median_scale(d, eps_multiplier);
    return row_normalize(gaussian_affinity(d, eps));
}

} // namespace manifuse::kernels
