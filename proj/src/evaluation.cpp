#include "manifuse/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "manifuse/rng.hpp"

namespace manifuse::evaluation {

namespace {

// least squares with intercept; returns pooled 1 - SSE/SST
RecoveryScore regress(const Matrix& coords, const Matrix& targets, std::string variable_id) {
    const Eigen::Index n = coords.rows();
    if (targets.rows() != n)
        throw invalid_input_error("recovery score: target length mismatch");

    Matrix design(n, coords.cols() + 1);
    design.leftCols(coords.cols()) = coords;
    design.col(coords.cols()).setOnes();

    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(design);
    RecoveryScore score;
    score.variable_id = std::move(variable_id);
    score.rank_deficient = cod.rank() < design.cols();
    score.coefficients = cod.solve(targets);

    const Matrix residual = targets - design * score.coefficients;
    const Matrix centered = targets.rowwise() - targets.colwise().mean();
    const double sse = residual.squaredNorm();
    const double sst = centered.squaredNorm();
    score.r_squared = sst > 0.0 ? 1.0 - sse / sst : 0.0;
    if (score.r_squared < 0.0 && score.r_squared > -1e-12) score.r_squared = 0.0;
    return score;
}

} // namespace

RecoveryScore angle_recovery_r2(const Embedding& e, const Vector& angle,
                                std::string variable_id) {
    Matrix targets(angle.size(), 2);
    targets.col(0) = angle.array().cos();
    targets.col(1) = angle.array().sin();
    return regress(e.coordinates, targets, std::move(variable_id));
}

RecoveryScore value_recovery_r2(const Embedding& e, const Vector& values,
                                std::string variable_id) {
    Matrix targets(values.size(), 1);
    targets.col(0) = values;
    return regress(e.coordinates, targets, std::move(variable_id));
}

std::vector<int> knn_predict(const Matrix& train, const std::vector<int>& train_labels,
                             const Matrix& test, int k) {
    if (k < 1) throw invalid_config_error("knn_predict: k must be >= 1");
    if (static_cast<std::size_t>(train.rows()) != train_labels.size())
        throw invalid_input_error("knn_predict: label count mismatch");
    if (train.rows() < 1) throw invalid_input_error("knn_predict: empty training set");
    const int kk = std::min<int>(k, static_cast<int>(train.rows()));
    const int num_classes = 1 + *std::max_element(train_labels.begin(), train_labels.end());

    std::vector<int> out(static_cast<std::size_t>(test.rows()));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(train.rows()));
    for (Eigen::Index q = 0; q < test.rows(); ++q) {
        const Vector d2 =
            (train.rowwise() - test.row(q)).rowwise().squaredNorm();
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::partial_sort(order.begin(), order.begin() + kk, order.end(),
                          [&](Eigen::Index a, Eigen::Index b) {
                              if (d2(a) != d2(b)) return d2(a) < d2(b);
                              return a < b;   // deterministic tie order
                          });

        std::vector<int> votes(static_cast<std::size_t>(num_classes), 0);
        std::vector<double> dist_sum(static_cast<std::size_t>(num_classes), 0.0);
        for (int r = 0; r < kk; ++r) {
            const int c = train_labels[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
            votes[static_cast<std::size_t>(c)]++;
            dist_sum[static_cast<std::size_t>(c)] += std::sqrt(d2(order[static_cast<std::size_t>(r)]));
        }
        int best = -1;
        for (int c = 0; c < num_classes; ++c) {
            if (votes[static_cast<std::size_t>(c)] == 0) continue;
            if (best < 0) {
                best = c;
                continue;
            }
            const auto uc = static_cast<std::size_t>(c);
            const auto ub = static_cast<std::size_t>(best);
            if (votes[uc] > votes[ub]) {
                best = c;
            } else if (votes[uc] == votes[ub]) {
                const double mean_c = dist_sum[uc] / votes[uc];
                const double mean_b = dist_sum[ub] / votes[ub];
                if (mean_c < mean_b) best = c;   // then smaller class id wins
            }
        }
        out[static_cast<std::size_t>(q)] = best;
    }
    return out;
}

ClassificationReport knn_classify(const Embedding& e, const std::vector<int>& labels,
                                  int k, double train_fraction, int repeats,
                                  std::uint64_t seed) {
    const Eigen::Index n = e.n();
    if (static_cast<std::size_t>(n) != labels.size())
        throw invalid_input_error("knn_classify: label count mismatch");
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw invalid_config_error("knn_classify: train fraction must be in (0,1)");
    if (repeats < 1) throw invalid_config_error("knn_classify: repeats must be >= 1");
    const int num_classes = 1 + *std::max_element(labels.begin(), labels.end());
    if (num_classes < 2) throw invalid_input_error("knn_classify: need >= 2 classes");

    ClassificationReport report;
    report.k = k;
    report.repeats = repeats;
    report.train_fraction = train_fraction;
    report.per_class_error.assign(static_cast<std::size_t>(num_classes), 0.0);
    report.class_prior.assign(static_cast<std::size_t>(num_classes), 0.0);

    const Eigen::Index n_train = std::max<Eigen::Index>(
        1, static_cast<Eigen::Index>(std::llround(train_fraction * static_cast<double>(n))));

    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::vector<double> totals;
    std::vector<std::vector<double>> class_err_acc(
        static_cast<std::size_t>(num_classes));
    std::vector<double> prior_acc(static_cast<std::size_t>(num_classes), 0.0);

    for (int rep = 0; rep < repeats; ++rep) {
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        // seeded Fisher-Yates; repeat index selects the draw stream
        for (Eigen::Index i = n - 1; i > 0; --i) {
            const std::size_t pick = rng::uniform_index(
                seed, rng::kStreamSplits + static_cast<std::uint64_t>(rep),
                static_cast<std::uint64_t>(i), static_cast<std::size_t>(i) + 1);
            std::swap(perm[static_cast<std::size_t>(i)], perm[pick]);
        }

        Matrix train(n_train, e.dim());
        Matrix test(n - n_train, e.dim());
        std::vector<int> train_labels(static_cast<std::size_t>(n_train));
        std::vector<int> test_labels(static_cast<std::size_t>(n - n_train));
        for (Eigen::Index i = 0; i < n_train; ++i) {
            train.row(i) = e.coordinates.row(perm[static_cast<std::size_t>(i)]);
            train_labels[static_cast<std::size_t>(i)] =
                labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        }
        for (Eigen::Index i = n_train; i < n; ++i) {
            test.row(i - n_train) = e.coordinates.row(perm[static_cast<std::size_t>(i)]);
            test_labels[static_cast<std::size_t>(i - n_train)] =
                labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        }
        for (int c = 0; c < num_classes; ++c)
            if (std::find(train_labels.begin(), train_labels.end(), c) == train_labels.end())
                throw invalid_input_error("knn_classify: class " + std::to_string(c) +
                                          " missing from a training split");

        const std::vector<int> pred = knn_predict(train, train_labels, test, k);

        std::vector<double> wrong(static_cast<std::size_t>(num_classes), 0.0);
        std::vector<double> count(static_cast<std::size_t>(num_classes), 0.0);
        for (std::size_t i = 0; i < pred.size(); ++i) {
            count[static_cast<std::size_t>(test_labels[i])] += 1.0;
            if (pred[i] != test_labels[i])
                wrong[static_cast<std::size_t>(test_labels[i])] += 1.0;
        }
        double total = 0.0;
        for (int c = 0; c < num_classes; ++c) {
            const auto uc = static_cast<std::size_t>(c);
            const double err = count[uc] > 0.0 ? wrong[uc] / count[uc] : 0.0;
            const double prior = count[uc] / static_cast<double>(pred.size());
            class_err_acc[uc].push_back(err);
            prior_acc[uc] += prior;
            total += prior * err;
        }
        totals.push_back(total);
    }

    for (int c = 0; c < num_classes; ++c) {
        const auto uc = static_cast<std::size_t>(c);
        report.per_class_error[uc] =
            std::accumulate(class_err_acc[uc].begin(), class_err_acc[uc].end(), 0.0) /
            static_cast<double>(repeats);
        report.class_prior[uc] = prior_acc[uc] / static_cast<double>(repeats);
    }
    report.total_error = std::accumulate(totals.begin(), totals.end(), 0.0) /
                         static_cast<double>(repeats);
    double var = 0.0;
    for (double t : totals) var += (t - report.total_error) * (t - report.total_error);
    report.total_std = repeats > 1 ? std::sqrt(var / static_cast<double>(repeats - 1)) : 0.0;
    return report;
}

MetricReport check_metric_properties(const DistanceMatrix& d, std::uint64_t seed,
                                     std::size_t sample_triples) {
    const Eigen::Index n = d.n();
    MetricReport report;
    for (Eigen::Index i = 0; i < n; ++i) {
        report.worst_diagonal = std::max(report.worst_diagonal, std::abs(d.values(i, i)));
        for (Eigen::Index j = 0; j < n; ++j) {
            if (d.values(i, j) < 0.0)
                report.worst_negativity = std::max(report.worst_negativity, -d.values(i, j));
            if (j > i)
                report.worst_asymmetry = std::max(
                    report.worst_asymmetry, std::abs(d.values(i, j) - d.values(j, i)));
        }
    }

    auto check_triple = [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
        const double v = d.values(i, k) - d.values(i, j) - d.values(j, k);
        if (v > report.worst_triangle_violation) report.worst_triangle_violation = v;
    };

    if (n <= 60) {
        report.exhaustive = true;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index k = 0; k < n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    check_triple(i, j, k);
                    ++report.triples_checked;
                }
    } else {
        for (std::size_t s = 0; s < sample_triples; ++s) {
            const auto i = static_cast<Eigen::Index>(
                rng::uniform_index(seed, rng::kStreamTriples, 3 * s, static_cast<std::size_t>(n)));
            const auto j = static_cast<Eigen::Index>(rng::uniform_index(
                seed, rng::kStreamTriples, 3 * s + 1, static_cast<std::size_t>(n)));
            const auto k = static_cast<Eigen::Index>(rng::uniform_index(
                seed, rng::kStreamTriples, 3 * s + 2, static_cast<std::size_t>(n)));
            if (i == j || j == k || i == k) continue;
            check_triple(i, j, k);
            ++report.triples_checked;
        }
    }
    return report;
}

std::vector<int> quantize_angle(const Vector& angle, int bins) {
    if (bins < 2) throw invalid_config_error("quantize_angle: need >= 2 bins");
    std::vector<int> labels(static_cast<std::size_t>(angle.size()));
    for (Eigen::Index i = 0; i < angle.size(); ++i) {
        double a = std::fmod(angle(i), 2.0 * M_PI);
        if (a < 0.0) a += 2.0 * M_PI;
        int b = static_cast<int>(a / (2.0 * M_PI) * bins);
        if (b >= bins) b = bins - 1;
        labels[static_cast<std::size_t>(i)] = b;
    }
    return labels;
}

} // namespace manifuse::evaluation
