#include "manifuse/diffusion.hpp"

#include <algorithm>
#include <numeric>

#include "manifuse/parallel.hpp"

namespace manifuse::diffusion {

namespace {

constexpr double kPowerIterTol = 1e-13;
constexpr int kPowerIterMax = 100000;
constexpr double kRealnessTol = 1e-8;     // |Im(lambda)| <= tol * |lambda|

template <class Scalar>
Scalar ipow(Scalar base, int exp) {
    Scalar result{1};
    while (exp > 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

// Rotate so the first nonzero coordinate is real positive.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    const double vmax = v.cwiseAbs().maxCoeff();
    if (vmax <= 0.0) return;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > 1e-12 * vmax) {
            v *= std::conj(v(i)) / mag;
            return;
        }
    }
}

// sum_i phi0(i) |psi(i)|^2 == 1
void phi_normalize(Eigen::Ref<Eigen::VectorXcd> v, const Vector& phi0) {
    const double s = (phi0.array() * v.cwiseAbs2().array()).sum();
    if (s > 0.0) v /= std::sqrt(s);
}

struct SpectralOrder {
    std::vector<Eigen::Index> index;
};

// Descending modulus; conjugate pairs stay adjacent with +Im first.
SpectralOrder sort_order(const Eigen::VectorXcd& vals) {
    SpectralOrder ord;
    ord.index.resize(static_cast<std::size_t>(vals.size()));
    std::iota(ord.index.begin(), ord.index.end(), Eigen::Index{0});
    std::stable_sort(ord.index.begin(), ord.index.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                         const double ma = std::abs(vals(a));
                         const double mb = std::abs(vals(b));
                         if (ma != mb) return ma > mb;
                         if (vals(a).real() != vals(b).real())
                             return vals(a).real() > vals(b).real();
                         return vals(a).imag() > vals(b).imag();
                     });
    return ord;
}

} // namespace

StationaryDistribution stationary_distribution(const DiffusionOperator& k) {
    const Eigen::Index n = k.n();
    if (n < 1) throw invalid_input_error("stationary_distribution: empty operator");

    const Matrix kt = k.matrix.transpose();
    Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
    Vector next(n);
    for (int iter = 0; iter < kPowerIterMax; ++iter) {
        next.noalias() = kt * x;
        const double total = next.sum();
        if (!(total > 0.0))
            throw numerical_failure_error("stationary_distribution: iterate collapsed");
        next /= total;
        const double diff = (next - x).cwiseAbs().maxCoeff();
        x.swap(next);
        if (diff <= kPowerIterTol) return StationaryDistribution{x};
    }
    const double residual = (kt * x - x).cwiseAbs().maxCoeff();
    throw numerical_failure_error(
        "stationary_distribution: no convergence after " + std::to_string(kPowerIterMax) +
            " iterations (residual " + std::to_string(residual) + ")",
        residual);
}

Matrix matrix_power(const DiffusionOperator& k, int t) {
    if (t < 1) throw invalid_config_error("matrix_power: t must be >= 1");
    Matrix result;
    Matrix base = k.matrix;
    bool have_result = false;
    int e = t;
    while (e > 0) {
        if (e & 1) {
            if (!have_result) {
                result = base;
                have_result = true;
            } else {
                result = result * base;
            }
        }
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

DistanceMatrix diffusion_distance(const DiffusionOperator& k, int t,
                                  const StationaryDistribution& phi0) {
    const Eigen::Index n = k.n();
    if (phi0.phi0.size() != n)
        throw invalid_input_error("diffusion_distance: phi0 size mismatch");
    if ((phi0.phi0.array() <= 1e-300).any())
        throw degenerate_distribution_error(
            "diffusion_distance: stationary distribution entry underflowed");

    // column-weighted rows of K^t: G = K^t diag(1/sqrt(phi0))
    const Matrix kt = matrix_power(k, t);
    const Vector inv_sqrt = phi0.phi0.array().rsqrt();
    const Matrix g = kt * inv_sqrt.asDiagonal();

    DistanceMatrix out{Matrix::Zero(n, n), DistanceKind::diffusion};
    Matrix& d = out.values;
    par::parallel_for(static_cast<std::size_t>(n), [&](std::size_t ui) {
        const Eigen::Index i = static_cast<Eigen::Index>(ui);
        for (Eigen::Index j = 0; j < i; ++j)
            d(i, j) = (g.row(i) - g.row(j)).norm();
    });
    d = d.selfadjointView<Eigen::Lower>();
    return out;
}

Eigensystem spectral_decompose(const DiffusionOperator& k, Eigen::Index p) {
    const Eigen::Index n = k.n();
    if (p < 1 || p > n)
        throw invalid_config_error("spectral_decompose: need 1 <= P <= N");

    const StationaryDistribution pi = stationary_distribution(k);

    Eigen::VectorXcd vals;
    ComplexMatrix vecs;

    if (k.provenance == OperatorProvenance::single_sensor) {
        // K = Q W with symmetric W, so Q^{-1/2} K Q^{1/2} = Q^{1/2} W Q^{1/2}
        // is symmetric; eigenvectors map back through Q^{1/2}.
        const Vector q_sqrt = k.normalization.cwiseSqrt();
        Matrix b = q_sqrt.cwiseInverse().asDiagonal() * k.matrix * q_sqrt.asDiagonal();
        b = 0.5 * (b + b.transpose().eval());
        Eigen::SelfAdjointEigenSolver<Matrix> es(b);
        if (es.info() != Eigen::Success)
            throw numerical_failure_error("spectral_decompose: symmetric eigensolver failed");
        vals = es.eigenvalues().cast<Complex>();
        vecs = (q_sqrt.asDiagonal() * es.eigenvectors()).cast<Complex>();
    } else {
        Eigen::EigenSolver<Matrix> es(k.matrix);
        if (es.info() != Eigen::Success)
            throw numerical_failure_error("spectral_decompose: general eigensolver failed");
        vals = es.eigenvalues();
        vecs = es.eigenvectors();
    }

    const SpectralOrder ord = sort_order(vals);

    Eigensystem out;
    out.eigenvalues.reserve(static_cast<std::size_t>(p));
    out.right_eigenvectors.resize(n, p);
    out.is_real.reserve(static_cast<std::size_t>(p));
    for (Eigen::Index l = 0; l < p; ++l) {
        const Eigen::Index src = ord.index[static_cast<std::size_t>(l)];
        Complex lambda = vals(src);
        Eigen::VectorXcd v = vecs.col(src);
        const bool realish = std::abs(lambda.imag()) <= kRealnessTol * std::abs(lambda);
        if (realish) {
            lambda = Complex(lambda.real(), 0.0);
            fix_phase(v);
            v = v.real().cast<Complex>();
        } else {
            fix_phase(v);
        }
        phi_normalize(v, pi.phi0);
        out.eigenvalues.push_back(lambda);
        out.right_eigenvectors.col(l) = v;
        out.is_real.push_back(realish);
    }
    return out;
}

Embedding embed(const Eigensystem& es, int t, Eigen::Index dim,
                OperatorProvenance source) {
    const Eigen::Index p = es.count();
    if (t < 1) throw invalid_config_error("embed: t must be >= 1");
    if (dim < 1 || dim > p - 1)
        throw invalid_config_error("embed: need 1 <= L <= P-1 (P=" + std::to_string(p) +
                                   ", L=" + std::to_string(dim) + ")");

    Embedding e;
    e.t = t;
    e.source = source;
    e.coordinates.resize(es.n(), dim);
    e.eigenvalues_used.reserve(static_cast<std::size_t>(dim));

    Eigen::Index col = 0;
    Eigen::Index l = 1;   // psi_0 is excluded
    while (col < dim) {
        const Complex lambda = es.eigenvalues[static_cast<std::size_t>(l)];
        if (es.is_real[static_cast<std::size_t>(l)]) {
            const double scale = ipow(lambda.real(), t);
            e.coordinates.col(col) =
                scale * es.right_eigenvectors.col(l).real();
            e.eigenvalues_used.push_back(lambda.real());
            ++col;
            ++l;
        } else {
            // conjugate pair: real and imaginary parts become two columns
            const Eigen::VectorXcd scaled =
                ipow(lambda, t) * es.right_eigenvectors.col(l);
            e.has_complex_components = true;
            e.coordinates.col(col) = scaled.real();
            e.eigenvalues_used.push_back(std::abs(lambda));
            ++col;
            if (col < dim) {
                e.coordinates.col(col) = scaled.imag();
                e.eigenvalues_used.push_back(std::abs(lambda));
                ++col;
            }
            l += 2;   // skip the conjugate partner
        }
        if (l >= p && col < dim)
            throw invalid_config_error("embed: eigensystem exhausted before L columns");
    }
    return e;
}

Eigen::Index spectral_gap(const std::vector<Complex>& eigenvalues, Eigen::Index l_max) {
    const Eigen::Index p = static_cast<Eigen::Index>(eigenvalues.size());
    if (p < 3) throw invalid_input_error("spectral_gap: need at least 3 eigenvalues");

    const Eigen::Index hi = std::min(p - 2, l_max);
    Eigen::Index best = 1;
    double best_drop = -1.0;
    for (Eigen::Index l = 1; l <= hi; ++l) {
        const double drop = std::abs(eigenvalues[static_cast<std::size_t>(l - 1)]) -
                            std::abs(eigenvalues[static_cast<std::size_t>(l)]);
        if (drop > best_drop) {
            best_drop = drop;
            best = l;
        }
    }
    return best;
}

Embedding diffusion_map(const DiffusionOperator& k, int t, Eigen::Index fixed_dim,
                        Eigen::Index l_max) {
    const Eigen::Index n = k.n();
    Eigen::Index dim = fixed_dim;
    Eigen::Index p;
    if (dim > 0) {
        dim = std::min(dim, n - 1);
        p = std::min(n, dim + 2);
    } else {
        p = std::min(n, l_max + 2);
    }
    const Eigensystem es = spectral_decompose(k, p);
    if (dim <= 0) dim = spectral_gap(es.eigenvalues, l_max);
    return embed(es, t, dim, k.provenance);
}

} // namespace manifuse::diffusion
