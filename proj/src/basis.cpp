#include "manifuse/basis.hpp"

#include <Eigen/QR>

#include "manifuse/parallel.hpp"
#include "manifuse/rng.hpp"

namespace manifuse::detail {

Matrix orthonormal_gaussian_basis(Eigen::Index rows, Eigen::Index cols,
                                  std::uint64_t seed, std::uint64_t stream) {
    if (cols > rows)
        throw invalid_config_error("orthonormal basis: cols " + std::to_string(cols) +
                                   " exceeds rows " + std::to_string(rows));
    if (rows < 1 || cols < 1)
        throw invalid_config_error("orthonormal basis: empty shape");

    Matrix g(rows, cols);
    par::parallel_for(static_cast<std::size_t>(rows), [&](std::size_t ui) {
        const Eigen::Index i = static_cast<Eigen::Index>(ui);
        for (Eigen::Index j = 0; j < cols; ++j)
            g(i, j) = rng::gaussian(seed, stream,
                                    static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(cols) +
                                        static_cast<std::uint64_t>(j));
    });

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < cols; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

} // namespace manifuse::detail
