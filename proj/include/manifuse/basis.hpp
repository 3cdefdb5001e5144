#pragma once

#include <cstdint>

#include "manifuse/types.hpp"

namespace manifuse::detail {

// QR-orthonormalized seeded Gaussian matrix, rows x cols with cols <= rows.
// Entries of the source matrix are counter-based, so the result is a pure
// function of (rows, cols, seed, stream). R-diagonal signs are fixed
// positive to make the factor unique.
Matrix orthonormal_gaussian_basis(Eigen::Index rows, Eigen::Index cols,
                                  std::uint64_t seed, std::uint64_t stream);

} // namespace manifuse::detail
