#pragma once

#include "manifuse/types.hpp"

// Alternating diffusion for a sensor pair: the product operator
// K_m * K_n and its diffusion distance. Only similarities in the
// variables common to both sensors survive the alternation.

namespace manifuse::alternating {

// Product of the two diffusion operators, with the ordered pair retained.
// The ordered reverse (n, m) is a different operator in general.
struct ADOperator {
    DiffusionOperator op;                       // provenance = alternating
    std::pair<int, int> pair;                   // ordered (m, n)
    std::shared_ptr<const DiffusionOperator> left;
    std::shared_ptr<const DiffusionOperator> right;
};

ADOperator ad_operator(const DiffusionOperator& k_m, const DiffusionOperator& k_n,
                       int m = 0, int n = 1);

// Diffusion distance of the product operator after t alternating steps.
DistanceMatrix ad_distance(const ADOperator& a, int t);

} // namespace manifuse::alternating
