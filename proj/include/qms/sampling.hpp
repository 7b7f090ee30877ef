// sampling.hpp — seeded random operators and states for the property and
// verification suites. States are Wishart-type G G*/tr(G G*) with standard
// complex Gaussian G, so samples are full rank almost surely.

#pragma once

#include <random>

#include "qms/linops.hpp"

namespace qms {

using Rng = std::mt19937_64;

// Entries are independent standard complex Gaussians.
Operator random_operator(Rng& rng, Eigen::Index dim);

Operator random_hermitian(Rng& rng, Eigen::Index dim);

DensityState random_state(Rng& rng, Eigen::Index dim);

}  // namespace qms
