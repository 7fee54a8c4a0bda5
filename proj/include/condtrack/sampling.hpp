#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "condtrack/polysys.hpp"
#include "condtrack/types.hpp"

namespace condtrack::sampling {

/// All exponent vectors with |alpha| = degree in num_vars variables,
/// in a fixed deterministic order.
std::vector<std::vector<int>> monomial_exponents(int num_vars, int degree);

Complex standard_complex_gaussian(std::mt19937_64& rng);

CVec gaussian_vector(std::mt19937_64& rng, Eigen::Index dim);

ProjectivePoint random_unit_point(std::mt19937_64& rng, Eigen::Index dim);

/// A BW-Gaussian system: independent complex Gaussians per monomial scaled
/// by sqrt(d_i!/alpha!), so coordinates in the BW-orthonormal basis are
/// standard Gaussians and the distribution is unitarily invariant.
HomogeneousSystem bw_gaussian_system(std::mt19937_64& rng,
                                     const std::vector<int>& degrees);

/// Haar-ish random unitary (QR of a complex Ginibre matrix with the phase
/// fix on the R diagonal).
CMat random_unitary(std::mt19937_64& rng, Eigen::Index dim);

/// A point at Riemannian distance exactly `angle` from x, in a random
/// tangent direction (great-circle construction).
ProjectivePoint perturb_within(std::mt19937_64& rng, const ProjectivePoint& x,
                               double angle);

}  // namespace condtrack::sampling
