#pragma once

#include <cstdint>
#include <vector>

#include "condtrack/polysys.hpp"
#include "condtrack/types.hpp"

namespace condtrack {

class IterationStallError : public Error {
 public:
  explicit IterationStallError(const std::string& what) : Error(what) {}
};

struct OracleConfig {
  double fd_step = 1e-6;  // in [1e-9, 1e-3]
  int samples = 4096;     // >= 16
  std::uint64_t seed = 0;

  void validate() const;
};

/// Central-difference Jacobian, the cross-check for the symbolic one.
CMat fd_jacobian(const HomogeneousSystem& f, const ProjectivePoint& x,
                 const OracleConfig& cfg = {});

/// A sampled LOWER bound on gamma_0(f, x): maximizes
/// || Df(x)|_{x-perp}^{-1} (D^k f(x)/k!)(v, ..., v) ||^{1/(k-1)} over random
/// unit vectors per k in {2..D}, then runs 20 steps of projected gradient
/// ascent from the best sample. Exact symmetric-tensor operator norms are out
/// of scope. Monotone nondecreasing in cfg.samples for a fixed seed.
double gamma0_sample(const HomogeneousSystem& f, const ProjectivePoint& x,
                     const OracleConfig& cfg = {});

/// All d projective roots of a binary form (n = 1), via dehomogenization and
/// Aberth-Ehrlich simultaneous iteration, plus the root at infinity when the
/// z1-leading coefficient vanishes. Requires that not both boundary
/// coefficients vanish. Throws IterationStallError after 500 sweeps.
std::vector<ProjectivePoint> univariate_roots(const HomogeneousSystem& f);

/// Newton refinement from `grid_size` quasi-random unit-sphere starts,
/// deduplicated at d_R < 1e-6, each surviving root certified. Small-n ground
/// truth (set inclusion, not completeness). Requires n <= 2 and D <= 4.
std::vector<ProjectivePoint> multistart_solve(const HomogeneousSystem& f,
                                              int grid_size,
                                              const OracleConfig& cfg = {});

}  // namespace condtrack
