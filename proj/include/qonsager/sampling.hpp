#pragma once
// Deterministic sampling of generic evaluation points. All randomness flows
// from a 64-bit master seed through per-suite sub-seeds, so identical seeds
// reproduce identical runs bit for bit.

#include "qonsager/linalg.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace qonsager {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(const std::string& s);

struct Sampler {
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  // Independent stream for a named sub-task of a master seed.
  static std::uint64_t sub_seed(std::uint64_t master, const std::string& label);

  double uniform(double lo, double hi);
  Complex unimodular();                            // e^{i phi}, phi uniform
  Complex on_annulus(double r_lo, double r_hi);    // uniform modulus and phase

  // Deformation parameter kept away from the degenerations q = +1, q = -1
  // (|q -+ 1| >= 0.05) where the vertex weights or their q^{1/2} combinations
  // collapse.
  Complex generic_q(double r_lo, double r_hi);

  // Spectral parameter kept away from u^2 = 1 (|u^2 - 1| >= 0.05) where the
  // permutation point makes several relations trivially degenerate.
  Complex generic_u(double r_lo, double r_hi);

  // Unimodular twist kept away from t = 1 (|t - 1| >= lo_gap), for negative
  // controls that need a genuinely twisted point.
  Complex twisted_unimodular(double lo_gap);

  std::mt19937_64 rng;
};

}  // namespace qonsager
