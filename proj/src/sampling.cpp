#include "qonsager/sampling.hpp"

#include <cmath>
#include <numbers>

namespace qonsager {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Sampler::sub_seed(std::uint64_t master, const std::string& label) {
  return splitmix64(master ^ fnv1a64(label));
}

double Sampler::uniform(double lo, double hi) {
  // Explicit construction from raw bits keeps the stream identical across
  // standard-library implementations of uniform_real_distribution.
  const std::uint64_t r = rng();
  const double x = double(r >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + (hi - lo) * x;
}

Complex Sampler::unimodular() {
  const double phi = uniform(0.0, 2.0 * std::numbers::pi);
  return Complex(std::cos(phi), std::sin(phi));
}

Complex Sampler::on_annulus(double r_lo, double r_hi) {
  const double r = uniform(r_lo, r_hi);
  return r * unimodular();
}

Complex Sampler::generic_q(double r_lo, double r_hi) {
  for (int tries = 0; tries < 1000; ++tries) {
    const Complex q = on_annulus(r_lo, r_hi);
    if (std::abs(q - 1.0) >= 0.05 && std::abs(q + 1.0) >= 0.05) return q;
  }
  return Complex(1.2, 0.3);  // unreachable for sane ranges
}

Complex Sampler::generic_u(double r_lo, double r_hi) {
  for (int tries = 0; tries < 1000; ++tries) {
    const Complex u = on_annulus(r_lo, r_hi);
    if (std::abs(u * u - 1.0) >= 0.05) return u;
  }
  return Complex(0.9, 0.6);
}

Complex Sampler::twisted_unimodular(double lo_gap) {
  for (int tries = 0; tries < 1000; ++tries) {
    const Complex t = unimodular();
    if (std::abs(t - 1.0) >= lo_gap) return t;
  }
  return Complex(-1.0, 0.0);
}

}  // namespace qonsager
