// Seeded generators of random group, loop and label samples for the
// property suites. Frequencies are drawn from a half-integer grid in [-2, 2]
// so that products of several rotations stay inside the term budget.
#pragma once

#include <cstdint>
#include <random>

#include "galloop/linegroup.hpp"

namespace galloop {

class ElementSampler {
 public:
  explicit ElementSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  /// Multiple of 0.5 in [-2, 2].
  double grid_frequency(bool allow_zero = true);
  Vec3 unit_vector();
  Vec3 vector(double scale = 1.0);
  Mat3 constant_rotation();

  /// Product of one or two rotations about random axes with rates in [-2, 2].
  Mat3Fn rotation();
  /// Like rotation() but with at least one nonzero rate.
  Mat3Fn time_dependent_rotation();
  /// Cubic polynomial plus one harmonic term.
  Vec3Fn translation();

  LineGroupElement element();
  LineGroupElement element_with_rotating_frame();
  LineGroupElement constant_rotation_element();
  GalileiElement galilei();

  /// Velocity label: constant, polynomial or harmonic.
  Vec3Fn velocity_label();

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace galloop
