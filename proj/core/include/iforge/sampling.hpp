#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "iforge/rational_function.hpp"

namespace iforge {

/// Draws generic rational points: uniform integers in [-10^6, 10^6] for
/// every variable, redrawn while any guard polynomial vanishes.
class Sampler {
 public:
  static constexpr long kRange = 1'000'000;
  static constexpr int kRetryBudget = 50;

  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Throws Errc::sampling_exhausted after kRetryBudget rejected draws.
  RationalPoint point(const TablePtr& table, const std::vector<Polynomial>& guards = {});
  /// Guards are the denominators (poles) plus any extra nondegeneracy loci.
  RationalPoint point_avoiding(const TablePtr& table, const std::vector<RF>& functions,
                               const std::vector<Polynomial>& extra = {});

  Rational integer();

 private:
  std::mt19937_64 rng_;
};

}  // namespace iforge
