#include "iforge/sampling.hpp"

#include "iforge/errors.hpp"

namespace iforge {

Rational Sampler::integer() {
  // Built from raw draws so the sequence does not depend on the library's
  // distribution implementation.
  constexpr std::uint64_t span = 2 * kRange + 1;
  std::uint64_t v = rng_() % span;
  return Rational(static_cast<long>(v) - kRange);
}

RationalPoint Sampler::point(const TablePtr& table, const std::vector<Polynomial>& guards) {
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<Rational> values;
    values.reserve(table->size());
    for (std::size_t i = 0; i < table->size(); ++i) values.push_back(integer());
    RationalPoint pt(table, std::move(values));
    bool ok = true;
    for (const auto& g : guards) {
      if (sgn(g.rebase(table).evaluate(pt)) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return pt;
  }
  throw Error(Errc::sampling_exhausted, "no admissible sample point within the retry budget");
}

RationalPoint Sampler::point_avoiding(const TablePtr& table, const std::vector<RF>& functions,
                                      const std::vector<Polynomial>& extra) {
  std::vector<Polynomial> guards = extra;
  for (const auto& f : functions) {
    if (!f.den().is_constant()) guards.push_back(f.den());
  }
  return point(table, guards);
}

}  // namespace iforge
