#pragma once

#include <cstdint>
#include <string>

namespace iforge::testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string witness;  // first failing case

  bool pass() const { return failures == 0 && cases > 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) witness = what;
  }
};

// symexpr
PropertyResult ring_axioms(std::uint64_t seed, int cases = 200);
PropertyResult field_axioms(std::uint64_t seed, int cases = 50);
PropertyResult reduction_soundness(std::uint64_t seed, int cases = 50);
PropertyResult evaluation_homomorphism(std::uint64_t seed, int points = 50);
PropertyResult render_round_trip(std::uint64_t seed, int cases = 100);
PropertyResult schwartz_zippel(std::uint64_t seed, int cases = 40);

// exterior
PropertyResult wedge_laws(std::uint64_t seed, int cases = 100);
PropertyResult d_squared(std::uint64_t seed, int cases = 100);
PropertyResult leibniz(std::uint64_t seed, int cases = 100);
PropertyResult pairing_determinant(std::uint64_t seed, int cases = 50);
/// [P,P] = 0 iff all cyclic sums vanish; also checks [P,P] = 2 * cyclic sum componentwise
/// and that jacobi_check agrees.
PropertyResult schouten_jacobiator(std::uint64_t seed, int cases = 50);

// anchor
PropertyResult sigma_criterion(std::uint64_t seed, int cases = 30);
PropertyResult bracket_antisymmetry(std::uint64_t seed, int cases = 30);
PropertyResult flat_sharp_identity(std::uint64_t seed, int cases = 10);
PropertyResult cosymplectic_identities(std::uint64_t seed, int cases = 10);
PropertyResult lift_reduce_round_trip(std::uint64_t seed, int cases = 20);

// pencil
PropertyResult jacobian_bracket_jacobi(std::uint64_t seed, int cases = 20);

}  // namespace iforge::testing
