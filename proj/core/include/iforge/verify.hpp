#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iforge/pencil.hpp"

namespace iforge {

/// [Π,Π] = 0.
Verdict jacobi_check(const MultiVector& pi, std::string name = "jacobi");
/// (Π₁ − λΠ₀)#(dF) = 0 identically in λ. Either bivector may be zero.
Verdict casimir_check(const MultiVector& pi0, const MultiVector& pi1, const RF& f, std::string name = "casimir");
/// Entry (i,j) = {fᵢ, fⱼ} under Π₁ − λΠ₀.
std::vector<std::vector<RF>> involution_table(const MultiVector& pi0, const MultiVector& pi1,
                                              const FunctionFamily& family);
/// Link j: Π₀#(df_{j+1}) = Π₁#(df_j).
std::vector<Verdict> lenard_magri_check(const MultiVector& pi0, const MultiVector& pi1, const std::vector<RF>& chain,
                                        const std::vector<std::string>& names = {});
/// [A,B] = 0.
Verdict compatibility_check(const MultiVector& a, const MultiVector& b, std::string name = "compatibility");
/// Exact rank of the evaluated component matrix. Throws Errc::pole_at_point.
std::size_t rank_at_point(const MultiVector& pi, const RationalPoint& pt);

struct PencilCertificate {
  std::uint64_t seed = 0;
  Verdict jacobi0, jacobi1, jacobi_pencil;
  Verdict compatibility;
  std::vector<Verdict> casimirs;
  std::vector<std::string> family_names;
  std::vector<std::vector<RF>> involution;
  Verdict involution_verdict;
  std::vector<Verdict> lenard_magri;
  std::vector<Verdict> bi_involution;
  std::vector<std::pair<std::string, std::string>> sample;  // variable = value
  std::size_t rank0 = 0, rank1 = 0, rank_pencil = 0, expected_rank = 0;
  Verdict rank_at_sample;    // rank of Π_(λ) = 2r at the sample
  Verdict rank_upper_bound;  // rank ≤ 2r from k independent Casimirs
  Verdict det_identity;
  Verdict formula_equivalence;

  bool pass() const;
  std::vector<const Verdict*> verdicts() const;
};

/// Runs every check on an assembled pencil. Deterministic for a given seed.
PencilCertificate certify(const Setting& setting, const Pencil& pencil, std::uint64_t seed = 0);

/// Formula and contraction equivalence on all coordinate pairs. Skipped (pass
/// with a note) when r < 2.
Verdict formula_equivalence(const Setting& setting, const Pencil& pencil);
/// F(λ)² = det({F^i, F^j}) under the work anchor (s included in the odd case).
Verdict determinant_identity(const Setting& setting, const Pencil& pencil);

}  // namespace iforge
