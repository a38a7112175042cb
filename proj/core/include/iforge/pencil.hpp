#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iforge/anchor.hpp"
#include "iforge/sampling.hpp"

namespace iforge {

/// Outcome of one exact check. `witness` holds the residual when it fails.
struct Verdict {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct FamilyEntry {
  std::string name;
  RF f;
};

/// The prescribed functions 𝔉, by name.
class FunctionFamily {
 public:
  FunctionFamily(TablePtr table, std::vector<FamilyEntry> entries);

  const TablePtr& table() const noexcept { return table_; }
  const std::vector<FamilyEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws Errc::unknown_variable for an unknown entry name.
  const RF& at(const std::string& name) const;

  FunctionFamily rebase(const TablePtr& target) const;
  FunctionFamily with(FamilyEntry extra) const;

 private:
  TablePtr table_;
  std::vector<FamilyEntry> entries_;
};

/// F(λ) = λ^d c₀ + λ^{d-1} c₁ + ... + c_d, coefficients named by family entry.
struct CasimirPolynomial {
  std::vector<std::string> coeffs;
  unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }
};
using Partition = std::vector<CasimirPolynomial>;

/// Evaluates F(λ) as a rational function in the pencil parameter.
RF casimir_value(const FunctionFamily& family, const CasimirPolynomial& cp);

/// The data a construction runs on. In the odd case the work anchor is the
/// lifted symplectic structure, the work family gains s, and the work
/// partition gains the degree-0 polynomial s.
struct Setting {
  bool odd = false;
  unsigned r = 0, k = 0, l = 0;
  TablePtr base_table;
  TablePtr work_table;
  SymplecticAnchor work;
  std::optional<LiftedAnchor> lifted;
  FunctionFamily family;
  Partition partition;
  FunctionFamily work_family;
  Partition work_partition;

  /// Anchor bivector on the base table (Λ).
  const MultiVector& base_lambda() const { return odd ? lifted->base.lambda_bi : work.lambda_bi; }
  /// ω in the even case, Θ in the odd case.
  const Form& base_omega() const { return odd ? lifted->base.theta : work.omega; }
  const Form& base_volume() const { return odd ? lifted->base.volume : work.volume; }
};

using AnchorInput = std::variant<SymplecticAnchor, LiftedAnchor>;

/// Validates the dimension count and partition, and certifies functional
/// independence of the family at a sampled point.
/// Throws Errc::precondition or Errc::rank_drop.
Setting make_setting(const AnchorInput& anchor, const FunctionFamily& family, const Partition& partition,
                     std::uint64_t seed = 0);

struct FLambda {
  RF value;
  RF leading;   // coefficient of λ^r
  RF trailing;  // coefficient of λ^0
};
/// Throws Errc::degenerate_leading / Errc::degenerate_trailing.
FLambda compute_F_lambda(const Setting& setting, std::uint64_t seed = 0);

/// Hamiltonian fields of the given functions under the work anchor.
std::vector<MultiVector> distribution(const Setting& setting, const std::vector<RF>& functions);
/// Generators of D₀ (leading coefficients) and D₁ (trailing coefficients).
std::vector<RF> leading_functions(const Setting& setting);
std::vector<RF> trailing_functions(const Setting& setting);

/// Basis of the annihilator of the generators. Throws Errc::rank_drop.
std::vector<Form> annihilator_basis(const std::vector<MultiVector>& generators);

struct SigmaPair {
  Form sigma0;
  Form sigma1;
};

/// The three δ-identities on the work anchor.
std::vector<Verdict> check_sigma_conditions(const SymplecticAnchor& anchor, const SigmaPair& pair);
/// σ₀ annihilates D₀ and σ₁ annihilates D₁.
std::vector<Verdict> check_annihilation(const Setting& setting, const SigmaPair& pair);
/// σ₀(X_{f_j},·) = σ₁(X_{f_{j-1}},·) for every link of every Casimir polynomial.
std::vector<Verdict> check_recursion(const Setting& setting, const SigmaPair& pair);
/// Rank of σ₀, σ₁ equals 2r at a sampled point.
std::vector<Verdict> check_sigma_rank(const Setting& setting, const SigmaPair& pair, std::uint64_t seed = 0);

struct AnsatzSolution {
  std::vector<std::string> unknowns;                     // "k12", ...
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // basis indices (0-based)
  std::vector<std::string> free_parameters;
  TablePtr table;                                        // work table plus the free parameters
  std::vector<RF> values;                                // one per unknown, over `table`
  Form sigma1;                                           // Σ k_ab β_a∧β_b over `table`
};
/// Solves the recursion relations for σ₁ = Σ_{a<b} k_ab β_a∧β_b.
/// Throws Errc::inconsistent naming the offending equation.
AnsatzSolution solve_recursion_ansatz(const Setting& setting, const Form& sigma0, const std::vector<Form>& basis);

struct Pencil {
  MultiVector pi0;       // base table
  MultiVector pi1;
  MultiVector work_pi0;  // work table (lifted in the odd case)
  MultiVector work_pi1;
  Form sigma_lambda;     // base table, semi-basic part in the odd case
  RF g_lambda;
  FLambda F;

  /// Π₁ − λΠ₀.
  MultiVector pi_lambda() const;
  MultiVector work_pi_lambda() const;
};

/// Runs every precondition check first unless `checked` is false.
/// Throws Errc::precondition naming the first violated condition.
Pencil assemble_pencil(const Setting& setting, const SigmaPair& pair, std::uint64_t seed = 0, bool checked = true);

/// g_(λ) = i_Λ σ_(λ).
RF g_of(const MultiVector& lambda_bi, const Form& sigma);

/// Φ_(λ) = −(1/F)(σ + g/(r−1)·ω)∧ω^{r−2}/(r−2)!∧dF¹∧…∧dF^k.
/// Throws Errc::rank_too_small, Errc::non_exact_division.
Form phi_lambda(const Setting& setting, const Pencil& pencil);
/// {f,h}_(λ) = (df∧dh∧Φ)/Ω.
RF bracket_closed_form(const Setting& setting, const Form& phi, const RF& f, const RF& h);

/// {g,h}Ω = prefactor·dg∧dh∧dC₁∧…∧dC_l. Throws Errc::dimension_mismatch.
RF jacobian_bracket(const std::vector<RF>& functions, const RF& prefactor, const Form& volume, const RF& g,
                    const RF& h);

}  // namespace iforge
