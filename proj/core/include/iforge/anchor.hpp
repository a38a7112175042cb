#pragma once

#include <string>
#include <utility>

#include "iforge/exterior.hpp"
#include "iforge/linalg.hpp"

namespace iforge {

/// Nondegenerate bivector Λ on an even-dimensional space with its 2-form ω
/// and volume Ω = ωⁿ/n!.
struct SymplecticAnchor {
  TablePtr table;
  MultiVector lambda_bi;
  Form omega;
  unsigned n = 0;
  Form volume;
};

/// Almost cosymplectic pair (ϑ, Θ) with its contravariant partner (Λ, E).
/// The volume is ϑ∧Θⁿ/n!.
struct CosymplecticAnchor {
  TablePtr table;
  Form vartheta;
  Form theta;
  MultiVector lambda_bi;
  MultiVector reeb;
  unsigned n = 0;
  Form volume;
};

/// Symplectic structure ω' = Θ + ds∧ϑ, Λ' = Λ + ∂s∧E on the table extended by s.
struct LiftedAnchor {
  CosymplecticAnchor base;
  SymplecticAnchor lifted;
  std::size_t s_ordinal = 0;  // geometric ordinal of s in the lifted table
};

/// Throws Errc::degree, Errc::odd_dimension, Errc::degenerate.
SymplecticAnchor build_symplectic(const MultiVector& lambda_bi);
/// Throws Errc::odd_dimension (even dimension given), Errc::degenerate_volume.
CosymplecticAnchor build_cosymplectic(const Form& vartheta, const Form& theta);

/// Canonical Σ ∂xᵢ∧∂yᵢ for the given name pairs.
MultiVector canonical_bivector(const TablePtr& table, const std::vector<std::pair<std::string, std::string>>& pairs);

/// Degree-p extension of P#: multiplicative over wedge, P#(f) = f.
MultiVector sharp(const MultiVector& p, const Form& a);
MultiVector sharp(const SymplecticAnchor& anchor, const Form& a);
/// Throws Errc::not_semi_basic when i_E a ≠ 0.
MultiVector sharp(const CosymplecticAnchor& anchor, const Form& a);
/// Inverse of sharp on vector fields: flat(sharp(α)) = α.
Form flat(const SymplecticAnchor& anchor, const MultiVector& x);

/// ∗a = i_{Λ#(a)} Ω.
Form star(const SymplecticAnchor& anchor, const Form& a);
/// δ = ∗d∗.
Form codifferential(const SymplecticAnchor& anchor, const Form& a);

/// When `lifted_table` is null the base table is extended by a variable "s".
LiftedAnchor lift(const CosymplecticAnchor& base, TablePtr lifted_table = nullptr);

/// a = σ + τ∧ds with σ, τ free of ds.
struct PrimeParts {
  Form sigma;
  Form tau;
};
PrimeParts decompose_prime(const Form& a);

/// Drops the s row and column. Throws Errc::not_reducible naming the offending
/// component when some component has an s index or depends on s.
MultiVector reduce_bivector(const MultiVector& p, const TablePtr& base);

/// Moves an s-free form to the base table. Throws Errc::not_reducible.
Form reduce_form(const Form& a, const TablePtr& base);

}  // namespace iforge
