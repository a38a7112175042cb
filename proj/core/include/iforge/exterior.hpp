#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "iforge/rational_function.hpp"

namespace iforge {

/// Strictly increasing index tuple over the geometric variables, stored as a
/// bit set of geometric ordinals (bit k = k-th geometric variable).
using IndexSet = std::uint32_t;

std::vector<std::size_t> indices_of(IndexSet s);
IndexSet index_set(const std::vector<std::size_t>& sorted_ordinals);
/// (-1)^(number of pairs a in A, b in B with a > b); A and B disjoint.
int wedge_sign(IndexSet a, IndexSet b);

enum class GradedKind { form, multivector };

/// Homogeneous antisymmetric tensor with rational-function components.
/// Forms and multivectors share the representation but never mix.
template <GradedKind Kind>
class Graded {
 public:
  using Components = std::map<IndexSet, RF>;

  /// Placeholder without a table; assign before use.
  Graded() = default;
  Graded(TablePtr table, int degree);
  /// 0-degree element with the given value.
  static Graded scalar(const RF& value);
  /// coeff * e_{i1} ^ ... ^ e_{ip} for geometric ordinals in any order.
  static Graded basis(TablePtr table, const std::vector<std::size_t>& ordinals, const RF& coeff);

  const TablePtr& table() const noexcept { return table_; }
  int degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return table_->dim(); }
  const Components& components() const noexcept { return comps_; }

  bool is_zero() const noexcept { return comps_.empty(); }
  RF component(IndexSet s) const;
  /// Component for an arbitrary ordinal tuple, with the permutation sign.
  RF at(const std::vector<std::size_t>& ordinals) const;
  /// Value of a 0-degree element.
  RF value() const;

  /// Adds `c` to the component at the sorted index set `s`.
  void add_component(IndexSet s, const RF& c);

  Graded operator-() const;
  Graded& operator+=(const Graded& o);
  Graded& operator-=(const Graded& o);
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  Graded scaled(const RF& c) const;
  friend Graded operator*(const RF& c, const Graded& a) { return a.scaled(c); }

  /// Moves components to another table by variable name.
  Graded rebase(const TablePtr& target) const;

  friend bool operator==(const Graded& a, const Graded& b) {
    return a.degree_ == b.degree_ && same_table(a.table_, b.table_) && a.comps_ == b.comps_;
  }

 private:
  TablePtr table_;
  int degree_ = 0;
  Components comps_;
};

using Form = Graded<GradedKind::form>;
using MultiVector = Graded<GradedKind::multivector>;

template <GradedKind K>
Graded<K> wedge(const Graded<K>& a, const Graded<K>& b);
/// a^k / k!
template <GradedKind K>
Graded<K> divided_power(const Graded<K>& a, unsigned k);

/// Exact 1-form df.
Form differential(const RF& f);
Form exterior_derivative(const Form& a);

/// Left contraction: the multivector fills the first slots of the form,
/// with pairing(dx_I, d/dx_I) = +1. Throws Errc::degree when deg P > deg a.
Form interior(const MultiVector& p, const Form& a);
/// Full pairing of equal-degree elements.
RF pairing(const Form& a, const MultiVector& p);

/// Schouten-Nijenhuis bracket for degree pairs (1,q), (q,1) and (2,2).
/// For bivectors the normalization is [P,P]^{ijk} = 2 * cyclic sum of {x_i,{x_j,x_k}}.
MultiVector schouten(const MultiVector& p, const MultiVector& q);

/// Component-list text "[i,j]: coeff; ..." with 1-based ordinals.
template <GradedKind K>
std::string describe(const Graded<K>& a);

/// Component matrix of a bivector (dim x dim, antisymmetric).
class RfMatrix;
RfMatrix bivector_matrix(const MultiVector& p);
MultiVector bivector_from_matrix(const RfMatrix& m);
Form two_form_from_matrix(const RfMatrix& m);
RfMatrix two_form_matrix(const Form& a);

/// Hamiltonian vector field P#(df): X^j = sum_i d_i f P^{ij}.
MultiVector hamiltonian_vf(const MultiVector& p, const RF& f);
/// P(df, dg) = <dg, P#(df)>.
RF bracket(const MultiVector& p, const RF& f, const RF& g);

}  // namespace iforge
