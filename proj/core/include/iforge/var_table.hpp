#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iforge {

/// What a declared variable stands for.
///
/// Geometric variables (manifold coordinates and the appended coordinate `s`)
/// carry differentials and may be differentiated. The pencil parameter and
/// symbolic constants are ring variables only.
enum class VarRole { manifold, pencil_parameter, appended_coordinate, constant };

std::string_view role_name(VarRole role);
std::optional<VarRole> parse_role(std::string_view text);

class VarTable;
using TablePtr = std::shared_ptr<const VarTable>;

/// Ordered, immutable list of variables shared by every polynomial and form
/// built over it.
class VarTable {
 public:
  struct Var {
    std::string name;
    VarRole role = VarRole::manifold;
  };

  static constexpr std::size_t kMaxVars = 32;

  static TablePtr create(std::vector<Var> vars);

  std::size_t size() const noexcept { return vars_.size(); }
  const Var& var(std::size_t i) const { return vars_.at(i); }
  const std::string& name(std::size_t i) const { return vars_.at(i).name; }
  VarRole role(std::size_t i) const { return vars_.at(i).role; }
  const std::vector<Var>& vars() const noexcept { return vars_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws Errc::unknown_variable.
  std::size_t index_of(std::string_view name) const;

  bool is_geometric(std::size_t i) const;

  /// Number of geometric variables, i.e. the dimension forms live in.
  std::size_t dim() const noexcept { return geometric_.size(); }
  /// Variable index of the k-th geometric variable.
  std::size_t geo_var(std::size_t ordinal) const { return geometric_.at(ordinal); }
  std::optional<std::size_t> geo_ordinal(std::size_t var) const;
  std::optional<std::size_t> geo_ordinal(std::string_view name) const;

  std::optional<std::size_t> pencil_parameter() const noexcept { return pencil_; }
  std::optional<std::size_t> appended_coordinate() const noexcept { return appended_; }

  /// New table with `extra` appended after the existing variables.
  TablePtr extended(const std::vector<Var>& extra) const;
  /// New table without the named variable.
  TablePtr without(std::string_view name) const;

  bool operator==(const VarTable& other) const;

 private:
  explicit VarTable(std::vector<Var> vars);

  std::vector<Var> vars_;
  std::vector<std::size_t> geometric_;
  std::vector<int> geo_ordinal_;
  std::optional<std::size_t> pencil_;
  std::optional<std::size_t> appended_;
};

bool same_table(const TablePtr& a, const TablePtr& b);
/// Throws Errc::table_mismatch unless `same_table(a, b)`.
void require_same_table(const TablePtr& a, const TablePtr& b, std::string_view where);

}  // namespace iforge
