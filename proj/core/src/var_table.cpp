#include "iforge/var_table.hpp"

#include <unordered_set>

#include "iforge/errors.hpp"

namespace iforge {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::syntax: return "SyntaxError";
    case Errc::unknown_variable: return "UnknownVariable";
    case Errc::negative_exponent: return "NegativeExponent";
    case Errc::table_mismatch: return "TableMismatch";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::forbidden_variable: return "ForbiddenVariable";
    case Errc::pole_at_point: return "PoleAtPoint";
    case Errc::degree: return "DegreeError";
    case Errc::unsupported_degrees: return "UnsupportedDegrees";
    case Errc::degenerate: return "Degenerate";
    case Errc::odd_dimension: return "OddDimension";
    case Errc::degenerate_volume: return "DegenerateVolume";
    case Errc::not_semi_basic: return "NotSemiBasic";
    case Errc::not_reducible: return "NotReducible";
    case Errc::degenerate_leading: return "DegenerateLeading";
    case Errc::degenerate_trailing: return "DegenerateTrailing";
    case Errc::rank_drop: return "RankDrop";
    case Errc::inconsistent: return "Inconsistent";
    case Errc::rank_too_small: return "RankTooSmall";
    case Errc::non_exact_division: return "NonExactDivision";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::unknown_fixture: return "UnknownFixture";
    case Errc::schema: return "SchemaError";
    case Errc::precondition: return "PreconditionFailed";
    case Errc::overflow: return "Overflow";
    case Errc::sampling_exhausted: return "SamplingExhausted";
  }
  return "Error";
}

std::string_view role_name(VarRole role) {
  switch (role) {
    case VarRole::manifold: return "manifold";
    case VarRole::pencil_parameter: return "pencil_parameter";
    case VarRole::appended_coordinate: return "appended_coordinate";
    case VarRole::constant: return "constant";
  }
  return "manifold";
}

std::optional<VarRole> parse_role(std::string_view text) {
  if (text == "manifold") return VarRole::manifold;
  if (text == "pencil_parameter") return VarRole::pencil_parameter;
  if (text == "appended_coordinate") return VarRole::appended_coordinate;
  if (text == "constant") return VarRole::constant;
  return std::nullopt;
}

VarTable::VarTable(std::vector<Var> vars) : vars_(std::move(vars)) {
  if (vars_.size() > kMaxVars) {
    throw Error(Errc::overflow, "variable table exceeds " + std::to_string(kMaxVars) + " entries");
  }
  std::unordered_set<std::string> seen;
  geo_ordinal_.assign(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.name.empty()) throw Error(Errc::schema, "empty variable name");
    if (!seen.insert(v.name).second) throw Error(Errc::schema, "duplicate variable '" + v.name + "'");
    switch (v.role) {
      case VarRole::pencil_parameter:
        if (pencil_) throw Error(Errc::schema, "more than one pencil parameter");
        pencil_ = i;
        break;
      case VarRole::appended_coordinate:
        if (appended_) throw Error(Errc::schema, "more than one appended coordinate");
        appended_ = i;
        [[fallthrough]];
      case VarRole::manifold:
        geo_ordinal_[i] = static_cast<int>(geometric_.size());
        geometric_.push_back(i);
        break;
      case VarRole::constant:
        break;
    }
  }
}

TablePtr VarTable::create(std::vector<Var> vars) {
  return TablePtr(new VarTable(std::move(vars)));
}

std::optional<std::size_t> VarTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t VarTable::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(Errc::unknown_variable, "unknown variable '" + std::string(name) + "'");
}

bool VarTable::is_geometric(std::size_t i) const { return geo_ordinal_.at(i) >= 0; }

std::optional<std::size_t> VarTable::geo_ordinal(std::size_t var) const {
  int k = geo_ordinal_.at(var);
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

std::optional<std::size_t> VarTable::geo_ordinal(std::string_view name) const {
  auto i = find(name);
  if (!i) return std::nullopt;
  return geo_ordinal(*i);
}

TablePtr VarTable::extended(const std::vector<Var>& extra) const {
  auto vars = vars_;
  vars.insert(vars.end(), extra.begin(), extra.end());
  return create(std::move(vars));
}

TablePtr VarTable::without(std::string_view name) const {
  std::vector<Var> vars;
  for (const auto& v : vars_) {
    if (v.name != name) vars.push_back(v);
  }
  return create(std::move(vars));
}

bool VarTable::operator==(const VarTable& other) const {
  if (vars_.size() != other.vars_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name != other.vars_[i].name || vars_[i].role != other.vars_[i].role) return false;
  }
  return true;
}

bool same_table(const TablePtr& a, const TablePtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_table(const TablePtr& a, const TablePtr& b, std::string_view where) {
  if (!same_table(a, b)) {
    throw Error(Errc::table_mismatch, std::string(where) + ": operands live over different variable tables");
  }
}

}  // namespace iforge
