#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "iforge/pencil.hpp"

namespace iforge {

using Json = nlohmann::ordered_json;

/// {indices: [1-based positions in the declared variable list], coeff, den?}
struct ComponentRecord {
  std::vector<int> indices;
  std::string coeff;
  std::string den;  // empty means 1
};

/// coeff/den times the wedge of named 1-forms.
struct BasisTerm {
  std::string coeff;
  std::string den;
  std::vector<std::string> forms;
};

/// A 2-form given either by components or as a combination of named 1-forms.
struct FormSpec {
  std::vector<ComponentRecord> components;
  std::vector<BasisTerm> basis;
};

struct AnchorSpec {
  std::string kind;                                            // "symplectic" | "cosymplectic"
  std::vector<std::pair<std::string, std::string>> canonical;  // symplectic shorthand
  std::vector<ComponentRecord> bivector;
  std::vector<ComponentRecord> vartheta;
  std::vector<ComponentRecord> theta;
};

struct AnsatzSpec {
  std::vector<std::string> basis;
  std::vector<std::pair<std::string, std::string>> parameters;  // free parameter values for the special case
};

/// Parsed spec file. `expected` is validated and kept verbatim.
struct SpecFile {
  std::string name;
  std::vector<VarTable::Var> variables;
  AnchorSpec anchor;
  std::vector<std::pair<std::string, std::string>> family;
  std::vector<std::vector<std::string>> partition;
  std::vector<std::pair<std::string, std::vector<ComponentRecord>>> one_forms;
  std::optional<FormSpec> sigma0;
  std::optional<FormSpec> sigma1;
  std::optional<AnsatzSpec> ansatz;
  std::vector<std::pair<std::string, std::string>> special_case;
  Json expected = Json::object();
};

/// Validates against the schema. Throws Errc::schema with a JSON path.
SpecFile parse_spec(const Json& doc);
SpecFile parse_spec_text(std::string_view text);
Json to_json(const SpecFile& spec);

/// Everything a spec denotes, built over the declared table.
struct Instance {
  SpecFile spec;
  TablePtr table;       // declared variables
  TablePtr base_table;  // declared variables without s (same as table in the even case)
  AnchorInput anchor;
  FunctionFamily family;
  Partition partition;
  std::map<std::string, Form> one_forms;  // over `table`
  std::optional<Form> sigma0;             // over `table`
  std::optional<Form> sigma1;
  bool special_case_applied = false;
  std::vector<std::pair<std::size_t, RF>> substitutions;  // variable index -> value

  /// Parses an expression over `table` with the special case substituted when applied.
  RF expr(const std::string& num, const std::string& den = "") const;
  RF entry(const std::string& name_or_expr) const;
  RfMatrix matrix(const Json& rows, const TablePtr& target) const;
  Form form(const std::vector<ComponentRecord>& records, const TablePtr& target) const;
  MultiVector multivector(const std::vector<ComponentRecord>& records, const TablePtr& target) const;
  Form form(const FormSpec& spec) const;
  /// Throws Errc::schema when either σ is missing.
  SigmaPair sigma_pair() const;
  bool odd() const { return std::holds_alternative<LiftedAnchor>(anchor); }
};

/// Builds the instance; substitutes `special_case` values when requested.
Instance build_instance(const SpecFile& spec, bool apply_special_case = true);

std::vector<ComponentRecord> parse_records(const Json& j, const std::string& path);
Json records_to_json(const std::vector<ComponentRecord>& records);

/// Records of a form or multivector with canonical expression text.
template <GradedKind K>
Json graded_to_json(const Graded<K>& a);
/// Rows of canonical expression text.
Json matrix_to_json(const RfMatrix& m);

}  // namespace iforge
