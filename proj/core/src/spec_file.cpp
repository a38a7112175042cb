#include "iforge/spec_file.hpp"

#include <set>

#include "iforge/errors.hpp"
#include "iforge/symexpr.hpp"

namespace iforge {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(Errc::schema, path + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing required key '") + key + "'");
  return *it;
}

void expect_object(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
}

void expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) schema_error(path, "unknown key '" + k + "'");
  }
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::pair<std::string, std::string>> string_map(const Json& j, const std::string& path) {
  expect_object(j, path);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : j.items()) out.emplace_back(k, get_string(v, path + "." + k));
  return out;
}

Json string_map_json(const std::vector<std::pair<std::string, std::string>>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

void check_matrix(const Json& j, const std::string& path) {
  expect_array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto row = path + "[" + std::to_string(i) + "]";
    expect_array(j[i], row);
    if (j[i].size() != j.size()) schema_error(row, "matrix must be square");
    string_list(j[i], row);
  }
}

FormSpec parse_form_spec(const Json& j, const std::string& path) {
  expect_object(j, path);
  reject_unknown(j, {"components", "basis"}, path);
  FormSpec fs;
  bool has_c = j.contains("components"), has_b = j.contains("basis");
  if (has_c == has_b) schema_error(path, "give exactly one of 'components' or 'basis'");
  if (has_c) fs.components = parse_records(j["components"], path + ".components");
  if (has_b) {
    const Json& b = j["basis"];
    expect_array(b, path + ".basis");
    for (std::size_t i = 0; i < b.size(); ++i) {
      auto p = path + ".basis[" + std::to_string(i) + "]";
      expect_object(b[i], p);
      reject_unknown(b[i], {"coeff", "den", "forms"}, p);
      BasisTerm t;
      t.coeff = get_string(require(b[i], "coeff", p), p + ".coeff");
      if (b[i].contains("den")) t.den = get_string(b[i]["den"], p + ".den");
      t.forms = string_list(require(b[i], "forms", p), p + ".forms");
      if (t.forms.empty()) schema_error(p + ".forms", "must not be empty");
      fs.basis.push_back(std::move(t));
    }
  }
  return fs;
}

Json form_spec_json(const FormSpec& fs) {
  Json j = Json::object();
  if (!fs.basis.empty() || fs.components.empty()) {
    if (fs.basis.empty()) {
      j["components"] = Json::array();
      return j;
    }
    Json b = Json::array();
    for (const auto& t : fs.basis) {
      Json e = Json::object();
      e["coeff"] = t.coeff;
      if (!t.den.empty()) e["den"] = t.den;
      e["forms"] = t.forms;
      b.push_back(std::move(e));
    }
    j["basis"] = std::move(b);
  } else {
    j["components"] = records_to_json(fs.components);
  }
  return j;
}

void check_expected(const Json& e, const std::string& path) {
  expect_object(e, path);
  reject_unknown(e,
                 {"Pi0", "Pi1", "F_lambda", "g_lambda", "Phi", "volume", "k_general", "k_special", "vector_fields",
                  "casimirs", "rank", "references", "cross_compatibility"},
                 path);
  for (const char* m : {"Pi0", "Pi1"}) {
    if (e.contains(m)) check_matrix(e[m], path + "." + m);
  }
  for (const char* s : {"F_lambda", "g_lambda"}) {
    if (e.contains(s)) get_string(e[s], path + "." + s);
  }
  for (const char* r : {"Phi", "volume"}) {
    if (e.contains(r)) parse_records(e[r], path + "." + r);
  }
  if (e.contains("k_general")) {
    const Json& k = e["k_general"];
    expect_object(k, path + ".k_general");
    for (const auto& [name, v] : k.items()) {
      auto p = path + ".k_general." + name;
      expect_object(v, p);
      reject_unknown(v, {"num", "den"}, p);
      get_string(require(v, "num", p), p + ".num");
      if (v.contains("den")) get_string(v["den"], p + ".den");
    }
  }
  if (e.contains("k_special")) string_map(e["k_special"], path + ".k_special");
  if (e.contains("vector_fields")) {
    const Json& vf = e["vector_fields"];
    expect_array(vf, path + ".vector_fields");
    for (std::size_t i = 0; i < vf.size(); ++i) {
      auto p = path + ".vector_fields[" + std::to_string(i) + "]";
      expect_object(vf[i], p);
      reject_unknown(vf[i], {"name", "components", "hamiltonians", "sign"}, p);
      get_string(require(vf[i], "name", p), p + ".name");
      parse_records(require(vf[i], "components", p), p + ".components");
      auto hs = string_map(require(vf[i], "hamiltonians", p), p + ".hamiltonians");
      for (const auto& [bv, f] : hs) {
        if (bv != "Pi0" && bv != "Pi1") schema_error(p + ".hamiltonians." + bv, "expected Pi0 or Pi1");
      }
      if (vf[i].contains("sign")) {
        const Json& s = vf[i]["sign"];
        if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
          schema_error(p + ".sign", "expected 1 or -1");
        }
      }
    }
  }
  if (e.contains("casimirs")) {
    const Json& cs = e["casimirs"];
    expect_array(cs, path + ".casimirs");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      auto p = path + ".casimirs[" + std::to_string(i) + "]";
      expect_object(cs[i], p);
      reject_unknown(cs[i], {"bivector", "function"}, p);
      auto bv = get_string(require(cs[i], "bivector", p), p + ".bivector");
      if (bv != "Pi0" && bv != "Pi1" && bv != "pencil" && bv != "lifted_pencil") {
        schema_error(p + ".bivector", "expected Pi0, Pi1, pencil or lifted_pencil");
      }
      get_string(require(cs[i], "function", p), p + ".function");
    }
  }
  if (e.contains("rank") && !e["rank"].is_number_integer()) schema_error(path + ".rank", "expected an integer");
  if (e.contains("references")) {
    const Json& r = e["references"];
    expect_object(r, path + ".references");
    for (const auto& [name, m] : r.items()) check_matrix(m, path + ".references." + name);
  }
  if (e.contains("cross_compatibility")) {
    const Json& cc = e["cross_compatibility"];
    expect_array(cc, path + ".cross_compatibility");
    for (std::size_t i = 0; i < cc.size(); ++i) {
      auto p = path + ".cross_compatibility[" + std::to_string(i) + "]";
      expect_object(cc[i], p);
      reject_unknown(cc[i], {"a", "b", "compatible"}, p);
      get_string(require(cc[i], "a", p), p + ".a");
      get_string(require(cc[i], "b", p), p + ".b");
      if (!require(cc[i], "compatible", p).is_boolean()) schema_error(p + ".compatible", "expected a boolean");
    }
  }
}

}  // namespace

std::vector<ComponentRecord> parse_records(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<ComponentRecord> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto p = path + "[" + std::to_string(i) + "]";
    expect_object(j[i], p);
    reject_unknown(j[i], {"indices", "coeff", "den"}, p);
    ComponentRecord r;
    const Json& idx = require(j[i], "indices", p);
    expect_array(idx, p + ".indices");
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (!idx[k].is_number_integer() || idx[k].get<int>() < 1) {
        schema_error(p + ".indices[" + std::to_string(k) + "]", "expected a positive integer");
      }
      r.indices.push_back(idx[k].get<int>());
    }
    r.coeff = get_string(require(j[i], "coeff", p), p + ".coeff");
    if (j[i].contains("den")) r.den = get_string(j[i]["den"], p + ".den");
    out.push_back(std::move(r));
  }
  return out;
}

Json records_to_json(const std::vector<ComponentRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) {
    Json e = Json::object();
    e["indices"] = r.indices;
    e["coeff"] = r.coeff;
    if (!r.den.empty()) e["den"] = r.den;
    out.push_back(std::move(e));
  }
  return out;
}

SpecFile parse_spec(const Json& doc) {
  const std::string root = "$";
  expect_object(doc, root);
  reject_unknown(doc,
                 {"name", "variables", "anchor", "family", "partition", "one_forms", "sigma0", "sigma1", "ansatz",
                  "special_case", "expected"},
                 root);
  SpecFile s;
  s.name = doc.contains("name") ? get_string(doc["name"], "$.name") : "";

  const Json& vars = require(doc, "variables", root);
  expect_array(vars, "$.variables");
  if (vars.empty()) schema_error("$.variables", "must not be empty");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto p = "$.variables[" + std::to_string(i) + "]";
    expect_object(vars[i], p);
    reject_unknown(vars[i], {"name", "role"}, p);
    VarTable::Var v;
    v.name = get_string(require(vars[i], "name", p), p + ".name");
    if (vars[i].contains("role")) {
      auto role = parse_role(get_string(vars[i]["role"], p + ".role"));
      if (!role) schema_error(p + ".role", "expected manifold, pencil_parameter, appended_coordinate or constant");
      v.role = *role;
    }
    s.variables.push_back(std::move(v));
  }

  const Json& a = require(doc, "anchor", root);
  expect_object(a, "$.anchor");
  s.anchor.kind = get_string(require(a, "kind", "$.anchor"), "$.anchor.kind");
  if (s.anchor.kind == "symplectic") {
    reject_unknown(a, {"kind", "bivector", "pairs"}, "$.anchor");
    const Json& b = require(a, "bivector", "$.anchor");
    if (b.is_string()) {
      if (b.get<std::string>() != "canonical") schema_error("$.anchor.bivector", "expected \"canonical\" or records");
      const Json& pairs = require(a, "pairs", "$.anchor");
      expect_array(pairs, "$.anchor.pairs");
      if (pairs.empty()) schema_error("$.anchor.pairs", "must not be empty");
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto p = "$.anchor.pairs[" + std::to_string(i) + "]";
        auto names = string_list(pairs[i], p);
        if (names.size() != 2) schema_error(p, "expected a pair of variable names");
        s.anchor.canonical.emplace_back(names[0], names[1]);
      }
    } else {
      if (a.contains("pairs")) schema_error("$.anchor.pairs", "only valid with \"canonical\"");
      s.anchor.bivector = parse_records(b, "$.anchor.bivector");
    }
  } else if (s.anchor.kind == "cosymplectic") {
    reject_unknown(a, {"kind", "vartheta", "theta"}, "$.anchor");
    s.anchor.vartheta = parse_records(require(a, "vartheta", "$.anchor"), "$.anchor.vartheta");
    s.anchor.theta = parse_records(require(a, "theta", "$.anchor"), "$.anchor.theta");
  } else {
    schema_error("$.anchor.kind", "expected \"symplectic\" or \"cosymplectic\"");
  }

  const Json& fam = require(doc, "family", root);
  expect_array(fam, "$.family");
  if (fam.empty()) schema_error("$.family", "must not be empty");
  for (std::size_t i = 0; i < fam.size(); ++i) {
    auto p = "$.family[" + std::to_string(i) + "]";
    expect_object(fam[i], p);
    reject_unknown(fam[i], {"name", "expr"}, p);
    s.family.emplace_back(get_string(require(fam[i], "name", p), p + ".name"),
                          get_string(require(fam[i], "expr", p), p + ".expr"));
  }

  const Json& part = require(doc, "partition", root);
  expect_array(part, "$.partition");
  if (part.empty()) schema_error("$.partition", "must not be empty");
  for (std::size_t i = 0; i < part.size(); ++i) {
    auto p = "$.partition[" + std::to_string(i) + "]";
    auto names = string_list(part[i], p);
    if (names.empty()) schema_error(p, "must not be empty");
    s.partition.push_back(std::move(names));
  }

  if (doc.contains("one_forms")) {
    const Json& of = doc["one_forms"];
    expect_object(of, "$.one_forms");
    for (const auto& [name, recs] : of.items()) {
      auto p = "$.one_forms." + name;
      auto r = parse_records(recs, p);
      for (const auto& rec : r) {
        if (rec.indices.size() != 1) schema_error(p, "1-form records take exactly one index");
      }
      s.one_forms.emplace_back(name, std::move(r));
    }
  }
  if (doc.contains("sigma0")) s.sigma0 = parse_form_spec(doc["sigma0"], "$.sigma0");
  if (doc.contains("sigma1")) s.sigma1 = parse_form_spec(doc["sigma1"], "$.sigma1");
  if (doc.contains("ansatz")) {
    const Json& an = doc["ansatz"];
    expect_object(an, "$.ansatz");
    reject_unknown(an, {"basis", "parameters"}, "$.ansatz");
    AnsatzSpec as;
    as.basis = string_list(require(an, "basis", "$.ansatz"), "$.ansatz.basis");
    if (an.contains("parameters")) as.parameters = string_map(an["parameters"], "$.ansatz.parameters");
    s.ansatz = std::move(as);
  }
  if (doc.contains("special_case")) s.special_case = string_map(doc["special_case"], "$.special_case");
  if (doc.contains("expected")) {
    check_expected(doc["expected"], "$.expected");
    s.expected = doc["expected"];
  }
  return s;
}

SpecFile parse_spec_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::schema, std::string("$: malformed JSON: ") + e.what());
  }
  return parse_spec(doc);
}

Json to_json(const SpecFile& s) {
  Json j = Json::object();
  if (!s.name.empty()) j["name"] = s.name;
  Json vars = Json::array();
  for (const auto& v : s.variables) {
    Json e = Json::object();
    e["name"] = v.name;
    if (v.role != VarRole::manifold) e["role"] = std::string(role_name(v.role));
    vars.push_back(std::move(e));
  }
  j["variables"] = std::move(vars);
  Json a = Json::object();
  a["kind"] = s.anchor.kind;
  if (s.anchor.kind == "symplectic") {
    if (!s.anchor.canonical.empty()) {
      a["bivector"] = "canonical";
      Json pairs = Json::array();
      for (const auto& [x, y] : s.anchor.canonical) pairs.push_back({x, y});
      a["pairs"] = std::move(pairs);
    } else {
      a["bivector"] = records_to_json(s.anchor.bivector);
    }
  } else {
    a["vartheta"] = records_to_json(s.anchor.vartheta);
    a["theta"] = records_to_json(s.anchor.theta);
  }
  j["anchor"] = std::move(a);
  Json fam = Json::array();
  for (const auto& [name, expr] : s.family) fam.push_back(Json{{"name", name}, {"expr", expr}});
  j["family"] = std::move(fam);
  j["partition"] = s.partition;
  if (!s.one_forms.empty()) {
    Json of = Json::object();
    for (const auto& [name, recs] : s.one_forms) of[name] = records_to_json(recs);
    j["one_forms"] = std::move(of);
  }
  if (s.sigma0) j["sigma0"] = form_spec_json(*s.sigma0);
  if (s.sigma1) j["sigma1"] = form_spec_json(*s.sigma1);
  if (s.ansatz) {
    Json an = Json::object();
    an["basis"] = s.ansatz->basis;
    if (!s.ansatz->parameters.empty()) an["parameters"] = string_map_json(s.ansatz->parameters);
    j["ansatz"] = std::move(an);
  }
  if (!s.special_case.empty()) j["special_case"] = string_map_json(s.special_case);
  if (!s.expected.empty()) j["expected"] = s.expected;
  return j;
}

RF Instance::expr(const std::string& num, const std::string& den) const {
  RF v = den.empty() ? RF(parse_expr(num, table)) : RF(parse_expr(num, table), parse_expr(den, table));
  for (const auto& [var, value] : substitutions) v = v.substitute(var, value);
  return v;
}

RF Instance::entry(const std::string& name_or_expr) const {
  if (family.find(name_or_expr)) return family.at(name_or_expr);
  return expr(name_or_expr);
}

RfMatrix Instance::matrix(const Json& rows, const TablePtr& target) const {
  RfMatrix m(target, rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = expr(rows[i][k].get<std::string>()).rebase(target);
  }
  return m;
}

namespace {

std::vector<std::size_t> record_ordinals(const SpecFile& spec, const ComponentRecord& r, const TablePtr& target) {
  std::vector<std::size_t> ords;
  for (int i : r.indices) {
    if (static_cast<std::size_t>(i) > spec.variables.size()) {
      throw Error(Errc::schema, "index " + std::to_string(i) + " exceeds the number of declared variables");
    }
    const auto& name = spec.variables[i - 1].name;
    auto ord = target->geo_ordinal(name);
    if (!ord) throw Error(Errc::schema, "index " + std::to_string(i) + " (" + name + ") is not a differential here");
    ords.push_back(*ord);
  }
  return ords;
}

}  // namespace

Form Instance::form(const std::vector<ComponentRecord>& records, const TablePtr& target) const {
  if (records.empty()) throw Error(Errc::schema, "empty component list has no degree; use an explicit zero record");
  Form out(target, static_cast<int>(records.front().indices.size()));
  for (const auto& r : records) {
    if (r.indices.size() != records.front().indices.size()) throw Error(Errc::schema, "records of mixed degree");
    out += Form::basis(target, record_ordinals(spec, r, target), expr(r.coeff, r.den).rebase(target));
  }
  return out;
}

MultiVector Instance::multivector(const std::vector<ComponentRecord>& records, const TablePtr& target) const {
  if (records.empty()) throw Error(Errc::schema, "empty component list has no degree; use an explicit zero record");
  MultiVector out(target, static_cast<int>(records.front().indices.size()));
  for (const auto& r : records) {
    if (r.indices.size() != records.front().indices.size()) throw Error(Errc::schema, "records of mixed degree");
    out += MultiVector::basis(target, record_ordinals(spec, r, target), expr(r.coeff, r.den).rebase(target));
  }
  return out;
}

Form Instance::form(const FormSpec& fs) const {
  if (!fs.components.empty()) return form(fs.components, table);
  Form out(table, 2);
  bool first = true;
  for (const auto& t : fs.basis) {
    Form acc = Form::scalar(expr(t.coeff, t.den));
    for (const auto& name : t.forms) {
      auto it = one_forms.find(name);
      if (it == one_forms.end()) throw Error(Errc::schema, "unknown one-form '" + name + "'");
      acc = wedge(acc, it->second);
    }
    if (first) out = Form(table, acc.degree());
    first = false;
    out += acc;
  }
  return out;
}

SigmaPair Instance::sigma_pair() const {
  if (!sigma0 || !sigma1) throw Error(Errc::schema, "$.sigma0/$.sigma1: both forms are required for this command");
  return SigmaPair{*sigma0, *sigma1};
}

Instance build_instance(const SpecFile& spec, bool apply_special_case) {
  Instance in{spec, VarTable::create(spec.variables), nullptr, {}, FunctionFamily(nullptr, {}), {}, {}, {}, {}, false,
              {}};
  const auto& t = in.table;
  if (apply_special_case) {
    for (const auto& [name, value] : spec.special_case) {
      std::size_t var = t->index_of(name);
      if (t->role(var) != VarRole::constant) {
        throw Error(Errc::schema, "$.special_case." + name + ": only constants can be specialized");
      }
      in.substitutions.emplace_back(var, in.expr(value));
    }
    in.special_case_applied = !spec.special_case.empty();
  }

  bool odd = spec.anchor.kind == "cosymplectic";
  auto s_var = t->appended_coordinate();
  if (odd && !s_var) throw Error(Errc::schema, "$.variables: a cosymplectic anchor needs an appended_coordinate");
  if (!odd && s_var) throw Error(Errc::schema, "$.variables: appended_coordinate is only valid with a cosymplectic anchor");
  in.base_table = odd ? t->without(t->name(*s_var)) : t;

  std::vector<FamilyEntry> entries;
  for (const auto& [name, e] : spec.family) entries.push_back({name, in.expr(e)});
  in.family = FunctionFamily(t, std::move(entries));
  for (const auto& cp : spec.partition) in.partition.push_back(CasimirPolynomial{cp});

  if (odd) {
    Form vartheta = in.form(spec.anchor.vartheta, in.base_table);
    Form theta = in.form(spec.anchor.theta, in.base_table);
    in.anchor = lift(build_cosymplectic(vartheta, theta), t);
  } else if (!spec.anchor.canonical.empty()) {
    in.anchor = build_symplectic(canonical_bivector(t, spec.anchor.canonical));
  } else {
    in.anchor = build_symplectic(in.multivector(spec.anchor.bivector, t));
  }

  for (const auto& [name, recs] : spec.one_forms) in.one_forms.emplace(name, in.form(recs, t));
  if (spec.sigma0) in.sigma0 = in.form(*spec.sigma0);
  if (spec.sigma1) in.sigma1 = in.form(*spec.sigma1);
  return in;
}

template <GradedKind K>
Json graded_to_json(const Graded<K>& a) {
  const auto& t = a.table();
  Json out = Json::array();
  for (const auto& [s, c] : a.components()) {
    Json e = Json::object();
    Json idx = Json::array();
    for (auto k : indices_of(s)) idx.push_back(static_cast<int>(t->geo_var(k) + 1));
    e["indices"] = std::move(idx);
    e["coeff"] = render(c.num());
    if (!c.den().is_one()) e["den"] = render(c.den());
    out.push_back(std::move(e));
  }
  return out;
}

template Json graded_to_json(const Form&);
template Json graded_to_json(const MultiVector&);

Json matrix_to_json(const RfMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(render(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace iforge
