#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "iforge/errors.hpp"
#include "iforge/fixtures.hpp"
#include "iforge/symexpr.hpp"
#include "iforge/verify.hpp"

namespace iforge::cli {

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::check, "check"},
    {Command::pencil, "pencil"},
    {Command::bracket, "bracket"},
    {Command::solve_ansatz, "solve-ansatz"},
    {Command::report, "report"},
};

Json verdict_json(const Verdict& v) {
  Json j = Json::object();
  j["name"] = v.name;
  j["pass"] = v.pass;
  if (!v.witness.empty()) j["witness"] = v.witness;
  return j;
}

// Collects every verdict that decides the exit status.
struct Tally {
  bool all_pass = true;
  Json list(const std::vector<Verdict>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(add(v));
    return out;
  }
  Json add(const Verdict& v) {
    all_pass = all_pass && v.pass;
    return verdict_json(v);
  }
};

Verdict equal_rf(std::string name, const RF& computed, const RF& expected) {
  Verdict v{std::move(name), computed == expected, ""};
  if (!v.pass) v.witness = "computed " + render(computed) + ", expected " + render(expected);
  return v;
}

Verdict equal_matrix(std::string name, const RfMatrix& computed, const RfMatrix& expected) {
  Verdict v{std::move(name), true, ""};
  if (computed.rows() != expected.rows() || computed.cols() != expected.cols()) {
    v.pass = false;
    v.witness = "shape " + std::to_string(expected.rows()) + "x" + std::to_string(expected.cols()) + ", expected " +
                std::to_string(computed.rows()) + "x" + std::to_string(computed.cols());
    return v;
  }
  for (std::size_t i = 0; i < computed.rows(); ++i) {
    for (std::size_t k = 0; k < computed.cols(); ++k) {
      if (!(computed(i, k) == expected(i, k))) {
        v.pass = false;
        v.witness = "entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "): computed " +
                    render(computed(i, k)) + ", expected " + render(expected(i, k));
        return v;
      }
    }
  }
  return v;
}

template <GradedKind K>
Verdict equal_graded(std::string name, const Graded<K>& computed, const Graded<K>& expected) {
  Verdict v{std::move(name), computed == expected, ""};
  if (!v.pass) {
    Graded<K> diff = computed - expected;
    v.witness = "computed - expected = " + describe(diff);
  }
  return v;
}

template <GradedKind K>
Graded<K> substitute_all(const Graded<K>& a, const std::vector<std::pair<std::size_t, RF>>& subs) {
  Graded<K> out(a.table(), a.degree());
  for (const auto& [s, c] : a.components()) {
    RF v = c;
    for (const auto& [var, value] : subs) v = v.substitute(var, value);
    if (!v.is_zero()) out.add_component(s, v);
  }
  return out;
}

std::string signed_name(int sign, const std::string& name) { return sign < 0 ? "-(" + name + ")" : name; }

Json pencil_json(const Setting& st, const Pencil& p, const std::optional<Form>& phi) {
  Json j = Json::object();
  j["Pi0"] = matrix_to_json(bivector_matrix(p.pi0));
  j["Pi1"] = matrix_to_json(bivector_matrix(p.pi1));
  j["F_lambda"] = render(p.F.value);
  j["g_lambda"] = render(p.g_lambda);
  j["sigma_lambda"] = graded_to_json(p.sigma_lambda);
  j["volume"] = graded_to_json(st.base_volume());
  j["Phi"] = phi ? graded_to_json(*phi) : Json(nullptr);
  return j;
}

Json certificate_json(const PencilCertificate& c, Tally& tally) {
  Json j = Json::object();
  j["pass"] = c.pass();
  j["seed"] = c.seed;
  Json vs = Json::array();
  for (const auto* v : c.verdicts()) vs.push_back(tally.add(*v));
  j["verdicts"] = vs;
  Json table = Json::array();
  for (const auto& row : c.involution) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(render(e));
    table.push_back(r);
  }
  j["involution"] = {{"names", c.family_names}, {"table", table}};
  Json sample = Json::object();
  for (const auto& [name, value] : c.sample) sample[name] = value;
  j["sample"] = sample;
  j["ranks"] = {{"Pi0", c.rank0}, {"Pi1", c.rank1}, {"pencil", c.rank_pencil}, {"expected", c.expected_rank}};
  return j;
}

std::vector<Verdict> conditions(const Setting& st, const SigmaPair& pair, std::uint64_t seed) {
  std::vector<Verdict> out = check_sigma_conditions(st.work, pair);
  for (auto& v : check_annihilation(st, pair)) out.push_back(std::move(v));
  for (auto& v : check_recursion(st, pair)) out.push_back(std::move(v));
  for (auto& v : check_sigma_rank(st, pair, seed)) out.push_back(std::move(v));
  return out;
}

MultiVector zero_bivector(const TablePtr& t) { return MultiVector(t, 2); }

// Comparisons against the spec's `expected` block.
std::vector<Verdict> expected_checks(const Instance& in, const Setting& st, const Pencil& p,
                                     const std::optional<Form>& phi, const PencilCertificate& cert) {
  const Json& e = in.spec.expected;
  const auto& base = st.base_table;
  std::vector<Verdict> out;
  if (e.contains("Pi0")) out.push_back(equal_matrix("Pi0 matches", bivector_matrix(p.pi0), in.matrix(e["Pi0"], base)));
  if (e.contains("Pi1")) out.push_back(equal_matrix("Pi1 matches", bivector_matrix(p.pi1), in.matrix(e["Pi1"], base)));
  if (e.contains("F_lambda")) {
    out.push_back(equal_rf("F(lambda) matches", p.F.value, in.expr(e["F_lambda"].get<std::string>()).rebase(base)));
  }
  if (e.contains("g_lambda")) {
    out.push_back(equal_rf("g(lambda) matches", p.g_lambda, in.expr(e["g_lambda"].get<std::string>()).rebase(base)));
  }
  if (e.contains("volume")) {
    out.push_back(equal_graded("volume form matches", st.base_volume(),
                               in.form(parse_records(e["volume"], "$.expected.volume"), base)));
  }
  if (e.contains("Phi")) {
    Form expected = in.form(parse_records(e["Phi"], "$.expected.Phi"), base);
    if (phi) {
      out.push_back(equal_graded("Phi(lambda) matches", *phi, expected));
    } else {
      out.push_back({"Phi(lambda) matches", false, "Phi(lambda) is not defined for r < 2"});
    }
  }
  if (e.contains("vector_fields")) {
    for (const auto& vf : e["vector_fields"]) {
      std::string name = vf["name"].get<std::string>();
      int sign = vf.value("sign", 1);
      MultiVector field = in.multivector(parse_records(vf["components"], "$.expected.vector_fields"), base);
      for (const auto& [which, fname] : vf["hamiltonians"].items()) {
        const MultiVector& pi = which == "Pi0" ? p.pi0 : p.pi1;
        RF f = in.entry(fname.get<std::string>()).rebase(base);
        MultiVector x = hamiltonian_vf(pi, f);
        out.push_back(equal_graded(which + "#(d" + fname.get<std::string>() + ") = " + signed_name(sign, name), x,
                                   field.scaled(RF(Polynomial(base, Rational(sign))))));
      }
    }
  }
  if (e.contains("casimirs")) {
    for (const auto& c : e["casimirs"]) {
      std::string which = c["bivector"].get<std::string>();
      std::string fname = c["function"].get<std::string>();
      std::string label = fname.size() > 24 ? fname.substr(0, 21) + "..." : fname;
      std::string name = label + " is a Casimir of " + which;
      if (which == "Pi0" || which == "Pi1") {
        RF f = in.entry(fname).rebase(base);
        out.push_back(casimir_check(zero_bivector(base), which == "Pi0" ? p.pi0 : p.pi1, f, name));
      } else if (which == "pencil") {
        out.push_back(casimir_check(p.pi0, p.pi1, in.entry(fname).rebase(base), name));
      } else if (!st.odd) {
        out.push_back({name, false, "lifted_pencil needs a cosymplectic anchor"});
      } else {
        out.push_back(casimir_check(p.work_pi0, p.work_pi1, in.entry(fname).rebase(st.work_table), name));
      }
    }
  }
  if (e.contains("rank")) {
    std::size_t rank = e["rank"].get<std::size_t>();
    Verdict v{"rank Pi0 = rank Pi(lambda) = " + std::to_string(rank) + " at the sample",
              cert.rank0 == rank && cert.rank_pencil == rank, ""};
    if (!v.pass) v.witness = "ranks " + std::to_string(cert.rank0) + ", " + std::to_string(cert.rank_pencil);
    out.push_back(std::move(v));
  }
  if (e.contains("cross_compatibility")) {
    std::map<std::string, MultiVector> named{{"Pi0", p.pi0}, {"Pi1", p.pi1}};
    if (e.contains("references")) {
      for (const auto& [name, rows] : e["references"].items()) {
        named.emplace(name, bivector_from_matrix(in.matrix(rows, base)));
      }
    }
    for (const auto& cc : e["cross_compatibility"]) {
      std::string a = cc["a"].get<std::string>(), b = cc["b"].get<std::string>();
      bool want = cc["compatible"].get<bool>();
      for (const auto& n : {a, b}) {
        if (!named.count(n)) throw Error(Errc::schema, "$.expected.cross_compatibility: unknown bivector '" + n + "'");
      }
      Verdict c = compatibility_check(named.at(a), named.at(b));
      Verdict v{"[" + a + "," + b + "] " + (want ? "= 0" : "!= 0"), c.pass == want, ""};
      if (!v.pass) v.witness = c.pass ? "bracket vanishes" : "first nonzero component " + c.witness;
      out.push_back(std::move(v));
    }
  }
  return out;
}

struct AnsatzResult {
  Json json;
  std::vector<Verdict> verdicts;
};

AnsatzResult run_ansatz(const SpecFile& spec, const Instance& special, std::uint64_t seed) {
  if (!spec.ansatz) throw Error(Errc::schema, "$.ansatz: required for solve-ansatz");
  Instance gen = build_instance(spec, false);
  if (!gen.sigma0) throw Error(Errc::schema, "$.sigma0: required for solve-ansatz");
  Setting st = make_setting(gen.anchor, gen.family, gen.partition, seed);
  std::vector<Form> basis;
  for (const auto& name : spec.ansatz->basis) {
    auto it = gen.one_forms.find(name);
    if (it == gen.one_forms.end()) throw Error(Errc::schema, "$.ansatz.basis: unknown 1-form '" + name + "'");
    basis.push_back(it->second.rebase(st.work_table));
  }
  AnsatzSolution sol = solve_recursion_ansatz(st, gen.sigma0->rebase(st.work_table), basis);

  AnsatzResult out;
  Json values = Json::object();
  for (std::size_t i = 0; i < sol.unknowns.size(); ++i) {
    values[sol.unknowns[i]] = {{"num", render(sol.values[i].num())}, {"den", render(sol.values[i].den())}};
  }
  out.json["unknowns"] = values;
  out.json["free_parameters"] = sol.free_parameters;

  auto unknown_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < sol.unknowns.size(); ++i) {
      if (sol.unknowns[i] == name) return i;
    }
    throw Error(Errc::schema, "$.expected: '" + name + "' is not an unknown of the ansatz");
  };
  const Json& e = spec.expected;
  if (e.contains("k_general")) {
    for (const auto& [name, rec] : e["k_general"].items()) {
      RF want = parse_rational(rec["num"].get<std::string>(), rec.value("den", std::string("1")), sol.table);
      out.verdicts.push_back(equal_rf(name + " general solution matches", sol.values[unknown_index(name)], want));
    }
  }

  // Special case: free parameters first, since their values may involve the constants.
  std::vector<std::pair<std::size_t, RF>> subs;
  for (const auto& [name, value] : spec.ansatz->parameters) {
    subs.emplace_back(sol.table->index_of(name), RF(parse_expr(value, sol.table)));
  }
  for (const auto& [name, value] : spec.special_case) {
    subs.emplace_back(sol.table->index_of(name), RF(parse_expr(value, sol.table)));
  }
  Json special_values = Json::object();
  for (std::size_t i = 0; i < sol.unknowns.size(); ++i) {
    RF v = sol.values[i];
    for (const auto& [var, value] : subs) v = v.substitute(var, value);
    special_values[sol.unknowns[i]] = render(v);
    if (e.contains("k_special") && e["k_special"].contains(sol.unknowns[i])) {
      RF want(parse_expr(e["k_special"][sol.unknowns[i]].get<std::string>(), sol.table));
      out.verdicts.push_back(equal_rf(sol.unknowns[i] + " special case matches", v, want));
    }
  }
  out.json["special_case"] = special_values;
  if (special.sigma1 && !spec.special_case.empty()) {
    Form s1 = substitute_all(sol.sigma1, subs).rebase(special.table);
    out.verdicts.push_back(equal_graded("ansatz sigma1 at the special case = sigma1", s1, *special.sigma1));
  }
  return out;
}

std::string read_file(const std::string& path, bool& found) {
  std::ifstream in(path, std::ios::binary);
  found = static_cast<bool>(in);
  if (!found) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome finish(Json report, bool all_pass, const Options& options) {
  Outcome out;
  out.status = all_pass ? ok : failed;
  report["status"] = all_pass ? "pass" : "fail";
  out.report = std::move(report);
  out.output = options.format == Format::summary ? summarize(out.report) : out.report.dump(2) + "\n";
  return out;
}

Outcome fail_input(Json report, std::string_view code, const std::string& message, const std::string& stage,
                   const Options& options) {
  report["error"] = {{"code", code}, {"stage", stage}, {"message", message}};
  report["status"] = "error";
  Outcome out;
  out.status = input_error;
  out.report = std::move(report);
  out.output = options.format == Format::summary ? summarize(out.report) : out.report.dump(2) + "\n";
  return out;
}

}  // namespace

std::optional<Command> parse_command(std::string_view text) {
  for (const auto& [c, name] : kCommands) {
    if (name == text) return c;
  }
  return std::nullopt;
}

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "";
}

Outcome run(Command command, const SpecFile& spec, const Options& options) {
  Json report = Json::object();
  report["command"] = command_name(command);
  report["spec"] = spec.name;
  report["seed"] = options.seed;
  std::string stage = "instance";
  Tally tally;
  try {
    Instance in = build_instance(spec);
    if (command == Command::solve_ansatz) {
      stage = "ansatz";
      AnsatzResult a = run_ansatz(spec, in, options.seed);
      a.json["verdicts"] = tally.list(a.verdicts);
      report["ansatz"] = a.json;
      return finish(std::move(report), tally.all_pass, options);
    }

    stage = "setting";
    Setting st = make_setting(in.anchor, in.family, in.partition, options.seed);
    report["setting"] = {{"dimension", st.base_table->dim()}, {"r", st.r}, {"k", st.k}, {"odd", st.odd}};
    SigmaPair pair = in.sigma_pair();
    if (command == Command::check || command == Command::pencil || command == Command::report) {
      stage = "conditions";
      report["conditions"] = tally.list(conditions(st, pair, options.seed));
    }
    if (command == Command::check) return finish(std::move(report), tally.all_pass, options);

    stage = "pencil";
    Pencil p = assemble_pencil(st, pair, options.seed, false);
    std::optional<Form> phi;
    if (st.r >= 2) {
      stage = "closed form";
      phi = phi_lambda(st, p);
    }

    if (command == Command::bracket || command == Command::report) {
      stage = "bracket";
      std::vector<std::pair<std::string, std::string>> pairs;
      if (command == Command::bracket) {
        if (!options.pair) throw Error(Errc::schema, "--pair f,h is required for the bracket command");
        pairs.push_back(*options.pair);
      } else {
        const auto& es = st.family.entries();
        for (std::size_t i = 0; i < es.size(); ++i) {
          for (std::size_t k = i + 1; k < es.size(); ++k) pairs.emplace_back(es[i].name, es[k].name);
        }
      }
      if (!phi) throw Error(Errc::rank_too_small, "the closed bracket formula needs r >= 2");
      Json list = Json::array();
      MultiVector pl = p.pi_lambda();
      for (const auto& [fn, hn] : pairs) {
        RF f = in.entry(fn).rebase(st.base_table);
        RF h = in.entry(hn).rebase(st.base_table);
        RF closed = bracket_closed_form(st, *phi, f, h);
        RF direct = bracket(pl, f, h);
        Json b = {{"f", fn}, {"h", hn}, {"value", render(closed)}};
        b["verdict"] = tally.add(equal_rf("closed form = contraction for {" + fn + "," + hn + "}", closed, direct));
        list.push_back(b);
      }
      report["brackets"] = list;
      if (command == Command::bracket) return finish(std::move(report), tally.all_pass, options);
    }

    report["pencil"] = pencil_json(st, p, phi);
    stage = "certificate";
    PencilCertificate cert = certify(st, p, options.seed);
    report["certificate"] = certificate_json(cert, tally);

    if (command == Command::report && spec.ansatz) {
      stage = "ansatz";
      AnsatzResult a = run_ansatz(spec, in, options.seed);
      a.json["verdicts"] = tally.list(a.verdicts);
      report["ansatz"] = a.json;
    }
    stage = "expected";
    report["expected"] = tally.list(expected_checks(in, st, p, phi, cert));
    return finish(std::move(report), tally.all_pass, options);
  } catch (const Error& err) {
    return fail_input(std::move(report), errc_name(err.code()), err.what(), stage, options);
  } catch (const std::exception& err) {
    return fail_input(std::move(report), "Error", err.what(), stage, options);
  }
}

Outcome run(Command command, const std::string& spec_path, const Options& options) {
  Json report = Json::object();
  report["command"] = command_name(command);
  report["spec"] = spec_path;
  report["seed"] = options.seed;
  SpecFile spec;
  try {
    bool found = false;
    std::string text = read_file(spec_path, found);
    spec = found ? parse_spec_text(text) : load_fixture(spec_path).spec;
  } catch (const Error& err) {
    std::string message = err.what();
    if (err.code() == Errc::unknown_fixture) message = "cannot read '" + spec_path + "' and no fixture has that name";
    return fail_input(std::move(report), errc_name(err.code()), message, "parse", options);
  }
  return run(command, spec, options);
}

std::string summarize(const Json& report) {
  std::ostringstream out;
  out << "spec " << report.value("spec", std::string()) << "  command " << report.value("command", std::string())
      << "  seed " << report.value("seed", 0) << "\n";
  auto lines = [&](const Json& vs) {
    for (const auto& v : vs) {
      out << (v["pass"].get<bool>() ? "PASS  " : "FAIL  ") << v["name"].get<std::string>();
      if (v.contains("witness")) out << ": " << v["witness"].get<std::string>();
      out << "\n";
    }
  };
  if (report.contains("conditions")) lines(report["conditions"]);
  if (report.contains("brackets")) {
    for (const auto& b : report["brackets"]) {
      out << "{" << b["f"].get<std::string>() << "," << b["h"].get<std::string>()
          << "}(lambda) = " << b["value"].get<std::string>() << "\n";
      lines(Json::array({b["verdict"]}));
    }
  }
  if (report.contains("certificate")) lines(report["certificate"]["verdicts"]);
  if (report.contains("ansatz")) {
    for (const auto& [name, v] : report["ansatz"]["unknowns"].items()) {
      out << name << " = (" << v["num"].get<std::string>() << ") / (" << v["den"].get<std::string>() << ")\n";
    }
    lines(report["ansatz"]["verdicts"]);
  }
  if (report.contains("expected")) lines(report["expected"]);
  if (report.contains("error")) {
    const Json& e = report["error"];
    out << "error (" << e["stage"].get<std::string>() << ") " << e["code"].get<std::string>() << ": "
        << e["message"].get<std::string>() << "\n";
  }
  out << "status: " << report.value("status", std::string()) << "\n";
  return out.str();
}

}  // namespace iforge::cli
