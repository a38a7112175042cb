#include "iforge/pencil.hpp"

#include <set>

#include "iforge/errors.hpp"
#include "iforge/symexpr.hpp"

namespace iforge {

FunctionFamily::FunctionFamily(TablePtr table, std::vector<FamilyEntry> entries)
    : table_(std::move(table)), entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (auto& e : entries_) {
    if (e.name.empty()) throw Error(Errc::schema, "family entry with an empty name");
    if (!seen.insert(e.name).second) throw Error(Errc::schema, "duplicate family entry '" + e.name + "'");
    require_same_table(table_, e.f.table(), "family entry");
  }
}

std::optional<std::size_t> FunctionFamily::find(const std::string& name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  return std::nullopt;
}

const RF& FunctionFamily::at(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error(Errc::unknown_variable, "unknown family entry '" + name + "'");
  return entries_[*i].f;
}

FunctionFamily FunctionFamily::rebase(const TablePtr& target) const {
  std::vector<FamilyEntry> out;
  for (const auto& e : entries_) out.push_back({e.name, e.f.rebase(target)});
  return FunctionFamily(target, std::move(out));
}

FunctionFamily FunctionFamily::with(FamilyEntry extra) const {
  auto out = entries_;
  out.push_back(std::move(extra));
  return FunctionFamily(table_, std::move(out));
}

namespace {

RF lambda_of(const TablePtr& t) {
  auto p = t->pencil_parameter();
  if (!p) throw Error(Errc::precondition, "no variable is declared as the pencil parameter");
  return RF(Polynomial::variable(t, *p));
}

RF one(const TablePtr& t) { return RF(t, Rational(1)); }

std::vector<Polynomial> denominators(const Form& a) {
  std::vector<Polynomial> out;
  for (const auto& [s, c] : a.components()) {
    if (!c.den().is_constant()) out.push_back(c.den());
  }
  return out;
}

std::vector<std::vector<Rational>> evaluate_matrix(const RfMatrix& m, const RationalPoint& pt) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) out[i][j] = m(i, j).evaluate(pt);
    }
  }
  return out;
}

std::string coord_name(const TablePtr& t, std::size_t ordinal) { return t->name(t->geo_var(ordinal)); }

}  // namespace

RF casimir_value(const FunctionFamily& family, const CasimirPolynomial& cp) {
  const auto& t = family.table();
  RF lam = lambda_of(t);
  RF acc(t);
  for (const auto& name : cp.coeffs) acc = acc * lam + family.at(name);
  return acc;
}

Setting make_setting(const AnchorInput& anchor, const FunctionFamily& family, const Partition& partition,
                     std::uint64_t seed) {
  Setting st{.odd = std::holds_alternative<LiftedAnchor>(anchor),
             .base_table = nullptr,
             .work_table = nullptr,
             .work = {},
             .lifted = std::nullopt,
             .family = family,
             .partition = partition,
             .work_family = family,
             .work_partition = partition};
  if (st.odd) {
    st.lifted = std::get<LiftedAnchor>(anchor);
    st.work = st.lifted->lifted;
    st.base_table = st.lifted->base.table;
  } else {
    st.work = std::get<SymplecticAnchor>(anchor);
    st.base_table = st.work.table;
  }
  st.work_table = st.work.table;
  st.family = family.rebase(st.base_table);

  if (partition.empty()) throw Error(Errc::precondition, "partition is empty");
  std::size_t dim = st.base_table->dim();
  std::size_t k = partition.size();
  if (k > dim || (dim - k) % 2 != 0) {
    throw Error(Errc::precondition, "dimension " + std::to_string(dim) + " minus " + std::to_string(k) +
                                        " Casimir polynomials is not even");
  }
  st.k = static_cast<unsigned>(k);
  st.r = static_cast<unsigned>((dim - k) / 2);
  st.l = st.k / 2;
  if (st.odd != (k % 2 == 1)) {
    throw Error(Errc::precondition, st.odd ? "a cosymplectic anchor needs an odd number of Casimir polynomials"
                                           : "a symplectic anchor needs an even number of Casimir polynomials");
  }
  std::set<std::string> used;
  unsigned degree_sum = 0;
  for (const auto& cp : partition) {
    if (cp.coeffs.empty()) throw Error(Errc::precondition, "empty Casimir polynomial in the partition");
    degree_sum += cp.degree();
    for (const auto& name : cp.coeffs) {
      st.family.at(name);
      if (!used.insert(name).second) throw Error(Errc::precondition, "family entry '" + name + "' used twice");
    }
  }
  for (const auto& e : st.family.entries()) {
    if (!used.count(e.name)) throw Error(Errc::precondition, "family entry '" + e.name + "' is not in the partition");
  }
  if (degree_sum != st.r) {
    throw Error(Errc::precondition, "partition degrees sum to " + std::to_string(degree_sum) + ", expected r = " +
                                        std::to_string(st.r));
  }

  // Functional independence at a sampled point.
  Sampler sampler(seed);
  std::vector<RF> fs;
  for (const auto& e : st.family.entries()) fs.push_back(e.f);
  RationalPoint pt = sampler.point_avoiding(st.base_table, fs);
  std::vector<std::vector<Rational>> jac;
  for (const auto& f : fs) {
    std::vector<Rational> row;
    for (std::size_t c = 0; c < dim; ++c) row.push_back(f.derivative(st.base_table->geo_var(c)).evaluate(pt));
    jac.push_back(std::move(row));
  }
  if (rank_of(jac) != fs.size()) {
    throw Error(Errc::rank_drop, "family is not functionally independent at the sampled point");
  }

  if (st.odd) {
    auto s_var = *st.work_table->appended_coordinate();
    const std::string& s_name = st.work_table->name(s_var);
    if (st.family.find(s_name)) throw Error(Errc::precondition, "family entry name '" + s_name + "' is reserved");
    st.work_family = st.family.rebase(st.work_table).with({s_name, RF(Polynomial::variable(st.work_table, s_var))});
    st.work_partition.push_back(CasimirPolynomial{{s_name}});
  } else {
    st.work_family = st.family;
  }
  return st;
}

FLambda compute_F_lambda(const Setting& st, std::uint64_t seed) {
  const auto& t = st.base_table;
  Form acc = Form::scalar(one(t));
  for (const auto& cp : st.partition) acc = wedge(acc, differential(casimir_value(st.family, cp)));
  MultiVector pw = divided_power(st.base_lambda(), st.l);
  if (st.odd) pw = wedge(st.lifted->base.reeb, pw);
  RF value = pairing(acc, pw);

  std::size_t lam = *t->pencil_parameter();
  if (value.den().depends_on(lam)) throw Error(Errc::precondition, "F(lambda) has a lambda-dependent denominator");
  auto coeffs = value.num().coefficients_in(lam);
  auto coeff = [&](std::size_t d) {
    return d < coeffs.size() ? RF(coeffs[d], value.den()) : RF(t);
  };
  FLambda out{value, coeff(st.r), coeff(0)};

  Sampler sampler(seed);
  RationalPoint pt = sampler.point_avoiding(t, {value});
  if (out.leading.is_zero() || sgn(out.leading.evaluate(pt)) == 0) {
    throw Error(Errc::degenerate_leading, "leading coefficient F_0 of F(lambda) vanishes: " + render(out.leading));
  }
  if (out.trailing.is_zero() || sgn(out.trailing.evaluate(pt)) == 0) {
    throw Error(Errc::degenerate_trailing, "trailing coefficient F_r of F(lambda) vanishes: " + render(out.trailing));
  }
  return out;
}

std::vector<MultiVector> distribution(const Setting& st, const std::vector<RF>& functions) {
  std::vector<MultiVector> out;
  for (const auto& f : functions) out.push_back(hamiltonian_vf(st.work.lambda_bi, f));
  return out;
}

std::vector<RF> leading_functions(const Setting& st) {
  std::vector<RF> out;
  for (const auto& cp : st.work_partition) out.push_back(st.work_family.at(cp.coeffs.front()));
  return out;
}

std::vector<RF> trailing_functions(const Setting& st) {
  std::vector<RF> out;
  for (const auto& cp : st.work_partition) out.push_back(st.work_family.at(cp.coeffs.back()));
  return out;
}

std::vector<Form> annihilator_basis(const std::vector<MultiVector>& generators) {
  if (generators.empty()) throw Error(Errc::precondition, "annihilator of an empty generator list needs a table");
  const auto& t = generators.front().table();
  std::size_t dim = t->dim();
  RfMatrix m(t, generators.size(), dim);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    require_same_table(t, generators[i].table(), "annihilator_basis");
    for (std::size_t c = 0; c < dim; ++c) m(i, c) = generators[i].component(IndexSet{1} << c);
  }
  if (m.rank() != generators.size()) throw Error(Errc::rank_drop, "distribution generators are dependent");
  std::vector<Form> out;
  for (const auto& v : m.nullspace()) {
    Form a(t, 1);
    for (std::size_t c = 0; c < dim; ++c) a.add_component(IndexSet{1} << c, v[c]);
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

Verdict verdict_of(std::string name, const Form& residual) {
  Verdict v{std::move(name), residual.is_zero(), ""};
  if (!v.pass) v.witness = describe(residual);
  return v;
}

}  // namespace

std::vector<Verdict> check_sigma_conditions(const SymplecticAnchor& anchor, const SigmaPair& pair) {
  const Form& s0 = pair.sigma0;
  const Form& s1 = pair.sigma1;
  Form d0 = codifferential(anchor, s0);
  Form d1 = codifferential(anchor, s1);
  RF two(anchor.table, Rational(2));
  std::vector<Verdict> out;
  out.push_back(verdict_of("delta(s0^s0) = 2 s0^delta(s0)",
                           codifferential(anchor, wedge(s0, s0)) - wedge(s0, d0).scaled(two)));
  out.push_back(verdict_of("delta(s1^s1) = 2 s1^delta(s1)",
                           codifferential(anchor, wedge(s1, s1)) - wedge(s1, d1).scaled(two)));
  out.push_back(verdict_of("delta(s0^s1) = delta(s0)^s1 + s0^delta(s1)",
                           codifferential(anchor, wedge(s0, s1)) - wedge(d0, s1) - wedge(s0, d1)));
  return out;
}

std::vector<Verdict> check_annihilation(const Setting& st, const SigmaPair& pair) {
  std::vector<Verdict> out;
  for (const auto& cp : st.work_partition) {
    const auto& lead = cp.coeffs.front();
    const auto& trail = cp.coeffs.back();
    auto x0 = hamiltonian_vf(st.work.lambda_bi, st.work_family.at(lead));
    auto x1 = hamiltonian_vf(st.work.lambda_bi, st.work_family.at(trail));
    out.push_back(verdict_of("s0(X_" + lead + ", .) = 0", interior(x0, pair.sigma0)));
    out.push_back(verdict_of("s1(X_" + trail + ", .) = 0", interior(x1, pair.sigma1)));
  }
  return out;
}

std::vector<Verdict> check_recursion(const Setting& st, const SigmaPair& pair) {
  std::vector<Verdict> out;
  for (const auto& cp : st.work_partition) {
    for (std::size_t j = 1; j < cp.coeffs.size(); ++j) {
      auto xj = hamiltonian_vf(st.work.lambda_bi, st.work_family.at(cp.coeffs[j]));
      auto xp = hamiltonian_vf(st.work.lambda_bi, st.work_family.at(cp.coeffs[j - 1]));
      out.push_back(verdict_of("s0(X_" + cp.coeffs[j] + ", .) = s1(X_" + cp.coeffs[j - 1] + ", .)",
                               interior(xj, pair.sigma0) - interior(xp, pair.sigma1)));
    }
  }
  return out;
}

std::vector<Verdict> check_sigma_rank(const Setting& st, const SigmaPair& pair, std::uint64_t seed) {
  Sampler sampler(seed);
  auto guards = denominators(pair.sigma0);
  auto g1 = denominators(pair.sigma1);
  guards.insert(guards.end(), g1.begin(), g1.end());
  RationalPoint pt = sampler.point(st.work_table, guards);
  std::vector<Verdict> out;
  const std::pair<const char*, const Form*> items[] = {{"rank s0 = 2r", &pair.sigma0}, {"rank s1 = 2r", &pair.sigma1}};
  for (const auto& [name, form] : items) {
    std::size_t rank = rank_of(evaluate_matrix(two_form_matrix(*form), pt));
    Verdict v{name, rank == 2 * st.r, ""};
    if (!v.pass) v.witness = "rank " + std::to_string(rank) + ", expected " + std::to_string(2 * st.r);
    out.push_back(std::move(v));
  }
  return out;
}

AnsatzSolution solve_recursion_ansatz(const Setting& st, const Form& sigma0, const std::vector<Form>& basis) {
  const auto& t = st.work_table;
  require_same_table(t, sigma0.table(), "solve_recursion_ansatz");
  std::size_t dim = t->dim();
  AnsatzSolution sol;
  std::vector<Form> products;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    require_same_table(t, basis[a].table(), "ansatz basis");
    if (basis[a].degree() != 1) throw Error(Errc::degree, "ansatz basis forms must be 1-forms");
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      sol.pairs.emplace_back(a, b);
      sol.unknowns.push_back("k" + std::to_string(a + 1) + std::to_string(b + 1));
      products.push_back(wedge(basis[a], basis[b]));
    }
  }
  std::size_t nunk = products.size();

  struct Row {
    std::string label;
    std::vector<RF> coeffs;
    RF rhs;
  };
  std::vector<Row> rows;
  for (const auto& cp : st.work_partition) {
    for (std::size_t j = 1; j < cp.coeffs.size(); ++j) {
      auto xj = hamiltonian_vf(st.work.lambda_bi, st.work_family.at(cp.coeffs[j]));
      auto xp = hamiltonian_vf(st.work.lambda_bi, st.work_family.at(cp.coeffs[j - 1]));
      Form rhs = interior(xj, sigma0);
      std::vector<Form> lhs;
      for (const auto& p : products) lhs.push_back(interior(xp, p));
      for (std::size_t c = 0; c < dim; ++c) {
        IndexSet bit = IndexSet{1} << c;
        Row row{"s0(X_" + cp.coeffs[j] + ") = s1(X_" + cp.coeffs[j - 1] + ") along d" + coord_name(t, c), {},
                rhs.component(bit)};
        bool any = !row.rhs.is_zero();
        for (const auto& l : lhs) {
          row.coeffs.push_back(l.component(bit));
          any = any || !row.coeffs.back().is_zero();
        }
        if (any) rows.push_back(std::move(row));
      }
    }
  }
  RfMatrix m(t, rows.size(), nunk);
  std::vector<RF> rhs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t u = 0; u < nunk; ++u) m(i, u) = rows[i].coeffs[u];
    rhs.push_back(rows[i].rhs);
  }
  LinearSolution ls = solve_linear(m, rhs);
  if (!ls.consistent) {
    throw Error(Errc::inconsistent, "recursion ansatz has no solution: equation '" + rows[*ls.conflict_row].label +
                                        "' reduces to 0 = nonzero");
  }
  std::vector<VarTable::Var> extra;
  for (auto f : ls.free_cols) {
    if (t->find(sol.unknowns[f])) {
      throw Error(Errc::schema, "free parameter name '" + sol.unknowns[f] + "' clashes with a declared variable");
    }
    extra.push_back({sol.unknowns[f], VarRole::constant});
    sol.free_parameters.push_back(sol.unknowns[f]);
  }
  sol.table = extra.empty() ? t : t->extended(extra);
  std::vector<RF> free_vals;
  for (const auto& name : sol.free_parameters) free_vals.push_back(RF(Polynomial::variable(sol.table, name)));
  sol.values.assign(nunk, RF(sol.table));
  for (std::size_t f = 0; f < ls.free_cols.size(); ++f) sol.values[ls.free_cols[f]] = free_vals[f];
  for (auto c : ls.pivot_cols) {
    RF v = ls.particular[c].rebase(sol.table);
    for (std::size_t f = 0; f < ls.free_cols.size(); ++f) {
      if (!ls.coupling[c][f].is_zero()) v -= ls.coupling[c][f].rebase(sol.table) * free_vals[f];
    }
    sol.values[c] = v;
  }
  sol.sigma1 = Form(sol.table, 2);
  for (std::size_t u = 0; u < nunk; ++u) {
    if (!sol.values[u].is_zero()) sol.sigma1 += products[u].rebase(sol.table).scaled(sol.values[u]);
  }
  return sol;
}

MultiVector Pencil::pi_lambda() const { return pi1 - pi0.scaled(lambda_of(pi0.table())); }
MultiVector Pencil::work_pi_lambda() const { return work_pi1 - work_pi0.scaled(lambda_of(work_pi0.table())); }

RF g_of(const MultiVector& lambda_bi, const Form& sigma) {
  // i_Λσ contracts Λ's last slot first, which is minus the full pairing.
  return -pairing(sigma, lambda_bi);
}

Pencil assemble_pencil(const Setting& st, const SigmaPair& pair, std::uint64_t seed, bool checked) {
  require_same_table(st.work_table, pair.sigma0.table(), "assemble_pencil sigma0");
  require_same_table(st.work_table, pair.sigma1.table(), "assemble_pencil sigma1");
  if (checked) {
    std::vector<Verdict> all = check_annihilation(st, pair);
    for (auto& v : check_recursion(st, pair)) all.push_back(std::move(v));
    for (auto& v : check_sigma_rank(st, pair, seed)) all.push_back(std::move(v));
    for (auto& v : check_sigma_conditions(st.work, pair)) all.push_back(std::move(v));
    for (const auto& v : all) {
      if (!v.pass) throw Error(Errc::precondition, "condition '" + v.name + "' fails: " + v.witness);
    }
  }
  Pencil p{MultiVector(st.base_table, 2), MultiVector(st.base_table, 2),
           sharp(st.work, pair.sigma0),   sharp(st.work, pair.sigma1),
           Form(st.base_table, 2),        RF(st.base_table),
           compute_F_lambda(st, seed)};
  Form sl = pair.sigma1 - pair.sigma0.scaled(lambda_of(st.work_table));
  if (st.odd) {
    p.pi0 = reduce_bivector(p.work_pi0, st.base_table);
    p.pi1 = reduce_bivector(p.work_pi1, st.base_table);
    p.sigma_lambda = reduce_form(decompose_prime(sl).sigma, st.base_table);
  } else {
    p.pi0 = p.work_pi0;
    p.pi1 = p.work_pi1;
    p.sigma_lambda = sl;
  }
  p.g_lambda = g_of(st.base_lambda(), p.sigma_lambda);
  return p;
}

Form phi_lambda(const Setting& st, const Pencil& pencil) {
  if (st.r < 2) throw Error(Errc::rank_too_small, "closed bracket formula needs r >= 2, got r = " + std::to_string(st.r));
  const auto& t = st.base_table;
  const Form& w = st.base_omega();
  Form inner = pencil.sigma_lambda + w.scaled(pencil.g_lambda * Rational(1, st.r - 1));
  Form acc = wedge(inner, divided_power(w, st.r - 2));
  for (const auto& cp : st.partition) acc = wedge(acc, differential(casimir_value(st.family, cp)));
  const RF& F = pencil.F.value;
  Form out(t, acc.degree());
  for (const auto& [s, c] : acc.components()) {
    auto q = (c.num() * F.den()).divide_exact(F.num());
    if (!q) {
      throw Error(Errc::non_exact_division, "component " + describe(Form::basis(t, indices_of(s), c)) +
                                                " is not divisible by F(lambda)");
    }
    out.add_component(s, -RF(*q, c.den()));
  }
  return out;
}

RF bracket_closed_form(const Setting& st, const Form& phi, const RF& f, const RF& h) {
  const auto& vol = st.base_volume();
  Form top = wedge(wedge(differential(f), differential(h)), phi);
  IndexSet full = static_cast<IndexSet>((std::uint64_t{1} << st.base_table->dim()) - 1);
  return top.component(full) / vol.component(full);
}

RF jacobian_bracket(const std::vector<RF>& functions, const RF& prefactor, const Form& volume, const RF& g,
                    const RF& h) {
  const auto& t = volume.table();
  std::size_t dim = t->dim();
  if (dim != functions.size() + 2 || static_cast<std::size_t>(volume.degree()) != dim) {
    throw Error(Errc::dimension_mismatch, "jacobian bracket needs dim = #functions + 2 and a top-degree volume");
  }
  IndexSet full = static_cast<IndexSet>((std::uint64_t{1} << dim) - 1);
  RF vol = volume.component(full);
  if (vol.is_zero()) throw Error(Errc::degenerate_volume, "volume form vanishes");
  Form acc = wedge(differential(g), differential(h));
  for (const auto& c : functions) acc = wedge(acc, differential(c));
  return prefactor * acc.component(full) / vol;
}

}  // namespace iforge
