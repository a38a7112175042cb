#include "iforge/verify.hpp"

#include "iforge/errors.hpp"
#include "iforge/symexpr.hpp"

namespace iforge {

namespace {

template <GradedKind K>
std::string first_component(const Graded<K>& a) {
  if (a.is_zero()) return "";
  const auto& [s, c] = *a.components().begin();
  Graded<K> single(a.table(), a.degree());
  single.add_component(s, c);
  std::string w = describe(single);
  if (a.components().size() > 1) w += " (+" + std::to_string(a.components().size() - 1) + " more)";
  return w;
}

template <GradedKind K>
Verdict zero_verdict(std::string name, const Graded<K>& residual) {
  Verdict v{std::move(name), residual.is_zero(), ""};
  if (!v.pass) v.witness = first_component(residual);
  return v;
}

MultiVector pencil_of(const MultiVector& pi0, const MultiVector& pi1) {
  if (pi0.is_zero()) return pi1;
  const auto& t = pi0.table();
  auto lam = t->pencil_parameter();
  if (!lam) throw Error(Errc::precondition, "no variable is declared as the pencil parameter");
  return pi1 - pi0.scaled(RF(Polynomial::variable(t, *lam)));
}

}  // namespace

Verdict jacobi_check(const MultiVector& pi, std::string name) {
  return zero_verdict(std::move(name), schouten(pi, pi));
}

Verdict casimir_check(const MultiVector& pi0, const MultiVector& pi1, const RF& f, std::string name) {
  return zero_verdict(std::move(name), hamiltonian_vf(pencil_of(pi0, pi1), f));
}

std::vector<std::vector<RF>> involution_table(const MultiVector& pi0, const MultiVector& pi1,
                                              const FunctionFamily& family) {
  MultiVector pl = pencil_of(pi0, pi1);
  std::size_t n = family.size();
  std::vector<std::vector<RF>> out(n, std::vector<RF>(n, RF(family.table())));
  for (std::size_t i = 0; i < n; ++i) {
    MultiVector x = hamiltonian_vf(pl, family.entries()[i].f);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) out[i][j] = pairing(differential(family.entries()[j].f), x);
    }
  }
  return out;
}

std::vector<Verdict> lenard_magri_check(const MultiVector& pi0, const MultiVector& pi1, const std::vector<RF>& chain,
                                        const std::vector<std::string>& names) {
  auto label = [&](std::size_t i) { return i < names.size() ? names[i] : "f" + std::to_string(i); };
  std::vector<Verdict> out;
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    out.push_back(zero_verdict("Pi0#(d" + label(j + 1) + ") = Pi1#(d" + label(j) + ")",
                               hamiltonian_vf(pi0, chain[j + 1]) - hamiltonian_vf(pi1, chain[j])));
  }
  return out;
}

Verdict compatibility_check(const MultiVector& a, const MultiVector& b, std::string name) {
  return zero_verdict(std::move(name), schouten(a, b));
}

std::size_t rank_at_point(const MultiVector& pi, const RationalPoint& pt) {
  std::size_t n = pi.dim();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (const auto& [s, c] : pi.components()) {
    auto idx = indices_of(s);
    Rational v = c.evaluate(pt);
    m[idx[0]][idx[1]] = v;
    m[idx[1]][idx[0]] = -v;
  }
  return rank_of(std::move(m));
}

bool PencilCertificate::pass() const {
  for (const auto* v : verdicts()) {
    if (!v->pass) return false;
  }
  return true;
}

std::vector<const Verdict*> PencilCertificate::verdicts() const {
  std::vector<const Verdict*> out{&jacobi0, &jacobi1, &jacobi_pencil, &compatibility, &involution_verdict};
  for (const auto& v : casimirs) out.push_back(&v);
  for (const auto& v : lenard_magri) out.push_back(&v);
  for (const auto& v : bi_involution) out.push_back(&v);
  out.push_back(&rank_at_sample);
  out.push_back(&rank_upper_bound);
  out.push_back(&det_identity);
  out.push_back(&formula_equivalence);
  return out;
}

Verdict formula_equivalence(const Setting& st, const Pencil& pencil) {
  Verdict v{"closed formula = contraction on coordinate pairs", true, ""};
  if (st.r < 2) {
    v.witness = "not applicable: r < 2";
    return v;
  }
  Form phi = phi_lambda(st, pencil);
  MultiVector pl = pencil.pi_lambda();
  const auto& t = st.base_table;
  for (std::size_t i = 0; i < t->dim(); ++i) {
    RF xi(Polynomial::variable(t, t->geo_var(i)));
    for (std::size_t j = i + 1; j < t->dim(); ++j) {
      RF xj(Polynomial::variable(t, t->geo_var(j)));
      RF closed = bracket_closed_form(st, phi, xi, xj);
      RF direct = pl.at({i, j});
      if (!(closed == direct)) {
        v.pass = false;
        v.witness = "{" + t->name(t->geo_var(i)) + "," + t->name(t->geo_var(j)) + "}: formula " + render(closed) +
                    " vs contraction " + render(direct);
        return v;
      }
    }
  }
  return v;
}

Verdict determinant_identity(const Setting& st, const Pencil& pencil) {
  const auto& t = st.work_table;
  std::vector<RF> fs;
  for (const auto& cp : st.work_partition) fs.push_back(casimir_value(st.work_family, cp));
  RfMatrix m(t, fs.size(), fs.size());
  std::vector<MultiVector> xs;
  for (const auto& f : fs) xs.push_back(hamiltonian_vf(st.work.lambda_bi, f));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (i != j) m(i, j) = pairing(differential(fs[j]), xs[i]);
    }
  }
  RF det = m.determinant();
  RF f = pencil.F.value.rebase(t);
  RF sq = f * f;
  Verdict v{"F(lambda)^2 = det({F^i, F^j})", det == sq, ""};
  if (!v.pass) v.witness = "det = " + render(det) + ", F^2 = " + render(sq);
  return v;
}

PencilCertificate certify(const Setting& st, const Pencil& pencil, std::uint64_t seed) {
  PencilCertificate c;
  c.seed = seed;
  const auto& t = st.base_table;
  MultiVector pl = pencil.pi_lambda();
  c.jacobi0 = jacobi_check(pencil.pi0, "[Pi0,Pi0] = 0");
  c.jacobi1 = jacobi_check(pencil.pi1, "[Pi1,Pi1] = 0");
  c.jacobi_pencil = jacobi_check(pl, "[Pi(lambda),Pi(lambda)] = 0");
  c.compatibility = compatibility_check(pencil.pi0, pencil.pi1, "[Pi0,Pi1] = 0");

  std::vector<RF> casimir_values;
  for (std::size_t i = 0; i < st.partition.size(); ++i) {
    RF f = casimir_value(st.family, st.partition[i]);
    casimir_values.push_back(f);
    c.casimirs.push_back(casimir_check(pencil.pi0, pencil.pi1, f, "F" + std::to_string(i + 1) + "(lambda) Casimir"));
  }
  if (st.odd) {
    const auto& s_name = st.work_partition.back().coeffs.front();
    c.casimirs.push_back(casimir_check(pencil.work_pi0, pencil.work_pi1, st.work_family.at(s_name),
                                       s_name + " Casimir of the lifted pencil"));
  }

  for (const auto& e : st.family.entries()) c.family_names.push_back(e.name);
  c.involution = involution_table(pencil.pi0, pencil.pi1, st.family);
  c.involution_verdict = {"family in involution under Pi(lambda)", true, ""};
  for (std::size_t i = 0; i < c.involution.size() && c.involution_verdict.pass; ++i) {
    for (std::size_t j = 0; j < c.involution.size(); ++j) {
      if (!c.involution[i][j].is_zero()) {
        c.involution_verdict.pass = false;
        c.involution_verdict.witness =
            "{" + c.family_names[i] + "," + c.family_names[j] + "} = " + render(c.involution[i][j]);
        break;
      }
    }
  }

  for (const auto& cp : st.partition) {
    std::vector<RF> chain;
    for (const auto& name : cp.coeffs) chain.push_back(st.family.at(name));
    for (auto& v : lenard_magri_check(pencil.pi0, pencil.pi1, chain, cp.coeffs)) c.lenard_magri.push_back(std::move(v));
  }

  for (std::size_t a = 0; a < st.partition.size(); ++a) {
    for (std::size_t b = a + 1; b < st.partition.size(); ++b) {
      for (const auto& fa : st.partition[a].coeffs) {
        for (const auto& fb : st.partition[b].coeffs) {
          const RF& f = st.family.at(fa);
          const RF& h = st.family.at(fb);
          RF b0 = bracket(pencil.pi0, f, h);
          RF b1 = bracket(pencil.pi1, f, h);
          Verdict v{"{" + fa + "," + fb + "}_0 = {" + fa + "," + fb + "}_1 = 0", b0.is_zero() && b1.is_zero(), ""};
          if (!v.pass) v.witness = "{,}_0 = " + render(b0) + ", {,}_1 = " + render(b1);
          c.bi_involution.push_back(std::move(v));
        }
      }
    }
  }

  // Sampled rank facts.
  std::vector<Polynomial> guards;
  for (const auto* p : {&pencil.pi0, &pencil.pi1}) {
    for (const auto& [s, v] : p->components()) {
      if (!v.den().is_constant()) guards.push_back(v.den());
    }
  }
  Sampler sampler(seed);
  RationalPoint pt = sampler.point(t, guards);
  for (std::size_t i = 0; i < t->size(); ++i) c.sample.emplace_back(t->name(i), pt[i].get_str());
  c.expected_rank = 2 * st.r;
  c.rank0 = rank_at_point(pencil.pi0, pt);
  c.rank1 = rank_at_point(pencil.pi1, pt);
  c.rank_pencil = rank_at_point(pl, pt);
  c.rank_at_sample = {"rank Pi0 = rank Pi1 = rank Pi(lambda) = 2r at the sample",
                      c.rank0 == c.expected_rank && c.rank1 == c.expected_rank && c.rank_pencil == c.expected_rank,
                      ""};
  if (!c.rank_at_sample.pass) {
    c.rank_at_sample.witness = "ranks " + std::to_string(c.rank0) + ", " + std::to_string(c.rank1) + ", " +
                               std::to_string(c.rank_pencil) + "; expected " + std::to_string(c.expected_rank);
  }
  std::vector<std::vector<Rational>> jac;
  for (const auto& f : casimir_values) {
    std::vector<Rational> row;
    for (std::size_t k = 0; k < t->dim(); ++k) row.push_back(f.derivative(t->geo_var(k)).evaluate(pt));
    jac.push_back(std::move(row));
  }
  bool casimirs_ok = true;
  for (std::size_t i = 0; i < st.partition.size(); ++i) casimirs_ok = casimirs_ok && c.casimirs[i].pass;
  std::size_t jrank = rank_of(jac);
  c.rank_upper_bound = {"rank Pi(lambda) <= 2r: k Casimirs independent at the sample",
                        casimirs_ok && jrank == st.k, ""};
  if (!c.rank_upper_bound.pass) {
    c.rank_upper_bound.witness = "Casimir differentials have rank " + std::to_string(jrank) + ", expected " +
                                 std::to_string(st.k);
  }

  c.det_identity = determinant_identity(st, pencil);
  c.formula_equivalence = formula_equivalence(st, pencil);
  return c;
}

}  // namespace iforge
