#include "iforge/polynomial.hpp"

#include <algorithm>

#include "iforge/errors.hpp"

namespace iforge {

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exp.size(); ++i) {
    if (exp[i] > other.exp[i]) return false;
  }
  return true;
}

bool Monomial::is_one() const {
  for (auto e : exp) {
    if (e) return false;
  }
  return true;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < m.exp.size(); ++i) {
    unsigned e = unsigned(a.exp[i]) + b.exp[i];
    if (e > 255) throw Error(Errc::overflow, "exponent exceeds 255");
    m.exp[i] = static_cast<std::uint8_t>(e);
  }
  return m;
}

Monomial monomial_div(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < m.exp.size(); ++i) m.exp[i] = static_cast<std::uint8_t>(a.exp[i] - b.exp[i]);
  return m;
}

namespace {

bool term_greater(const Polynomial::Term& a, const Polynomial::Term& b) { return a.mono > b.mono; }

// Sorts descending and merges equal monomials, dropping zeros.
std::vector<Polynomial::Term> canonicalize(std::vector<Polynomial::Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  std::vector<Polynomial::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  return out;
}

std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a,
                                    const std::vector<Polynomial::Term>& b, bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(TablePtr table, const Rational& constant) : table_(std::move(table)) {
  if (sgn(constant) != 0) terms_.push_back({Monomial{}, constant});
}

Polynomial Polynomial::variable(TablePtr table, std::size_t index) {
  if (index >= table->size()) throw Error(Errc::unknown_variable, "variable index out of range");
  Monomial m;
  m.exp[index] = 1;
  return monomial(std::move(table), m, Rational(1));
}

Polynomial Polynomial::variable(TablePtr table, std::string_view name) {
  auto i = table->index_of(name);
  return variable(std::move(table), i);
}

Polynomial Polynomial::monomial(TablePtr table, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(table));
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(TablePtr table, std::vector<Term> terms) {
  Polynomial p(std::move(table));
  p.terms_ = canonicalize(std::move(terms));
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Polynomial::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

Rational Polynomial::leading_coeff() const {
  return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

bool Polynomial::depends_on(std::size_t var) const {
  for (const auto& t : terms_) {
    if (t.mono.exp[var]) return true;
  }
  return false;
}

std::uint64_t Polynomial::variable_mask() const {
  std::uint64_t mask = 0;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < VarTable::kMaxVars; ++i) {
      if (t.mono.exp[i]) mask |= std::uint64_t{1} << i;
    }
  }
  return mask;
}

void Polynomial::check_table(const Polynomial& other, const char* where) const {
  require_same_table(table_, other.table_, where);
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_table(other, "polynomial add");
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge(terms_, other.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_table(other, "polynomial sub");
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_table(b, "polynomial mul");
  Polynomial out(a.table_);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (b.terms_.size() == 1) {
    out.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
      out.terms_.push_back({monomial_mul(t.mono, b.terms_[0].mono), t.coeff * b.terms_[0].coeff});
    }
    return out;  // multiplying by one monomial preserves the order
  }
  if (a.terms_.size() == 1) return b * a;
  std::vector<Polynomial::Term> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) prods.push_back({monomial_mul(s.mono, t.mono), s.coeff * t.coeff});
  }
  out.terms_ = canonicalize(std::move(prods));
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(table_, Rational(1));
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  check_table(divisor, "polynomial division");
  if (divisor.is_zero()) throw Error(Errc::division_by_zero, "polynomial division by zero");
  Polynomial quotient(table_);
  if (is_zero()) return quotient;
  if (divisor.terms_.size() == 1) {
    const auto& d = divisor.terms_[0];
    Rational inv = 1 / d.coeff;
    quotient.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!d.mono.divides(t.mono)) return std::nullopt;
      quotient.terms_.push_back({monomial_div(t.mono, d.mono), t.coeff * inv});
    }
    return quotient;
  }
  const auto& lead = divisor.terms_.front();
  Polynomial rem = *this;
  std::vector<Term> qterms;
  while (!rem.is_zero()) {
    const auto& lt = rem.terms_.front();
    if (!lead.mono.divides(lt.mono)) return std::nullopt;
    Term q{monomial_div(lt.mono, lead.mono), lt.coeff / lead.coeff};
    rem -= divisor * Polynomial::monomial(table_, q.mono, q.coeff);
    qterms.push_back(std::move(q));
  }
  quotient.terms_ = canonicalize(std::move(qterms));
  return quotient;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= table_->size()) throw Error(Errc::unknown_variable, "derivative: variable index out of range");
  if (!table_->is_geometric(var)) {
    throw Error(Errc::forbidden_variable,
                "cannot differentiate with respect to '" + table_->name(var) + "' (" +
                    std::string(role_name(table_->role(var))) + ")");
  }
  return derivative_unchecked(var);
}

Polynomial Polynomial::derivative_unchecked(std::size_t var) const {
  Polynomial out(table_);
  for (const auto& t : terms_) {
    auto e = t.mono.exp[var];
    if (!e) continue;
    Monomial m = t.mono;
    m.exp[var] = static_cast<std::uint8_t>(e - 1);
    out.terms_.push_back({m, t.coeff * e});
  }
  // Lowering one exponent keeps lexicographic order among the survivors.
  return out;
}

Rational Polynomial::evaluate(const RationalPoint& pt) const {
  require_same_table(table_, pt.table(), "evaluate");
  Rational sum(0);
  std::vector<std::vector<Rational>> powers(table_->size());
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < table_->size(); ++i) {
      auto e = t.mono.exp[i];
      if (!e) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Rational(1));
      while (cache.size() <= e) cache.push_back(cache.back() * pt[i]);
      v *= cache[e];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term u = t;
    auto e = u.mono.exp[var];
    if (e) {
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), e);
      p.canonicalize();
      u.coeff *= p;
      u.mono.exp[var] = 0;
    }
    out.push_back(std::move(u));
  }
  return from_terms(table_, std::move(out));
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  check_table(value, "substitute");
  auto coeffs = coefficients_in(var);
  Polynomial result(table_);
  for (std::size_t d = coeffs.size(); d-- > 0;) {
    result = result * value + coeffs[d];
  }
  return result;
}

Polynomial Polynomial::rebase(const TablePtr& target) const {
  if (same_table(table_, target)) {
    Polynomial p = *this;
    p.table_ = target;
    return p;
  }
  std::vector<int> map(table_->size(), -1);
  for (std::size_t i = 0; i < table_->size(); ++i) {
    if (auto j = target->find(table_->name(i))) map[i] = static_cast<int>(*j);
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < table_->size(); ++i) {
      if (!t.mono.exp[i]) continue;
      if (map[i] < 0) {
        throw Error(Errc::unknown_variable, "rebase: variable '" + table_->name(i) + "' absent from target table");
      }
      m.exp[map[i]] = t.mono.exp[i];
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(target, std::move(out));
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Term u = t;
    auto e = u.mono.exp[var];
    u.mono.exp[var] = 0;
    buckets[e].push_back(std::move(u));
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    Polynomial p(table_);
    // Clearing the same slot on every term of a bucket keeps the order.
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

Polynomial Polynomial::from_coefficients(const TablePtr& table, std::size_t var,
                                         const std::vector<Polynomial>& coeffs) {
  std::vector<Term> out;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    for (const auto& t : coeffs[d].terms_) {
      Term u = t;
      u.mono.exp[var] = static_cast<std::uint8_t>(u.mono.exp[var] + d);
      out.push_back(std::move(u));
    }
  }
  return from_terms(table, std::move(out));
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_.front().coeff == 1) return *this;
  return *this * Rational(1 / terms_.front().coeff);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_table(a.table_, b.table_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

RationalPoint::RationalPoint(TablePtr table, std::vector<Rational> values)
    : table_(std::move(table)), values_(std::move(values)) {
  if (values_.size() != table_->size()) {
    throw Error(Errc::dimension_mismatch, "rational point has " + std::to_string(values_.size()) +
                                              " values for " + std::to_string(table_->size()) + " variables");
  }
}

}  // namespace iforge
