#include "iforge/exterior.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "iforge/errors.hpp"
#include "iforge/linalg.hpp"
#include "iforge/symexpr.hpp"

namespace iforge {

std::vector<std::size_t> indices_of(IndexSet s) {
  std::vector<std::size_t> out;
  for (; s; s &= s - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
  return out;
}

IndexSet index_set(const std::vector<std::size_t>& sorted_ordinals) {
  IndexSet s = 0;
  for (auto k : sorted_ordinals) s |= IndexSet{1} << k;
  return s;
}

int wedge_sign(IndexSet a, IndexSet b) {
  int count = 0;
  for (; b; b &= b - 1) {
    int k = std::countr_zero(b);
    count += std::popcount(k >= 31 ? IndexSet{0} : (a >> (k + 1)));
  }
  return (count & 1) ? -1 : 1;
}

namespace {

// Sorts ordinals in place; returns 0 on a repeated index, else the sign.
int sort_with_sign(std::vector<std::size_t>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace

template <GradedKind K>
Graded<K>::Graded(TablePtr table, int degree) : table_(std::move(table)), degree_(degree) {
  if (table_->dim() > 32) throw Error(Errc::overflow, "forms support at most 32 geometric variables");
}

template <GradedKind K>
Graded<K> Graded<K>::scalar(const RF& value) {
  Graded g(value.table(), 0);
  if (!value.is_zero()) g.comps_.emplace(IndexSet{0}, value);
  return g;
}

template <GradedKind K>
Graded<K> Graded<K>::basis(TablePtr table, const std::vector<std::size_t>& ordinals, const RF& coeff) {
  Graded g(table, static_cast<int>(ordinals.size()));
  auto v = ordinals;
  for (auto k : v) {
    if (k >= table->dim()) throw Error(Errc::dimension_mismatch, "index " + std::to_string(k + 1) + " exceeds dimension");
  }
  int sign = sort_with_sign(v);
  if (sign == 0 || coeff.is_zero()) return g;
  g.comps_.emplace(index_set(v), sign > 0 ? coeff : -coeff);
  return g;
}

template <GradedKind K>
RF Graded<K>::component(IndexSet s) const {
  auto it = comps_.find(s);
  return it == comps_.end() ? RF(table_) : it->second;
}

template <GradedKind K>
RF Graded<K>::at(const std::vector<std::size_t>& ordinals) const {
  auto v = ordinals;
  int sign = sort_with_sign(v);
  if (sign == 0) return RF(table_);
  RF c = component(index_set(v));
  return sign > 0 ? c : -c;
}

template <GradedKind K>
RF Graded<K>::value() const {
  if (degree_ != 0) throw Error(Errc::degree, "value() of a non-scalar element");
  return component(0);
}

template <GradedKind K>
void Graded<K>::add_component(IndexSet s, const RF& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = comps_.emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

template <GradedKind K>
Graded<K> Graded<K>::operator-() const {
  Graded g = *this;
  for (auto& [s, c] : g.comps_) c = -c;
  return g;
}

template <GradedKind K>
Graded<K>& Graded<K>::operator+=(const Graded& o) {
  require_same_table(table_, o.table_, "graded add");
  if (o.degree_ != degree_) throw Error(Errc::degree, "adding elements of different degree");
  for (const auto& [s, c] : o.comps_) add_component(s, c);
  return *this;
}

template <GradedKind K>
Graded<K>& Graded<K>::operator-=(const Graded& o) {
  require_same_table(table_, o.table_, "graded sub");
  if (o.degree_ != degree_) throw Error(Errc::degree, "subtracting elements of different degree");
  for (const auto& [s, c] : o.comps_) add_component(s, -c);
  return *this;
}

template <GradedKind K>
Graded<K> Graded<K>::scaled(const RF& c) const {
  Graded g(table_, degree_);
  if (c.is_zero()) return g;
  for (const auto& [s, v] : comps_) {
    RF p = v * c;
    if (!p.is_zero()) g.comps_.emplace(s, std::move(p));
  }
  return g;
}

template <GradedKind K>
Graded<K> Graded<K>::rebase(const TablePtr& target) const {
  Graded g(target, degree_);
  for (const auto& [s, c] : comps_) {
    std::vector<std::size_t> mapped;
    for (auto k : indices_of(s)) {
      auto ord = target->geo_ordinal(table_->name(table_->geo_var(k)));
      if (!ord) {
        throw Error(Errc::unknown_variable,
                    "rebase: differential d" + table_->name(table_->geo_var(k)) + " has no counterpart");
      }
      mapped.push_back(*ord);
    }
    int sign = sort_with_sign(mapped);
    RF v = c.rebase(target);
    g.add_component(index_set(mapped), sign > 0 ? v : -v);
  }
  return g;
}

template <GradedKind K>
Graded<K> wedge(const Graded<K>& a, const Graded<K>& b) {
  require_same_table(a.table(), b.table(), "wedge");
  Graded<K> out(a.table(), a.degree() + b.degree());
  if (static_cast<std::size_t>(out.degree()) > a.dim()) return out;
  for (const auto& [sa, ca] : a.components()) {
    for (const auto& [sb, cb] : b.components()) {
      if (sa & sb) continue;
      RF p = ca * cb;
      out.add_component(sa | sb, wedge_sign(sa, sb) > 0 ? p : -p);
    }
  }
  return out;
}

template <GradedKind K>
Graded<K> divided_power(const Graded<K>& a, unsigned k) {
  Graded<K> acc = Graded<K>::scalar(RF(a.table(), Rational(1)));
  for (unsigned i = 1; i <= k; ++i) {
    acc = wedge(acc, a).scaled(RF(a.table(), Rational(1, i)));
  }
  return acc;
}

template class Graded<GradedKind::form>;
template class Graded<GradedKind::multivector>;
template Form wedge(const Form&, const Form&);
template MultiVector wedge(const MultiVector&, const MultiVector&);
template Form divided_power(const Form&, unsigned);
template MultiVector divided_power(const MultiVector&, unsigned);

Form differential(const RF& f) {
  const auto& t = f.table();
  Form out(t, 1);
  for (std::size_t k = 0; k < t->dim(); ++k) {
    RF dk = f.derivative(t->geo_var(k));
    out.add_component(IndexSet{1} << k, dk);
  }
  return out;
}

Form exterior_derivative(const Form& a) {
  const auto& t = a.table();
  Form out(t, a.degree() + 1);
  for (const auto& [s, c] : a.components()) {
    for (std::size_t k = 0; k < t->dim(); ++k) {
      IndexSet bit = IndexSet{1} << k;
      if (s & bit) continue;
      RF dk = c.derivative(t->geo_var(k));
      if (dk.is_zero()) continue;
      out.add_component(s | bit, wedge_sign(bit, s) > 0 ? dk : -dk);
    }
  }
  return out;
}

Form interior(const MultiVector& p, const Form& a) {
  require_same_table(p.table(), a.table(), "interior");
  if (p.degree() > a.degree()) {
    throw Error(Errc::degree, "interior: multivector degree " + std::to_string(p.degree()) +
                                  " exceeds form degree " + std::to_string(a.degree()));
  }
  Form out(a.table(), a.degree() - p.degree());
  for (const auto& [si, pi] : p.components()) {
    for (const auto& [sj, aj] : a.components()) {
      if ((si & sj) != si) continue;
      IndexSet rest = sj & ~si;
      RF v = pi * aj;
      out.add_component(rest, wedge_sign(si, rest) > 0 ? v : -v);
    }
  }
  return out;
}

RF pairing(const Form& a, const MultiVector& p) {
  if (a.degree() != p.degree()) throw Error(Errc::degree, "pairing requires equal degrees");
  return interior(p, a).value();
}

namespace {

MultiVector schouten_vector(const MultiVector& x, const MultiVector& q) {
  const auto& t = q.table();
  std::size_t n = t->dim();
  MultiVector out(t, q.degree());
  std::vector<RF> xs(n, RF(t));
  for (std::size_t l = 0; l < n; ++l) xs[l] = x.component(IndexSet{1} << l);
  // dX[a][l] = d_l X^a
  std::vector<std::vector<RF>> dx(n, std::vector<RF>(n, RF(t)));
  for (std::size_t a = 0; a < n; ++a) {
    if (xs[a].is_zero()) continue;
    for (std::size_t l = 0; l < n; ++l) dx[a][l] = xs[a].derivative(t->geo_var(l));
  }
  int deg = q.degree();
  if (static_cast<std::size_t>(deg) > n) return out;
  // Enumerate all index sets of size deg.
  for (IndexSet s = 0; s < (IndexSet{1} << n); ++s) {
    if (std::popcount(s) != deg) continue;
    auto idx = indices_of(s);
    RF acc(t);
    RF qs = q.component(s);
    if (!qs.is_zero()) {
      for (std::size_t l = 0; l < n; ++l) {
        if (!xs[l].is_zero()) acc += xs[l] * qs.derivative(t->geo_var(l));
      }
    }
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      std::size_t a = idx[pos];
      for (std::size_t l = 0; l < n; ++l) {
        if (dx[a][l].is_zero()) continue;
        auto repl = idx;
        repl[pos] = l;
        RF ql = q.at(repl);
        if (!ql.is_zero()) acc -= ql * dx[a][l];
      }
    }
    out.add_component(s, acc);
  }
  return out;
}

MultiVector schouten_bivectors(const MultiVector& p, const MultiVector& q) {
  const auto& t = p.table();
  std::size_t n = t->dim();
  MultiVector out(t, 3);
  // Entry matrices and their derivatives.
  auto entry = [&](const MultiVector& m, std::size_t i, std::size_t j) { return m.at({i, j}); };
  std::vector<std::vector<RF>> pm(n, std::vector<RF>(n, RF(t))), qm = pm;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pm[i][j] = entry(p, i, j);
      qm[i][j] = entry(q, i, j);
    }
  }
  // d_l M^{jk}, cached lazily
  std::map<std::tuple<int, std::size_t, std::size_t, std::size_t>, RF> dcache;
  auto deriv = [&](int which, std::size_t l, std::size_t j, std::size_t k) -> RF {
    auto key = std::make_tuple(which, l, j, k);
    auto it = dcache.find(key);
    if (it != dcache.end()) return it->second;
    const RF& base = which == 0 ? pm[j][k] : qm[j][k];
    RF d = base.is_zero() ? RF(t) : base.derivative(t->geo_var(l));
    dcache.emplace(key, d);
    return d;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        RF acc(t);
        const std::size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (const auto& c : cyc) {
          for (std::size_t l = 0; l < n; ++l) {
            if (!pm[c[0]][l].is_zero()) {
              RF d = deriv(1, l, c[1], c[2]);
              if (!d.is_zero()) acc += pm[c[0]][l] * d;
            }
            if (!qm[c[0]][l].is_zero()) {
              RF d = deriv(0, l, c[1], c[2]);
              if (!d.is_zero()) acc += qm[c[0]][l] * d;
            }
          }
        }
        out.add_component(index_set({i, j, k}), acc);
      }
    }
  }
  return out;
}

}  // namespace

MultiVector schouten(const MultiVector& p, const MultiVector& q) {
  require_same_table(p.table(), q.table(), "schouten");
  if (p.degree() == 1) return schouten_vector(p, q);
  if (q.degree() == 1) return -schouten_vector(q, p);
  if (p.degree() == 2 && q.degree() == 2) return schouten_bivectors(p, q);
  throw Error(Errc::unsupported_degrees, "schouten: unsupported degrees (" + std::to_string(p.degree()) + "," +
                                             std::to_string(q.degree()) + ")");
}

template <GradedKind K>
std::string describe(const Graded<K>& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : a.components()) {
    if (!first) os << "; ";
    first = false;
    os << '[';
    bool f2 = true;
    for (auto k : indices_of(s)) {
      if (!f2) os << ',';
      f2 = false;
      os << k + 1;
    }
    os << "]: " << render(c);
  }
  return os.str();
}

template std::string describe(const Form&);
template std::string describe(const MultiVector&);

RfMatrix bivector_matrix(const MultiVector& p) {
  if (p.degree() != 2) throw Error(Errc::degree, "bivector_matrix needs degree 2");
  std::size_t n = p.dim();
  RfMatrix m(p.table(), n, n);
  for (const auto& [s, c] : p.components()) {
    auto idx = indices_of(s);
    m(idx[0], idx[1]) = c;
    m(idx[1], idx[0]) = -c;
  }
  return m;
}

MultiVector bivector_from_matrix(const RfMatrix& m) {
  MultiVector p(m.table(), 2);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) p.add_component(index_set({i, j}), m(i, j));
  }
  return p;
}

Form two_form_from_matrix(const RfMatrix& m) {
  Form p(m.table(), 2);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) p.add_component(index_set({i, j}), m(i, j));
  }
  return p;
}

RfMatrix two_form_matrix(const Form& a) {
  if (a.degree() != 2) throw Error(Errc::degree, "two_form_matrix needs degree 2");
  std::size_t n = a.dim();
  RfMatrix m(a.table(), n, n);
  for (const auto& [s, c] : a.components()) {
    auto idx = indices_of(s);
    m(idx[0], idx[1]) = c;
    m(idx[1], idx[0]) = -c;
  }
  return m;
}

MultiVector hamiltonian_vf(const MultiVector& p, const RF& f) {
  require_same_table(p.table(), f.table(), "hamiltonian_vf");
  if (p.degree() != 2) throw Error(Errc::degree, "hamiltonian_vf needs a bivector");
  const auto& t = p.table();
  std::size_t n = t->dim();
  std::vector<RF> df(n, RF(t));
  for (std::size_t i = 0; i < n; ++i) df[i] = f.derivative(t->geo_var(i));
  MultiVector x(t, 1);
  for (const auto& [s, c] : p.components()) {
    auto idx = indices_of(s);
    std::size_t i = idx[0], j = idx[1];
    if (!df[i].is_zero()) x.add_component(IndexSet{1} << j, df[i] * c);
    if (!df[j].is_zero()) x.add_component(IndexSet{1} << i, -(df[j] * c));
  }
  return x;
}

RF bracket(const MultiVector& p, const RF& f, const RF& g) {
  return pairing(differential(g), hamiltonian_vf(p, f));
}

}  // namespace iforge
