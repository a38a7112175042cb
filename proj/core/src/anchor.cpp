#include "iforge/anchor.hpp"

#include "iforge/errors.hpp"
#include "iforge/symexpr.hpp"

namespace iforge {

namespace {

RF one(const TablePtr& t) { return RF(t, Rational(1)); }

// Row i of the component matrix as the vector field sum_j P^{ij} d_j.
std::vector<MultiVector> sharp_rows(const MultiVector& p) {
  const auto& t = p.table();
  std::vector<MultiVector> rows(t->dim(), MultiVector(t, 1));
  for (const auto& [s, c] : p.components()) {
    auto idx = indices_of(s);
    rows[idx[0]].add_component(IndexSet{1} << idx[1], c);
    rows[idx[1]].add_component(IndexSet{1} << idx[0], -c);
  }
  return rows;
}

}  // namespace

SymplecticAnchor build_symplectic(const MultiVector& lambda_bi) {
  if (lambda_bi.degree() != 2) throw Error(Errc::degree, "anchor bivector must have degree 2");
  const auto& t = lambda_bi.table();
  std::size_t dim = t->dim();
  if (dim % 2 != 0) throw Error(Errc::odd_dimension, "symplectic anchor needs an even dimension, got " + std::to_string(dim));
  RfMatrix l = bivector_matrix(lambda_bi);
  auto inv = l.inverse();
  if (!inv) throw Error(Errc::degenerate, "anchor bivector is degenerate (singular component matrix)");
  // ω = -Λ⁻¹, so that dx∧dy pairs with ∂x∧∂y.
  RfMatrix w(t, dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) w(i, j) = -(*inv)(i, j);
  }
  SymplecticAnchor a{t, lambda_bi, two_form_from_matrix(w), static_cast<unsigned>(dim / 2), Form(t, 0)};
  a.volume = divided_power(a.omega, a.n);
  if (a.volume.is_zero()) throw Error(Errc::degenerate, "anchor volume vanishes");
  return a;
}

CosymplecticAnchor build_cosymplectic(const Form& vartheta, const Form& theta) {
  require_same_table(vartheta.table(), theta.table(), "build_cosymplectic");
  if (vartheta.degree() != 1 || theta.degree() != 2) {
    throw Error(Errc::degree, "cosymplectic anchor needs a 1-form and a 2-form");
  }
  const auto& t = vartheta.table();
  std::size_t dim = t->dim();
  if (dim % 2 == 0) {
    throw Error(Errc::odd_dimension, "cosymplectic anchor needs an odd dimension, got " + std::to_string(dim));
  }
  unsigned n = static_cast<unsigned>(dim / 2);
  Form volume = wedge(vartheta, divided_power(theta, n));
  if (volume.is_zero()) throw Error(Errc::degenerate_volume, "vartheta ^ theta^n vanishes identically");

  // Invert ω' = Θ + ds∧ϑ with s as an extra last row/column.
  RfMatrix w(t, dim + 1, dim + 1);
  RfMatrix th = two_form_matrix(theta);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) w(i, j) = th(i, j);
    RF v = vartheta.component(IndexSet{1} << i);
    w(dim, i) = v;
    w(i, dim) = -v;
  }
  auto inv = w.inverse();
  if (!inv) throw Error(Errc::degenerate_volume, "lifted 2-form is degenerate");
  MultiVector lam(t, 2), reeb(t, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) lam.add_component(index_set({i, j}), -(*inv)(i, j));
    reeb.add_component(IndexSet{1} << i, -(*inv)(dim, i));
  }
  return CosymplecticAnchor{t, vartheta, theta, std::move(lam), std::move(reeb), n, std::move(volume)};
}

MultiVector canonical_bivector(const TablePtr& table,
                               const std::vector<std::pair<std::string, std::string>>& pairs) {
  MultiVector p(table, 2);
  for (const auto& [x, y] : pairs) {
    auto ix = table->geo_ordinal(x);
    auto iy = table->geo_ordinal(y);
    if (!ix || !iy) {
      table->index_of(x);
      table->index_of(y);
      throw Error(Errc::schema, "canonical pair (" + x + ", " + y + ") must name geometric variables");
    }
    p += MultiVector::basis(table, {*ix, *iy}, one(table));
  }
  return p;
}

MultiVector sharp(const MultiVector& p, const Form& a) {
  require_same_table(p.table(), a.table(), "sharp");
  const auto& t = a.table();
  MultiVector out(t, a.degree());
  if (a.is_zero()) return out;
  if (a.degree() == 0) return MultiVector::scalar(a.value());
  auto rows = sharp_rows(p);
  for (const auto& [s, c] : a.components()) {
    auto idx = indices_of(s);
    MultiVector acc = rows[idx[0]];
    for (std::size_t k = 1; k < idx.size() && !acc.is_zero(); ++k) acc = wedge(acc, rows[idx[k]]);
    if (!acc.is_zero()) out += acc.scaled(c);
  }
  return out;
}

MultiVector sharp(const SymplecticAnchor& anchor, const Form& a) { return sharp(anchor.lambda_bi, a); }

MultiVector sharp(const CosymplecticAnchor& anchor, const Form& a) {
  if (a.degree() > 0) {
    Form r = interior(anchor.reeb, a);
    if (!r.is_zero()) throw Error(Errc::not_semi_basic, "form is not semi-basic: i_E a = " + describe(r));
  }
  return sharp(anchor.lambda_bi, a);
}

Form flat(const SymplecticAnchor& anchor, const MultiVector& x) {
  if (x.degree() != 1) throw Error(Errc::degree, "flat expects a vector field");
  return -interior(x, anchor.omega);
}

Form star(const SymplecticAnchor& anchor, const Form& a) {
  return interior(sharp(anchor, a), anchor.volume);
}

Form codifferential(const SymplecticAnchor& anchor, const Form& a) {
  const auto& t = a.table();
  if (a.degree() == 0) return Form(t, 0);
  Form ds = exterior_derivative(star(anchor, a));
  if (static_cast<std::size_t>(ds.degree()) > t->dim()) return Form(t, a.degree() - 1);
  return star(anchor, ds);
}

LiftedAnchor lift(const CosymplecticAnchor& base, TablePtr lifted_table) {
  if (!lifted_table) lifted_table = base.table->extended({{"s", VarRole::appended_coordinate}});
  auto s_var = lifted_table->appended_coordinate();
  if (!s_var) throw Error(Errc::schema, "lifted table has no appended coordinate");
  std::size_t s_ord = *lifted_table->geo_ordinal(*s_var);
  if (lifted_table->dim() != base.table->dim() + 1) {
    throw Error(Errc::dimension_mismatch, "lifted table must add exactly one geometric variable");
  }
  const auto& t = lifted_table;
  Form ds = Form::basis(t, {s_ord}, one(t));
  MultiVector dds = MultiVector::basis(t, {s_ord}, one(t));
  Form omega = base.theta.rebase(t) + wedge(ds, base.vartheta.rebase(t));
  MultiVector lam = base.lambda_bi.rebase(t) + wedge(dds, base.reeb.rebase(t));
  SymplecticAnchor sym = build_symplectic(lam);
  if (!(sym.omega == omega)) {
    throw Error(Errc::precondition, "lifted bivector is not inverse to theta + ds^vartheta");
  }
  return LiftedAnchor{base, std::move(sym), s_ord};
}

PrimeParts decompose_prime(const Form& a) {
  const auto& t = a.table();
  auto s_var = t->appended_coordinate();
  if (!s_var) throw Error(Errc::schema, "decompose_prime needs a table with an appended coordinate");
  if (a.degree() != 2) throw Error(Errc::degree, "decompose_prime expects a 2-form");
  IndexSet sbit = IndexSet{1} << *t->geo_ordinal(*s_var);
  PrimeParts parts{Form(t, 2), Form(t, 1)};
  for (const auto& [s, c] : a.components()) {
    if (!(s & sbit)) {
      parts.sigma.add_component(s, c);
    } else {
      IndexSet j = s & ~sbit;
      parts.tau.add_component(j, wedge_sign(j, sbit) > 0 ? c : -c);
    }
  }
  return parts;
}

namespace {

template <GradedKind K>
void require_s_free(const Graded<K>& a, const char* what) {
  const auto& t = a.table();
  auto s_var = t->appended_coordinate();
  if (!s_var) return;
  IndexSet sbit = IndexSet{1} << *t->geo_ordinal(*s_var);
  for (const auto& [s, c] : a.components()) {
    std::string where = std::string(what) + " component [";
    bool first = true;
    for (auto k : indices_of(s)) {
      where += (first ? "" : ",") + std::to_string(k + 1);
      first = false;
    }
    where += "]";
    if (s & sbit) throw Error(Errc::not_reducible, where + " has an s index: " + render(c));
    if (c.num().depends_on(*s_var) || c.den().depends_on(*s_var)) {
      throw Error(Errc::not_reducible, where + " depends on s: " + render(c));
    }
  }
}

}  // namespace

MultiVector reduce_bivector(const MultiVector& p, const TablePtr& base) {
  require_s_free(p, "bivector");
  return p.rebase(base);
}

Form reduce_form(const Form& a, const TablePtr& base) {
  require_s_free(a, "form");
  return a.rebase(base);
}

}  // namespace iforge
