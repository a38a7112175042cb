#include "iforge/symexpr.hpp"

#include <cctype>
#include <sstream>

namespace iforge {

namespace {

class Parser {
 public:
  Parser(std::string_view src, const TablePtr& table) : src_(src), table_(table) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  Polynomial expr() {
    bool negate = accept('-');
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_ws();
      if (peek('-')) throw Error(Errc::negative_exponent, "negative exponent at " + std::to_string(pos_));
      mpz_class e = digits("exponent");
      if (e > 255) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  mpz_class digits(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = digits("integer");
      mpz_class den = 1;
      if (accept('/')) {
        std::size_t at = pos_;
        den = digits("denominator");
        if (den == 0) throw SyntaxError(at, "zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      check_no_implicit_product();
      return Polynomial(table_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(src_.substr(start, pos_ - start));
      auto idx = table_->find(name);
      if (!idx) throw Error(Errc::unknown_variable, "unknown variable '" + name + "' at " + std::to_string(start));
      check_no_implicit_product();
      return Polynomial::variable(table_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // "2x" or "x y" would otherwise silently parse as two tokens.
  void check_no_implicit_product() {
    std::size_t save = pos_;
    skip_ws();
    if (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_') {
        fail("implicit multiplication is not allowed");
      }
    }
    pos_ = save;
  }

  std::string_view src_;
  const TablePtr& table_;
  std::size_t pos_ = 0;
};

std::string render_monomial(const Monomial& m, const VarTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!m.exp[i]) continue;
    if (!out.empty()) out += '*';
    out += table.name(i);
    if (m.exp[i] > 1) out += '^' + std::to_string(m.exp[i]);
  }
  return out;
}

}  // namespace

Polynomial parse_expr(std::string_view src, const TablePtr& table) { return Parser(src, table).parse(); }

std::string render(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono = render_monomial(t.mono, *p.table());
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << '*' << mono;
    }
  }
  return os.str();
}

std::string render(const RationalFunction& f) {
  if (f.is_polynomial()) return render(f.num());
  return "(" + render(f.num()) + ")/(" + render(f.den()) + ")";
}

RationalFunction parse_rational(std::string_view num, std::string_view den, const TablePtr& table) {
  Polynomial n = parse_expr(num, table);
  if (den.empty()) return RationalFunction(std::move(n));
  Polynomial d = parse_expr(den, table);
  if (d.is_zero()) throw Error(Errc::division_by_zero, "zero denominator expression '" + std::string(den) + "'");
  return RationalFunction(std::move(n), std::move(d));
}

}  // namespace iforge
