#include "dioph/constants.hpp"

#include <cctype>
#include <utility>
#include <variant>
#include <vector>

#include "dioph/errors.hpp"

namespace dioph {

// ---------------------------------------------------------------------------
// Expression tree

class Expr {
 public:
  enum class Kind { Number, E, Pi, Add, Sub, Mul, Div, Neg, Pow, Sqrt };

  Kind kind;
  mpq_class number;  // Number
  long exponent = 0;  // Pow
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;

  bool uses_transcendentals() const {
    if (kind == Kind::E || kind == Kind::Pi) return true;
    if (kind == Kind::Sqrt) return true;
    return (lhs && lhs->uses_transcendentals()) ||
           (rhs && rhs->uses_transcendentals());
  }
};

namespace {

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr make_node(Expr::Kind kind, ExprPtr lhs = nullptr,
                  ExprPtr rhs = nullptr) {
  auto node = std::make_shared<Expr>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

struct Constants {
  mpfr_prec_t precision;
  std::optional<Real> pi;
  std::optional<Real> e;

  const Real& get_pi() {
    if (!pi) pi = Real::pi(precision);
    return *pi;
  }
  const Real& get_e() {
    if (!e) e = Real::e(precision);
    return *e;
  }
};

Real eval_node(const Expr& node, Constants& c) {
  switch (node.kind) {
    case Expr::Kind::Number:
      return Real::from_rational(node.number, c.precision);
    case Expr::Kind::E:
      return c.get_e();
    case Expr::Kind::Pi:
      return c.get_pi();
    case Expr::Kind::Add:
      return eval_node(*node.lhs, c) + eval_node(*node.rhs, c);
    case Expr::Kind::Sub:
      return eval_node(*node.lhs, c) - eval_node(*node.rhs, c);
    case Expr::Kind::Mul:
      return eval_node(*node.lhs, c) * eval_node(*node.rhs, c);
    case Expr::Kind::Div:
      return eval_node(*node.lhs, c) / eval_node(*node.rhs, c);
    case Expr::Kind::Neg:
      return -eval_node(*node.lhs, c);
    case Expr::Kind::Pow: {
      Real base = eval_node(*node.lhs, c);
      if (node.exponent < 0) {
        return Real::from_integer(1, c.precision) /
               int_pow(base, static_cast<unsigned>(-node.exponent));
      }
      return int_pow(base, static_cast<unsigned>(node.exponent));
    }
    case Expr::Kind::Sqrt:
      return sqrt(eval_node(*node.lhs, c));
  }
  throw Error("unreachable expression kind");
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) text_.push_back(ch);
    }
  }

  ExprPtr parse() {
    if (text_.empty()) throw ParseError("empty constant expression");
    ExprPtr result = expr();
    if (pos_ != text_.size()) fail("unexpected character");
    return result;
  }

  const std::string& compact() const { return text_; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" +
                     text_ + "'");
  }

  bool eat(char ch) {
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view word) {
    if (text_.compare(pos_, word.size(), word) == 0) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (true) {
      if (eat('+')) {
        lhs = make_node(Expr::Kind::Add, lhs, term());
      } else if (eat('-')) {
        lhs = make_node(Expr::Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (true) {
      if (eat('*')) {
        lhs = make_node(Expr::Kind::Mul, lhs, unary());
      } else if (eat('/')) {
        ExprPtr rhs = unary();
        if (!rhs->uses_transcendentals()) {
          Constants c{64, {}, {}};
          if (eval_node(*rhs, c).exact() == mpq_class(0)) {
            throw InvalidArgument("zero denominator in '" + text_ + "'");
          }
        }
        lhs = make_node(Expr::Kind::Div, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (eat('-')) return make_node(Expr::Kind::Neg, unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (!eat('^')) return base;
    bool paren = eat('(');
    bool negative = eat('-');
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected integer exponent");
    if (paren && !eat(')')) fail("expected ')'");
    long exponent = std::stol(text_.substr(start, pos_ - start));
    if (negative) exponent = -exponent;
    if (exponent < 0 && !(base->kind == Expr::Kind::Pi && exponent == -1)) {
      throw InvalidArgument("negative powers other than pi^-1 are not allowed");
    }
    auto node = std::make_shared<Expr>();
    node->kind = Expr::Kind::Pow;
    node->lhs = base;
    node->exponent = exponent;
    return node;
  }

  ExprPtr primary() {
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      ExprPtr inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (eat_word("sqrt")) {
      if (!eat('(')) fail("expected '(' after sqrt");
      ExprPtr inner = expr();
      if (!eat(')')) fail("expected ')'");
      return make_node(Expr::Kind::Sqrt, inner);
    }
    if (eat_word("pi")) return make_node(Expr::Kind::Pi);
    if (eat('e')) return make_node(Expr::Kind::E);
    char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.')) {
        ++pos_;
      }
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::Number;
      node->number = *Real::parse_decimal(text_.substr(start, pos_ - start), 64)
                          .exact();
      return node;
    }
    fail("unexpected character");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

ExprPtr pi_node() { return make_node(Expr::Kind::Pi); }
ExprPtr e_node() { return make_node(Expr::Kind::E); }

ExprPtr pow_node(ExprPtr base, long exponent) {
  auto node = std::make_shared<Expr>();
  node->kind = Expr::Kind::Pow;
  node->lhs = std::move(base);
  node->exponent = exponent;
  return node;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConstantId

ConstantId::ConstantId(ConstantTag tag, unsigned power, std::string name,
                       std::shared_ptr<const Expr> expr)
    : tag_(tag), power_(power), name_(std::move(name)), expr_(std::move(expr)) {}

ConstantId ConstantId::e() { return {ConstantTag::E, 0, "e", e_node()}; }

ConstantId ConstantId::pi() { return {ConstantTag::Pi, 0, "pi", pi_node()}; }

ConstantId ConstantId::e_plus_pi() {
  return {ConstantTag::EPlusPi, 0, "e+pi",
          make_node(Expr::Kind::Add, e_node(), pi_node())};
}

ConstantId ConstantId::e_times_pi() {
  return {ConstantTag::ETimesPi, 0, "e*pi",
          make_node(Expr::Kind::Mul, e_node(), pi_node())};
}

ConstantId ConstantId::pi_plus_pi_squared() {
  return {ConstantTag::PiPlusPiSquared, 0, "pi+pi^2",
          make_node(Expr::Kind::Add, pi_node(), pow_node(pi_node(), 2))};
}

ConstantId ConstantId::pi_pow(unsigned r) {
  if (r < 1) throw InvalidArgument("pi^r requires r >= 1");
  if (r == 1) {
    return {ConstantTag::PiPow, 1, "pi^1", pi_node()};
  }
  return {ConstantTag::PiPow, r, "pi^" + std::to_string(r),
          pow_node(pi_node(), r)};
}

ConstantId ConstantId::pi_inv() {
  return {ConstantTag::PiInv, 0, "pi^-1", pow_node(pi_node(), -1)};
}

ConstantId ConstantId::parse(std::string_view text) {
  Parser parser(text);
  ExprPtr expr = parser.parse();
  const std::string& s = parser.compact();

  if (s == "e") return e();
  if (s == "pi") return pi();
  if (s == "e+pi" || s == "pi+e") return e_plus_pi();
  if (s == "e*pi" || s == "pi*e") return e_times_pi();
  if (s == "pi+pi^2" || s == "pi^2+pi") return pi_plus_pi_squared();
  if (s == "1/pi" || s == "pi^-1" || s == "pi^(-1)") return pi_inv();
  if (expr->kind == Expr::Kind::Pow && expr->lhs->kind == Expr::Kind::Pi &&
      expr->exponent >= 1) {
    return pi_pow(static_cast<unsigned>(expr->exponent));
  }
  return {ConstantTag::Custom, 0, s, expr};
}

bool ConstantId::is_rational() const {
  return tag_ == ConstantTag::Custom && !expr_->uses_transcendentals();
}

Real ConstantId::evaluate(mpfr_prec_t precision) const {
  Constants c{precision, {}, {}};
  return eval_node(*expr_, c);
}

Real eval_constant(const ConstantId& id, mpfr_prec_t precision_bits) {
  if (precision_bits < 64) {
    throw InvalidArgument("precision_bits must be at least 64");
  }
  BigFloat target(Real::kRadiusBits);
  mpfr_set_ui_2exp(target.get(), 1, 4 - precision_bits, MPFR_RNDN);
  mpfr_prec_t guard = 32;
  for (int attempt = 0; attempt < 16; ++attempt) {
    Real value = id.evaluate(precision_bits + guard);
    if (!value.is_finite()) throw InvalidArgument("non-finite constant");
    if (mpfr_lessequal_p(value.rad().get(), target.get())) return value;
    guard *= 2;
  }
  throw PrecisionExhausted(0, "could not reach the requested error bound");
}

}  // namespace dioph
