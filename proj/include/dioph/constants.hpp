#ifndef DIOPH_CONSTANTS_HPP
#define DIOPH_CONSTANTS_HPP

#include <memory>
#include <string>
#include <string_view>

#include "dioph/real.hpp"

namespace dioph {

class Expr;

enum class ConstantTag { E, Pi, EPlusPi, ETimesPi, PiPlusPiSquared, PiPow, PiInv, Custom };

// Identifies a real to evaluate: one of the named constants, or a custom
// expression over integers, e and pi.
//
// Expression grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= integer | '-' integer | '(' '-'? integer ')'
//   primary := integer | decimal | 'e' | 'pi' | 'sqrt' '(' expr ')' | '(' expr ')'
//
// Negative exponents are only accepted as pi^-1.
class ConstantId {
 public:
  static ConstantId e();
  static ConstantId pi();
  static ConstantId e_plus_pi();
  static ConstantId e_times_pi();
  static ConstantId pi_plus_pi_squared();
  static ConstantId pi_pow(unsigned r);  // r >= 1
  static ConstantId pi_inv();

  // Parses the grammar above and maps recognised spellings ("e+pi", "pi^3",
  // "1/pi", ...) onto the named tags. Throws ParseError or InvalidArgument.
  static ConstantId parse(std::string_view text);

  ConstantTag tag() const { return tag_; }
  unsigned power() const { return power_; }
  const std::string& name() const { return name_; }

  // True for custom expressions built from integers and decimals only.
  bool is_rational() const;

  // Evaluates the expression at `precision` bits without guard handling.
  Real evaluate(mpfr_prec_t precision) const;

 private:
  ConstantId(ConstantTag tag, unsigned power, std::string name,
             std::shared_ptr<const Expr> expr);

  ConstantTag tag_;
  unsigned power_ = 0;
  std::string name_;
  std::shared_ptr<const Expr> expr_;
};

// Evaluates `id` so that the returned radius is at most 2^(4 - precision_bits).
// Guard bits are added internally; precision_bits must be >= 64.
Real eval_constant(const ConstantId& id, mpfr_prec_t precision_bits);

}  // namespace dioph

#endif  // DIOPH_CONSTANTS_HPP
