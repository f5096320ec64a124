#pragma once

// Outward-rounded enclosures of non-negative reals stored through their
// natural logarithm. Values too large for a plain log are kept one level
// higher: ln x = sign * exp(t) with t in [lo, hi].

#include <gmpxx.h>

#include <optional>
#include <string>

#include "heightlab/bigfloat.hpp"

namespace heightlab {

class LogInterval {
 public:
  /// The value zero.
  explicit LogInterval(Precision prec = 256);

  static LogInterval zero(Precision prec = 256) { return LogInterval(prec); }
  static LogInterval one(Precision prec = 256) { return from_integer(1, prec); }
  static LogInterval from_integer(const mpz_class& n, Precision prec = 256);
  /// q >= 0.
  static LogInterval from_rational(const mpq_class& q, Precision prec = 256);
  /// x with ln x in [lo, hi].
  static LogInterval from_ln(const BigFloat& lo, const BigFloat& hi, Precision prec = 256);
  /// ln x = sign * exp(t), t in [lo, hi].
  static LogInterval from_tower(int sign, const BigFloat& lo, const BigFloat& hi, Precision prec = 256);

  bool is_zero() const { return zero_; }
  /// True when stored one level up (ln x = sign * exp(t)).
  bool is_tower() const { return tower_; }
  int tower_sign() const { return sign_; }
  /// Bounds of ln x (plain) or of t (tower).
  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  Precision precision() const { return prec_; }

  friend LogInterval operator*(const LogInterval& a, const LogInterval& b);
  friend LogInterval operator/(const LogInterval& a, const LogInterval& b);
  friend LogInterval operator+(const LogInterval& a, const LogInterval& b);
  friend LogInterval max(const LogInterval& a, const LogInterval& b);
  /// base^exponent.
  friend LogInterval pow(const LogInterval& base, const LogInterval& exponent);
  /// e^x for x a plain value.
  friend LogInterval exp(const LogInterval& x);
  /// ln x, requires x >= 1.
  friend LogInterval log(const LogInterval& x);

  /// Whether the exact rational q lies in the enclosure.
  bool contains(const mpq_class& q) const;
  /// Width hi - lo of the stored interval (0 for zero).
  double width() const;

  struct Log10 {
    bool zero = false;
    bool tower = false;  // then bounds are of log10(|log10 x|)
    int sign = 1;        // sign of log10 x in tower form
    double lo = 0.0, hi = 0.0;
  };
  /// log10 x bounds, or log10 |log10 x| bounds for towers.
  Log10 log10_bounds() const;
  /// Midpoint value as a double when representable.
  std::optional<double> to_double() const;
  /// Human-readable value: decimal, 10^e, or 10^(10^e).
  std::string to_string(int digits = 6) const;

 private:
  Precision prec_;
  bool zero_ = true;
  bool tower_ = false;
  int sign_ = 1;
  BigFloat lo_, hi_;
};

}  // namespace heightlab
