#pragma once

// Expression DAG for explicit constants, evaluated in log-interval
// arithmetic with an exact rational path where every node allows it.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heightlab/log_interval.hpp"

namespace heightlab {

class BoundExpr {
 public:
  enum class Kind { Constant, Variable, Sum, Product, Quotient, Power, Exponential, Logarithm, Factorial, Max };

  BoundExpr();  // the constant 0
  BoundExpr(long value);
  BoundExpr(const mpz_class& value);
  BoundExpr(const mpq_class& value);

  static BoundExpr constant(const mpq_class& value) { return BoundExpr(value); }
  /// A constant known only through an enclosure.
  static BoundExpr constant(const LogInterval& value, std::string label);
  static BoundExpr variable(std::string name);
  static BoundExpr sum(std::vector<BoundExpr> terms);
  static BoundExpr product(std::vector<BoundExpr> factors);
  static BoundExpr quotient(BoundExpr num, BoundExpr den);
  static BoundExpr power(BoundExpr base, BoundExpr exponent);
  static BoundExpr exponential(BoundExpr x);
  static BoundExpr logarithm(BoundExpr x);
  static BoundExpr factorial(BoundExpr n);
  static BoundExpr maximum(std::vector<BoundExpr> args);

  /// Same node with a display name (used as an atom in traces).
  BoundExpr named(std::string name) const;

  Kind kind() const;
  const std::string& name() const;
  std::vector<BoundExpr> children() const;
  /// Node identity (shared subexpressions compare equal).
  const void* id() const { return node_.get(); }

  using Env = std::map<std::string, LogInterval>;
  using ExactEnv = std::map<std::string, mpq_class>;

  /// Outward-rounded enclosure. Throws UnknownVariable for unbound names.
  LogInterval evaluate(const Env& env = {}, Precision prec = 256) const;
  /// Exact rational value when every node is rational and sizes stay
  /// moderate (integer powers, factorials of small integers).
  std::optional<mpq_class> exact(const ExactEnv& env = {}) const;

  /// Expression with named subexpressions shown by name.
  std::string trace() const;
  /// "name = expression" lines for every named node, dependencies first.
  std::vector<std::string> definitions() const;
  /// DAG export: {"root": id, "nodes": [{"id", "kind", "name"?, "value"?, "children"?}]}.
  std::string to_json() const;

  friend BoundExpr operator+(const BoundExpr& a, const BoundExpr& b) { return sum({a, b}); }
  friend BoundExpr operator*(const BoundExpr& a, const BoundExpr& b) { return product({a, b}); }
  friend BoundExpr operator/(const BoundExpr& a, const BoundExpr& b) { return quotient(a, b); }

  struct Node;

 private:
  explicit BoundExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(BoundExpr::Kind kind);

}  // namespace heightlab
